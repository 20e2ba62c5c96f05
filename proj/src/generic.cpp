#include "gla/generic.hpp"

#include <random>
#include <sstream>

namespace gla {

namespace {

// [b, x] = e solvable inside M? (b of degree i, e of degree j, x of degree j-i)
bool solvable_in(AlgebraPtr M, const LieElement& b, const LieElement& e) {
    int i = b.homogeneous_degree();
    int j = e.homogeneous_degree();
    int k = j - i;
    Matrix ad(M->field(), M->dim(k), M->dim(j));
    for (std::size_t r = 0; r < M->dim(k); ++r) {
        Vec unit(M->dim(k), 0);
        unit[r] = 1;
        ad.set_row(r, M->bracket_coords(i, b.coords(i), k, unit));
    }
    return solve_left(ad, e.coords(j)).has_value();
}

// First unsolved divisor problem with b, e basis elements, canonical order:
// degree pairs (1,2), (1,3), (2,3), then row-major over basis indices.
std::optional<std::pair<LieElement, LieElement>> first_unsolved(AlgebraPtr M) {
    static constexpr int pairs[3][2] = {{1, 2}, {1, 3}, {2, 3}};
    for (const auto& ij : pairs) {
        int i = ij[0], j = ij[1];
        if (j > M->class_c()) continue;
        for (std::size_t bi = 0; bi < M->dim(i); ++bi) {
            LieElement b = M->basis_element(i, bi);
            for (std::size_t ei = 0; ei < M->dim(j); ++ei) {
                LieElement e = M->basis_element(j, ei);
                if (!solvable_in(M, b, e)) return std::make_pair(b, e);
            }
        }
    }
    return std::nullopt;
}

// Deterministic search for an embedding of B into M whose image passes the
// bounded strongness check at the given radius. Candidate generator images
// run over all nonzero vectors of the matching degree, counter order.
GradedHom find_base_embedding(AlgebraPtr B, AlgebraPtr M, std::size_t radius,
                              std::uint64_t cap) {
    if (B->total_dim() == 0) return GradedHom::zero(B, M);
    const auto full = GradedSubalgebra::full(M);
    OSystem osys = extract_o_system(B);
    const std::size_t p = B->field().p();

    std::vector<int> degs;
    std::vector<std::size_t> space;  // nonzero vectors per slot
    std::uint64_t combos = 1;
    for (const auto& z : osys.elems) {
        int d = z.homogeneous_degree();
        degs.push_back(d);
        std::uint64_t count = 1;
        for (std::size_t t = 0; t < M->dim(d); ++t) {
            count *= p;
            if (count > cap) throw EnumerationTooLarge("base embedding search over cap");
        }
        if (count <= 1) throw Error("base embedding: ambient degree too small");
        space.push_back(count - 1);
        combos *= space.back();
        if (combos > cap) throw EnumerationTooLarge("base embedding search over cap");
    }

    std::vector<std::uint64_t> idx(osys.elems.size(), 0);
    auto decode = [&](std::size_t slot) {
        std::uint64_t code = idx[slot] + 1;  // skip the zero vector
        int d = degs[slot];
        Vec v(M->dim(d), 0);
        for (std::size_t t = 0; t < M->dim(d); ++t) {
            v[t] = static_cast<Scalar>(code % p);
            code /= p;
        }
        return M->from_degree_vec(d, v);
    };

    for (std::uint64_t iter = 0; iter < combos; ++iter) {
        std::vector<LieElement> images;
        images.reserve(idx.size());
        for (std::size_t s = 0; s < idx.size(); ++s) images.push_back(decode(s));
        std::optional<GradedHom> h;
        try {
            h = hom_from_generators(B, M, images);
        } catch (const NotAHomomorphism&) {
        }
        if (h && h->is_embedding()) {
            StrongReport rep = is_strong(h->image(), full, 3, radius, cap);
            if (rep.holds) return *h;
        }
        for (std::size_t s = 0; s < idx.size(); ++s) {
            if (++idx[s] < space[s]) break;
            idx[s] = 0;
        }
    }
    throw Error("no strong base embedding found");
}

// Strongness of the step embedding's image, exact within cap, otherwise
// bounded at the fallback radius.
StrongReport chain_strongness(const GradedHom& emb, std::size_t fallback_k,
                              std::uint64_t cap) {
    const auto full = GradedSubalgebra::full(emb.tgt());
    try {
        return is_strong(emb.image(), full, 3, std::nullopt, cap);
    } catch (const EnumerationTooLarge&) {
        return is_strong(emb.image(), full, 3, fallback_k, cap);
    }
}

void append_step(BuilderState& st, ExtensionTask task, const GradedHom& emb,
                 std::size_t n, std::uint64_t cap) {
    AlgebraPtr next = emb.tgt();
    KcReport kc = kc_membership(next, cap, false);
    if (!kc.member) {
        std::ostringstream os;
        os << "builder step left the class at step " << st.chain_log.size();
        for (const auto& v : kc.violations) os << "; " << v;
        throw Error(os.str());
    }
    StrongReport rep = chain_strongness(emb, n, cap);
    if (!rep.holds) throw Error("builder step broke chain strongness");
    st.current = next;
    st.chain_log.push_back(
        {std::move(task), emb, delta_profile(next), rep.exact, rep.bound_k});
}

}  // namespace

ExtensionTask ExtensionTask::free_point(int degree) {
    ExtensionTask t;
    t.kind = Kind::free_point;
    t.degree = degree;
    return t;
}

ExtensionTask ExtensionTask::divisor() {
    ExtensionTask t;
    t.kind = Kind::divisor;
    return t;
}

ExtensionTask ExtensionTask::divisor(LieElement b, LieElement e) {
    ExtensionTask t;
    t.kind = Kind::divisor;
    t.div_b = std::move(b);
    t.div_e = std::move(e);
    return t;
}

ExtensionTask ExtensionTask::template_pair(AlgebraPtr base, AlgebraPtr ext,
                                           GradedHom base_in_ext,
                                           std::optional<GradedHom> base_in_current) {
    ExtensionTask t;
    t.kind = Kind::template_pair;
    t.tmpl_base = std::move(base);
    t.tmpl_ext = std::move(ext);
    t.tmpl_b_in_ext = std::move(base_in_ext);
    t.base_in_current = std::move(base_in_current);
    return t;
}

BuilderState initial_state(PrimeField field, int class_c, std::uint64_t seed) {
    return {Algebra::zero_algebra(field, class_c), {}, seed};
}

void verify_template(const ExtensionTask& task, std::uint64_t cap) {
    if (task.kind != ExtensionTask::Kind::template_pair)
        throw Error("verify_template: not a template task");
    if (!task.tmpl_base || !task.tmpl_ext || !task.tmpl_b_in_ext)
        throw Error("verify_template: incomplete template");
    const GradedHom& f = *task.tmpl_b_in_ext;
    if (f.src() != task.tmpl_base || f.tgt() != task.tmpl_ext)
        throw Error("verify_template: embedding endpoints mismatch");
    if (!f.is_embedding() || !f.respects_brackets())
        throw Error("verify_template: base map is not an embedding");
    KcReport kc = kc_membership(task.tmpl_ext, cap, false);
    if (!kc.member) throw Error("verify_template: extension outside the class");
    StrongReport rep =
        is_strong(f.image(), GradedSubalgebra::full(task.tmpl_ext), 3,
                  std::nullopt, cap);
    if (!rep.holds) throw Error("verify_template: base not strong in extension");
}

BuilderState richness_step(const BuilderState& state, const ExtensionTask& task,
                           std::size_t n, std::uint64_t cap) {
    BuilderState st = state;
    switch (task.kind) {
        case ExtensionTask::Kind::free_point: {
            AmalgamResult R = free_adjoin_point(st.current, task.degree);
            append_step(st, task, R.embed_left, n, cap);
            break;
        }
        case ExtensionTask::Kind::divisor: {
            ExtensionTask resolved = task;
            if (!resolved.div_b) {
                auto prob = first_unsolved(st.current);
                if (!prob) return st;  // nothing to service
                resolved.div_b = prob->first;
                resolved.div_e = prob->second;
            }
            if (resolved.div_b->parent() != st.current ||
                resolved.div_e->parent() != st.current)
                throw Error("divisor task elements not in the current algebra");
            if (solvable_in(st.current, *resolved.div_b, *resolved.div_e))
                return st;  // already solved: no-op
            AmalgamResult R =
                divisor_extend(st.current, *resolved.div_b, *resolved.div_e);
            append_step(st, std::move(resolved), R.embed_left, n, cap);
            break;
        }
        case ExtensionTask::Kind::template_pair: {
            verify_template(task, cap);
            ExtensionTask resolved = task;
            std::size_t ldim =
                task.tmpl_ext->total_dim() - task.tmpl_base->total_dim();
            std::size_t radius = 2 * ldim + 2 + n;
            if (resolved.base_in_current) {
                if (resolved.base_in_current->src() != task.tmpl_base ||
                    resolved.base_in_current->tgt() != st.current)
                    throw Error("template attachment endpoints mismatch");
                StrongReport rep =
                    is_strong(resolved.base_in_current->image(),
                              GradedSubalgebra::full(st.current), 3, radius, cap);
                if (!rep.holds)
                    throw Error("template base not strong in the current algebra");
            } else {
                resolved.base_in_current =
                    find_base_embedding(task.tmpl_base, st.current, radius, cap);
            }
            AmalgamResult R =
                strong_amalgam(task.tmpl_ext, st.current, *task.tmpl_b_in_ext,
                               *resolved.base_in_current, n, cap);
            append_step(st, std::move(resolved), R.embed_right, n, cap);
            break;
        }
    }
    return st;
}

BuilderState divisor_saturate(const BuilderState& state, std::size_t budget,
                              std::size_t n, std::uint64_t cap) {
    BuilderState st = state;
    for (std::size_t k = 0; k < budget; ++k) {
        auto prob = first_unsolved(st.current);
        if (!prob) break;
        st = richness_step(
            st, ExtensionTask::divisor(prob->first, prob->second), n, cap);
    }
    return st;
}

BuilderState build_generic(PrimeField field, std::uint64_t seed,
                           const std::vector<ExtensionTask>& catalog,
                           std::size_t steps, std::size_t n, std::uint64_t cap) {
    for (const auto& t : catalog)
        if (t.kind == ExtensionTask::Kind::template_pair) verify_template(t, cap);

    BuilderState st = initial_state(field, 3, seed);
    std::mt19937_64 rng(seed);
    std::size_t done = 0;
    while (done < steps && !catalog.empty()) {
        // explicit Fisher-Yates so replay does not depend on the stdlib
        std::vector<std::size_t> order(catalog.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        for (std::size_t i = order.size(); i > 1; --i)
            std::swap(order[i - 1], order[rng() % i]);
        for (std::size_t i : order) {
            if (done == steps) break;
            ExtensionTask t = catalog[i];
            // catalog divisor tasks are generic: drop any stale elements and
            // service the first unsolved problem of the current algebra
            if (t.kind == ExtensionTask::Kind::divisor &&
                (!t.div_b || t.div_b->parent() != st.current)) {
                t.div_b.reset();
                t.div_e.reset();
            }
            if (t.kind == ExtensionTask::Kind::template_pair)
                t.base_in_current.reset();
            st = richness_step(st, t, n, cap);
            ++done;
        }
    }
    return st;
}

bool verify_chain(const BuilderState& state, std::uint64_t cap) {
    std::vector<AlgebraPtr> chain;
    if (!state.chain_log.empty()) chain.push_back(state.chain_log.front().embedding.src());
    for (const auto& step : state.chain_log) {
        if (chain.empty() || step.embedding.src() != chain.back()) return false;
        if (!step.embedding.is_embedding() || !step.embedding.respects_brackets())
            return false;
        chain.push_back(step.embedding.tgt());
    }
    if (!chain.empty() && chain.back() != state.current) return false;
    for (const auto& M : chain)
        if (!kc_membership(M, cap, false).member) return false;
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
        GradedHom into = state.chain_log[i].embedding;
        for (std::size_t j = i + 1; j < chain.size(); ++j) {
            if (j > i + 1) into = into.then(state.chain_log[j - 1].embedding);
            StrongReport rep = chain_strongness(into, 3, cap);
            if (!rep.holds) return false;
        }
    }
    return true;
}

}  // namespace gla
