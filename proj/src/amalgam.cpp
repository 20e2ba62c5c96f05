#include "gla/amalgam.hpp"

#include <cstdio>
#include <map>

namespace gla {
namespace {

std::string tagged_name(char prefix, std::size_t i) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%c%03zu", prefix, i);
    return std::string(buf);
}

// Projection of a quotient algebra's free presentation onto the quotient.
GradedHom quotient_projection(const AlgebraPtr& D) {
    const QuotientData* qd = D->quotient_data();
    if (!qd) throw Error("quotient_projection: algebra has no presentation");
    AlgebraPtr F = qd->free_algebra;
    std::vector<Matrix> mats;
    for (int d = 1; d <= 3; ++d) {
        Matrix m(D->field(), F->dim(d), D->dim(d));
        for (std::size_t r = 0; r < F->dim(d); ++r) {
            Vec unit(F->dim(d), 0);
            unit[r] = 1;
            m.set_row(r, D->project_from_free(d, unit));
        }
        mats.push_back(std::move(m));
    }
    return GradedHom(F, D, std::move(mats));
}

// The unique h with onto.then(h) == eval, if it exists (onto must be
// surjective; the factorization exists iff ker(onto) ⊆ ker(eval)).
std::optional<GradedHom> factor_through(const GradedHom& onto,
                                        const GradedHom& eval) {
    auto kers = onto.kernel();
    for (int d = 1; d <= 3; ++d) {
        const Subspace& K = kers[d - 1];
        for (std::size_t r = 0; r < K.dim(); ++r)
            if (!vec_is_zero(eval.apply(d, K.basis_row(r)))) return std::nullopt;
    }
    std::vector<Matrix> mats;
    for (int d = 1; d <= 3; ++d) {
        std::size_t n = onto.tgt()->dim(d);
        Matrix m(eval.tgt()->field(), n, eval.tgt()->dim(d));
        for (std::size_t r = 0; r < n; ++r) {
            Vec unit(n, 0);
            unit[r] = 1;
            auto pre = solve_left(onto.mat(d), unit);
            if (!pre) return std::nullopt;
            m.set_row(r, eval.apply(d, *pre));
        }
        mats.push_back(std::move(m));
    }
    return GradedHom(onto.tgt(), eval.tgt(), std::move(mats));
}

// Generators-to-generators map by name into a larger free algebra.
GradedHom rename_into(const AlgebraPtr& FS, const AlgebraPtr& F) {
    const auto& fg = F->hall()->generators();
    std::vector<LieElement> images;
    for (const auto& g : FS->hall()->generators()) {
        std::size_t gi = 0;
        while (gi < fg.size() && fg[gi].name != g.name) ++gi;
        if (gi == fg.size()) throw Error("rename_into: generator name not found");
        auto [d, idx] = F->hall()->generator_position(gi);
        images.push_back(F->basis_element(d, idx));
    }
    return hom_from_generators(FS, F, images);
}

}  // namespace

AmalgamResult free_amalgam(AlgebraPtr A, AlgebraPtr C, const GradedHom& b_in_a,
                           const GradedHom& b_in_c) {
    if (b_in_a.tgt() != A || b_in_c.tgt() != C)
        throw Error("free_amalgam: base maps must land in the two factors");
    AlgebraPtr B = b_in_a.src();
    if (b_in_c.src() != B) throw Error("free_amalgam: base maps must share a source");
    if (A->field() != C->field() || A->class_c() != C->class_c())
        throw Error("free_amalgam: factors disagree in characteristic or class");
    if (!b_in_a.is_embedding() || !b_in_c.is_embedding())
        throw Error("free_amalgam: base maps must be embeddings");

    const PrimeField f = A->field();
    const int c = A->class_c();

    OSystem osB = extract_o_system(GradedSubalgebra::full(B));
    GradedSubalgebra imA = b_in_a.image();
    GradedSubalgebra imC = b_in_c.image();
    OSystem osA = extract_o_system(GradedSubalgebra::full(A), &imA);
    OSystem osC = extract_o_system(GradedSubalgebra::full(C), &imC);

    std::vector<GeneratorSymbol> sharedGens, aGens, cGens;
    std::map<std::string, LieElement> imgA, imgC;
    std::map<std::string, AmalgamResult::GenSource> src_map;
    for (std::size_t i = 0; i < osB.elems.size(); ++i) {
        std::string nm = tagged_name('s', i);
        sharedGens.push_back({nm, osB.elems[i].homogeneous_degree()});
        imgA.emplace(nm, b_in_a.apply(osB.elems[i]));
        imgC.emplace(nm, b_in_c.apply(osB.elems[i]));
        src_map.emplace(nm, AmalgamResult::GenSource{0, b_in_a.apply(osB.elems[i])});
    }
    for (std::size_t i = 0; i < osA.elems.size(); ++i) {
        std::string nm = tagged_name('u', i);
        aGens.push_back({nm, osA.elems[i].homogeneous_degree()});
        imgA.emplace(nm, osA.elems[i]);
        src_map.emplace(nm, AmalgamResult::GenSource{0, osA.elems[i]});
    }
    for (std::size_t i = 0; i < osC.elems.size(); ++i) {
        std::string nm = tagged_name('v', i);
        cGens.push_back({nm, osC.elems[i].homogeneous_degree()});
        imgC.emplace(nm, osC.elems[i]);
        src_map.emplace(nm, AmalgamResult::GenSource{1, osC.elems[i]});
    }

    auto build_side = [&](const std::vector<GeneratorSymbol>& own,
                          const std::map<std::string, LieElement>& img,
                          AlgebraPtr T) {
        std::vector<GeneratorSymbol> gens = sharedGens;
        gens.insert(gens.end(), own.begin(), own.end());
        AlgebraPtr FS = Algebra::free_algebra(f, c, gens);
        std::vector<LieElement> images;
        for (const auto& g : FS->hall()->generators()) images.push_back(img.at(g.name));
        return std::pair<AlgebraPtr, GradedHom>{FS, hom_from_generators(FS, T, images)};
    };
    auto [FA, evalA] = build_side(aGens, imgA, A);
    auto [FC, evalC] = build_side(cGens, imgC, C);

    std::vector<GeneratorSymbol> allGens = sharedGens;
    allGens.insert(allGens.end(), aGens.begin(), aGens.end());
    allGens.insert(allGens.end(), cGens.begin(), cGens.end());
    AlgebraPtr F = Algebra::free_algebra(f, c, allGens);
    GradedHom renA = rename_into(FA, F);
    GradedHom renC = rename_into(FC, F);

    std::vector<LieElement> rels;
    auto push_kernel = [&](const GradedHom& eval, const GradedHom& ren) {
        auto kers = eval.kernel();
        for (int d = 2; d <= c; ++d) {
            const Subspace& K = kers[d - 1];
            for (std::size_t r = 0; r < K.dim(); ++r)
                rels.push_back(F->from_degree_vec(d, ren.apply(d, K.basis_row(r))));
        }
    };
    push_kernel(evalA, renA);
    push_kernel(evalC, renC);

    AlgebraPtr D = quotient(F, rels);
    GradedHom onto = quotient_projection(D);

    auto embed_side = [&](AlgebraPtr T, const GradedHom& eval, const GradedHom& ren) {
        std::vector<Matrix> mats;
        for (int d = 1; d <= 3; ++d) {
            Matrix m(f, T->dim(d), D->dim(d));
            for (std::size_t r = 0; r < T->dim(d); ++r) {
                Vec unit(T->dim(d), 0);
                unit[r] = 1;
                auto pre = solve_left(eval.mat(d), unit);
                if (!pre) throw Error("free_amalgam: side evaluation is not onto");
                m.set_row(r, onto.apply(d, ren.apply(d, *pre)));
            }
            mats.push_back(std::move(m));
        }
        return GradedHom(T, D, std::move(mats));
    };
    GradedHom embL = embed_side(A, evalA, renA);
    GradedHom embR = embed_side(C, evalC, renC);
    if (!embL.is_embedding() || !embR.is_embedding() ||
        !embL.respects_brackets() || !embR.respects_brackets())
        throw Error("free_amalgam: factor embeddings failed");
    GradedHom viaA = b_in_a.then(embL);
    GradedHom viaC = b_in_c.then(embR);
    for (int d = 1; d <= 3; ++d)
        if (!(viaA.mat(d) == viaC.mat(d)))
            throw Error("free_amalgam: base images disagree");

    AmalgamResult R{D, embL, embR, viaA.image(), onto, {}};
    for (const auto& g : F->hall()->generators())
        R.gen_sources.push_back(src_map.at(g.name));
    return R;
}

AmalgamResult free_adjoin_point(AlgebraPtr B, int degree_i) {
    if (degree_i < 1 || degree_i > B->class_c())
        throw Error("free_adjoin_point: degree out of range");
    AlgebraPtr Z = Algebra::zero_algebra(B->field(), B->class_c());
    AlgebraPtr X =
        Algebra::free_algebra(B->field(), B->class_c(), {{"x", degree_i}});
    return free_amalgam(B, X, GradedHom::zero(Z, B), GradedHom::zero(Z, X));
}

AmalgamResult divisor_extend(AlgebraPtr B, const LieElement& b,
                             const LieElement& e) {
    if (b.parent() != B || e.parent() != B)
        throw Error("divisor_extend: elements must lie in the base");
    if (e.is_zero())
        throw NotADivisorProblem("divisor_extend: zero target, solved by x = 0");
    int i = b.homogeneous_degree();
    int j = e.homogeneous_degree();
    if (i < 1 || j < 1)
        throw Error("divisor_extend: arguments must be nonzero homogeneous");
    if (j <= i || j > B->class_c())
        throw Error("divisor_extend: degrees must satisfy 1 <= i < j <= class");
    const PrimeField f = B->field();
    const int c = B->class_c();
    const int k = j - i;

    {
        Matrix ad(f, B->dim(k), B->dim(j));
        for (std::size_t r = 0; r < B->dim(k); ++r) {
            Vec unit(B->dim(k), 0);
            unit[r] = 1;
            ad.set_row(r, B->bracket_coords(i, b.coords(i), k, unit));
        }
        if (solve_left(ad, e.coords(j)))
            throw NotADivisorProblem(
                "divisor_extend: equation already solvable in the base");
    }

    CanonicalPair cp = canonical_pair(B);
    std::vector<GeneratorSymbol> gens = cp.free_alg->hall()->generators();
    gens.push_back({"x000", k});
    AlgebraPtr F = Algebra::free_algebra(f, c, gens);
    GradedHom ren = rename_into(cp.free_alg, F);

    std::vector<LieElement> rels;
    for (int d = 2; d <= c; ++d) {
        const Subspace& K = cp.kernel[d - 1];
        for (std::size_t r = 0; r < K.dim(); ++r)
            rels.push_back(F->from_degree_vec(d, ren.apply(d, K.basis_row(r))));
    }
    auto lift_into_F = [&](const LieElement& z, int d) {
        return F->from_degree_vec(d, ren.apply(d, cp.lift[d - 1].apply(z.coords(d))));
    };
    LieElement bF = lift_into_F(b, i);
    LieElement eF = lift_into_F(e, j);
    const auto& fg = F->hall()->generators();
    std::size_t xi = 0;
    while (fg[xi].name != "x000") ++xi;
    auto [xd, xpos] = F->hall()->generator_position(xi);
    LieElement xF = F->basis_element(xd, xpos);
    rels.push_back(bF.bracket(xF).sub(eF));

    AlgebraPtr D = quotient(F, rels);
    GradedHom onto = quotient_projection(D);

    std::vector<Matrix> matsL;
    for (int d = 1; d <= 3; ++d)
        matsL.push_back(cp.lift[d - 1].multiply(ren.mat(d)).multiply(onto.mat(d)));
    GradedHom embL(B, D, std::move(matsL));

    AlgebraPtr X = Algebra::free_algebra(f, c, {{"x", k}});
    LieElement xD = onto.apply(xF);
    GradedHom embR = hom_from_generators(X, D, {xD});
    if (!embL.is_embedding() || !embL.respects_brackets() || !embR.is_embedding())
        throw Error("divisor_extend: base does not embed into the extension");
    if (embL.apply(b).bracket(xD) != embL.apply(e))
        throw Error("divisor_extend: defining equation fails in the extension");

    AmalgamResult R{D, embL, embR, embL.image(), onto, {}};
    const auto& bgens = cp.free_alg->hall()->generators();
    std::map<std::string, AmalgamResult::GenSource> src_map;
    for (std::size_t gi = 0; gi < bgens.size(); ++gi)
        src_map.emplace(bgens[gi].name,
                        AmalgamResult::GenSource{0, cp.osys.elems[gi]});
    auto [xd2, xpos2] = X->hall()->generator_position(0);
    src_map.emplace("x000",
                    AmalgamResult::GenSource{1, X->basis_element(xd2, xpos2)});
    for (const auto& g : fg) R.gen_sources.push_back(src_map.at(g.name));
    return R;
}

AmalgamResult strong_amalgam(AlgebraPtr A, AlgebraPtr C, const GradedHom& b_in_a,
                             const GradedHom& b_in_c, std::size_t n,
                             std::uint64_t cap) {
    if (b_in_a.tgt() != A || b_in_c.tgt() != C)
        throw Error("strong_amalgam: base maps must land in the two factors");
    AlgebraPtr B0 = b_in_a.src();
    if (b_in_c.src() != B0)
        throw Error("strong_amalgam: base maps must share a source");
    if (!b_in_a.is_embedding() || !b_in_c.is_embedding())
        throw Error("strong_amalgam: base maps must be embeddings");

    const PrimeField f = A->field();
    const int c = A->class_c();
    std::size_t ldimAB = A->total_dim() - B0->total_dim();

    std::size_t radius = 2 * ldimAB + 2 + n;
    StrongReport repA;
    try {
        repA = is_strong(b_in_a.image(), GradedSubalgebra::full(A), c,
                         std::nullopt, cap);
    } catch (const EnumerationTooLarge&) {
        // exact intermediate enumeration infeasible at this size; fall back
        // to the same search radius used on the right
        repA = is_strong(b_in_a.image(), GradedSubalgebra::full(A), c, radius, cap);
    }
    if (!repA.holds)
        throw Error("strong_amalgam: base is not strong in the left factor");
    auto repC = is_strong(b_in_c.image(), GradedSubalgebra::full(C), c, radius, cap);
    if (!repC.holds)
        throw Error("strong_amalgam: base fails bounded strongness in the right factor");

    GradedHom curA = b_in_a;
    GradedHom curC = b_in_c;
    bool changed = true;
    while (changed) {
        changed = false;
        AlgebraPtr Bc = curA.src();
        for (int i = 1; i < c && !changed; ++i) {
            for (int j = i + 1; j <= c && !changed; ++j) {
                const int k = j - i;
                auto ptsI = projective_points(Subspace::full(f, Bc->dim(i)), cap);
                auto ptsJ = projective_points(Subspace::full(f, Bc->dim(j)), cap);
                for (const Vec& vb : ptsI) {
                    if (changed) break;
                    Matrix adB(f, Bc->dim(k), Bc->dim(j));
                    for (std::size_t r = 0; r < Bc->dim(k); ++r) {
                        Vec unit(Bc->dim(k), 0);
                        unit[r] = 1;
                        adB.set_row(r, Bc->bracket_coords(i, vb, k, unit));
                    }
                    for (const Vec& ve : ptsJ) {
                        if (changed) break;
                        if (solve_left(adB, ve)) continue;  // solvable: no problem
                        LieElement bB = Bc->from_degree_vec(i, vb);
                        LieElement eB = Bc->from_degree_vec(j, ve);
                        auto solve_in = [&](AlgebraPtr T, const GradedHom& cur)
                            -> std::optional<std::pair<Vec, Matrix>> {
                            Vec bt = cur.apply(i, vb);
                            Matrix ad(f, T->dim(k), T->dim(j));
                            for (std::size_t r = 0; r < T->dim(k); ++r) {
                                Vec unit(T->dim(k), 0);
                                unit[r] = 1;
                                ad.set_row(r, T->bracket_coords(i, bt, k, unit));
                            }
                            auto part = solve_left(ad, cur.apply(j, ve));
                            if (!part) return std::nullopt;
                            return std::pair<Vec, Matrix>{*part, left_kernel_basis(ad)};
                        };
                        auto sA = solve_in(A, curA);
                        auto sC = solve_in(C, curC);
                        if (!sA || !sC) continue;

                        // absorb: enlarge the base by the A-side solution
                        OSystem osB = extract_o_system(GradedSubalgebra::full(Bc));
                        std::vector<GeneratorSymbol> gens;
                        std::map<std::string, LieElement> byNameA;
                        std::map<std::string, std::size_t> baseIdx;
                        for (std::size_t t = 0; t < osB.elems.size(); ++t) {
                            std::string nm = tagged_name('s', t);
                            gens.push_back({nm, osB.elems[t].homogeneous_degree()});
                            byNameA.emplace(nm, curA.apply(osB.elems[t]));
                            baseIdx.emplace(nm, t);
                        }
                        gens.push_back({"t000", k});
                        byNameA.emplace("t000", A->from_degree_vec(k, sA->first));
                        AlgebraPtr FS = Algebra::free_algebra(f, c, gens);
                        std::vector<LieElement> imagesA;
                        for (const auto& g : FS->hall()->generators())
                            imagesA.push_back(byNameA.at(g.name));
                        GradedHom evalA = hom_from_generators(FS, A, imagesA);
                        auto [Bnew, embBnew] = as_algebra(evalA.image());
                        std::vector<Matrix> omats;
                        for (int d = 1; d <= 3; ++d) {
                            Matrix m(f, FS->dim(d), Bnew->dim(d));
                            for (std::size_t r = 0; r < FS->dim(d); ++r) {
                                auto pre =
                                    solve_left(embBnew.mat(d), evalA.mat(d).row(r));
                                if (!pre)
                                    throw Error("strong_amalgam: image corestriction failed");
                                m.set_row(r, *pre);
                            }
                            omats.push_back(std::move(m));
                        }
                        GradedHom ontoFS(FS, Bnew, std::move(omats));

                        // match the solution on the C side: scan the affine
                        // solution set in deterministic order
                        const Matrix& kerC = sC->second;
                        std::uint64_t count = 1;
                        for (std::size_t r = 0; r < kerC.rows(); ++r) {
                            count *= f.p();
                            if (count > cap)
                                throw EnumerationTooLarge(
                                    "strong_amalgam: solution coset too large");
                        }
                        for (std::uint64_t t = 0; t < count && !changed; ++t) {
                            Vec xc = sC->first;
                            std::uint64_t rem = t;
                            for (std::size_t r = 0; r < kerC.rows(); ++r) {
                                Scalar co = static_cast<Scalar>(rem % f.p());
                                rem /= f.p();
                                if (co)
                                    xc = vec_add(f, xc,
                                                 vec_scale(f, co, kerC.row(r)));
                            }
                            std::vector<LieElement> imagesC;
                            for (const auto& g : FS->hall()->generators()) {
                                if (g.name == "t000")
                                    imagesC.push_back(C->from_degree_vec(k, xc));
                                else
                                    imagesC.push_back(
                                        curC.apply(osB.elems[baseIdx.at(g.name)]));
                            }
                            GradedHom evalC = hom_from_generators(FS, C, imagesC);
                            auto h = factor_through(ontoFS, evalC);
                            if (!h || !h->is_embedding()) continue;
                            curA = embBnew;
                            curC = *h;
                            changed = true;
                        }
                        if (!changed)
                            throw Error(
                                "strong_amalgam: shared divisor problem has no "
                                "matching right-side solution");
                    }
                }
            }
        }
    }

    AmalgamResult R = free_amalgam(A, C, curA, curC);
    R.over = b_in_a.then(R.embed_left).image();
    return R;
}

std::optional<GradedHom> induced_hom(const AmalgamResult& R, const GradedHom& f,
                                     const GradedHom& g) {
    if (f.src() != R.embed_left.src() || g.src() != R.embed_right.src() ||
        f.tgt() != g.tgt())
        throw Error("induced_hom: map sources/targets do not line up");
    AlgebraPtr F = R.onto.src();
    std::vector<LieElement> images;
    for (const auto& gs : R.gen_sources)
        images.push_back(gs.side == 0 ? f.apply(gs.elem) : g.apply(gs.elem));
    GradedHom eval = hom_from_generators(F, f.tgt(), images);
    auto h = factor_through(R.onto, eval);
    if (!h) return std::nullopt;
    for (int d = 1; d <= 3; ++d)
        if (!(R.embed_left.then(*h).mat(d) == f.mat(d)) ||
            !(R.embed_right.then(*h).mat(d) == g.mat(d)))
            return std::nullopt;  // the pair does not agree on the base
    return h;
}

AlgebraPtr functor_F(AlgebraPtr a_star, std::uint64_t cap, bool check_membership) {
    if (a_star->class_c() != 2)
        throw Error("functor_F: input must be a class-2 algebra");
    if (check_membership) {
        auto rep = kc_membership(a_star, cap, false);
        if (!rep.member) throw Error("functor_F: input fails class membership");
    }
    CanonicalPair cp = canonical_pair(a_star);
    AlgebraPtr F3 = Algebra::free_algebra(a_star->field(), 3,
                                          cp.free_alg->hall()->generators());
    if (F3->dim(2) != cp.free_alg->dim(2))
        throw Error("functor_F: degree-2 bases disagree between classes");
    std::vector<LieElement> rels;
    const Subspace& K2 = cp.kernel[1];
    for (std::size_t r = 0; r < K2.dim(); ++r)
        rels.push_back(F3->from_degree_vec(2, K2.basis_row(r)));
    return quotient(F3, rels);
}

std::pair<GradedHom, std::size_t> gamma(const GradedHom& b_in_a,
                                        std::uint64_t cap) {
    AlgebraPtr Bs = b_in_a.src();
    AlgebraPtr As = b_in_a.tgt();
    if (Bs->class_c() != 2 || As->class_c() != 2)
        throw Error("gamma: expects class-2 algebras");
    if (!b_in_a.is_embedding()) throw Error("gamma: map must be an embedding");

    AlgebraPtr FB = functor_F(Bs, cap, false);
    AlgebraPtr FA = functor_F(As, cap, false);
    CanonicalPair cpB = canonical_pair(Bs);
    CanonicalPair cpA = canonical_pair(As);

    OSystem osFB = extract_o_system(GradedSubalgebra::full(FB));
    std::vector<LieElement> images;
    for (const auto& z : osFB.elems) {
        int d = z.homogeneous_degree();
        if (d > 2) throw Error("gamma: unexpected generator degree");
        Vec inB = cpB.onto.apply(d, FB->lift_to_free(d, z.coords(d)));
        Vec inA = b_in_a.apply(d, inB);
        Vec inFA = FA->project_from_free(d, cpA.lift[d - 1].apply(inA));
        images.push_back(FA->from_degree_vec(d, inFA));
    }
    GradedHom g = hom_from_generators(FB, FA, images);
    auto kers = g.kernel();
    if (kers[0].dim() || kers[1].dim())
        throw Error("gamma: kernel not concentrated in degree 3");
    return {g, kers[2].dim()};
}

bool decompose_amalgam_claim(const GradedSubalgebra& A, const GradedSubalgebra& C,
                             std::uint64_t cap) {
    if (A.parent() != C.parent())
        throw Error("decompose_amalgam_claim: arguments from different parents");
    if (!is_strong(A, 2, std::nullopt, cap).holds ||
        !is_strong(C, 2, std::nullopt, cap).holds)
        throw Error("decompose_amalgam_claim: arguments must be 2-strong");
    const PrimeField f = A.parent()->field();
    GradedSubalgebra B = A.intersect(C);

    bool delta_side = delta_rel(A, C) == delta_rel(A, B);

    auto [Aalg, eA] = as_algebra(A);
    auto [Calg, eC] = as_algebra(C);
    auto [Balg, eB] = as_algebra(B);
    auto include = [&](AlgebraPtr Sub, const GradedHom& eSub, AlgebraPtr Big,
                       const GradedHom& eBig) {
        std::vector<Matrix> mats;
        for (int d = 1; d <= 3; ++d) {
            Matrix m(f, Sub->dim(d), Big->dim(d));
            for (std::size_t r = 0; r < Sub->dim(d); ++r) {
                auto pre = solve_left(eBig.mat(d), eSub.mat(d).row(r));
                if (!pre)
                    throw Error("decompose_amalgam_claim: intersection escapes a factor");
                m.set_row(r, *pre);
            }
            mats.push_back(std::move(m));
        }
        return GradedHom(Sub, Big, std::move(mats));
    };
    AmalgamResult R = free_amalgam(Aalg, Calg, include(Balg, eB, Aalg, eA),
                                   include(Balg, eB, Calg, eC));
    bool product_side = R.product->dims() == generated_join(A, C).dims();
    return delta_side == product_side;
}

}  // namespace gla
