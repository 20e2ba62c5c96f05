#include "gla/cli.hpp"

#include <CLI11.hpp>
#include <fstream>

#include "gla/bch.hpp"
#include "gla/generic.hpp"
#include "gla/io.hpp"
#include "gla/random.hpp"
#include "gla/verify.hpp"

namespace gla {

namespace {

std::string dims_str(GradedDims d) {
    return "(" + std::to_string(d[1]) + "," + std::to_string(d[2]) + "," +
           std::to_string(d[3]) + ")";
}

std::string profile_str(const DeltaProfile& pr, int class_c) {
    std::string s = "o=(" + std::to_string(pr.o_dims[1]) + "," +
                    std::to_string(pr.o_dims[2]) + "," +
                    std::to_string(pr.o_dims[3]) + ") ideal=(" +
                    std::to_string(pr.ideal_dims[2]);
    if (class_c >= 3) s += "," + std::to_string(pr.ideal_dims[3]);
    s += ") d2=" + std::to_string(pr.delta_2) + " d3=" + std::to_string(pr.delta_3);
    return s;
}

// split a ';'-separated list of element expressions
std::vector<LieElement> parse_elements(const AlgebraFile& f, const std::string& list) {
    std::vector<LieElement> out;
    std::size_t start = 0;
    while (start <= list.size()) {
        std::size_t semi = list.find(';', start);
        std::string piece = list.substr(
            start, semi == std::string::npos ? std::string::npos : semi - start);
        if (piece.find_first_not_of(" \t") != std::string::npos)
            out.push_back(parse_element(f, piece));
        if (semi == std::string::npos) break;
        start = semi + 1;
    }
    if (out.empty()) throw Error("empty element list");
    return out;
}

// embedding induced by matching generator names of the base inside the host
GradedHom name_match_hom(const AlgebraFile& base, const AlgebraFile& host) {
    std::vector<LieElement> images;
    for (const auto& g : base.gens) {
        bool found = false;
        for (std::size_t i = 0; i < host.gens.size(); ++i)
            if (host.gens[i].name == g.name) {
                if (host.gens[i].degree != g.degree)
                    throw Error("generator '" + g.name + "' has mismatched degree");
                auto [d, idx] = host.free_alg->hall()->generator_position(i);
                LieElement e = host.free_alg->basis_element(d, idx);
                images.push_back(host.relations.empty()
                                     ? e
                                     : host.algebra->project_from_free(e));
                found = true;
            }
        if (!found) throw Error("generator '" + g.name + "' missing from host file");
    }
    GradedHom eval = hom_from_generators(base.free_alg, host.algebra, images);
    for (const auto& r : base.relations)
        if (!eval.apply(r).is_zero())
            throw Error("base relations are not satisfied in the host");
    if (base.relations.empty()) return eval;
    std::vector<Matrix> mats;
    for (int d = 1; d <= 3; ++d) {
        Matrix m(base.algebra->field(), base.algebra->dim(d), host.algebra->dim(d));
        for (std::size_t i = 0; i < base.algebra->dim(d); ++i) {
            Vec unit(base.algebra->dim(d), 0);
            unit[i] = 1;
            m.set_row(i, eval.apply(d, base.algebra->lift_to_free(d, unit)));
        }
        mats.push_back(std::move(m));
    }
    GradedHom h(base.algebra, host.algebra, std::move(mats));
    if (!h.respects_brackets()) throw Error("induced base map is not a homomorphism");
    return h;
}

void write_out(const std::string& path, AlgebraPtr M) {
    if (path.empty()) return;
    std::ofstream f(path);
    if (!f) throw Error("cannot write '" + path + "'");
    f << print_algebra(to_file(std::move(M)));
}

struct BchStats {
    int fails = 0;
    void note(std::ostream& out, const char* name, bool ok) {
        out << "check " << name << (ok ? " pass" : " FAIL") << "\n";
        if (!ok) ++fails;
    }
};

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"graded nilpotent Lie algebra toolbox"};
    app.require_subcommand(1);
    int exit_code = 0;

    // shared option storage
    std::string file_a, file_b, file_c, gens, inner, outer, expr_b, expr_e;
    std::string out_path, mode = "free", catalog_spec = "free1";
    std::uint64_t seed = 0, cap = 200000;
    int trials = 100, level = 3, degree = 1, steps = 0;
    std::uint32_t prime = 5;
    std::optional<std::size_t> bound_k;
    std::size_t bound_k_val = 0;
    bool check_roundtrip = false;

    std::string arg_echo;
    for (const auto& a : args) arg_echo += " " + a;
    auto echo = [&](const std::string& name) { out << "cmd" << arg_echo << "\n"; (void)name; };

    auto* c_delta = app.add_subcommand("delta", "predimension profile");
    c_delta->add_option("file", file_a)->required();
    c_delta->callback([&] {
        echo("delta");
        auto f = load_algebra(file_a);
        out << profile_str(delta_profile(f.algebra), f.class_c) << "\n";
    });

    auto* c_strong = app.add_subcommand("strong", "strongness of a subalgebra");
    c_strong->add_option("file", file_a)->required();
    c_strong->add_option("--gens", gens, "';'-separated generator expressions")->required();
    c_strong->add_option("--level", level);
    c_strong->add_option("--bound-k", bound_k_val);
    c_strong->add_option("--cap", cap);
    c_strong->callback([&] {
        echo("strong");
        auto f = load_algebra(file_a);
        auto S = generated_subalgebra(f.algebra, parse_elements(f, gens));
        if (c_strong->count("--bound-k")) bound_k = bound_k_val;
        auto rep = is_strong(S, level, bound_k, cap);
        out << "strong=" << (rep.holds ? "yes" : "no")
            << " exact=" << (rep.exact ? "yes" : "no");
        if (!rep.exact) out << " bound_k=" << rep.bound_k;
        out << "\n";
        if (!rep.holds && rep.witness)
            out << "witness dims=" << dims_str(rep.witness->dims())
                << " delta=" << delta_value(*rep.witness) << "\n";
        if (!rep.holds) exit_code = 1;
    });

    auto* c_css = app.add_subcommand("css", "self-sufficient closure");
    c_css->add_option("file", file_a)->required();
    c_css->add_option("--gens", gens)->required();
    c_css->add_option("--level", level);
    c_css->add_option("--bound-k", bound_k_val);
    c_css->add_option("--cap", cap);
    c_css->callback([&] {
        echo("css");
        auto f = load_algebra(file_a);
        auto S = generated_subalgebra(f.algebra, parse_elements(f, gens));
        if (c_css->count("--bound-k")) bound_k = bound_k_val;
        auto C = css(S, level, bound_k, cap);
        out << "css dims=" << dims_str(C.dims()) << " delta=" << delta_value(C)
            << "\n";
    });

    auto* c_classify = app.add_subcommand("classify", "extension classification");
    c_classify->add_option("file", file_a)->required();
    c_classify->add_option("--inner", inner)->required();
    c_classify->add_option("--outer", outer)->required();
    c_classify->add_option("--cap", cap);
    c_classify->callback([&] {
        echo("classify");
        auto f = load_algebra(file_a);
        auto in_elems = parse_elements(f, inner);
        auto all = in_elems;
        for (auto& e : parse_elements(f, outer)) all.push_back(e);
        auto U = generated_subalgebra(f.algebra, in_elems);
        auto V = generated_subalgebra(f.algebra, all);
        out << "kind=" << to_string(classify_extension(U, V, cap)) << "\n";
    });

    auto* c_kc = app.add_subcommand("kc-check", "amalgamation-class membership");
    c_kc->add_option("file", file_a)->required();
    c_kc->add_option("--cap", cap);
    c_kc->callback([&] {
        echo("kc-check");
        auto f = load_algebra(file_a);
        auto rep = kc_membership(f.algebra, cap, false);
        out << "member=" << (rep.member ? "yes" : "no")
            << " cond2_exact=" << (rep.cond2_exact ? "yes" : "no") << "\n";
        for (const auto& v : rep.violations) out << "violation " << v << "\n";
        if (!rep.member) exit_code = 1;
    });

    auto* c_amalgam = app.add_subcommand("amalgam", "amalgam of two presentations");
    c_amalgam->add_option("file_a", file_a)->required();
    c_amalgam->add_option("file_c", file_c)->required();
    c_amalgam->add_option("--base", file_b, "base file; its generator names must appear in both sides");
    c_amalgam->add_option("--mode", mode)->check(CLI::IsMember({"free", "strong"}));
    c_amalgam->add_option("--level", level);
    c_amalgam->add_option("--cap", cap);
    c_amalgam->add_option("--out", out_path);
    c_amalgam->callback([&] {
        echo("amalgam");
        auto A = load_algebra(file_a);
        auto C = load_algebra(file_c);
        AmalgamResult R = [&] {
            if (file_b.empty()) {
                auto zero = Algebra::zero_algebra(PrimeField(A.p), A.class_c);
                return free_amalgam(A.algebra, C.algebra,
                                    GradedHom::zero(zero, A.algebra),
                                    GradedHom::zero(zero, C.algebra));
            }
            auto B = load_algebra(file_b);
            auto ba = name_match_hom(B, A);
            auto bc = name_match_hom(B, C);
            return mode == "strong"
                       ? strong_amalgam(A.algebra, C.algebra, ba, bc, level, cap)
                       : free_amalgam(A.algebra, C.algebra, ba, bc);
        }();
        out << "dims=" << dims_str(R.product->dims())
            << " delta=" << delta_value(R.product) << "\n";
        write_out(out_path, R.product);
    });

    auto* c_adjoin = app.add_subcommand("adjoin", "free point adjunction");
    c_adjoin->add_option("file", file_a)->required();
    c_adjoin->add_option("--degree", degree)->check(CLI::Range(1, 3));
    c_adjoin->add_option("--out", out_path);
    c_adjoin->callback([&] {
        echo("adjoin");
        auto f = load_algebra(file_a);
        auto R = free_adjoin_point(f.algebra, degree);
        out << "dims=" << dims_str(R.product->dims())
            << " delta=" << delta_value(R.product) << "\n";
        write_out(out_path, R.product);
    });

    auto* c_divisor = app.add_subcommand("divisor", "adjoin a divisor solution");
    c_divisor->add_option("file", file_a)->required();
    c_divisor->add_option("--b", expr_b)->required();
    c_divisor->add_option("--e", expr_e)->required();
    c_divisor->add_option("--out", out_path);
    c_divisor->callback([&] {
        echo("divisor");
        auto f = load_algebra(file_a);
        auto R = divisor_extend(f.algebra, parse_element(f, expr_b),
                                parse_element(f, expr_e));
        out << "dims=" << dims_str(R.product->dims())
            << " delta=" << delta_value(R.product) << "\n";
        write_out(out_path, R.product);
    });

    auto* c_functor = app.add_subcommand("functor-f", "class-3 hull of a class-2 algebra");
    c_functor->add_option("file", file_a)->required();
    c_functor->add_option("--cap", cap);
    c_functor->add_option("--out", out_path);
    c_functor->callback([&] {
        echo("functor-f");
        auto f = load_algebra(file_a);
        auto H = functor_F(f.algebra, cap);
        out << "dims=" << dims_str(H->dims()) << " delta=" << delta_value(H) << "\n";
        write_out(out_path, H);
    });

    auto* c_gamma = app.add_subcommand("gamma", "induced map on class-3 hulls");
    c_gamma->add_option("file_base", file_b)->required();
    c_gamma->add_option("file_host", file_a)->required();
    c_gamma->add_option("--cap", cap);
    c_gamma->callback([&] {
        echo("gamma");
        auto B = load_algebra(file_b);
        auto A = load_algebra(file_a);
        auto [h, k3] = gamma(name_match_hom(B, A), cap);
        out << "kernel3=" << k3 << "\n";
    });

    auto* c_generic = app.add_subcommand("generic-build", "bounded generic chain");
    c_generic->add_option("--p", prime);
    c_generic->add_option("--seed", seed)->required();
    c_generic->add_option("--steps", steps)->required();
    c_generic->add_option("--catalog", catalog_spec,
                          "comma list of free1|free2|free3|div");
    c_generic->add_option("--cap", cap);
    c_generic->add_option("--out", out_path);
    c_generic->callback([&] {
        echo("generic-build");
        std::vector<ExtensionTask> catalog;
        std::size_t start = 0;
        while (start <= catalog_spec.size()) {
            std::size_t comma = catalog_spec.find(',', start);
            std::string item = catalog_spec.substr(
                start, comma == std::string::npos ? std::string::npos : comma - start);
            if (item == "free1") catalog.push_back(ExtensionTask::free_point(1));
            else if (item == "free2") catalog.push_back(ExtensionTask::free_point(2));
            else if (item == "free3") catalog.push_back(ExtensionTask::free_point(3));
            else if (item == "div") catalog.push_back(ExtensionTask::divisor());
            else if (!item.empty()) throw Error("unknown catalog item '" + item + "'");
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        auto st = build_generic(PrimeField(prime), seed, catalog, steps, 3, cap);
        for (std::size_t i = 0; i < st.chain_log.size(); ++i) {
            const auto& step = st.chain_log[i];
            const char* kind = step.task.kind == ExtensionTask::Kind::free_point
                                   ? "free_point"
                                   : step.task.kind == ExtensionTask::Kind::divisor
                                         ? "divisor"
                                         : "template";
            out << "step " << i << " kind=" << kind
                << " dims=" << dims_str(step.embedding.tgt()->dims())
                << " delta=" << step.profile.delta_3
                << " exact=" << (step.strong_exact ? "yes" : "no") << "\n";
        }
        out << "final dims=" << dims_str(st.current->dims())
            << " delta=" << delta_value(st.current) << "\n";
        write_out(out_path, st.current);
    });

    auto* c_bch = app.add_subcommand("bch", "group-view law checks");
    c_bch->add_option("file", file_a)->required();
    c_bch->add_option("--seed", seed)->required();
    c_bch->add_option("--trials", trials);
    c_bch->add_flag("--check-roundtrip", check_roundtrip,
                    "only the recovery round trips");
    c_bch->callback([&] {
        echo("bch");
        auto f = load_algebra(file_a);
        GroupView G(f.algebra);
        std::mt19937_64 rng(seed);
        auto M = f.algebra;
        BchStats st;
        bool assoc = true, expo = true, comm = true, rt = true;
        for (int t = 0; t < trials; ++t) {
            GroupElement x = {random_element(M, rng)}, y = {random_element(M, rng)},
                         z = {random_element(M, rng)};
            if (!check_roundtrip) {
                assoc &= G.mul(G.mul(x, y), z) == G.mul(x, G.mul(y, z));
                expo &= G.pow(x, static_cast<long long>(M->field().p())).value.is_zero();
                comm &= G.group_commutator(G.group_commutator(x, y), z).value ==
                        x.value.bracket(y.value).bracket(z.value);
            }
            rt &= G.recover_sum(x, y) == x.value.add(y.value);
            rt &= G.recover_bracket(x, y) == x.value.bracket(y.value);
        }
        if (!check_roundtrip) {
            st.note(out, "associativity", assoc);
            st.note(out, "exponent-p", expo);
            st.note(out, "commutator-identity", comm);
        }
        st.note(out, "recovery-roundtrip", rt);
        if (st.fails > 0) exit_code = 1;
    });

    auto* c_verify = app.add_subcommand("verify", "full invariant suite");
    c_verify->add_option("--seed", seed)->required();
    c_verify->add_option("--trials", trials);
    c_verify->add_option("--cap", cap);
    c_verify->callback([&] {
        echo("verify");
        if (!run_verification(seed, trials, cap, out)) exit_code = 1;
    });

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return exit_code;
}

}  // namespace gla
