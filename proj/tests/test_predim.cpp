#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gla/predim.hpp"

using namespace gla;

namespace {
const PrimeField F5(5);

AlgebraPtr free_xy() {
    return Algebra::free_algebra(F5, 3, {{"x", 1}, {"y", 1}});
}

LieElement rand_homog(const AlgebraPtr& M, std::mt19937_64& rng) {
    while (true) {
        int d = 1 + rng() % M->class_c();
        if (M->dim(d) == 0) continue;
        Vec v(M->dim(d));
        bool nz = false;
        for (auto& c : v) {
            c = rng() % 5;
            nz |= c != 0;
        }
        if (nz) return M->from_degree_vec(d, v);
    }
}

GradedSubalgebra rand_subalg(const AlgebraPtr& M, std::mt19937_64& rng,
                             int max_gens = 2) {
    std::vector<LieElement> gens;
    int k = 1 + rng() % max_gens;
    for (int i = 0; i < k; ++i) gens.push_back(rand_homog(M, rng));
    return generated_subalgebra(M, gens);
}

// class-2 instance on four generators with relation span avoiding
// decomposable 2-vectors; membership re-filtered computationally
AlgebraPtr rand_k2_instance(std::mt19937_64& rng) {
    while (true) {
        auto F = Algebra::free_algebra(
            F5, 2, {{"x", 1}, {"y", 1}, {"z", 1}, {"w", 1}});
        int k = 1 + rng() % 2;
        std::vector<LieElement> rels;
        for (int i = 0; i < k; ++i) {
            Vec v(F->dim(2));
            for (auto& c : v) c = rng() % 5;
            auto e = F->from_degree_vec(2, v);
            if (!e.is_zero()) rels.push_back(e);
        }
        auto M = quotient(F, rels);
        if (kc_membership(M, 50, false).member) return M;
    }
}
}  // namespace

TEST_CASE("delta: frozen examples") {
    auto F = free_xy();
    CHECK(delta_value(GradedSubalgebra::zero(F)) == 0);
    CHECK(delta_value(F) == 2);
    auto p = delta_profile(F);
    CHECK(p.o_dims == GradedDims{0, 2, 0, 0});
    CHECK(p.ideal_dims == GradedDims{0, 0, 0, 0});

    LieElement x = F->basis_element(1, 0), y = F->basis_element(1, 1);
    auto M1 = quotient(F, {x.bracket(y)});
    auto p1 = delta_profile(M1);
    CHECK(p1.delta_3 == 1);
    CHECK(p1.ideal_dims == GradedDims{0, 0, 1, 0});

    auto M2 = quotient(F, {x.bracket(y).bracket(x)});
    auto p2 = delta_profile(M2);
    CHECK(p2.delta_2 == 2);
    CHECK(p2.delta_3 == 1);
    CHECK(p2.ideal_dims == GradedDims{0, 0, 0, 1});
}

TEST_CASE("delta: class-3 factorization cross-check") {
    auto F = free_xy();
    LieElement x = F->basis_element(1, 0), y = F->basis_element(1, 1);
    std::vector<AlgebraPtr> ms = {
        AlgebraPtr(F),
        quotient(F, {x.bracket(y)}),
        quotient(F, {x.bracket(y).bracket(x)}),
        quotient(F, {x.bracket(y).bracket(x).sub(x.bracket(y).bracket(y))}),
    };
    std::mt19937_64 rng(3);
    for (const auto& M : ms) {
        CHECK(delta_cross_check(GradedSubalgebra::full(M)));
        for (int t = 0; t < 10; ++t)
            CHECK(delta_cross_check(rand_subalg(M, rng)));
    }
}

TEST_CASE("delta_rel: frozen examples") {
    auto F = free_xy();
    LieElement x = F->basis_element(1, 0), y = F->basis_element(1, 1);
    auto A = generated_subalgebra(F, {x});
    CHECK(delta_rel(A, GradedSubalgebra::full(F)) == 0);  // A inside C
    CHECK(delta_rel(A, GradedSubalgebra::zero(F)) == 1);

    auto M = quotient(F, {x.bracket(y)});
    auto Ax = generated_subalgebra(M, {M->basis_element(1, 0)});
    auto Cy = generated_subalgebra(M, {M->basis_element(1, 1)});
    CHECK(delta_rel(Ax, Cy) == 0);  // join has delta 1, C has delta 1
}

TEST_CASE("is_strong: basic verdicts and witness") {
    auto F = free_xy();
    auto full = GradedSubalgebra::full(F);
    CHECK(is_strong(full, 3).holds);
    CHECK(is_strong(GradedSubalgebra::zero(F), 3).holds);

    // delta-0 ambient: single generators are not strong
    auto F3 = Algebra::free_algebra(F5, 2, {{"x", 1}, {"y", 1}, {"z", 1}});
    LieElement x = F3->basis_element(1, 0), y = F3->basis_element(1, 1),
               z = F3->basis_element(1, 2);
    auto M = quotient(F3, {x.bracket(y), x.bracket(z), y.bracket(z)});
    CHECK(delta_value(GradedSubalgebra::full(M)) == 0);
    auto A = generated_subalgebra(M, {M->basis_element(1, 0)});
    auto rep = is_strong(A, 2);
    CHECK(!rep.holds);
    REQUIRE(rep.witness.has_value());
    CHECK(rep.witness->contains(A));
    CHECK(delta_value(*rep.witness) < delta_value(A));

    // bounded search finds the same verdict
    auto repb = is_strong(A, 2, std::size_t{2});
    CHECK(!repb.holds);
    CHECK(!repb.exact);
}

TEST_CASE("is_strong: exact and bounded verdicts agree on small instances") {
    auto F = free_xy();
    LieElement x = F->basis_element(1, 0), y = F->basis_element(1, 1);
    std::vector<AlgebraPtr> ms = {
        AlgebraPtr(F),
        quotient(F, {x.bracket(y).bracket(x)}),
        quotient(F, {x.bracket(y)}),
    };
    std::mt19937_64 rng(11);
    for (const auto& M : ms)
        for (int t = 0; t < 15; ++t) {
            auto A = rand_subalg(M, rng);
            auto e = is_strong(A, 3);
            auto b = is_strong(A, 3, M->total_dim());
            CHECK(e.holds == b.holds);
        }
}

TEST_CASE("css: fixed point, extensivity, idempotence, monotonicity") {
    auto F3 = Algebra::free_algebra(F5, 2, {{"x", 1}, {"y", 1}, {"z", 1}});
    LieElement x = F3->basis_element(1, 0), y = F3->basis_element(1, 1),
               z = F3->basis_element(1, 2);
    auto M = quotient(F3, {x.bracket(y), x.bracket(z), y.bracket(z)});
    auto A = generated_subalgebra(M, {M->basis_element(1, 0)});
    auto cl = css(A, 2);
    CHECK(cl == GradedSubalgebra::full(M));  // witness closure absorbs everything

    auto F = free_xy();
    auto full = GradedSubalgebra::full(F);
    CHECK(css(full, 3) == full);

    std::mt19937_64 rng(29);
    LieElement fx = F->basis_element(1, 0), fy = F->basis_element(1, 1);
    std::vector<AlgebraPtr> ms = {
        quotient(F, {fx.bracket(fy).bracket(fx)}),
        quotient(F, {fx.bracket(fy)}),
    };
    for (const auto& m : ms)
        for (int t = 0; t < 12; ++t) {
            auto B = rand_subalg(m, rng);
            auto cb = css(B, 3);
            CHECK(cb.contains(B));
            CHECK(css(cb, 3) == cb);
            CHECK(is_strong(cb, 3).holds);
            // monotone: B ⊆ D ⇒ css(B) ⊆ css(D)
            auto D = generated_join(B, rand_subalg(m, rng));
            CHECK(css(D, 3).contains(cb));
            // strict delta drop when the level-2 closure is proper
            auto c2 = css(B, 2);
            if (c2 != B) CHECK(delta_value(c2) < delta_value(B));
        }
}

TEST_CASE("css level 2 splits over the degree-1 part") {
    // css2(A) equals the join of css2(<A_1>) with A, on class-3 instances
    // whose class-2 truncation is free
    auto F = Algebra::free_algebra(F5, 3, {{"x", 1}, {"y", 1}, {"z", 1}});
    std::mt19937_64 rng(41);
    for (int t = 0; t < 5; ++t) {
        std::vector<LieElement> rels;
        int k = 1 + rng() % 3;
        for (int i = 0; i < k; ++i) {
            Vec v(F->dim(3));
            for (auto& c : v) c = rng() % 5;
            auto e = F->from_degree_vec(3, v);
            if (!e.is_zero()) rels.push_back(e);
        }
        auto M = quotient(F, rels);
        for (int s = 0; s < 5; ++s) {
            auto A = rand_subalg(M, rng, 3);
            std::vector<LieElement> deg1;
            for (const auto& e : A.basis_elements())
                if (e.homogeneous_degree() == 1) deg1.push_back(e);
            auto A1 = generated_subalgebra(M, deg1);
            auto lhs = css(A, 2, std::nullopt, 500000);
            auto rhs = generated_join(css(A1, 2, std::nullopt, 500000), A);
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("strongness laws on small class-3 instances") {
    auto F = free_xy();
    LieElement x = F->basis_element(1, 0), y = F->basis_element(1, 1);
    auto M = quotient(F, {x.bracket(y).bracket(x)});
    std::mt19937_64 rng(7);
    int checked = 0;
    for (int t = 0; t < 60; ++t) {
        auto A = rand_subalg(M, rng);
        auto C = rand_subalg(M, rng);
        // transitivity: A ≤ C ≤ M ⇒ A ≤ M (test when A ⊆ C)
        if (C.contains(A)) {
            bool a_in_c = is_strong(A, C, 3, std::nullopt, 200000).holds;
            bool c_in_m = is_strong(C, 3).holds;
            if (a_in_c && c_in_m) {
                CHECK(is_strong(A, 3).holds);
                ++checked;
            }
        }
        // intersection: A, C ≤ M ⇒ A ∩ C ≤ M
        if (is_strong(A, 3).holds && is_strong(C, 3).holds) {
            CHECK(is_strong(A.intersect(C), 3).holds);
            ++checked;
        }
        // C ≤ M and E ≤_2 M ⇒ E ∩ C ≤ E
        auto E = rand_subalg(M, rng);
        if (is_strong(C, 3).holds && is_strong(E, 2).holds) {
            CHECK(is_strong(E.intersect(C), E, 3, std::nullopt, 200000).holds);
            ++checked;
        }
    }
    CHECK(checked >= 20);
}

TEST_CASE("submodularity of delta_2 on class-2 members") {
    std::mt19937_64 rng(13);
    for (int t = 0; t < 12; ++t) {
        auto M = rand_k2_instance(rng);
        for (int s = 0; s < 5; ++s) {
            auto A = rand_subalg(M, rng, 3);
            auto C = rand_subalg(M, rng, 3);
            long long dj = delta_profile(generated_join(A, C)).delta_2;
            long long da = delta_profile(A).delta_2;
            long long dc = delta_profile(C).delta_2;
            long long di = delta_profile(A.intersect(C)).delta_2;
            CHECK(dj <= da + dc - di);
        }
    }
}

TEST_CASE("submodularity of delta on 2-strong pairs, class 3") {
    // degree-3 relations leave the class-2 truncation free, hence a member
    auto F = Algebra::free_algebra(F5, 3, {{"x", 1}, {"y", 1}, {"z", 1}});
    std::mt19937_64 rng(19);
    int checked = 0;
    for (int t = 0; t < 10; ++t) {
        std::vector<LieElement> rels;
        int k = 1 + rng() % 3;
        for (int i = 0; i < k; ++i) {
            Vec v(F->dim(3));
            for (auto& c : v) c = rng() % 5;
            auto e = F->from_degree_vec(3, v);
            if (!e.is_zero()) rels.push_back(e);
        }
        auto M = quotient(F, rels);
        for (int s = 0; s < 8; ++s) {
            auto A = css(rand_subalg(M, rng), 2, std::size_t{3}, 500000);
            auto C = css(rand_subalg(M, rng), 2, std::size_t{3}, 500000);
            if (!is_strong(A, 2, std::size_t{3}, 500000).holds) continue;
            if (!is_strong(C, 2, std::size_t{3}, 500000).holds) continue;
            long long dj = delta_value(generated_join(A, C));
            long long di = delta_value(A.intersect(C));
            CHECK(dj <= delta_value(A) + delta_value(C) - di);
            ++checked;
        }
    }
    CHECK(checked >= 30);
}

TEST_CASE("kc_membership: frozen examples") {
    auto F = free_xy();
    auto repF = kc_membership(F);
    CHECK(repF.member);
    CHECK(repF.cond2_exact);
    CHECK(repF.notes.empty());

    LieElement x = F->basis_element(1, 0), y = F->basis_element(1, 1);
    auto M = quotient(F, {x.bracket(y)});
    auto repM = kc_membership(M);
    CHECK(!repM.member);
    CHECK(!repM.violations.empty());

    auto Z = Algebra::zero_algebra(F5, 3);
    CHECK(kc_membership(Z).member);

    // degree-3 quotients introduce zero divisors in degree (1,2)
    auto M3 = quotient(F, {x.bracket(y).bracket(x)});
    CHECK(!kc_membership(M3).member);
}

TEST_CASE("kc_membership: scale fallback is recorded") {
    auto F = Algebra::free_algebra(
        F5, 2, {{"x", 1}, {"y", 1}, {"z", 1}, {"w", 1}});
    LieElement x = F->basis_element(1, 0), y = F->basis_element(1, 1),
               z = F->basis_element(1, 2), w = F->basis_element(1, 3);
    auto M = quotient(F, {x.bracket(y).add(z.bracket(w))});
    auto rep = kc_membership(M, 50, false);
    CHECK(rep.member);  // no zero divisor in the pencil of that relation
    CHECK(!rep.cond2_exact);
    CHECK_THROWS_AS(kc_membership(M, 50, true), EnumerationTooLarge);
}

TEST_CASE("geometry d and cl") {
    auto F = free_xy();
    CHECK(geometry_d(GradedSubalgebra::zero(F)) == 0);
    auto full = GradedSubalgebra::full(F);
    CHECK(geometry_d(full) == 2);

    LieElement x = F->basis_element(1, 0), y = F->basis_element(1, 1);
    auto H = generated_subalgebra(F, {x});
    CHECK(cl_member(x, H));
    CHECK(!cl_member(y, H));
    CHECK_THROWS_AS(cl_member(x.bracket(y).bracket(x), H, 200000), Error);

    // d(<H a>) <= d(H) + 1 on random instances
    std::mt19937_64 rng(31);
    auto M = quotient(F, {x.bracket(y).bracket(x)});
    for (int t = 0; t < 15; ++t) {
        auto Hs = rand_subalg(M, rng);
        LieElement a = rand_homog(M, rng);
        if (a.homogeneous_degree() == 3) continue;
        auto gens = Hs.basis_elements();
        gens.push_back(a);
        auto Ha = generated_subalgebra(M, gens);
        CHECK(geometry_d(Ha) <= geometry_d(Hs) + 1);
        CHECK(geometry_d(Ha) >= geometry_d(Hs));
    }
}

TEST_CASE("classify_extension") {
    // fresh free generator: transcendental
    auto F = free_xy();
    LieElement x = F->basis_element(1, 0), y = F->basis_element(1, 1);
    auto U = generated_subalgebra(F, {y});
    auto V = GradedSubalgebra::full(F);
    CHECK(classify_extension(U, V) == ExtensionKind::transcendental);

    // degree-2 solution of a bracket equation over U: algebraic
    auto Fbx = Algebra::free_algebra(F5, 3, {{"b", 1}, {"u", 2}});
    LieElement b = Fbx->basis_element(1, 0), u = Fbx->basis_element(2, 0);
    auto Ua = generated_subalgebra(Fbx, {b, b.bracket(u)});
    auto Va = GradedSubalgebra::full(Fbx);
    CHECK(classify_extension(Ua, Va) == ExtensionKind::algebraic);

    // two generators, delta 0, every 1..2-generated proper intermediate positive
    auto M = quotient(F, {x.bracket(y).bracket(x), x.bracket(y).bracket(y)});
    CHECK(delta_value(GradedSubalgebra::full(M)) == 0);
    CHECK(classify_extension(GradedSubalgebra::zero(M), GradedSubalgebra::full(M)) ==
          ExtensionKind::minimal_prealgebraic);

    // free two-generator extension over nothing: composite (delta grows by 2)
    CHECK(classify_extension(GradedSubalgebra::zero(F), V) ==
          ExtensionKind::composite);
}

TEST_CASE("degree-3 padding drops before degree-1 strongness bound") {
    // if B is generated by its degree-1..2 part plus k independent degree-3
    // elements and B is strong at search radius n + k, then the 1..2 part
    // alone is strong at radius n
    auto F = free_xy();
    LieElement x = F->basis_element(1, 0), y = F->basis_element(1, 1);
    auto M = quotient(F, {x.bracket(y).bracket(x).sub(x.bracket(y).bracket(y))});
    std::mt19937_64 rng(53);
    int checked = 0;
    for (int t = 0; t < 40; ++t) {
        auto B = rand_subalg(M, rng, 3);
        std::vector<LieElement> lower;
        for (const auto& e : B.basis_elements())
            if (e.homogeneous_degree() <= 2) lower.push_back(e);
        auto B12 = generated_subalgebra(M, lower);
        std::size_t k = B.dim(3) - B12.dim(3);
        if (k == 0) continue;
        for (std::size_t n = 1; n <= 2; ++n) {
            if (!is_strong(B, 3, n + k).holds) continue;
            CHECK(is_strong(B12, 3, n).holds);
            ++checked;
        }
    }
    CHECK(checked >= 10);
}
