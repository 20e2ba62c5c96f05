#include "gla/random.hpp"

namespace gla {

LieElement random_homogeneous(const AlgebraPtr& M, std::mt19937_64& rng) {
    const std::uint32_t p = M->field().p();
    while (true) {
        int d = 1 + static_cast<int>(rng() % M->class_c());
        if (M->dim(d) == 0) continue;
        Vec v(M->dim(d));
        bool nz = false;
        for (auto& c : v) {
            c = rng() % p;
            nz |= c != 0;
        }
        if (nz) return M->from_degree_vec(d, v);
    }
}

LieElement random_element(const AlgebraPtr& M, std::mt19937_64& rng) {
    const std::uint32_t p = M->field().p();
    LieElement v = M->element();
    for (int d = 1; d <= M->class_c(); ++d)
        for (auto& c : v.coords(d)) c = rng() % p;
    return v;
}

GradedSubalgebra random_subalgebra(const AlgebraPtr& M, std::mt19937_64& rng,
                                   int max_gens) {
    std::vector<LieElement> gens;
    int k = 1 + static_cast<int>(rng() % max_gens);
    for (int i = 0; i < k; ++i) gens.push_back(random_homogeneous(M, rng));
    return generated_subalgebra(M, gens);
}

AlgebraPtr random_class2_member(std::mt19937_64& rng, std::uint64_t cap) {
    const PrimeField F5(5);
    while (true) {
        auto F = Algebra::free_algebra(
            F5, 2, {{"x", 1}, {"y", 1}, {"z", 1}, {"w", 1}});
        int k = 1 + static_cast<int>(rng() % 2);
        std::vector<LieElement> rels;
        for (int i = 0; i < k; ++i) {
            Vec v(F->dim(2));
            for (auto& c : v) c = rng() % 5;
            auto e = F->from_degree_vec(2, v);
            if (!e.is_zero()) rels.push_back(e);
        }
        auto M = quotient(F, rels);
        if (kc_membership(M, cap, false).member) return M;
    }
}

AlgebraPtr random_class3_member(std::mt19937_64& rng, int steps) {
    const PrimeField F5(5);
    AlgebraPtr cur = Algebra::free_algebra(F5, 3, {{"g", 1}});
    for (int i = 0; i < steps; ++i)
        cur = free_adjoin_point(cur, 1 + static_cast<int>(rng() % 2)).product;
    return cur;
}

AlgebraPtr random_class3_quotient(std::mt19937_64& rng, int max_rels) {
    const PrimeField F5(5);
    auto F = Algebra::free_algebra(F5, 3, {{"x", 1}, {"y", 1}, {"z", 1}});
    std::vector<LieElement> rels;
    int k = 1 + static_cast<int>(rng() % max_rels);
    for (int i = 0; i < k; ++i) {
        Vec v(F->dim(3));
        for (auto& c : v) c = rng() % 5;
        auto e = F->from_degree_vec(3, v);
        if (!e.is_zero()) rels.push_back(e);
    }
    return quotient(F, rels);
}

}  // namespace gla
