#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gla/bch.hpp"

using namespace gla;

namespace {
const PrimeField F5(5);

AlgebraPtr free2() {
    return Algebra::free_algebra(F5, 3, {{"x", 1}, {"y", 1}});
}

// dims (1,1,1) with [b,x] = e: smallest nonabelian class-3 example
AlgebraPtr heis3() {
    auto F = Algebra::free_algebra(F5, 3, {{"b", 1}, {"e", 3}, {"x", 2}});
    auto b = F->basis_element(1, 0);
    auto x = F->basis_element(2, 0);
    auto e = F->basis_element(3, 0);
    return quotient(F, {b.bracket(x).sub(e)});
}

LieElement rand_elem(const AlgebraPtr& M, std::mt19937_64& rng) {
    LieElement v = M->element();
    for (int d = 1; d <= M->class_c(); ++d)
        for (auto& c : v.coords(d)) c = rng() % 5;
    return v;
}

LieElement closed_form_commutator(const LieElement& x, const LieElement& y) {
    LieElement c = x.bracket(y);
    return c.add(c.bracket(x).add(c.bracket(y)).scale(F5.inv(2)));
}
}  // namespace

TEST_CASE("unit, inverse, and doubling laws") {
    auto M = free2();
    GroupView G(M);
    std::mt19937_64 rng(11);
    for (int t = 0; t < 50; ++t) {
        GroupElement x = {rand_elem(M, rng)};
        CHECK(G.mul(x, G.identity()) == x);
        CHECK(G.mul(G.identity(), x) == x);
        CHECK(G.mul(x, G.inverse(x)).value.is_zero());
        CHECK(G.mul(G.inverse(x), x).value.is_zero());
        CHECK(G.mul(x, x).value == x.value.scale(2));
    }
}

TEST_CASE("central elements multiply additively") {
    auto M = free2();
    GroupView G(M);
    std::mt19937_64 rng(12);
    for (int t = 0; t < 50; ++t) {
        Vec a(M->dim(3)), b(M->dim(3));
        for (auto& c : a) c = rng() % 5;
        for (auto& c : b) c = rng() % 5;
        LieElement u = M->from_degree_vec(3, a), v = M->from_degree_vec(3, b);
        CHECK(G.mul({u}, {v}).value == u.add(v));
    }
}

TEST_CASE("associativity, exhaustive on small algebras") {
    for (auto M : {heis3(), Algebra::free_algebra(F5, 2, {{"x", 1}, {"y", 1}})}) {
        GroupView G(M);
        auto n = G.order();
        REQUIRE(n == 125);
        std::vector<GroupElement> all;
        for (std::uint32_t i = 0; i < n; ++i) all.push_back({G.decode(i)});
        for (std::uint32_t i = 0; i < n; ++i)
            for (std::uint32_t j = 0; j < n; ++j) {
                GroupElement ij = G.mul(all[i], all[j]);
                for (std::uint32_t k = 0; k < n; k += 7)  // sampled third slot
                    CHECK(G.mul(ij, all[k]) ==
                          G.mul(all[i], G.mul(all[j], all[k])));
            }
    }
}

TEST_CASE("associativity, random on the free algebra") {
    auto M = free2();
    GroupView G(M);
    std::mt19937_64 rng(13);
    for (int t = 0; t < 2000; ++t) {
        GroupElement x = {rand_elem(M, rng)}, y = {rand_elem(M, rng)},
                     z = {rand_elem(M, rng)};
        CHECK(G.mul(G.mul(x, y), z) == G.mul(x, G.mul(y, z)));
    }
}

TEST_CASE("exponent p") {
    auto M = free2();
    GroupView G(M);
    std::mt19937_64 rng(14);
    CHECK(G.pow({rand_elem(M, rng)}, 0).value.is_zero());
    for (int t = 0; t < 200; ++t) {
        GroupElement x = {rand_elem(M, rng)};
        CHECK(G.pow(x, 5).value.is_zero());
        CHECK(G.pow(x, 3).value == x.value.scale(3));
        CHECK(G.pow(x, -1) == G.inverse(x));
    }
}

TEST_CASE("group commutator: closed form and class-3 truncation") {
    auto M = free2();
    GroupView G(M);
    std::mt19937_64 rng(15);
    for (int t = 0; t < 500; ++t) {
        GroupElement x = {rand_elem(M, rng)}, y = {rand_elem(M, rng)},
                     z = {rand_elem(M, rng)}, w = {rand_elem(M, rng)};
        GroupElement c = G.group_commutator(x, y);
        CHECK(c.value == closed_form_commutator(x.value, y.value));
        // the unscaled correction [x,y] + [[x,y],x] + [[x,y],y] is NOT the
        // ∘-commutator whenever the degree-3 correction is nonzero
        LieElement naive = x.value.bracket(y.value);
        naive = naive.add(naive.bracket(x.value)).add(naive.bracket(y.value));
        if (naive != closed_form_commutator(x.value, y.value))
            CHECK(c.value != naive);
        // [[x,y]^G, z]^G = [[x,y], z]
        CHECK(G.group_commutator(c, z).value == x.value.bracket(y.value).bracket(z.value));
        // nilpotency class <= 3
        CHECK(G.group_commutator(G.group_commutator(c, z), w).value.is_zero());
        // commuting pair
        GroupElement central = {rand_elem(M, rng).pr(3)};
        CHECK(G.group_commutator(x, central).value.is_zero());
    }
}

TEST_CASE("recovery round trips") {
    for (auto M : {free2(), heis3(),
                   Algebra::free_algebra(F5, 2, {{"x", 1}, {"y", 1}})}) {
        GroupView G(M);
        std::mt19937_64 rng(16);
        for (int t = 0; t < 300; ++t) {
            GroupElement x = {rand_elem(M, rng)}, y = {rand_elem(M, rng)};
            CHECK(G.recover_bracket(x, y) == x.value.bracket(y.value));
            CHECK(G.recover_sum(x, y) == x.value.add(y.value));
        }
        GroupElement x = {rand_elem(M, rng)};
        CHECK(G.recover_sum(x, G.identity()) == x.value);
        CHECK(G.recover_bracket(x, x).is_zero());
    }
}

TEST_CASE("coefficient oracle for the sum-recovery corrections") {
    // In the free class-3 algebra on x, y, seek the unique central-and-degree-2
    // correction z = α[x,y] + β[x,[x,y]] + γ[y,[x,y]] with (x∘y)∘z = x+y.
    // The map z ↦ (x∘y)∘z is affine in z here, so this is a linear solve.
    auto M = free2();
    GroupView G(M);
    GroupElement x = {M->basis_element(1, 0)}, y = {M->basis_element(1, 1)};
    LieElement c = x.value.bracket(y.value);
    LieElement xxy = x.value.bracket(c), yxy = y.value.bracket(c);
    std::vector<LieElement> dirs = {c, xxy, yxy};

    auto eval = [&](const LieElement& z) {
        LieElement r = G.mul(G.mul(x, y), {z}).value;
        Vec flat;
        for (int d = 1; d <= 3; ++d)
            for (auto s : r.coords(d)) flat.push_back(s);
        return flat;
    };
    Vec base = eval(M->element());
    Matrix sys(F5, 3, base.size());
    for (std::size_t i = 0; i < 3; ++i) {
        Vec col = eval(dirs[i]);
        for (std::size_t j = 0; j < base.size(); ++j)
            col[j] = F5.sub(col[j], base[j]);
        sys.set_row(i, col);
    }
    CHECK(left_kernel_basis(sys).rows() == 0);  // the solution is unique
    Vec target;
    {
        LieElement s = x.value.add(y.value);
        for (int d = 1; d <= 3; ++d)
            for (auto v : s.coords(d)) target.push_back(v);
        for (std::size_t j = 0; j < target.size(); ++j)
            target[j] = F5.sub(target[j], base[j]);
    }
    auto sol = solve_left(sys, target);
    REQUIRE(sol);
    // the printed seven-factor formula reduces to α = −½, β = −1/12 + ¼,
    // γ = 1/12 + ¼ (its [y,[y,x]] factor flips sign against [y,[x,y]])
    CHECK((*sol)[0] == F5.neg(G.inv2()));
    CHECK((*sol)[1] == F5.add(F5.neg(G.inv12()), G.inv4()));
    CHECK((*sol)[2] == F5.add(G.inv12(), G.inv4()));
}

TEST_CASE("explicit multiplication table") {
    auto M = heis3();
    GroupView G(M);
    auto table = G.multiplication_table();
    auto n = table.size();
    REQUIRE(n == 125);
    std::uint32_t e = G.encode(M->element());
    for (std::uint32_t i = 0; i < n; ++i) {
        CHECK(table[i][e] == i);
        CHECK(table[e][i] == i);
        // rows are permutations
        std::vector<bool> seen(n, false);
        for (std::uint32_t j = 0; j < n; ++j) {
            CHECK_FALSE(seen[table[i][j]]);
            seen[table[i][j]] = true;
        }
    }
    // table agrees with mul on random entries
    std::mt19937_64 rng(17);
    for (int t = 0; t < 200; ++t) {
        std::uint32_t i = rng() % n, j = rng() % n;
        CHECK(table[i][j] ==
              G.encode(G.mul({G.decode(i)}, {G.decode(j)}).value));
    }
}

TEST_CASE("small primes are rejected") {
    CHECK_THROWS_AS(GroupView(Algebra::free_algebra(PrimeField(3), 3, {{"x", 1}})),
                    const Error&);
    CHECK_THROWS_AS(GroupView(Algebra::free_algebra(PrimeField(2), 2, {{"x", 1}})),
                    const Error&);
}
