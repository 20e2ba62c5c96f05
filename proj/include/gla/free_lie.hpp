#pragma once

#include <array>
#include <memory>
#include <string>
#include <unordered_map>

#include "gla/subspace.hpp"

namespace gla {

struct GeneratorSymbol {
    std::string name;
    int degree;  // 1..class_c
    bool operator==(const GeneratorSymbol&) const = default;
};

// A Hall basis monomial: either a generator leaf or a bracket of two earlier
// basis monomials, referenced by (degree, index within that degree's basis).
struct HallMonomial {
    int degree;
    int gen = -1;  // index into the generator list when a leaf
    int left_deg = 0;
    std::size_t left_idx = 0;
    int right_deg = 0;
    std::size_t right_idx = 0;
    bool is_leaf() const { return gen >= 0; }
};

using GradedDims = std::array<std::size_t, 4>;  // index 1..3 used

// Free graded c-nilpotent Lie algebra on a graded generator list: Hall bases
// per degree and structure constants in Hall coordinates. Brackets of total
// degree > c have no table rows at all.
class FreeLie {
public:
    FreeLie(PrimeField field, int class_c, std::vector<GeneratorSymbol> gens);

    PrimeField field() const { return field_; }
    int class_c() const { return c_; }
    const std::vector<GeneratorSymbol>& generators() const { return gens_; }
    std::size_t dim(int d) const { return d >= 1 && d <= c_ ? basis_[d].size() : 0; }
    GradedDims dims() const;
    const std::vector<HallMonomial>& basis(int d) const { return basis_[d]; }

    // Structure constants: coordinates of [m(d1,i1), m(d2,i2)] in degree
    // d1+d2; empty vector means the bracket lives above the class bound.
    Vec bracket_basis(int d1, std::size_t i1, int d2, std::size_t i2) const;

    std::string monomial_name(int d, std::size_t i) const;

    // Index of the degree-1..c basis monomial that is exactly the given
    // generator (leaf), by generator index.
    std::pair<int, std::size_t> generator_position(std::size_t gen_idx) const;

private:
    PrimeField field_;
    int c_;
    std::vector<GeneratorSymbol> gens_;
    std::array<std::vector<HallMonomial>, 4> basis_;
    // tables_[d1][d2]: flat (i1 * dim(d2) + i2) -> coords in degree d1+d2
    std::array<std::array<std::vector<Vec>, 4>, 4> tables_;
    std::unordered_map<std::uint64_t, std::size_t> hall_index_;

    std::uint64_t pack(int ld, std::size_t li, int rd, std::size_t ri) const;
    Vec compute_bracket(int d1, std::size_t i1, int d2, std::size_t i2) const;
};

// Shape-cached free algebras with synthesized generator names; the expensive
// structure-constant tables are shared between all algebras of one shape.
std::shared_ptr<const FreeLie> free_lie_shape(PrimeField field, int class_c,
                                              std::size_t n1, std::size_t n2,
                                              std::size_t n3);

}  // namespace gla
