#pragma once

#include <cstdint>

#include "gla/matrix.hpp"

namespace gla {

// Subspace of F_p^n, canonically represented by the RREF of any spanning set.
// Equality is representation equality; key() is a hashable canonical key.
class Subspace {
public:
    static Subspace zero(PrimeField field, std::size_t ambient);
    static Subspace full(PrimeField field, std::size_t ambient);
    static Subspace span(const Matrix& rows);
    static Subspace span(PrimeField field, std::size_t ambient,
                         const std::vector<Vec>& rows);

    PrimeField field() const { return basis_.field(); }
    std::size_t ambient_dim() const { return basis_.cols(); }
    std::size_t dim() const { return basis_.rows(); }
    const Matrix& basis() const { return basis_; }
    Vec basis_row(std::size_t i) const { return basis_.row(i); }

    bool contains(const Vec& v) const;
    bool contains(const Subspace& o) const;

    // Canonical representative of v modulo this subspace (pivot columns
    // eliminated). reduce(v) == 0 iff contains(v).
    Vec reduce(const Vec& v) const;

    // Coordinates of v w.r.t. the RREF basis rows; v must lie in the space.
    Vec coordinates(const Vec& v) const;

    Subspace sum(const Subspace& o) const;
    Subspace intersect(const Subspace& o) const;

    // Representatives extending this subspace's basis to sup (quotient
    // complement of *this inside sup); rows are canonical.
    std::vector<Vec> complement_in(const Subspace& sup) const;

    bool operator==(const Subspace& o) const { return basis_ == o.basis_; }
    bool operator!=(const Subspace& o) const { return !(*this == o); }
    Vec key() const;

private:
    explicit Subspace(Matrix basis) : basis_(std::move(basis)) {}
    Matrix basis_;
};

// Number of k-dim subspaces of an n-dim space over F_p; throws
// EnumerationTooLarge on overflow past 2^63.
std::uint64_t gaussian_binomial(std::uint32_t p, std::size_t n, std::size_t k);

// All dim-dimensional subspaces of `ambient`, each exactly once, in canonical
// echelon order. Throws EnumerationTooLarge if the count exceeds cap.
std::vector<Subspace> enumerate_subspaces(const Subspace& ambient,
                                          std::size_t dim,
                                          std::uint64_t cap = 1000000);

// All subspaces of every dimension (ordered by dimension then echelon order).
std::vector<Subspace> enumerate_all_subspaces(const Subspace& ambient,
                                              std::uint64_t cap = 1000000);

// All subspaces T with sub ⊆ T ⊆ ambient, each exactly once, in canonical
// order (via subspaces of the quotient ambient/sub).
std::vector<Subspace> enumerate_superspaces(const Subspace& sub,
                                            const Subspace& ambient,
                                            std::uint64_t cap = 1000000);

// Representatives of the projective points of `space` (one per 1-dim
// subspace), in canonical order; each representative is pivot-normalized.
std::vector<Vec> projective_points(const Subspace& space,
                                   std::uint64_t cap = 1000000);

}  // namespace gla
