#pragma once

#include <optional>

#include "gla/free_lie.hpp"

namespace gla {

class Algebra;
using AlgebraPtr = std::shared_ptr<const Algebra>;

// Element of an Algebra: one coordinate vector per degree.
class LieElement {
public:
    explicit LieElement(AlgebraPtr parent);

    const AlgebraPtr& parent() const { return parent_; }
    const Vec& coords(int d) const { return coords_[d]; }
    Vec& coords(int d) { return coords_[d]; }

    LieElement add(const LieElement& o) const;
    LieElement sub(const LieElement& o) const;
    LieElement scale(Scalar k) const;
    LieElement neg() const;
    LieElement bracket(const LieElement& o) const;
    LieElement pr(int d) const;

    bool is_zero() const;
    // degree if homogeneous and nonzero; 0 for the zero element; -1 if mixed
    int homogeneous_degree() const;

    bool operator==(const LieElement& o) const;
    bool operator!=(const LieElement& o) const { return !(*this == o); }

private:
    AlgebraPtr parent_;
    std::array<Vec, 4> coords_;
};

// Data retained when an algebra is built as F(X)/J: enough to lift and
// project elements and to reprint the presentation.
struct QuotientData {
    AlgebraPtr free_algebra;
    std::vector<LieElement> relations;        // elements of free_algebra
    std::vector<Subspace> ideal;              // J_d per degree, free coords
    std::vector<std::vector<std::size_t>> coset_cols;  // non-pivot columns per degree
};

// Finite graded c-nilpotent Lie algebra with explicit structure constants.
// Free algebras expose their Hall data via hall(); quotients retain their
// presentation via quotient_data().
class Algebra : public std::enable_shared_from_this<Algebra> {
public:
    static AlgebraPtr free_algebra(PrimeField field, int class_c,
                                   std::vector<GeneratorSymbol> gens);
    static AlgebraPtr free_algebra(std::shared_ptr<const FreeLie> fl);
    static AlgebraPtr zero_algebra(PrimeField field, int class_c);
    // Validates antisymmetry and the Jacobi identity on all basis triples.
    static AlgebraPtr from_tables(
        PrimeField field, int class_c, GradedDims dims,
        const std::array<std::array<std::vector<Vec>, 4>, 4>& tables);

    PrimeField field() const { return field_; }
    int class_c() const { return c_; }
    std::size_t dim(int d) const { return d >= 1 && d <= 3 ? dims_[d] : 0; }
    GradedDims dims() const { return dims_; }
    std::size_t total_dim() const { return dims_[1] + dims_[2] + dims_[3]; }

    const FreeLie* hall() const { return hall_.get(); }
    std::shared_ptr<const FreeLie> hall_ptr() const { return hall_; }
    const QuotientData* quotient_data() const { return qdata_.get(); }

    // Bilinear structure map; returns the coords of [a, b] in degree d1+d2,
    // empty when d1+d2 exceeds the class.
    Vec bracket_coords(int d1, const Vec& a, int d2, const Vec& b) const;

    LieElement element() const;  // zero
    LieElement basis_element(int d, std::size_t i) const;
    LieElement from_degree_vec(int d, const Vec& v) const;

    // Quotient-only: coordinate maps between free coords and quotient coords.
    Vec project_from_free(int d, const Vec& free_coords) const;
    Vec lift_to_free(int d, const Vec& quot_coords) const;
    LieElement project_from_free(const LieElement& e) const;
    LieElement lift_to_free(const LieElement& e) const;

    // Canonical structural key: p, class, dims, flattened tables.
    Vec structure_key() const;

private:
    Algebra(PrimeField field, int class_c) : field_(field), c_(class_c) {}
    PrimeField field_;
    int c_;
    GradedDims dims_{0, 0, 0, 0};
    std::array<std::array<std::vector<Vec>, 4>, 4> tables_;
    std::shared_ptr<const FreeLie> hall_;
    std::shared_ptr<const QuotientData> qdata_;

    void check_tables() const;
    friend AlgebraPtr quotient(AlgebraPtr, const std::vector<LieElement>&);
};

// Least graded ideal J containing the (homogeneous) relations, then F/J.
AlgebraPtr quotient(AlgebraPtr free_alg, const std::vector<LieElement>& relations);

// Graded subalgebra (or just graded subspace; bracket closure is checkable).
class GradedSubalgebra {
public:
    static GradedSubalgebra zero(AlgebraPtr parent);
    static GradedSubalgebra full(AlgebraPtr parent);
    static GradedSubalgebra from_parts(AlgebraPtr parent,
                                       std::vector<Subspace> parts);  // parts[1..c]

    const AlgebraPtr& parent() const { return parent_; }
    const Subspace& part(int d) const { return parts_[d - 1]; }
    std::size_t dim(int d) const { return part(d).dim(); }
    std::size_t total_dim() const;
    GradedDims dims() const;

    bool contains(const LieElement& e) const;
    bool contains(const GradedSubalgebra& o) const;
    bool is_bracket_closed() const;

    GradedSubalgebra sum_spans(const GradedSubalgebra& o) const;  // linear span sum
    GradedSubalgebra intersect(const GradedSubalgebra& o) const;

    std::vector<LieElement> basis_elements() const;

    bool operator==(const GradedSubalgebra& o) const;
    bool operator!=(const GradedSubalgebra& o) const { return !(*this == o); }
    Vec key() const;

private:
    GradedSubalgebra(AlgebraPtr parent, std::vector<Subspace> parts)
        : parent_(std::move(parent)), parts_(std::move(parts)) {}
    AlgebraPtr parent_;
    std::vector<Subspace> parts_;  // index d-1, for d = 1..3 (class-padded)
};

GradedSubalgebra generated_subalgebra(AlgebraPtr M,
                                      const std::vector<LieElement>& elems);
GradedSubalgebra generated_closure(const GradedSubalgebra& seed);
// ⟨A ∪ C⟩
GradedSubalgebra generated_join(const GradedSubalgebra& a,
                                const GradedSubalgebra& c);

// Graded homomorphism, stored as one matrix per degree (rows: source basis).
class GradedHom {
public:
    GradedHom(AlgebraPtr src, AlgebraPtr tgt, std::vector<Matrix> mats);
    static GradedHom identity(AlgebraPtr a);
    static GradedHom zero(AlgebraPtr src, AlgebraPtr tgt);

    const AlgebraPtr& src() const { return src_; }
    const AlgebraPtr& tgt() const { return tgt_; }
    const Matrix& mat(int d) const { return mats_[d - 1]; }

    Vec apply(int d, const Vec& v) const;
    LieElement apply(const LieElement& e) const;
    GradedHom then(const GradedHom& g) const;  // first this, then g

    bool is_embedding() const;
    bool is_surjective() const;
    std::vector<Subspace> kernel() const;  // per degree, source coords
    std::size_t kernel_total_dim() const;
    GradedSubalgebra image() const;

    // Verifies bracket preservation on all basis pairs (sanity check).
    bool respects_brackets() const;

private:
    AlgebraPtr src_, tgt_;
    std::vector<Matrix> mats_;  // index d-1
};

// Generating (o)-system relative to a subalgebra: degree-ascending greedy.
struct OSystem {
    std::vector<LieElement> elems;  // homogeneous, degree-ascending
    GradedDims counts{0, 0, 0, 0};  // o-dims per degree
    std::size_t total() const { return counts[1] + counts[2] + counts[3]; }
};

OSystem extract_o_system(const GradedSubalgebra& target,
                         const GradedSubalgebra* over = nullptr);
OSystem extract_o_system(AlgebraPtr M);

struct CanonicalPair {
    AlgebraPtr free_alg;                    // free on the o-system
    GradedHom onto;                         // free_alg -> parent, image = target
    std::vector<Subspace> kernel;           // ker per degree, free coords
    GradedDims ideal_dims{0, 0, 0, 0};      // degrees 2..c
    std::vector<std::vector<Vec>> ideal_basis_reps;  // per degree, free coords
    OSystem osys;
    std::vector<Matrix> lift;  // per degree: target-coords row -> free coords
};

CanonicalPair canonical_pair(const GradedSubalgebra& target);
CanonicalPair canonical_pair(AlgebraPtr M);

// M* = M / M_c with the canonical truncation map tau.
std::pair<AlgebraPtr, GradedHom> star(AlgebraPtr M);

// Hom defined on the canonical generating o-system of src; well-definedness
// (every relation killed) is checked eagerly; throws NotAHomomorphism.
GradedHom hom_from_generators(AlgebraPtr src, AlgebraPtr tgt,
                              const std::vector<LieElement>& images);
GradedHom hom_from_generators(const CanonicalPair& src_cp, AlgebraPtr tgt,
                              const std::vector<LieElement>& images);

// Standalone copy of a subalgebra, with the embedding back into the parent.
std::pair<AlgebraPtr, GradedHom> as_algebra(const GradedSubalgebra& a);

// Brute-force graded-isomorphism search (small dims only).
std::optional<GradedHom> find_isomorphism(AlgebraPtr a, AlgebraPtr b,
                                          std::uint64_t cap = 2000000);

}  // namespace gla
