#pragma once

#include "gla/predim.hpp"

namespace gla {

// Product of two algebras over a shared base, together with the embeddings
// and enough presentation data to factor homomorphism pairs through it.
struct AmalgamResult {
    AlgebraPtr product;
    GradedHom embed_left;   // A -> product
    GradedHom embed_right;  // C -> product
    GradedSubalgebra over;  // image of the base in the product

    // presentation bookkeeping: onto maps the free presentation algebra onto
    // product; gen_sources[i] records where free generator i evaluates
    // (side 0: an element of A, side 1: an element of C), in the free
    // algebra's canonical generator order
    GradedHom onto;
    struct GenSource {
        int side;
        LieElement elem;
    };
    std::vector<GenSource> gen_sources;
};

// D = A ⊗_B C, built presentationally: canonical generating systems of A and
// C over the shared base, relation spaces unioned, graded ideal closure.
AmalgamResult free_amalgam(AlgebraPtr A, AlgebraPtr C, const GradedHom& b_in_a,
                           const GradedHom& b_in_c);

// B ⊗ ⟨x⟩ with a fresh homogeneous generator of the given degree.
AmalgamResult free_adjoin_point(AlgebraPtr B, int degree_i);

// B(e:b): adjoin a degree-(j−i) solution x of [b,x] = e. Throws
// NotADivisorProblem when the equation is already solvable in B.
AmalgamResult divisor_extend(AlgebraPtr B, const LieElement& b,
                             const LieElement& e);

// Amalgam with strongness guarantees: requires the base strong in A (exact)
// and strong at search radius 2·ldim(A/B)+2+n in C; absorbs divisor problems
// of the base that are solved on both sides (canonical scan order), then
// returns the free amalgam over the enlarged base. `over` reports the image
// of the original base.
AmalgamResult strong_amalgam(AlgebraPtr A, AlgebraPtr C, const GradedHom& b_in_a,
                             const GradedHom& b_in_c, std::size_t n,
                             std::uint64_t cap = 200000);

// The unique h: product -> E with embed_left∘h = f, embed_right∘h = g, when
// f and g agree on the base; nullopt if no such homomorphism exists.
std::optional<GradedHom> induced_hom(const AmalgamResult& R, const GradedHom& f,
                                     const GradedHom& g);

// Class-2 -> class-3: free class-3 algebra on the same generating system,
// divided by the ideal generated by the lifted degree-2 relations.
AlgebraPtr functor_F(AlgebraPtr a_star, std::uint64_t cap = 200000,
                     bool check_membership = true);

// Induced map on the class-3 hulls of an embedding of class-2 algebras; the
// kernel is forced to live in degree 3 and its dimension is returned.
std::pair<GradedHom, std::size_t> gamma(const GradedHom& b_in_a,
                                        std::uint64_t cap = 200000);

// For 2-strong A, C in a common parent: checks the equivalence
// δ(A/C) = δ(A/A∩C)  ⟺  ⟨AC⟩ = A ⊗_{A∩C} C, evaluating both sides
// independently; returns whether the biconditional holds.
bool decompose_amalgam_claim(const GradedSubalgebra& A, const GradedSubalgebra& C,
                             std::uint64_t cap = 200000);

}  // namespace gla
