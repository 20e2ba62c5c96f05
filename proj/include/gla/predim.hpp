#pragma once

#include "gla/algebra.hpp"

namespace gla {

// Per-degree generator/relation counts and the resulting rank values.
struct DeltaProfile {
    GradedDims o_dims{0, 0, 0, 0};
    GradedDims ideal_dims{0, 0, 0, 0};
    long long delta_2 = 0;
    long long delta_3 = 0;  // equals delta_2 for class-2 parents
    long long delta(int level) const { return level >= 3 ? delta_3 : delta_2; }
};

DeltaProfile delta_profile(const GradedSubalgebra& A);
DeltaProfile delta_profile(AlgebraPtr M);
// δ at the parent's nilpotency class.
long long delta_value(const GradedSubalgebra& A);
long long delta_value(AlgebraPtr M);

// Class-3 factorization identity: δ = δ_2 + ldim(A_3 / A⁻_3) − ldim(N(A)),
// where A⁻ is the part generated in degrees 1..2 and N(A) the extra degree-3
// relation space, both recomputed along an independent ideal-closure path.
bool delta_cross_check(const GradedSubalgebra& A);

// δ(⟨A ∪ C⟩) − δ(C).
long long delta_rel(const GradedSubalgebra& A, const GradedSubalgebra& C);

// Bracket-closed graded C with A ⊆ C ⊆ M, in canonical order, with the
// degree-3 part pinned to its minimal closure A_3 + [C_1, C_2]. Complete for
// every δ-comparison question: an extra degree-3 line raises δ_3 by one and
// leaves δ_2 unchanged, so unpinned candidates are dominated by pinned ones.
std::vector<GradedSubalgebra> intermediate_subalgebras(
    const GradedSubalgebra& A, const GradedSubalgebra& M,
    std::uint64_t cap = 200000, int level = 3);

// All closures ⟨A y_1 … y_j⟩, j ≤ k, over homogeneous y_i of degree ≤ 2 from
// the ambient. Deduplicated, deterministic order. Degree-3 adjunctions are
// skipped for the same domination reason as above.
std::vector<GradedSubalgebra> bounded_extensions(const GradedSubalgebra& A,
                                                 const GradedSubalgebra& ambient,
                                                 std::size_t k,
                                                 std::uint64_t cap = 2000000,
                                                 int level = 3);

struct StrongReport {
    bool holds = true;
    std::optional<GradedSubalgebra> witness;  // violating intermediate if !holds
    bool exact = true;                        // false: searched o-dim ≤ bound_k only
    std::size_t bound_k = 0;
};

// A is level-strong in M iff δ_j(A) ≤ δ_j(C) for every intermediate
// subalgebra C and every 2 ≤ j ≤ level. Exact mode enumerates all
// intermediates (throws EnumerationTooLarge over cap); bounded mode searches
// only C with o-dim(C/A) ≤ bound_k.
StrongReport is_strong(const GradedSubalgebra& A, const GradedSubalgebra& M,
                       int level,
                       std::optional<std::size_t> bound_k = std::nullopt,
                       std::uint64_t cap = 200000);
StrongReport is_strong(const GradedSubalgebra& A, int level,
                       std::optional<std::size_t> bound_k = std::nullopt,
                       std::uint64_t cap = 200000);

// Least level-strong subalgebra of M containing A. Exact mode intersects all
// strong intermediates; bounded mode runs a fixed-point descent over
// extensions with o-dim ≤ bound_k (δ-minimizing, echelon-key tie-break).
GradedSubalgebra css(const GradedSubalgebra& A, const GradedSubalgebra& M,
                     int level,
                     std::optional<std::size_t> bound_k = std::nullopt,
                     std::uint64_t cap = 200000);
GradedSubalgebra css(const GradedSubalgebra& A, int level,
                     std::optional<std::size_t> bound_k = std::nullopt,
                     std::uint64_t cap = 200000);

struct KcReport {
    bool member = true;
    bool cond2_exact = true;  // condition (2) verified by full enumeration
    std::vector<std::string> violations;
    std::vector<std::string> notes;  // strongness-vs-numeric-form discrepancies
};

// Membership in the amalgamation class: (1) no homogeneous zero divisors
// (ad-kernel scan over projective points of M_1); (2) every subalgebra with
// 0 < o-dim ≤ 2 is strong. When the condition-(2) enumeration exceeds the cap
// and require_exact is false, the verdict falls back to condition (1), which
// forces δ(E) = o-dim(E) for all E with o-dim(E) ≤ 2; cond2_exact records it.
KcReport kc_membership(AlgebraPtr M, std::uint64_t cap = 200000,
                       bool require_exact = false);

// d(H) = δ(CSS(H)) inside the full parent algebra.
long long geometry_d(const GradedSubalgebra& H, std::uint64_t cap = 200000);
// a homogeneous of degree 1 or 2; true iff d(⟨H a⟩) = d(H).
bool cl_member(const LieElement& a, const GradedSubalgebra& H,
               std::uint64_t cap = 200000);

enum class ExtensionKind {
    transcendental,
    algebraic,
    minimal_prealgebraic,
    composite,
};
const char* to_string(ExtensionKind k);

// U ⊊ V, both bracket-closed. Single new generator: transcendental when the
// geometric dimension grows, algebraic when it satisfies a bracket equation
// over U. Larger extensions: minimal_prealgebraic when δ(V/U) = 0 and every
// proper intermediate generated in degrees 1..2 has δ(W/U) > 0.
ExtensionKind classify_extension(const GradedSubalgebra& U,
                                 const GradedSubalgebra& V,
                                 std::uint64_t cap = 200000);

}  // namespace gla
