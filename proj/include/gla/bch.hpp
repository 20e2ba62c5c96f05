#pragma once

#include "gla/algebra.hpp"

namespace gla {

struct GroupElement {
    LieElement value;
    bool operator==(const GroupElement& o) const { return value == o.value; }
    bool operator!=(const GroupElement& o) const { return !(*this == o); }
};

// The algebra's underlying set as a group of exponent p and class ≤ 3, with
// multiplication given by the truncated Campbell–Baker–Hausdorff series
//   x ∘ y = x + y + ½[x,y] + (1/12)[x,[x,y]] + (1/12)[y,[y,x]].
// Requires p ≥ 5 so that 2 and 3 are invertible. Class-2 algebras get the
// same series; its degree-3 terms vanish by truncation.
class GroupView {
public:
    explicit GroupView(AlgebraPtr algebra);

    const AlgebraPtr& algebra() const { return algebra_; }
    Scalar inv2() const { return inv2_; }
    Scalar inv12() const { return inv12_; }
    Scalar inv4() const { return inv4_; }

    GroupElement element(LieElement v) const;
    GroupElement identity() const;

    GroupElement mul(const GroupElement& x, const GroupElement& y) const;
    GroupElement inverse(const GroupElement& x) const;
    // iterated ∘; exponent reduced mod p (the group has exponent p)
    GroupElement pow(const GroupElement& x, long long n) const;
    // x⁻¹ ∘ y⁻¹ ∘ x ∘ y; equals [x,y] + ½([[x,y],x] + [[x,y],y]), and
    // [[x,y]^G, z]^G = [[x,y], z] since the corrections are central
    GroupElement group_commutator(const GroupElement& x,
                                  const GroupElement& y) const;

    // Recover the algebra operations from ∘, pow, and group commutators only:
    //   [x,y] = [x,y]^G ∘ ([[x,y]^G,x]^G ∘ [[x,y]^G,y]^G)^(−½)
    //   x + y = x ∘ y ∘ (−½)[x,y] ∘ (−1/12)[x,[x,y]] ∘ (−1/12)[y,[y,x]]
    //               ∘ (¼)[x,[x,y]] ∘ (¼)[y,[x,y]]
    // with every bracket and scalar multiple itself produced by group ops.
    LieElement recover_bracket(const GroupElement& x,
                               const GroupElement& y) const;
    LieElement recover_sum(const GroupElement& x, const GroupElement& y) const;

    // Explicit multiplication table for brute-force checks; elements are
    // indexed by their mixed-radix coordinate code. Throws EnumerationTooLarge
    // when the order exceeds the cap.
    std::vector<std::vector<std::uint32_t>> multiplication_table(
        std::uint64_t cap = 1000000) const;
    LieElement decode(std::uint32_t code) const;
    std::uint32_t encode(const LieElement& v) const;
    std::uint64_t order() const;  // p^total_dim, throws past 2^32

private:
    void check_same(const GroupElement& x) const;
    AlgebraPtr algebra_;
    Scalar inv2_, inv12_, inv4_;
};

}  // namespace gla
