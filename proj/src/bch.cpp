#include "gla/bch.hpp"

namespace gla {

GroupView::GroupView(AlgebraPtr algebra) : algebra_(std::move(algebra)) {
    const PrimeField f = algebra_->field();
    if (f.p() < 5) throw Error("group view needs p >= 5");
    inv2_ = f.inv(2);
    inv12_ = f.inv(f.reduce(12));
    inv4_ = f.inv(4);
}

GroupElement GroupView::element(LieElement v) const {
    if (v.parent() != algebra_) throw Error("element of a different algebra");
    return {std::move(v)};
}

GroupElement GroupView::identity() const { return {algebra_->element()}; }

void GroupView::check_same(const GroupElement& x) const {
    if (x.value.parent() != algebra_) throw Error("group view mismatch");
}

GroupElement GroupView::mul(const GroupElement& x, const GroupElement& y) const {
    check_same(x);
    check_same(y);
    const LieElement& a = x.value;
    const LieElement& b = y.value;
    LieElement c = a.bracket(b);
    LieElement r = a.add(b).add(c.scale(inv2_));
    r = r.add(a.bracket(c).scale(inv12_));
    r = r.add(b.bracket(b.bracket(a)).scale(inv12_));
    return {std::move(r)};
}

GroupElement GroupView::inverse(const GroupElement& x) const {
    check_same(x);
    return {x.value.neg()};
}

GroupElement GroupView::pow(const GroupElement& x, long long n) const {
    check_same(x);
    const long long p = algebra_->field().p();
    long long k = n % p;
    if (k < 0) k += p;
    GroupElement acc = identity();
    for (long long i = 0; i < k; ++i) acc = mul(acc, x);
    return acc;
}

GroupElement GroupView::group_commutator(const GroupElement& x,
                                         const GroupElement& y) const {
    return mul(mul(mul(inverse(x), inverse(y)), x), y);
}

LieElement GroupView::recover_bracket(const GroupElement& x,
                                      const GroupElement& y) const {
    // [x,y]^G = [x,y] + ½([[x,y],x] + [[x,y],y]), so the central correction
    // [[x,y]^G,x]^G ∘ [[x,y]^G,y]^G must be removed with exponent ½.
    GroupElement g = group_commutator(x, y);
    GroupElement gx = group_commutator(g, x);
    GroupElement gy = group_commutator(g, y);
    return mul(g, inverse(pow(mul(gx, gy), inv2_))).value;
}

LieElement GroupView::recover_sum(const GroupElement& x,
                                  const GroupElement& y) const {
    const PrimeField f = algebra_->field();
    GroupElement c = {recover_bracket(x, y)};          // [x,y]
    GroupElement xxy = {recover_bracket(x, c)};        // [x,[x,y]]
    GroupElement yxy = {recover_bracket(y, c)};        // [y,[x,y]]
    GroupElement yyx = inverse(yxy);                   // [y,[y,x]]
    GroupElement r = mul(x, y);
    r = mul(r, pow(c, f.neg(inv2_)));
    r = mul(r, pow(xxy, f.neg(inv12_)));
    r = mul(r, pow(yyx, f.neg(inv12_)));
    r = mul(r, pow(xxy, inv4_));
    r = mul(r, pow(yxy, inv4_));
    return r.value;
}

std::uint64_t GroupView::order() const {
    std::uint64_t n = 1;
    for (std::size_t i = 0; i < algebra_->total_dim(); ++i) {
        n *= algebra_->field().p();
        if (n > (std::uint64_t(1) << 32))
            throw EnumerationTooLarge("group order past 2^32");
    }
    return n;
}

LieElement GroupView::decode(std::uint32_t code) const {
    const std::uint32_t p = algebra_->field().p();
    LieElement v = algebra_->element();
    for (int d = 1; d <= algebra_->class_c(); ++d)
        for (std::size_t i = 0; i < algebra_->dim(d); ++i) {
            v.coords(d)[i] = code % p;
            code /= p;
        }
    return v;
}

std::uint32_t GroupView::encode(const LieElement& v) const {
    const std::uint32_t p = algebra_->field().p();
    std::uint64_t code = 0, radix = 1;
    for (int d = 1; d <= algebra_->class_c(); ++d)
        for (std::size_t i = 0; i < algebra_->dim(d); ++i) {
            code += std::uint64_t(v.coords(d)[i]) * radix;
            radix *= p;
        }
    return static_cast<std::uint32_t>(code);
}

std::vector<std::vector<std::uint32_t>> GroupView::multiplication_table(
    std::uint64_t cap) const {
    std::uint64_t n = order();
    if (n * n > cap) throw EnumerationTooLarge("multiplication table over cap");
    std::vector<std::vector<std::uint32_t>> table(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        GroupElement x = {decode(static_cast<std::uint32_t>(i))};
        table[i].resize(n);
        for (std::uint64_t j = 0; j < n; ++j)
            table[i][j] =
                encode(mul(x, {decode(static_cast<std::uint32_t>(j))}).value);
    }
    return table;
}

}  // namespace gla
