#include "gla/fp.hpp"

namespace gla {

namespace {
bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}
}  // namespace

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
    if (!is_prime(p)) throw Error("modulus " + std::to_string(p) + " is not prime");
    if (p > 46337) throw Error("modulus too large");  // keeps p*p in 32 bits comfortably
}

Scalar PrimeField::inv(Scalar a) const {
    if (a == 0) throw Error("division by zero in F_p");
    // Fermat: a^(p-2)
    std::uint64_t base = a % p_, acc = 1, e = p_ - 2;
    while (e) {
        if (e & 1) acc = acc * base % p_;
        base = base * base % p_;
        e >>= 1;
    }
    return static_cast<Scalar>(acc);
}

}  // namespace gla
