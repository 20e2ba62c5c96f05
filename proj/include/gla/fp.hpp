#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace gla {

// Generic failure in algebraic machinery. Specific subclasses below where the
// caller may reasonably want to branch.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EnumerationTooLarge : Error {
    using Error::Error;
};

struct NotAHomomorphism : Error {
    using Error::Error;
};

struct NotADivisorProblem : Error {
    using Error::Error;
};

// Residues are kept reduced in [0, p). Vectors/matrices store raw residues;
// the field object supplies arithmetic.
using Scalar = std::uint32_t;
using Vec = std::vector<Scalar>;

class PrimeField {
public:
    explicit PrimeField(std::uint32_t p);

    std::uint32_t p() const { return p_; }

    Scalar reduce(std::int64_t v) const {
        std::int64_t r = v % static_cast<std::int64_t>(p_);
        if (r < 0) r += p_;
        return static_cast<Scalar>(r);
    }
    Scalar add(Scalar a, Scalar b) const { return (a + b) % p_; }
    Scalar sub(Scalar a, Scalar b) const { return (a + p_ - b) % p_; }
    Scalar neg(Scalar a) const { return a == 0 ? 0 : p_ - a; }
    Scalar mul(Scalar a, Scalar b) const {
        return static_cast<Scalar>((std::uint64_t(a) * b) % p_);
    }
    Scalar inv(Scalar a) const;
    Scalar div(Scalar a, Scalar b) const { return mul(a, inv(b)); }

    bool operator==(const PrimeField& o) const { return p_ == o.p_; }
    bool operator!=(const PrimeField& o) const { return p_ != o.p_; }

private:
    std::uint32_t p_;
};

}  // namespace gla
