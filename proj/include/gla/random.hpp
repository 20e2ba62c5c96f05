#pragma once

#include <random>

#include "gla/amalgam.hpp"

namespace gla {

// Seeded instance generators shared by the property suites and the
// verification runner. All draws are deterministic in the engine state.

LieElement random_homogeneous(const AlgebraPtr& M, std::mt19937_64& rng);
LieElement random_element(const AlgebraPtr& M, std::mt19937_64& rng);
GradedSubalgebra random_subalgebra(const AlgebraPtr& M, std::mt19937_64& rng,
                                   int max_gens = 2);

// Class-2 amalgamation-class member on four degree-1 generators with 1-2
// random degree-2 relations; membership re-filtered computationally.
AlgebraPtr random_class2_member(std::mt19937_64& rng, std::uint64_t cap = 50);

// Class-3 member built by a chain of free point adjunctions (degrees 1-2)
// from a one-generator seed.
AlgebraPtr random_class3_member(std::mt19937_64& rng, int steps = 2);

// Class-3 member as a free three-generator algebra with random degree-3
// relations (its class-2 truncation stays free).
AlgebraPtr random_class3_quotient(std::mt19937_64& rng, int max_rels = 3);

}  // namespace gla
