#pragma once

#include "gla/algebra.hpp"

namespace gla {

// Parsed presentation file. Grammar (one directive per line, `#` comments):
//   gla 1
//   p <prime>
//   class <2|3>
//   gens
//   <name> <degree>        (one per line)
//   rels
//   <coeff>*<monomial> + <coeff>*<monomial> + ...
// with monomial ::= name | '[' monomial ',' monomial ']'. Relations must be
// homogeneous. Normalization: generators in canonical (degree, name) order,
// coefficients reduced mod p, terms in Hall-basis order, zero relations
// dropped, relations sorted by (degree, coordinates).
struct AlgebraFile {
    std::uint32_t p = 5;
    int class_c = 3;
    std::vector<GeneratorSymbol> gens;  // canonical order
    AlgebraPtr free_alg;                // free algebra on gens
    std::vector<LieElement> relations;  // homogeneous elements of free_alg
    AlgebraPtr algebra;                 // quotient(free_alg, relations)
};

// Throws Error with "line L, column C" context on malformed input.
AlgebraFile parse_algebra(const std::string& text);
AlgebraFile load_algebra(const std::string& path);

// Canonical text; parse(print(f)) reproduces f byte-exactly.
std::string print_algebra(const AlgebraFile& f);

// Normalizing constructor: relations are elements of a free algebra on gens.
AlgebraFile make_file(std::uint32_t p, int class_c,
                      std::vector<GeneratorSymbol> gens,
                      const std::vector<LieElement>& relations);

// Reconstruct a file from an algebra: quotients keep their own presentation,
// free algebras have none, table-built algebras go through a canonical pair.
AlgebraFile to_file(AlgebraPtr M);

// Parse a "<coeff>*<monomial> + ..." expression over f's generators and
// project it into f.algebra; must be homogeneous.
LieElement parse_element(const AlgebraFile& f, const std::string& expr);

}  // namespace gla
