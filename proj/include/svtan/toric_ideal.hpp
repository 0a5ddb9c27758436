#pragma once

#include "svtan/simplicial.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace svtan {

struct FormatError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Exponents are indexed by exponent_columns(c, true).
struct BinomialRelation {
    std::vector<std::int64_t> plus;
    std::vector<std::int64_t> minus;
    std::int64_t degree = 0;    // t-degree of each side
    std::int64_t x_degree = 0;  // larger number of coordinate factors of the two sides
};

Sublattice relation_lattice(const LabeledComplex& c);

// Binomials x^plus - x^minus with disjoint supports and at most max_degree
// coordinate factors per side, one per sign pair (plus is the lexicographically
// larger exponent vector), sorted by t-degree then lexicographically.
// Throws std::length_error beyond max_monomials monomials.
std::vector<BinomialRelation> enumerate_binomials(const LabeledComplex& c, int max_degree,
                                                  std::size_t max_monomials = 2000000);

bool verify_relation(const LabeledComplex& c, const BinomialRelation& r);

// "x_{14}x_{23} - x_{12}x_{34}"; also accepts x^{2}_{234} and a lone 1 for the empty monomial.
// Throws FormatError for malformed text or unknown coordinates.
BinomialRelation parse_relation(const LabeledComplex& c, const std::string& text);
std::string format_relation(const LabeledComplex& c, const BinomialRelation& r);

}  // namespace svtan
