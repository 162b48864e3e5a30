#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pfk/graph.hpp"

namespace pfk {

using Rational = boost::rational<std::int64_t>;

inline constexpr int kMaxCheegerInterior = 25;

/// Dirichlet Cheeger constant h_D(G) = min |E(U, U^c)| / vol(U) over
/// nonempty U inside the interior, with its witnessing subset.
struct CheegerResult {
  std::int64_t cut = 0;
  std::int64_t volume = 0;
  Rational value;
  std::vector<Vertex> witness;
};

/// Exact brute force over all 2^|interior| - 1 subsets (Gray-code order).
/// Ties go to the lexicographically smallest sorted witness.
CheegerResult dirichlet_cheeger(const DomainGraph& g);

/// |E(U, U^c)| / vol(U): the Rayleigh quotient of the indicator of U, for
/// every exponent.
Rational indicator_rayleigh(const DomainGraph& g, std::span<const Vertex> subset);

std::string to_string(const Rational& r);

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

}  // namespace pfk
