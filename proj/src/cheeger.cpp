#include "pfk/cheeger.hpp"

#include <algorithm>
#include <bit>

#include "pfk/error.hpp"

namespace pfk {
namespace {

using Mask = std::uint32_t;

// Lexicographic order of the sorted element lists of two subsets, bit k
// standing for the k-th interior vertex (interior is sorted by id).
bool lex_less(Mask a, Mask b) {
  const Mask diff = a ^ b;
  if (diff == 0) return false;
  const Mask low = diff & (~diff + 1);
  const Mask above = ~((low << 1) - 1);
  if (a & low) return (b & above) != 0;
  return (a & above) == 0;
}

}  // namespace

std::string to_string(const Rational& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

CheegerResult dirichlet_cheeger(const DomainGraph& g) {
  const auto interior = g.interior();
  const int k = static_cast<int>(interior.size());
  if (k > kMaxCheegerInterior) {
    fail(ErrorCode::TooManyInteriorVertices,
         std::to_string(k) + " interior vertices exceed the limit of " + std::to_string(kMaxCheegerInterior));
  }
  std::vector<int> slot(g.vertex_count(), -1);
  for (int a = 0; a < k; ++a) slot[interior[a]] = a;

  std::vector<bool> inside(g.vertex_count(), false);
  std::int64_t cut = 0;
  std::int64_t volume = 0;
  std::int64_t best_cut = 0;
  std::int64_t best_volume = 0;
  Mask best = 0;
  Mask gray = 0;
  const Mask total = Mask{1} << k;
  for (Mask step = 1; step < total; ++step) {
    const int bit = std::countr_zero(step);
    const Vertex x = interior[bit];
    const bool entering = !inside[x];
    for (Vertex y : g.graph().neighbors(x)) cut += (inside[y] == entering) ? -1 : 1;
    volume += entering ? g.degree(x) : -g.degree(x);
    inside[x] = entering;
    gray ^= Mask{1} << bit;

    if (best == 0) {
      best = gray;
      best_cut = cut;
      best_volume = volume;
      continue;
    }
    const std::int64_t lhs = cut * best_volume;
    const std::int64_t rhs = best_cut * volume;
    if (lhs < rhs || (lhs == rhs && lex_less(gray, best))) {
      best = gray;
      best_cut = cut;
      best_volume = volume;
    }
  }

  CheegerResult result;
  result.cut = best_cut;
  result.volume = best_volume;
  result.value = Rational(best_cut, best_volume);
  for (int a = 0; a < k; ++a) {
    if (best & (Mask{1} << a)) result.witness.push_back(interior[a]);
  }
  return result;
}

Rational indicator_rayleigh(const DomainGraph& g, std::span<const Vertex> subset) {
  if (subset.empty()) fail(ErrorCode::EmptySet, "indicator set is empty");
  std::vector<bool> inside(g.vertex_count(), false);
  for (Vertex x : subset) {
    if (x < 0 || x >= g.vertex_count() || g.is_boundary(x)) {
      fail(ErrorCode::NotInterior, "vertex " + std::to_string(x) + " is not an interior vertex");
    }
    inside[x] = true;
  }
  std::int64_t cut = 0;
  std::int64_t volume = 0;
  for (Vertex x = 0; x < g.vertex_count(); ++x) {
    if (!inside[x]) continue;
    volume += g.degree(x);
    for (Vertex y : g.graph().neighbors(x)) {
      if (!inside[y]) ++cut;
    }
  }
  return Rational(cut, volume);
}

}  // namespace pfk
