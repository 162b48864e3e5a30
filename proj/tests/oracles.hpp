// Brute-force reference implementations used by the tests. Nothing here calls
// into the library's algorithms; only the Graph containers are shared.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

#include "pfk/graph.hpp"

namespace oracle {

using EdgeList = std::vector<std::pair<int, int>>;

inline EdgeList edges_of(const pfk::Graph& g) {
  EdgeList out;
  for (int u = 0; u < g.vertex_count(); ++u) {
    for (int v : g.neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

// Smallest sorted edge list over every relabeling.
inline EdgeList brute_canonical(int n, const EdgeList& edges) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  EdgeList best;
  bool first = true;
  do {
    EdgeList mapped;
    for (auto [u, v] : edges) {
      int a = perm[u], b = perm[v];
      mapped.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(mapped.begin(), mapped.end());
    if (first || mapped < best) best = mapped;
    first = false;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

inline bool brute_isomorphic(const pfk::Graph& a, const pfk::Graph& b) {
  if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
  return brute_canonical(a.vertex_count(), edges_of(a)) == brute_canonical(b.vertex_count(), edges_of(b));
}

// Admissible graphs with n edges: connected, some pendant vertex, some
// non-pendant vertex. Counted over labeled edge subsets of K_{n+1} whose
// touched vertices are exactly 0..v-1, deduplicated by brute_canonical.
inline std::set<std::pair<int, EdgeList>> admissible_classes(int n) {
  const int top = n + 1;
  EdgeList all;
  for (int u = 0; u < top; ++u) {
    for (int v = u + 1; v < top; ++v) all.emplace_back(u, v);
  }
  std::set<std::pair<int, EdgeList>> classes;
  std::vector<int> pick(n);
  std::iota(pick.begin(), pick.end(), 0);
  const int m = static_cast<int>(all.size());
  while (true) {
    EdgeList chosen;
    std::vector<int> deg(top, 0);
    for (int k : pick) {
      chosen.push_back(all[k]);
      ++deg[all[k].first];
      ++deg[all[k].second];
    }
    int v = 0;
    while (v < top && deg[v] > 0) ++v;
    bool compact = true;
    for (int x = v; x < top; ++x) compact = compact && deg[x] == 0;
    if (compact) {
      // connectivity by repeated relaxation
      std::vector<int> comp(v);
      std::iota(comp.begin(), comp.end(), 0);
      for (bool changed = true; changed;) {
        changed = false;
        for (auto [a, b] : chosen) {
          int c = std::min(comp[a], comp[b]);
          if (comp[a] != c || comp[b] != c) {
            comp[a] = comp[b] = c;
            changed = true;
          }
        }
      }
      const bool connected = std::all_of(comp.begin(), comp.end(), [](int c) { return c == 0; });
      const bool pendant = std::any_of(deg.begin(), deg.begin() + v, [](int d) { return d == 1; });
      const bool inner = std::any_of(deg.begin(), deg.begin() + v, [](int d) { return d > 1; });
      if (connected && pendant && inner) classes.emplace(v, brute_canonical(v, chosen));
    }
    int k = n - 1;
    while (k >= 0 && pick[k] == m - n + k) --k;
    if (k < 0) break;
    ++pick[k];
    for (int j = k + 1; j < n; ++j) pick[j] = pick[j - 1] + 1;
  }
  return classes;
}

struct Ratio {
  std::int64_t cut = 0, vol = 1;
  std::vector<int> witness;
};

// Minimum of cut/vol over nonempty interior subsets, plain bitmask loop.
inline Ratio brute_cheeger(const pfk::Graph& g) {
  std::vector<int> inner;
  for (int x = 0; x < g.vertex_count(); ++x) {
    if (g.degree(x) > 1) inner.push_back(x);
  }
  const int k = static_cast<int>(inner.size());
  Ratio best;
  bool have = false;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << k); ++mask) {
    std::vector<int> in(g.vertex_count(), 0);
    std::vector<int> w;
    for (int b = 0; b < k; ++b) {
      if (mask >> b & 1) {
        in[inner[b]] = 1;
        w.push_back(inner[b]);
      }
    }
    std::int64_t cut = 0, vol = 0;
    for (int x : w) {
      vol += g.degree(x);
      for (int y : g.neighbors(x)) cut += in[y] ? 0 : 1;
    }
    const std::int64_t lhs = cut * best.vol, rhs = best.cut * vol;
    if (!have || lhs < rhs || (lhs == rhs && w < best.witness)) {
      best = {cut, vol, w};
      have = true;
    }
  }
  return best;
}

inline std::int64_t gcd_reduce(Ratio& r) {
  const std::int64_t d = std::gcd(r.cut, r.vol);
  r.cut /= d;
  r.vol /= d;
  return d;
}

// Sum over edges of |f(x)-f(y)|^p over sum of deg|f|^p, straight from the definition.
inline double rayleigh(const pfk::Graph& g, double p, const std::vector<double>& f) {
  double num = 0, den = 0;
  for (auto [u, v] : edges_of(g)) num += std::pow(std::abs(f[u] - f[v]), p);
  for (int x = 0; x < g.vertex_count(); ++x) den += g.degree(x) * std::pow(std::abs(f[x]), p);
  return num / den;
}

// (1/deg x) sum_y |f(x)-f(y)|^{p-2}(f(x)-f(y)).
inline double p_laplacian(const pfk::Graph& g, double p, const std::vector<double>& f, int x) {
  double s = 0;
  for (int y : g.neighbors(x)) {
    const double d = f[x] - f[y];
    if (d != 0) s += std::pow(std::abs(d), p - 2) * d;
  }
  return s / g.degree(x);
}

// Number of eigenvalues of the symmetric matrix a that lie below x, from the
// signs of the pivots of a - xI (Sylvester's law of inertia).
inline int count_below(std::vector<std::vector<double>> a, double x) {
  const int n = static_cast<int>(a.size());
  for (int i = 0; i < n; ++i) a[i][i] -= x;
  int negative = 0;
  for (int i = 0; i < n; ++i) {
    double piv = a[i][i];
    if (piv == 0) piv = 1e-300;
    if (piv < 0) ++negative;
    for (int r = i + 1; r < n; ++r) {
      const double m = a[r][i] / piv;
      for (int c = i + 1; c < n; ++c) a[r][c] -= m * a[i][c];
    }
  }
  return negative;
}

// Smallest eigenvalue of I - D^{-1/2} A D^{-1/2} on the non-pendant block, by bisection.
inline double linear_first_eigenvalue(const pfk::Graph& g) {
  std::vector<int> inner;
  for (int x = 0; x < g.vertex_count(); ++x) {
    if (g.degree(x) > 1) inner.push_back(x);
  }
  const int k = static_cast<int>(inner.size());
  std::vector<std::vector<double>> m(k, std::vector<double>(k, 0.0));
  for (int a = 0; a < k; ++a) {
    m[a][a] = 1.0;
    for (int b = 0; b < k; ++b) {
      if (a != b && g.adjacent(inner[a], inner[b])) {
        m[a][b] = -1.0 / std::sqrt(double(g.degree(inner[a])) * g.degree(inner[b]));
      }
    }
  }
  double lo = 0.0, hi = 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (count_below(m, mid) >= 1 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace oracle
