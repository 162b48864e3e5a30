#include "pfk/canonical.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>

#include "pfk/error.hpp"

namespace pfk {
namespace {

// Iterated degree refinement. Colors are indices into the sorted list of
// distinct signatures, so the ordered partition is relabeling-invariant.
std::vector<int> refine_colors(const Graph& g) {
  const int n = g.vertex_count();
  std::vector<int> color = g.degrees();
  {
    std::vector<int> distinct = color;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (int& c : color) c = static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), c) - distinct.begin());
  }
  int classes = 1 + *std::max_element(color.begin(), color.end());
  while (true) {
    std::vector<std::vector<int>> signature(n);
    for (Vertex v = 0; v < n; ++v) {
      auto& s = signature[v];
      s.push_back(color[v]);
      for (Vertex w : g.neighbors(v)) s.push_back(color[w]);
      std::sort(s.begin() + 1, s.end());
    }
    std::vector<std::vector<int>> distinct = signature;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (Vertex v = 0; v < n; ++v) {
      color[v] = static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), signature[v]) - distinct.begin());
    }
    const int next = static_cast<int>(distinct.size());
    if (next == classes) break;
    classes = next;
  }
  return color;
}

// Twin classes (equal open or equal closed neighborhoods). Any permutation of
// a twin class is an automorphism, so the search only needs one ordering.
std::vector<int> twin_classes(const Graph& g) {
  const int n = g.vertex_count();
  std::vector<int> twin(n);
  std::iota(twin.begin(), twin.end(), 0);
  for (Vertex u = 0; u < n; ++u) {
    if (twin[u] != u) continue;
    auto open_u = g.neighbors(u);
    std::vector<Vertex> closed_u(open_u.begin(), open_u.end());
    closed_u.insert(std::upper_bound(closed_u.begin(), closed_u.end(), u), u);
    for (Vertex v = u + 1; v < n; ++v) {
      if (twin[v] != v) continue;
      auto open_v = g.neighbors(v);
      bool same = std::equal(open_u.begin(), open_u.end(), open_v.begin(), open_v.end());
      if (!same) {
        std::vector<Vertex> closed_v(open_v.begin(), open_v.end());
        closed_v.insert(std::upper_bound(closed_v.begin(), closed_v.end(), v), v);
        same = closed_u == closed_v;
      }
      if (same) twin[v] = u;
    }
  }
  return twin;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) parent[b] = a;
    else parent[a] = b;
  }
};

class CanonicalSearch {
 public:
  explicit CanonicalSearch(const Graph& g)
      : g_(g), n_(g.vertex_count()), twin_(twin_classes(g)), used_(n_, false), orbits_(n_) {
    const std::vector<int> color = refine_colors(g);
    order_.resize(n_);
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) { return color[a] < color[b]; });
    // cell_[pos] lists the vertices allowed at that position.
    for (int pos = 0; pos < n_; ++pos) {
      std::vector<Vertex> cell;
      for (Vertex v = 0; v < n_; ++v) {
        if (color[v] == color[order_[pos]]) cell.push_back(v);
      }
      cell_.push_back(std::move(cell));
    }
    const std::size_t bits = static_cast<std::size_t>(n_) * (n_ - 1) / 2;
    current_bits_.assign(bits, 0);
    best_bits_.assign(bits, 1);
    placed_.assign(n_, -1);
  }

  void run() {
    if (n_ > 0) descend(0);
    for (Vertex v = 0; v < n_; ++v) {
      if (twin_[v] != v) orbits_.unite(v, twin_[v]);
    }
  }

  std::string key() const {
    std::string out;
    out.push_back(static_cast<char>(n_));
    std::uint8_t byte = 0;
    int filled = 0;
    for (std::uint8_t bit : best_bits_) {
      byte = static_cast<std::uint8_t>((byte << 1) | bit);
      if (++filled == 8) {
        out.push_back(static_cast<char>(byte));
        byte = 0;
        filled = 0;
      }
    }
    if (filled > 0) out.push_back(static_cast<char>(byte << (8 - filled)));
    return out;
  }

  std::vector<Vertex> orbits() {
    std::vector<Vertex> out(n_);
    for (Vertex v = 0; v < n_; ++v) out[v] = orbits_.find(v);
    return out;
  }

 private:
  static std::size_t column_offset(int pos) { return static_cast<std::size_t>(pos) * (pos - 1) / 2; }

  // The candidate must be the smallest unused member of its twin class.
  bool twin_admissible(Vertex v) const {
    for (Vertex w = 0; w < v; ++w) {
      if (twin_[w] == twin_[v] && !used_[w]) return false;
    }
    return true;
  }

  // Compares the assigned prefix (columns 1..pos) with the best key.
  int compare_prefix(int pos) const {
    if (!have_best_) return -1;
    const std::size_t end = column_offset(pos + 1);
    for (std::size_t k = 0; k < end; ++k) {
      if (current_bits_[k] != best_bits_[k]) return current_bits_[k] < best_bits_[k] ? -1 : 1;
    }
    return 0;
  }

  void descend(int pos) {
    if (pos == n_) {
      leaf();
      return;
    }
    const std::size_t offset = column_offset(pos);
    for (Vertex v : cell_[pos]) {
      if (used_[v] || !twin_admissible(v)) continue;
      for (int i = 0; i < pos; ++i) current_bits_[offset + i] = g_.adjacent(placed_[i], v) ? 1 : 0;
      if (compare_prefix(pos) > 0) continue;
      used_[v] = true;
      placed_[pos] = v;
      descend(pos + 1);
      used_[v] = false;
    }
  }

  void leaf() {
    const int cmp = compare_prefix(n_ - 1);
    if (cmp == 0) {
      for (int pos = 0; pos < n_; ++pos) orbits_.unite(reference_[pos], placed_[pos]);
      return;
    }
    best_bits_ = current_bits_;
    have_best_ = true;
    reference_ = placed_;
    orbits_ = UnionFind(n_);
  }

  const Graph& g_;
  int n_;
  std::vector<int> twin_;
  std::vector<bool> used_;
  UnionFind orbits_;
  std::vector<Vertex> order_;
  std::vector<std::vector<Vertex>> cell_;
  std::vector<std::uint8_t> current_bits_;
  std::vector<std::uint8_t> best_bits_;
  std::vector<Vertex> placed_;
  std::vector<Vertex> reference_;
  bool have_best_ = false;
};

}  // namespace

std::string canonical_key(const Graph& g, int max_vertices) {
  if (g.vertex_count() > max_vertices) {
    fail(ErrorCode::TooLarge, "canonical_key supports at most " + std::to_string(max_vertices) +
                                  " vertices, got " + std::to_string(g.vertex_count()));
  }
  CanonicalSearch search(g);
  search.run();
  return search.key();
}

std::string key_hex(const std::string& key) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(key.size() * 2);
  for (unsigned char c : key) {
    out.push_back(kDigits[c >> 4]);
    out.push_back(kDigits[c & 0xF]);
  }
  return out;
}

std::vector<Vertex> automorphism_orbits(const Graph& g) {
  CanonicalSearch search(g);
  search.run();
  return search.orbits();
}

}  // namespace pfk
