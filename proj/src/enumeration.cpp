#include "pfk/enumeration.hpp"

#include <algorithm>
#include <fstream>
#include <map>

#include "pfk/canonical.hpp"
#include "pfk/error.hpp"

namespace pfk {
namespace {

Graph with_edge(const Graph& g, Vertex u, Vertex v) {
  std::vector<std::vector<Vertex>> adj(std::max(g.vertex_count(), std::max(u, v) + 1));
  for (Vertex x = 0; x < g.vertex_count(); ++x) {
    auto nb = g.neighbors(x);
    adj[x].assign(nb.begin(), nb.end());
  }
  adj[u].push_back(v);
  adj[v].push_back(u);
  return Graph::from_adjacency(std::move(adj));
}

// Every one-edge extension of g that stays connected: a chord between two
// existing vertices, or a pendant edge to a fresh vertex.
template <typename Visit>
void for_each_extension(const Graph& g, int max_vertices, Visit&& visit) {
  const int n = g.vertex_count();
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (!g.adjacent(u, v)) visit(with_edge(g, u, v));
    }
  }
  if (n < max_vertices) {
    for (Vertex u = 0; u < n; ++u) visit(with_edge(g, u, n));
  }
}

bool admissible(const Graph& g) {
  bool pendant = false;
  bool interior = false;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    (g.degree(v) == 1 ? pendant : interior) = true;
  }
  return pendant && interior;
}

}  // namespace

void EnumerationSpec::validate() const {
  if (edge_count < 4 || edge_count > kMaxEnumerationEdges) {
    fail(ErrorCode::InvalidSpec, "edge_count must lie in [4, " + std::to_string(kMaxEnumerationEdges) +
                                     "], got " + std::to_string(edge_count));
  }
  if (max_vertices < 0 || max_vertices > edge_count + 1) {
    fail(ErrorCode::InvalidSpec, "max_vertices must not exceed edge_count + 1");
  }
}

std::vector<Graph> connected_graphs(int edges, int max_vertices) {
  if (edges < 1) fail(ErrorCode::InvalidSpec, "edges must be positive");
  if (max_vertices > kDefaultCanonicalBound) {
    fail(ErrorCode::TooLarge, "max_vertices exceeds the canonical-key bound");
  }
  std::map<std::string, Graph> level;
  if (max_vertices >= 2) {
    Graph k2 = from_edge_list(std::vector<Edge>{{0, 1}});
    level.emplace(canonical_key(k2), std::move(k2));
  }
  // A connected graph with k edges always arises from one with k - 1 edges by
  // adding a chord (drop a cycle edge) or a pendant edge (drop a leaf).
  for (int k = 2; k <= edges; ++k) {
    std::map<std::string, Graph> next;
    for (const auto& entry : level) {
      for_each_extension(entry.second, max_vertices, [&](Graph h) {
        std::string key = canonical_key(h);
        next.try_emplace(std::move(key), std::move(h));
      });
    }
    level = std::move(next);
  }
  std::vector<Graph> out;
  out.reserve(level.size());
  for (auto& entry : level) out.push_back(std::move(entry.second));
  return out;
}

GraphEnumerator::GraphEnumerator(EnumerationSpec spec) : spec_(spec) { spec_.validate(); }

void GraphEnumerator::generate() {
  generated_ = true;
  const int n = spec_.edge_count;
  const int max_v = spec_.effective_max_vertices();
  std::vector<std::pair<std::string, Graph>> found;
  if (spec_.dedup) {
    for (Graph& g : connected_graphs(n, max_v)) {
      if (!admissible(g)) continue;
      std::string key = canonical_key(g);
      found.emplace_back(std::move(key), std::move(g));
    }
  } else {
    for (const Graph& parent : connected_graphs(n - 1, max_v)) {
      for_each_extension(parent, max_v, [&](Graph h) {
        if (!admissible(h)) return;
        std::string key = canonical_key(h);
        found.emplace_back(std::move(key), std::move(h));
      });
    }
  }
  std::stable_sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
    if (a.second.vertex_count() != b.second.vertex_count()) {
      return a.second.vertex_count() < b.second.vertex_count();
    }
    return a.first < b.first;
  });
  pending_.reserve(found.size());
  for (auto& [key, g] : found) {
    pending_.push_back(EnumeratedGraph{validate_domain(std::move(g)), std::move(key)});
  }
}

std::optional<EnumeratedGraph> GraphEnumerator::next() {
  if (!generated_) generate();
  if (cursor_ >= pending_.size()) return std::nullopt;
  return pending_[cursor_++];
}

std::vector<EnumeratedGraph> enumerate_graphs(const EnumerationSpec& spec) {
  GraphEnumerator stream(spec);
  std::vector<EnumeratedGraph> out;
  while (auto item = stream.next()) out.push_back(std::move(*item));
  return out;
}

void dump_edge_lists(const std::vector<EnumeratedGraph>& graphs, int edge_count,
                     const std::filesystem::path& directory) {
  std::error_code ec;
  std::filesystem::create_directories(directory, ec);
  if (ec) fail(ErrorCode::IoError, "cannot create " + directory.string() + ": " + ec.message());
  for (std::size_t k = 0; k < graphs.size(); ++k) {
    const auto file = directory / ("n" + std::to_string(edge_count) + "_k" + std::to_string(k) + ".edges");
    std::ofstream out(file);
    if (!out) fail(ErrorCode::IoError, "cannot write " + file.string());
    out << "# key " << key_hex(graphs[k].key) << '\n';
    write_edge_list(out, graphs[k].graph.graph());
  }
}

}  // namespace pfk
