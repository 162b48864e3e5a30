#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "pfk/graph.hpp"

namespace pfk {

inline constexpr int kMaxEnumerationEdges = 9;

struct EnumerationSpec {
  int edge_count = 4;
  /// Upper bound on vertices; 0 means edge_count + 1.
  int max_vertices = 0;
  /// When false, isomorphic copies produced by different parents of the final
  /// augmentation step are all yielded.
  bool dedup = true;

  int effective_max_vertices() const { return max_vertices > 0 ? max_vertices : edge_count + 1; }
  void validate() const;
};

struct EnumeratedGraph {
  DomainGraph graph;
  std::string key;
};

/// All connected simple graphs with exactly `edges` edges (no boundary
/// condition), one per isomorphism class, sorted by (vertex count, key).
std::vector<Graph> connected_graphs(int edges, int max_vertices);

/// Pull-style stream over the admissible graphs with spec.edge_count edges:
/// connected, at least one pendant vertex, nonempty interior. Order is by
/// vertex count, then canonical key.
class GraphEnumerator {
 public:
  explicit GraphEnumerator(EnumerationSpec spec);

  std::optional<EnumeratedGraph> next();

 private:
  void generate();

  EnumerationSpec spec_;
  bool generated_ = false;
  std::vector<EnumeratedGraph> pending_;
  std::size_t cursor_ = 0;
};

std::vector<EnumeratedGraph> enumerate_graphs(const EnumerationSpec& spec);

/// Writes one edge-list file per graph, named n{n}_k{index}.edges.
void dump_edge_lists(const std::vector<EnumeratedGraph>& graphs, int edge_count,
                     const std::filesystem::path& directory);

}  // namespace pfk
