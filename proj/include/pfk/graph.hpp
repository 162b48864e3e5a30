#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace pfk {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;

/// Real-valued function on the vertices of a graph, indexed by vertex id.
using VertexFunction = std::vector<double>;

/// Simple undirected graph on dense 0-based vertex ids. Adjacency lists are
/// kept sorted; the object is immutable once constructed.
class Graph {
 public:
  Graph() = default;

  /// Validates symmetry, absence of loops and repeated neighbors.
  static Graph from_adjacency(std::vector<std::vector<Vertex>> adjacency);

  int vertex_count() const noexcept { return static_cast<int>(adj_.size()); }
  int edge_count() const noexcept { return edge_count_; }
  int degree(Vertex v) const { return static_cast<int>(adj_.at(v).size()); }
  std::span<const Vertex> neighbors(Vertex v) const { return adj_.at(v); }
  bool adjacent(Vertex u, Vertex v) const;

  /// Edges as (u, v) with u < v, in lexicographic order.
  std::vector<Edge> edges() const;
  std::vector<int> degrees() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::vector<Vertex>> adj_;
  int edge_count_ = 0;
};

/// A connected graph together with its pendant-vertex boundary B(G) and the
/// complementary interior. Both sets are nonempty and sorted.
class DomainGraph {
 public:
  const Graph& graph() const noexcept { return graph_; }
  std::span<const Vertex> boundary() const noexcept { return boundary_; }
  std::span<const Vertex> interior() const noexcept { return interior_; }
  bool is_boundary(Vertex v) const { return on_boundary_.at(v); }

  int vertex_count() const noexcept { return graph_.vertex_count(); }
  int edge_count() const noexcept { return graph_.edge_count(); }
  int degree(Vertex v) const { return graph_.degree(v); }

 private:
  friend DomainGraph validate_domain(Graph g);

  Graph graph_;
  std::vector<Vertex> boundary_;
  std::vector<Vertex> interior_;
  std::vector<bool> on_boundary_;
};

Graph from_edge_list(std::span<const Edge> edges);

bool is_connected(const Graph& g);

/// Accepts exactly the connected graphs that have at least one pendant vertex
/// and at least one non-pendant vertex.
DomainGraph validate_domain(Graph g);

/// Tadpole T_{n,i}: tail t_n ~ ... ~ t_i and head cycle t_i ~ ... ~ t_1 ~ t_i.
/// Vertex t_k gets id k - 1, so the end vertex is n - 1 and the neck i - 1.
DomainGraph tadpole(int n, int i);

/// Path P_n on vertices 0 ~ 1 ~ ... ~ n-1.
DomainGraph path_graph(int n);

/// Relabels g so that vertex v becomes perm[v].
Graph apply_permutation(const Graph& g, std::span<const Vertex> perm);

/// Removes v and shifts larger ids down by one.
Graph remove_vertex(const Graph& g, Vertex v);

/// Edge-list text: "u v" per line, '#' comments and blank lines ignored.
std::vector<Edge> parse_edge_list(std::istream& in);
Graph read_edge_list_file(const std::string& path);
void write_edge_list(std::ostream& out, const Graph& g);

}  // namespace pfk
