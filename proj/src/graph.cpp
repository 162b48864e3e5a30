#include "pfk/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <queue>
#include <sstream>

#include "pfk/error.hpp"

namespace pfk {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::EmptyEdgeList: return "EmptyEdgeList";
    case ErrorCode::NegativeVertex: return "NegativeVertex";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::NoBoundary: return "NoBoundary";
    case ErrorCode::NoInterior: return "NoInterior";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::NotABijection: return "NotABijection";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::BadExponent: return "BadExponent";
    case ErrorCode::BadFunction: return "BadFunction";
    case ErrorCode::ZeroFunction: return "ZeroFunction";
    case ErrorCode::NotInCB: return "NotInCB";
    case ErrorCode::NumericalFailure: return "NumericalFailure";
    case ErrorCode::NotConverged: return "NotConverged";
    case ErrorCode::MultiplicityViolation: return "MultiplicityViolation";
    case ErrorCode::TooManyInteriorVertices: return "TooManyInteriorVertices";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::NotInterior: return "NotInterior";
    case ErrorCode::NotPositiveInterior: return "NotPositiveInterior";
    case ErrorCode::BadPath: return "BadPath";
    case ErrorCode::NotApplicable: return "NotApplicable";
    case ErrorCode::NotPendant: return "NotPendant";
    case ErrorCode::InadmissibleRemainder: return "InadmissibleRemainder";
  }
  return "Unknown";
}

Graph Graph::from_adjacency(std::vector<std::vector<Vertex>> adjacency) {
  const int n = static_cast<int>(adjacency.size());
  long degree_sum = 0;
  for (int v = 0; v < n; ++v) {
    auto& row = adjacency[v];
    std::sort(row.begin(), row.end());
    for (std::size_t k = 0; k < row.size(); ++k) {
      const Vertex w = row[k];
      if (w < 0 || w >= n) {
        fail(ErrorCode::InvalidParams, "neighbor id " + std::to_string(w) + " out of range");
      }
      if (w == v) fail(ErrorCode::SelfLoop, "self-loop at vertex " + std::to_string(v));
      if (k > 0 && row[k - 1] == w) {
        fail(ErrorCode::DuplicateEdge,
             "duplicate edge " + std::to_string(v) + "-" + std::to_string(w));
      }
    }
    degree_sum += static_cast<long>(row.size());
  }
  for (int v = 0; v < n; ++v) {
    for (Vertex w : adjacency[v]) {
      if (!std::binary_search(adjacency[w].begin(), adjacency[w].end(), v)) {
        fail(ErrorCode::InvalidParams,
             "adjacency not symmetric at " + std::to_string(v) + "-" + std::to_string(w));
      }
    }
  }
  Graph g;
  g.adj_ = std::move(adjacency);
  g.edge_count_ = static_cast<int>(degree_sum / 2);
  return g;
}

bool Graph::adjacent(Vertex u, Vertex v) const {
  const auto& row = adj_.at(u);
  return std::binary_search(row.begin(), row.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (int u = 0; u < vertex_count(); ++u) {
    for (Vertex v : adj_[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

std::vector<int> Graph::degrees() const {
  std::vector<int> out(adj_.size());
  for (std::size_t v = 0; v < adj_.size(); ++v) out[v] = static_cast<int>(adj_[v].size());
  return out;
}

Graph from_edge_list(std::span<const Edge> edges) {
  if (edges.empty()) fail(ErrorCode::EmptyEdgeList, "edge list is empty");
  Vertex max_id = 0;
  for (const auto& [u, v] : edges) {
    if (u < 0 || v < 0) {
      fail(ErrorCode::NegativeVertex,
           "negative vertex id in edge " + std::to_string(u) + " " + std::to_string(v));
    }
    if (u == v) fail(ErrorCode::SelfLoop, "self-loop at vertex " + std::to_string(u));
    max_id = std::max({max_id, u, v});
  }
  std::vector<std::vector<Vertex>> adj(static_cast<std::size_t>(max_id) + 1);
  for (const auto& [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  return Graph::from_adjacency(std::move(adj));
}

bool is_connected(const Graph& g) {
  const int n = g.vertex_count();
  if (n == 0) return false;
  std::vector<bool> seen(n, false);
  std::vector<Vertex> stack{0};
  seen[0] = true;
  int reached = 1;
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    for (Vertex w : g.neighbors(v)) {
      if (!seen[w]) {
        seen[w] = true;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached == n;
}

DomainGraph validate_domain(Graph g) {
  if (g.vertex_count() == 0) fail(ErrorCode::NoBoundary, "graph has no vertices");
  if (!is_connected(g)) fail(ErrorCode::Disconnected, "graph is not connected");
  DomainGraph d;
  d.on_boundary_.assign(g.vertex_count(), false);
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (g.degree(v) == 1) {
      d.boundary_.push_back(v);
      d.on_boundary_[v] = true;
    } else {
      d.interior_.push_back(v);
    }
  }
  if (d.boundary_.empty()) fail(ErrorCode::NoBoundary, "graph has no pendant vertex");
  if (d.interior_.empty()) fail(ErrorCode::NoInterior, "graph has no interior vertex");
  d.graph_ = std::move(g);
  return d;
}

DomainGraph tadpole(int n, int i) {
  if (!(i >= 3 && n > i)) {
    fail(ErrorCode::InvalidParams,
         "tadpole requires n > i >= 3, got n=" + std::to_string(n) + " i=" + std::to_string(i));
  }
  std::vector<Edge> edges;
  // Tail t_n ~ ... ~ t_i, then the head t_i ~ t_{i-1} ~ ... ~ t_1 ~ t_i.
  for (int k = n; k > 1; --k) edges.emplace_back(k - 1, k - 2);
  edges.emplace_back(0, i - 1);
  return validate_domain(from_edge_list(edges));
}

DomainGraph path_graph(int n) {
  if (n < 3) fail(ErrorCode::InvalidParams, "path_graph requires n >= 3, got " + std::to_string(n));
  std::vector<Edge> edges;
  for (int k = 0; k + 1 < n; ++k) edges.emplace_back(k, k + 1);
  return validate_domain(from_edge_list(edges));
}

Graph apply_permutation(const Graph& g, std::span<const Vertex> perm) {
  const int n = g.vertex_count();
  if (static_cast<int>(perm.size()) != n) {
    fail(ErrorCode::NotABijection, "permutation size does not match vertex count");
  }
  std::vector<bool> hit(n, false);
  for (Vertex image : perm) {
    if (image < 0 || image >= n || hit[image]) {
      fail(ErrorCode::NotABijection, "permutation is not a bijection on vertex ids");
    }
    hit[image] = true;
  }
  std::vector<std::vector<Vertex>> adj(n);
  for (Vertex v = 0; v < n; ++v) {
    for (Vertex w : g.neighbors(v)) adj[perm[v]].push_back(perm[w]);
  }
  return Graph::from_adjacency(std::move(adj));
}

Graph remove_vertex(const Graph& g, Vertex v) {
  const int n = g.vertex_count();
  if (v < 0 || v >= n) fail(ErrorCode::InvalidParams, "vertex " + std::to_string(v) + " out of range");
  auto shift = [v](Vertex w) { return w > v ? w - 1 : w; };
  std::vector<std::vector<Vertex>> adj;
  adj.reserve(n - 1);
  for (Vertex u = 0; u < n; ++u) {
    if (u == v) continue;
    std::vector<Vertex> row;
    for (Vertex w : g.neighbors(u)) {
      if (w != v) row.push_back(shift(w));
    }
    adj.push_back(std::move(row));
  }
  return Graph::from_adjacency(std::move(adj));
}

namespace {

bool parse_id(std::string_view token, Vertex& out) {
  const char* first = token.data();
  const char* last = first + token.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

}  // namespace

std::vector<Edge> parse_edge_list(std::istream& in) {
  std::vector<Edge> edges;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    std::istringstream fields(line);
    std::string a, b, extra;
    fields >> a >> b;
    Vertex u = 0, v = 0;
    if (b.empty() || (fields >> extra) || !parse_id(a, u) || !parse_id(b, v)) {
      fail(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected \"u v\"");
    }
    if (u < 0 || v < 0) {
      fail(ErrorCode::NegativeVertex, "line " + std::to_string(line_no) + ": negative vertex id");
    }
    edges.emplace_back(u, v);
  }
  return edges;
}

Graph read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoError, "cannot open " + path);
  return from_edge_list(parse_edge_list(in));
}

void write_edge_list(std::ostream& out, const Graph& g) {
  for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

}  // namespace pfk
