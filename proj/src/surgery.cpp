#include "pfk/surgery.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "pfk/error.hpp"

namespace pfk {
namespace {

std::vector<int> bfs_distances(const Graph& g, Vertex source) {
  std::vector<int> dist(g.vertex_count(), -1);
  std::deque<Vertex> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    const Vertex v = queue.front();
    queue.pop_front();
    for (Vertex w : g.neighbors(v)) {
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

void require_interior(const DomainGraph& g, Vertex m) {
  if (m < 0 || m >= g.vertex_count() || g.is_boundary(m)) {
    fail(ErrorCode::NotInterior, "vertex " + std::to_string(m) + " is not an interior vertex");
  }
}

int boundary_distance(const DomainGraph& g, const std::vector<int>& dist) {
  int best = -1;
  for (Vertex b : g.boundary()) {
    if (best < 0 || dist[b] < best) best = dist[b];
  }
  return best;
}

void validate_path(const DomainGraph& g, std::span<const Vertex> path) {
  if (path.size() < 2) fail(ErrorCode::BadPath, "path needs at least one edge");
  for (Vertex v : path) {
    if (v < 0 || v >= g.vertex_count()) fail(ErrorCode::BadPath, "path vertex out of range");
  }
  if (!g.is_boundary(path.front())) fail(ErrorCode::BadPath, "path must start at a boundary vertex");
  if (g.is_boundary(path.back())) fail(ErrorCode::BadPath, "path must end at an interior vertex");
  std::vector<bool> seen(g.vertex_count(), false);
  for (std::size_t k = 0; k < path.size(); ++k) {
    if (seen[path[k]]) fail(ErrorCode::BadPath, "path repeats a vertex");
    seen[path[k]] = true;
    if (k > 0 && !g.graph().adjacent(path[k - 1], path[k])) fail(ErrorCode::BadPath, "path uses a non-edge");
    if (k > 0 && k + 1 < path.size() && g.is_boundary(path[k])) {
      fail(ErrorCode::BadPath, "path passes through a boundary vertex");
    }
  }
  const auto dist = bfs_distances(g.graph(), path.back());
  if (static_cast<int>(path.size()) - 1 != boundary_distance(g, dist)) {
    fail(ErrorCode::BadPath, "path is not a shortest path from the boundary");
  }
}

}  // namespace

Vertex find_max_vertex(const DomainGraph& g, const VertexFunction& f) {
  if (static_cast<int>(f.size()) != g.vertex_count()) fail(ErrorCode::BadFunction, "function size mismatch");
  for (Vertex b : g.boundary()) {
    if (f[b] != 0.0) fail(ErrorCode::NotInCB, "function is nonzero on boundary vertex " + std::to_string(b));
  }
  Vertex best = -1;
  for (Vertex x : g.interior()) {
    if (!(f[x] > 0.0)) {
      fail(ErrorCode::NotPositiveInterior, "function is not positive at interior vertex " + std::to_string(x));
    }
    if (best < 0 || f[x] > f[best]) best = x;
  }
  return best;
}

std::vector<Vertex> shortest_path_from_boundary(const DomainGraph& g, Vertex m) {
  require_interior(g, m);
  const auto dist = bfs_distances(g.graph(), m);
  const int d = boundary_distance(g, dist);
  Vertex current = -1;
  for (Vertex b : g.boundary()) {
    if (dist[b] == d) {
      current = b;
      break;
    }
  }
  std::vector<Vertex> path{current};
  while (current != m) {
    for (Vertex w : g.graph().neighbors(current)) {
      if (dist[w] == dist[current] - 1) {
        current = w;
        break;
      }
    }
    path.push_back(current);
  }
  return path;
}

std::vector<std::vector<Vertex>> all_shortest_paths_from_boundary(const DomainGraph& g, Vertex m) {
  require_interior(g, m);
  const auto dist = bfs_distances(g.graph(), m);
  const int d = boundary_distance(g, dist);
  std::vector<std::vector<Vertex>> out;
  std::vector<Vertex> stack;
  auto extend = [&](auto&& self, Vertex v) -> void {
    stack.push_back(v);
    if (v == m) {
      out.push_back(stack);
    } else {
      for (Vertex w : g.graph().neighbors(v)) {
        if (dist[w] == dist[v] - 1) self(self, w);
      }
    }
    stack.pop_back();
  };
  for (Vertex b : g.boundary()) {
    if (dist[b] == d) extend(extend, b);
  }
  return out;
}

int tail_index(const DomainGraph& g, std::span<const Vertex> path) {
  return g.edge_count() - (static_cast<int>(path.size()) - 1);
}

DegreeBudget degree_budget(const DomainGraph& g, std::span<const Vertex> path) {
  validate_path(g, path);
  DegreeBudget out;
  out.i = tail_index(g, path);
  std::vector<bool> on_tail(g.vertex_count(), false);
  for (std::size_t k = 1; k + 1 < path.size(); ++k) {
    on_tail[path[k]] = true;
    out.lhs += g.degree(path[k]) - 2;
  }
  for (Vertex x : g.interior()) {
    if (!on_tail[x]) out.lhs += g.degree(x);
  }
  out.rhs_exact = 2L * (out.i + 1) - static_cast<long>(g.boundary().size());
  out.bound = 2L * out.i + 1;
  return out;
}

Transplant transplant(const DomainGraph& g, const VertexFunction& f, std::span<const Vertex> path) {
  validate_path(g, path);
  if (static_cast<int>(f.size()) != g.vertex_count()) fail(ErrorCode::BadFunction, "function size mismatch");
  const int n = g.edge_count();
  const int i = tail_index(g, path);
  if (i < 3) {
    fail(ErrorCode::NotApplicable, "transplant needs |E(G)| - |E(P)| >= 3, got " + std::to_string(i));
  }
  Transplant out{tadpole(n, 3), VertexFunction(n, 0.0), i};
  // path[0] is v_n, path[n - k] is v_k.
  for (int k = i; k <= n; ++k) out.function[k - 1] = f[path[n - k]];
  for (int k = 1; k < i; ++k) out.function[k - 1] = f[path.back()];
  return out;
}

SurgeryTrace surgery_from_eigenfunction(const DomainGraph& g, double p, const VertexFunction& f) {
  SurgeryTrace trace;
  trace.source = g;
  trace.p = p;
  trace.eigenfunction = f;
  trace.max_vertex = find_max_vertex(g, f);
  trace.path = shortest_path_from_boundary(g, trace.max_vertex);
  trace.i = tail_index(g, trace.path);
  trace.applicable = trace.i >= 3;
  trace.energy_source = dirichlet_energy(g, p, f);
  trace.norm_source = weighted_p_norm(g, p, f);
  trace.rayleigh_source = trace.energy_source / trace.norm_source;
  if (!trace.applicable) return trace;

  Transplant moved = transplant(g, f, trace.path);
  trace.energy_target = dirichlet_energy(moved.target, p, moved.function);
  trace.norm_target = weighted_p_norm(moved.target, p, moved.function);
  trace.rayleigh_target = trace.energy_target / trace.norm_target;
  trace.energy_slack = trace.energy_source - trace.energy_target;
  trace.norm_slack = trace.norm_target - trace.norm_source;
  trace.inequalities_hold = trace.energy_slack >= -kSurgerySlack * std::max(1.0, trace.energy_source) &&
                            trace.norm_slack >= -kSurgerySlack * std::max(1.0, trace.norm_source);
  trace.target = std::move(moved.target);
  trace.transplanted = std::move(moved.function);
  return trace;
}

SurgeryTrace check_surgery(const DomainGraph& g, const SolverConfig& cfg) {
  const EigenResult source = first_eigen(g, cfg);
  SurgeryTrace trace = surgery_from_eigenfunction(g, cfg.p, source.eigenfunction);
  trace.lambda_source = source.lambda;
  if (trace.applicable) {
    trace.lambda_target = first_eigen(*trace.target, cfg).lambda;
    trace.target_gap = trace.rayleigh_target - trace.lambda_target;
    trace.strict = trace.target_gap > 10.0 * cfg.residual_tol;
  }
  return trace;
}

}  // namespace pfk
