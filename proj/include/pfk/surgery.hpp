#pragma once

#include <optional>
#include <span>
#include <vector>

#include "pfk/graph.hpp"
#include "pfk/spectral.hpp"

namespace pfk {

/// Interior argmax of a function that is positive inside and zero on the
/// boundary; ties go to the smallest id.
Vertex find_max_vertex(const DomainGraph& g, const VertexFunction& f);

/// Shortest path v_n ~ ... ~ v_i = m from the boundary to m. BFS from m with
/// sorted expansion; nearest boundary vertex of smallest id; walking back
/// towards m always takes the smallest-id neighbor one step closer.
std::vector<Vertex> shortest_path_from_boundary(const DomainGraph& g, Vertex m);

/// Every shortest boundary-to-m path, each listed from the boundary end.
std::vector<std::vector<Vertex>> all_shortest_paths_from_boundary(const DomainGraph& g, Vertex m);

/// The degree-count identity behind the transplant. With n = |E(G)| and the
/// path v_n, ..., v_i (i = n - path edges):
///   lhs       = sum_{k=i+1}^{n-1} (deg v_k - 2) + sum of deg over the rest of the interior
///   rhs_exact = 2(i + 1) - |B(G)|
///   bound     = 2i + 1
struct DegreeBudget {
  int i = 0;
  long lhs = 0;
  long rhs_exact = 0;
  long bound = 0;
};

DegreeBudget degree_budget(const DomainGraph& g, std::span<const Vertex> path);

/// Tail index i = |E(G)| - (path edges) of a boundary path.
int tail_index(const DomainGraph& g, std::span<const Vertex> path);

struct Transplant {
  DomainGraph target;  // T_{n,3}, vertex u_k has id k - 1
  VertexFunction function;
  int i = 0;
};

/// Moves f onto T_{n,3}: u_k takes f(v_k) for i <= k <= n and f(v_i) on the
/// rest of the head. Requires i >= 3.
Transplant transplant(const DomainGraph& g, const VertexFunction& f, std::span<const Vertex> path);

struct SurgeryTrace {
  DomainGraph source;
  double p = 2.0;
  VertexFunction eigenfunction;
  double lambda_source = 0.0;
  Vertex max_vertex = -1;
  std::vector<Vertex> path;
  int i = 0;
  bool applicable = false;
  std::optional<DomainGraph> target;
  VertexFunction transplanted;
  double energy_source = 0.0;
  double energy_target = 0.0;
  double norm_source = 0.0;
  double norm_target = 0.0;
  double rayleigh_source = 0.0;
  double rayleigh_target = 0.0;
  /// energy_source - energy_target and norm_target - norm_source.
  double energy_slack = 0.0;
  double norm_slack = 0.0;
  bool inequalities_hold = false;
  /// lambda_{1,p}(T_{n,3}) and R_T[f~] - lambda_{1,p}(T_{n,3}).
  double lambda_target = 0.0;
  double target_gap = 0.0;
  bool strict = false;
};

inline constexpr double kSurgerySlack = 1e-10;

/// Evaluates the transplant for a given positive eigenfunction of g. The
/// target eigenvalue fields are left at zero.
SurgeryTrace surgery_from_eigenfunction(const DomainGraph& g, double p, const VertexFunction& f);

/// Solves for the first eigenfunction, runs the transplant when i >= 3 and
/// compares against the solved eigenvalue of T_{n,3}.
SurgeryTrace check_surgery(const DomainGraph& g, const SolverConfig& cfg);

}  // namespace pfk
