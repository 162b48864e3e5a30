#pragma once

#include <cstdint>

#include "pfk/graph.hpp"

namespace pfk {

/// Below this exponent the nonlinear solver switches to quad precision, uses
/// smaller initial descent steps and a 10x iteration budget.
inline constexpr double kLowExponent = 1.2;

struct SolverConfig {
  double p = 2.0;
  double residual_tol = 1e-8;
  int max_iter = 200000;
  int restarts = 5;
  std::uint64_t rng_seed = 20240611;
  /// Number of geometric steps in p taken from the linear (p = 2) solution.
  int continuation_steps = 8;

  void validate() const;
};

struct EigenResult {
  double lambda = 0.0;
  /// Normalized to ||f||_{p,G} = 1, zero on the boundary, positive inside.
  VertexFunction eigenfunction;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Normalized p-Laplacian at every vertex. Terms with f(x) = f(y) are zero.
VertexFunction p_laplacian_apply(const DomainGraph& g, double p, const VertexFunction& f);

/// Sum over edges of |f(x) - f(y)|^p.
double dirichlet_energy(const DomainGraph& g, double p, const VertexFunction& f);

/// Sum over vertices of |f(x)|^p deg(x). Note this is the p-th power of the norm.
double weighted_p_norm(const DomainGraph& g, double p, const VertexFunction& f);

/// R_p[f] for f vanishing on the boundary and not identically zero.
double rayleigh_quotient(const DomainGraph& g, double p, const VertexFunction& f);

/// Gradient of the Rayleigh quotient with respect to the interior values of
/// f; boundary entries are zero. This is the first-order direction used by
/// the nonlinear solver.
VertexFunction rayleigh_gradient(const DomainGraph& g, double p, const VertexFunction& f);

/// Largest defect |Delta_p f(x) - lambda |f|^{p-2} f(x)| over interior
/// vertices, divided by max(1, max|f|^{p-1}).
double residual(const DomainGraph& g, double p, const VertexFunction& f, double lambda);

/// Exact p = 2 eigenpair from the symmetric interior eigenproblem.
EigenResult first_eigen_linear(const DomainGraph& g);

/// Nonlinear solve; reports non-convergence through EigenResult::converged.
/// Throws MultiplicityViolation when converged restarts disagree.
EigenResult solve_first_eigen(const DomainGraph& g, const SolverConfig& cfg);

/// As solve_first_eigen, but throws NotConverged instead of returning an
/// unconverged result.
EigenResult first_eigen(const DomainGraph& g, const SolverConfig& cfg);

}  // namespace pfk
