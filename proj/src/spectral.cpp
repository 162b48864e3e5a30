#include "pfk/spectral.hpp"

#include <Eigen/Dense>
#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/float128.hpp>
#include <boost/multiprecision/mpfr.hpp>
#include <cmath>
#include <iterator>
#include <random>

#include "pfk/canonical.hpp"
#include "pfk/detail/kernels.hpp"
#include "pfk/error.hpp"

namespace pfk {

using detail::ReducedProblem;
using detail::ReducedStructure;
using Quad = boost::multiprecision::float128;
template <unsigned Digits>
using Wide = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<Digits>,
                                           boost::multiprecision::et_off>;

namespace detail {

ReducedStructure ReducedStructure::build(const DomainGraph& g, std::span<const Vertex> orbit) {
  ReducedStructure s;
  s.class_of.assign(g.vertex_count(), -1);
  std::vector<int> class_of_rep(g.vertex_count(), -1);
  for (Vertex x : g.interior()) {
    const Vertex rep = orbit[x];
    if (class_of_rep[rep] < 0) {
      class_of_rep[rep] = s.classes++;
      s.members.emplace_back();
      s.weight.push_back(0.0);
    }
    const int c = class_of_rep[rep];
    s.class_of[x] = c;
    s.members[c].push_back(x);
    s.weight[c] += g.degree(x);
  }
  for (const auto& [x, y] : g.graph().edges()) {
    if (s.class_of[x] != s.class_of[y]) s.edges.push_back({s.class_of[x], s.class_of[y]});
  }
  return s;
}

std::vector<double> ReducedStructure::restrict_average(const VertexFunction& f) const {
  std::vector<double> u(classes, 0.0);
  for (int c = 0; c < classes; ++c) {
    for (Vertex x : members[c]) u[c] += f[x];
    u[c] /= static_cast<double>(members[c].size());
  }
  return u;
}

}  // namespace detail

namespace {

void require_exponent(double p, double lowest, bool inclusive) {
  if (!std::isfinite(p) || (inclusive ? p < lowest : p <= lowest)) {
    fail(ErrorCode::BadExponent, "exponent p=" + std::to_string(p) + " out of range");
  }
}

void require_function(const DomainGraph& g, const VertexFunction& f) {
  if (static_cast<int>(f.size()) != g.vertex_count()) {
    fail(ErrorCode::BadFunction, "function has " + std::to_string(f.size()) + " entries for " +
                                     std::to_string(g.vertex_count()) + " vertices");
  }
  for (double v : f) {
    if (!std::isfinite(v)) fail(ErrorCode::BadFunction, "function has a non-finite entry");
  }
}

template <class Real>
bool solve_dense(std::vector<Real> a, std::vector<Real> b, std::vector<Real>& x) {
  using Matrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  using Vector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
  const auto n = static_cast<Eigen::Index>(b.size());
  Eigen::Map<Matrix> m(a.data(), n, n);
  Eigen::Map<Vector> rhs(b.data(), n);
  Vector sol = m.fullPivLu().solve(rhs);
  x.resize(b.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    using std::isfinite;
    if (!isfinite(sol[i])) return false;
    x[i] = sol[i];
  }
  return true;
}

struct StageOutcome {
  int iterations = 0;
  bool converged = false;
};

// One safeguarded Newton step on [equation(u, lambda); (norm - 1)/p] = 0.
// Accepted only if u stays positive and the defect drops.
template <class Real>
bool newton_step(const ReducedProblem<Real>& prob, std::vector<Real>& u, const Real& lambda, const Real& res,
                 std::vector<Real>& trial) {
  const int k = prob.size();
  std::vector<Real> rhs = prob.equation(u, lambda);
  rhs.push_back((prob.norm(u) - 1) / prob.exponent());
  for (Real& v : rhs) v = -v;
  std::vector<Real> delta;
  if (!solve_dense<Real>(prob.jacobian(u, lambda), std::move(rhs), delta)) return false;
  Real t = 1;
  for (int ls = 0; ls < 30; ++ls, t /= 2) {
    bool positive = true;
    for (int c = 0; c < k; ++c) {
      trial[c] = u[c] + t * delta[c];
      positive = positive && trial[c] > 0;
    }
    if (!positive) continue;
    prob.normalize(trial);
    if (prob.defect(trial, prob.quotient(trial)) < (1 - Real(1e-4) * t) * res) {
      u.swap(trial);
      return true;
    }
  }
  return false;
}

// Once under tolerance, keep taking Newton steps while they still help. Where
// neighbouring values nearly coincide and p > 2 the defect is flat, so a
// tolerance-level defect can leave the eigenfunction itself loosely pinned.
template <class Real>
void polish_newton(const ReducedProblem<Real>& prob, std::vector<Real>& u, Real res) {
  std::vector<Real> trial(u.size());
  for (int it = 0; it < 50 && res > 0; ++it) {
    if (!newton_step(prob, u, prob.quotient(u), res, trial)) return;
    res = prob.defect(u, prob.quotient(u));
  }
}

// Averages classes joined by interior edges whose values agree to within
// `rel` of the peak. Where the eigenfunction is exactly flat across an edge
// and p < 2 the energy has unbounded curvature there, which stalls both
// Newton and gradient steps; snapping lands on the flat solution directly.
template <class Real>
bool snap_step(const ReducedProblem<Real>& prob, std::vector<Real>& u, const Real& res, std::vector<Real>& trial) {
  const auto& s = prob.structure();
  const int k = prob.size();
  Real peak = 0;
  for (const Real& v : u) peak = std::max<Real>(peak, v);
  for (double rel : {1e-8, 1e-6, 1e-4, 1e-2}) {
    std::vector<int> root(k);
    for (int c = 0; c < k; ++c) root[c] = c;
    auto find = [&](int c) {
      while (root[c] != c) c = root[c] = root[root[c]];
      return c;
    };
    bool merged = false;
    for (const auto& [a, b] : s.edges) {
      if (a < 0 || b < 0 || find(a) == find(b)) continue;
      using std::abs;
      if (abs(u[a] - u[b]) <= Real(rel) * peak) {
        root[find(a)] = find(b);
        merged = true;
      }
    }
    if (!merged) continue;
    std::vector<Real> sum(k, Real(0)), mass(k, Real(0));
    for (int c = 0; c < k; ++c) {
      sum[find(c)] += prob.weight(c) * u[c];
      mass[find(c)] += prob.weight(c);
    }
    for (int c = 0; c < k; ++c) trial[c] = sum[find(c)] / mass[find(c)];
    prob.normalize(trial);
    if (prob.defect(trial, prob.quotient(trial)) < res / 2) {
      u.swap(trial);
      return true;
    }
  }
  return false;
}

// Minimizes the Rayleigh quotient at a fixed exponent over the positive cone.
// Each iteration first tries a safeguarded Newton step on the eigen-equation
// (accepted only if it keeps u positive and lowers the defect); otherwise it
// takes a degree-preconditioned gradient step with Armijo backtracking.
constexpr int kStagnationWindow = 5000;

template <class Real>
StageOutcome descend(const ReducedProblem<Real>& prob, std::vector<Real>& u, const Real& tol,
                     int max_iter, bool low_exponent, bool polish) {
  const int k = prob.size();
  prob.normalize(u);
  Real step = low_exponent ? Real(0.05) : Real(1);
  std::vector<Real> trial(k);
  Real best = -1;
  int best_at = 0;
  for (int it = 0;; ++it) {
    const Real lambda = prob.quotient(u);
    const Real res = prob.defect(u, lambda);
    if (res <= tol) {
      if (polish) polish_newton(prob, u, res);
      return {it, true};
    }
    if (it >= max_iter) return {it, false};
    if (best < 0 || res < best / 2) {
      best = res;
      best_at = it;
    } else if (it - best_at > kStagnationWindow) {
      // usually the working precision cannot resolve the solution
      return {it, false};
    }
    if (newton_step(prob, u, lambda, res, trial)) continue;
    if (snap_step(prob, u, res, trial)) continue;
    bool moved = false;

    const std::vector<Real> grad = prob.gradient(u);
    std::vector<Real> dir(k);
    Real slope = 0;
    Real peak = 0;
    for (int c = 0; c < k; ++c) {
      dir[c] = -grad[c] / prob.weight(c);
      slope += grad[c] * dir[c];
      peak = std::max<Real>(peak, u[c]);
    }
    Real alpha = std::min<Real>(step * 2, Real(1e3));
    while (!moved && alpha > Real(1e-30)) {
      for (int c = 0; c < k; ++c) trial[c] = std::max<Real>(u[c] + alpha * dir[c], Real(1e-12) * peak);
      prob.normalize(trial);
      if (prob.quotient(trial) <= lambda + Real(1e-4) * alpha * slope) {
        u.swap(trial);
        step = alpha;
        moved = true;
      } else {
        alpha /= 2;
      }
    }
    if (!moved) return {it, false};
  }
}

// Geometric path 2 = q_0, q_1, ..., q_K = p.
std::vector<double> continuation_path(double p, int steps) {
  std::vector<double> out;
  if (p == 2.0 || steps <= 0) {
    out.push_back(p);
    return out;
  }
  for (int s = 1; s <= steps; ++s) out.push_back(s == steps ? p : 2.0 * std::pow(p / 2.0, double(s) / steps));
  return out;
}

struct RunOutcome {
  std::vector<double> u;
  int iterations = 0;
  bool converged = false;
};

template <class Real>
RunOutcome continuation_run(const ReducedStructure& s, const SolverConfig& cfg, const std::vector<double>& start,
                            std::vector<Real>& final_u) {
  RunOutcome out;
  std::vector<Real> u(start.begin(), start.end());
  const auto path = continuation_path(cfg.p, cfg.continuation_steps);
  for (std::size_t step = 0; step < path.size(); ++step) {
    const double q = path[step];
    const bool last = step + 1 == path.size();
    const bool low = q < kLowExponent;
    const Real tol = last ? Real(cfg.residual_tol) : Real(std::max(cfg.residual_tol, 1e-6));
    const int budget = low ? cfg.max_iter * 10 : cfg.max_iter;
    ReducedProblem<Real> prob(s, Real(q));
    const StageOutcome stage = descend<Real>(prob, u, tol, budget, low, last);
    out.iterations += stage.iterations;
    if (last) out.converged = stage.converged;
  }
  final_u = u;
  out.u.assign(u.size(), 0.0);
  for (std::size_t c = 0; c < u.size(); ++c) out.u[c] = static_cast<double>(u[c]);
  return out;
}

// Uniform in [0.5, 1.5) from the top 53 bits, independent of the standard
// library's distribution implementations.
double perturbation_factor(std::mt19937_64& rng) {
  return 0.5 + static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

template <class Real>
EigenResult solve_with(const DomainGraph& g, const SolverConfig& cfg) {
  const auto orbit = automorphism_orbits(g.graph());
  const ReducedStructure s = ReducedStructure::build(g, orbit);
  const std::vector<double> start = s.restrict_average(first_eigen_linear(g).eigenfunction);

  std::vector<Real> best_u;
  const RunOutcome main = continuation_run<Real>(s, cfg, start, best_u);
  const std::vector<Real> f_real = s.expand<Real>(best_u);
  const Real p = Real(cfg.p);
  const Real lambda = detail::edge_energy<Real>(g, p, f_real) / detail::degree_norm<Real>(g, p, f_real);

  EigenResult result;
  result.lambda = static_cast<double>(lambda);
  result.residual = static_cast<double>(detail::eigen_defect<Real>(g, p, f_real, lambda));
  result.iterations = main.iterations;
  result.eigenfunction.assign(f_real.size(), 0.0);
  for (std::size_t x = 0; x < f_real.size(); ++x) result.eigenfunction[x] = static_cast<double>(f_real[x]);
  result.converged = main.converged && result.residual <= cfg.residual_tol;
  for (Vertex x : g.interior()) result.converged = result.converged && result.eigenfunction[x] > 0;
  if (!result.converged) return result;

  for (int r = 0; r < cfg.restarts; ++r) {
    std::seed_seq seq{static_cast<std::uint32_t>(cfg.rng_seed), static_cast<std::uint32_t>(cfg.rng_seed >> 32),
                      static_cast<std::uint32_t>(r)};
    std::mt19937_64 rng(seq);
    std::vector<double> perturbed = start;
    for (double& v : perturbed) v *= perturbation_factor(rng);
    std::vector<Real> restart_u;
    const RunOutcome again = continuation_run<Real>(s, cfg, perturbed, restart_u);
    if (!again.converged) {
      result.converged = false;
      return result;
    }
    const auto f_again = s.expand<double>(std::span<const double>(again.u));
    double gap = 0.0;
    for (std::size_t x = 0; x < f_again.size(); ++x) gap = std::max(gap, std::abs(f_again[x] - result.eigenfunction[x]));
    if (gap > 1e-6) {
      fail(ErrorCode::MultiplicityViolation,
           "restart " + std::to_string(r) + " converged to a different eigenfunction (max gap " +
               std::to_string(gap) + ")");
    }
  }
  return result;
}

}  // namespace

void SolverConfig::validate() const {
  require_exponent(p, 1.0, false);
  if (!(residual_tol > 0)) fail(ErrorCode::InvalidParams, "residual_tol must be positive");
  if (max_iter < 1) fail(ErrorCode::InvalidParams, "max_iter must be positive");
  if (restarts < 1) fail(ErrorCode::InvalidParams, "restarts must be at least 1");
  if (continuation_steps < 0) fail(ErrorCode::InvalidParams, "continuation_steps must be nonnegative");
}

VertexFunction p_laplacian_apply(const DomainGraph& g, double p, const VertexFunction& f) {
  require_exponent(p, 1.0, false);
  require_function(g, f);
  VertexFunction out(f.size());
  for (Vertex x = 0; x < g.vertex_count(); ++x) out[x] = detail::laplacian_at<double>(g, p, f, x);
  return out;
}

double dirichlet_energy(const DomainGraph& g, double p, const VertexFunction& f) {
  require_exponent(p, 1.0, true);
  require_function(g, f);
  return detail::edge_energy<double>(g, p, f);
}

double weighted_p_norm(const DomainGraph& g, double p, const VertexFunction& f) {
  require_exponent(p, 1.0, true);
  require_function(g, f);
  return detail::degree_norm<double>(g, p, f);
}

double rayleigh_quotient(const DomainGraph& g, double p, const VertexFunction& f) {
  require_exponent(p, 1.0, true);
  require_function(g, f);
  for (Vertex x : g.boundary()) {
    if (f[x] != 0.0) fail(ErrorCode::NotInCB, "function is nonzero on boundary vertex " + std::to_string(x));
  }
  const double norm = detail::degree_norm<double>(g, p, f);
  if (norm == 0.0) fail(ErrorCode::ZeroFunction, "function vanishes identically");
  return detail::edge_energy<double>(g, p, f) / norm;
}

VertexFunction rayleigh_gradient(const DomainGraph& g, double p, const VertexFunction& f) {
  const double lambda = rayleigh_quotient(g, p, f);
  require_exponent(p, 1.0, false);
  const double norm = detail::degree_norm<double>(g, p, f);
  VertexFunction grad(f.size(), 0.0);
  for (Vertex x : g.interior()) {
    const double defect = detail::laplacian_at<double>(g, p, f, x) - lambda * detail::signed_power<double>(f[x], p);
    grad[x] = p * g.degree(x) * defect / norm;
  }
  return grad;
}

double residual(const DomainGraph& g, double p, const VertexFunction& f, double lambda) {
  require_exponent(p, 1.0, false);
  require_function(g, f);
  return detail::eigen_defect<double>(g, p, f, lambda);
}

EigenResult first_eigen_linear(const DomainGraph& g) {
  const auto interior = g.interior();
  const auto k = static_cast<Eigen::Index>(interior.size());
  std::vector<int> index(g.vertex_count(), -1);
  for (Eigen::Index a = 0; a < k; ++a) index[interior[a]] = static_cast<int>(a);

  // D^{-1/2} (D - A) D^{-1/2} on the interior block; boundary columns dropped.
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(k, k);
  for (Eigen::Index a = 0; a < k; ++a) {
    const Vertex x = interior[a];
    m(a, a) = 1.0;
    for (Vertex y : g.graph().neighbors(x)) {
      if (index[y] >= 0) m(a, index[y]) = -1.0 / std::sqrt(double(g.degree(x)) * g.degree(y));
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  if (solver.info() != Eigen::Success) fail(ErrorCode::NumericalFailure, "symmetric eigensolver failed");

  Eigen::VectorXd y = solver.eigenvectors().col(0);
  if (y.sum() < 0) y = -y;
  EigenResult result;
  result.lambda = solver.eigenvalues()(0);
  result.eigenfunction.assign(g.vertex_count(), 0.0);
  for (Eigen::Index a = 0; a < k; ++a) {
    const double v = y(a) / std::sqrt(double(g.degree(interior[a])));
    if (!(v > 0)) fail(ErrorCode::NumericalFailure, "linear eigenvector is not positive on the interior");
    result.eigenfunction[interior[a]] = v;
  }
  result.residual = residual(g, 2.0, result.eigenfunction, result.lambda);
  result.iterations = 1;
  result.converged = true;
  return result;
}

EigenResult solve_first_eigen(const DomainGraph& g, const SolverConfig& cfg) {
  cfg.validate();
  // Adjacent eigenfunction values can agree to roughly 3/(p-1) digits as
  // p -> 1. Start at a precision suited to p and move up when a run stalls
  // or its restarts disagree.
  using Solver = EigenResult (*)(const DomainGraph&, const SolverConfig&);
  constexpr Solver ladder[] = {solve_with<double>, solve_with<Quad>, solve_with<Wide<60>>, solve_with<Wide<120>>,
                               solve_with<Wide<300>>};
  constexpr int top = std::size(ladder) - 1;
  int tier = cfg.p >= 1.3 ? 0 : cfg.p >= 1.15 ? 1 : cfg.p >= 1.07 ? 2 : cfg.p >= 1.03 ? 3 : 4;
  for (;; ++tier) {
    try {
      EigenResult r = ladder[tier](g, cfg);
      if (r.converged || tier == top) return r;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::MultiplicityViolation || tier == top) throw;
    }
  }
}

EigenResult first_eigen(const DomainGraph& g, const SolverConfig& cfg) {
  EigenResult result = solve_first_eigen(g, cfg);
  if (!result.converged) {
    fail(ErrorCode::NotConverged, "residual " + std::to_string(result.residual) + " above tolerance after " +
                                      std::to_string(result.iterations) + " iterations");
  }
  return result;
}

}  // namespace pfk
