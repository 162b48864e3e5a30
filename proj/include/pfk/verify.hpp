#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "pfk/cheeger.hpp"
#include "pfk/enumeration.hpp"
#include "pfk/graph.hpp"
#include "pfk/spectral.hpp"

namespace pfk {

/// Worker count for the harnesses: PFK_THREADS when set to a positive
/// integer, otherwise the hardware concurrency.
int worker_count();

/// Runs body(0..count-1) on up to `threads` workers. Each index is handled
/// by exactly one worker; the first exception is rethrown after joining.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body);

/// Strictness threshold for numerical inequalities: margins must exceed
/// this multiple of the solver tolerance.
inline constexpr double kMarginFactor = 10.0;

struct BoundsCheck {
  bool positive = false;          // 0 < lambda
  bool below_cheeger = false;     // lambda <= h_D (+ tol)
  bool cheeger_at_most_one = false;
  bool ok() const { return positive && below_cheeger && cheeger_at_most_one; }
};

BoundsCheck check_bounds(double lambda, const Rational& h_d, double tol);

struct FKGraphEntry {
  std::string key;
  int vertices = 0;
  int pendant_count = 0;
  double lambda = 0.0;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
  bool is_tadpole_n3 = false;
  Rational h_d;
  bool bounds_ok = false;
  std::string error;
};

struct FKReport {
  int n = 0;
  double p = 0.0;
  double residual_tol = 0.0;
  std::vector<FKGraphEntry> per_graph;  // sorted by canonical key
  std::string minimizer_key;
  double minimizer_lambda = 0.0;
  double margin = 0.0;
  std::vector<std::string> failed_keys;
  bool bounds_ok = false;
  bool passed = false;
};

struct FKOptions {
  /// Graphs for which this returns true are left out (harness self-tests).
  std::function<bool(const EnumeratedGraph&)> exclude;
  int threads = 0;  // 0: worker_count()
};

/// Exhaustive check that T_{n,3} is the strict unique minimizer of
/// lambda_{1,p} over all admissible graphs with n edges, one report per p.
std::vector<FKReport> verify_faber_krahn(int n, std::span<const double> p_list, const SolverConfig& cfg,
                                         const FKOptions& options = {});

struct LemmaCheck {
  std::string lemma;      // "tadpole-comparison", "path-comparison", "max-in-head"
  std::string statement;  // e.g. "lambda(T_{6,4}) > lambda(T_{6,3})"
  int n = 0;
  double p = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  bool passed = false;
};

struct LemmaReport {
  int n_max = 0;
  std::vector<double> p_list;
  double residual_tol = 0.0;
  std::vector<LemmaCheck> checks;
  bool bounds_ok = false;
  bool passed = false;
};

LemmaReport verify_lemmas(int n_max, std::span<const double> p_list, const SolverConfig& cfg, int threads = 0);

/// Removing a pendant vertex v0 with neighbor v_j from G: checks
///   ||df||^p_{G'} = ||df||^p_G - f(v_j)^p,  ||f||^p_{G'} = ||f||^p_G - f(v_j)^p
/// and R_{G'}[f] <= R_G[f] when R_G[f] <= 1.
struct DeletionReport {
  Vertex v0 = -1;
  Vertex vj = -1;
  double p = 0.0;
  double removed = 0.0;  // f(v_j)^p
  double energy_source = 0.0;
  double energy_remainder = 0.0;
  double norm_source = 0.0;
  double norm_remainder = 0.0;
  double energy_identity_error = 0.0;
  double norm_identity_error = 0.0;
  double rayleigh_source = 0.0;
  double rayleigh_remainder = 0.0;
  bool restricted_in_cb = false;
  bool identities_hold = false;
  bool rayleigh_bound_holds = false;
  /// Filled by vertex_deletion_comparison when the restriction lies in C_B(G').
  double lambda_remainder = 0.0;
  bool passed = false;
};

inline constexpr double kIdentityTolerance = 1e-12;

DeletionReport deletion_identities(const DomainGraph& g, Vertex v0, double p, const VertexFunction& f);
DeletionReport vertex_deletion_comparison(const DomainGraph& g, Vertex v0, const SolverConfig& cfg);

struct LimitRow {
  double p = 0.0;
  double lambda = 0.0;
  double residual = 0.0;
  bool converged = false;
  double gap = 0.0;
};

struct LimitReport {
  Rational h_d;
  double residual_tol = 0.0;
  std::vector<LimitRow> rows;
  bool below_cheeger = false;
  bool non_increasing = false;
  bool passed = false;
};

/// |lambda_{1,p} - h_D| along a strictly decreasing sequence of p > 1.
LimitReport limit_trend(const DomainGraph& g, std::span<const double> p_seq, const SolverConfig& cfg);

struct SweepRow {
  double p = 0.0;
  double lambda = 0.0;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

std::vector<SweepRow> sweep_p(const DomainGraph& g, std::span<const double> p_grid, const SolverConfig& cfg);

}  // namespace pfk
