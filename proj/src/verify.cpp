#include "pfk/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <map>
#include <mutex>
#include <thread>

#include "pfk/canonical.hpp"
#include "pfk/error.hpp"
#include "pfk/surgery.hpp"

namespace pfk {

int worker_count() {
  if (const char* env = std::getenv("PFK_THREADS")) {
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && value > 0) return static_cast<int>(value);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body) {
  if (threads <= 0) threads = worker_count();
  const auto workers = std::min<std::size_t>(static_cast<std::size_t>(threads), count);
  if (workers <= 1) {
    for (std::size_t k = 0; k < count; ++k) body(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t k = next++; k < count; k = next++) {
          try {
            body(k);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

BoundsCheck check_bounds(double lambda, const Rational& h_d, double tol) {
  BoundsCheck out;
  out.positive = lambda > 0.0;
  out.below_cheeger = lambda <= to_double(h_d) + tol;
  out.cheeger_at_most_one = h_d <= Rational(1);
  return out;
}

std::vector<FKReport> verify_faber_krahn(int n, std::span<const double> p_list, const SolverConfig& cfg,
                                         const FKOptions& options) {
  if (n < 4 || n > 8) fail(ErrorCode::InvalidParams, "verify_faber_krahn supports 4 <= n <= 8");
  std::vector<EnumeratedGraph> graphs;
  for (auto& g : enumerate_graphs(EnumerationSpec{n})) {
    if (options.exclude && options.exclude(g)) continue;
    graphs.push_back(std::move(g));
  }
  std::sort(graphs.begin(), graphs.end(), [](const auto& a, const auto& b) { return a.key < b.key; });
  const std::string extremal = canonical_key(tadpole(n, 3).graph());

  std::vector<Rational> cheeger(graphs.size());
  for (std::size_t k = 0; k < graphs.size(); ++k) cheeger[k] = dirichlet_cheeger(graphs[k].graph).value;

  const std::size_t per_p = graphs.size();
  std::vector<FKGraphEntry> entries(per_p * p_list.size());
  parallel_for(entries.size(), options.threads, [&](std::size_t task) {
    const std::size_t k = task % per_p;
    SolverConfig local = cfg;
    local.p = p_list[task / per_p];
    const auto& item = graphs[k];
    FKGraphEntry& e = entries[task];
    e.key = key_hex(item.key);
    e.vertices = item.graph.vertex_count();
    e.pendant_count = static_cast<int>(item.graph.boundary().size());
    e.is_tadpole_n3 = item.key == extremal;
    e.h_d = cheeger[k];
    try {
      const EigenResult r = solve_first_eigen(item.graph, local);
      e.lambda = r.lambda;
      e.residual = r.residual;
      e.iterations = r.iterations;
      e.converged = r.converged;
      if (!r.converged) e.error = "NotConverged";
    } catch (const Error& err) {
      e.error = std::string(to_string(err.code()));
    }
    e.bounds_ok = e.converged && check_bounds(e.lambda, e.h_d, cfg.residual_tol).ok();
  });

  std::vector<FKReport> reports;
  for (std::size_t pi = 0; pi < p_list.size(); ++pi) {
    FKReport rep;
    rep.n = n;
    rep.p = p_list[pi];
    rep.residual_tol = cfg.residual_tol;
    rep.per_graph.assign(entries.begin() + pi * per_p, entries.begin() + (pi + 1) * per_p);
    rep.bounds_ok = true;
    const FKGraphEntry* best = nullptr;
    const FKGraphEntry* second = nullptr;
    for (const auto& e : rep.per_graph) {
      if (!e.converged) rep.failed_keys.push_back(e.key);
      rep.bounds_ok = rep.bounds_ok && e.bounds_ok;
      if (!e.converged) continue;
      if (!best || e.lambda < best->lambda) {
        second = best;
        best = &e;
      } else if (!second || e.lambda < second->lambda) {
        second = &e;
      }
    }
    if (best) {
      rep.minimizer_key = best->key;
      rep.minimizer_lambda = best->lambda;
    }
    rep.margin = (best && second) ? second->lambda - best->lambda : 0.0;
    rep.passed = best && best->is_tadpole_n3 && rep.failed_keys.empty() && rep.bounds_ok &&
                 (second == nullptr || rep.margin > kMarginFactor * cfg.residual_tol);
    reports.push_back(std::move(rep));
  }
  return reports;
}

namespace {

struct Solved {
  double lambda = 0.0;
  VertexFunction f;
  bool converged = false;
  bool bounds_ok = false;
};

std::string tadpole_name(int n, int i) { return "T_{" + std::to_string(n) + "," + std::to_string(i) + "}"; }
std::string path_name(int n) { return "P_" + std::to_string(n); }

}  // namespace

LemmaReport verify_lemmas(int n_max, std::span<const double> p_list, const SolverConfig& cfg, int threads) {
  if (n_max < 4 || n_max > 12) fail(ErrorCode::InvalidParams, "verify_lemmas supports 4 <= n_max <= 12");

  // Every graph any lemma mentions, solved once per p.
  std::vector<std::pair<std::string, DomainGraph>> family;
  for (int n = 4; n <= n_max; ++n) family.emplace_back(tadpole_name(n, 3), tadpole(n, 3));
  for (int n = 5; n <= n_max; ++n) family.emplace_back(tadpole_name(n, 4), tadpole(n, 4));
  for (int n = 4; n <= n_max + 1; ++n) family.emplace_back(path_name(n), path_graph(n));

  std::vector<Solved> solved(family.size() * p_list.size());
  parallel_for(solved.size(), threads, [&](std::size_t task) {
    const auto& [name, g] = family[task % family.size()];
    SolverConfig local = cfg;
    local.p = p_list[task / family.size()];
    const EigenResult r = solve_first_eigen(g, local);
    Solved& s = solved[task];
    s.lambda = r.lambda;
    s.f = r.eigenfunction;
    s.converged = r.converged;
    s.bounds_ok = r.converged && check_bounds(r.lambda, dirichlet_cheeger(g).value, cfg.residual_tol).ok();
  });

  LemmaReport rep;
  rep.n_max = n_max;
  rep.p_list.assign(p_list.begin(), p_list.end());
  rep.residual_tol = cfg.residual_tol;
  rep.bounds_ok = std::all_of(solved.begin(), solved.end(), [](const Solved& s) { return s.bounds_ok; });
  const double threshold = kMarginFactor * cfg.residual_tol;

  for (std::size_t pi = 0; pi < p_list.size(); ++pi) {
    const double p = p_list[pi];
    std::map<std::string, const Solved*> by_name;
    for (std::size_t k = 0; k < family.size(); ++k) by_name[family[k].first] = &solved[pi * family.size() + k];

    auto compare = [&](const char* lemma, const std::string& big, const std::string& small, int n) {
      const Solved& a = *by_name.at(big);
      const Solved& b = *by_name.at(small);
      LemmaCheck c{lemma, "lambda(" + big + ") > lambda(" + small + ")", n, p, a.lambda, b.lambda,
                   a.lambda - b.lambda, false};
      c.passed = a.converged && b.converged && c.margin > threshold;
      rep.checks.push_back(std::move(c));
    };
    for (int n = 5; n <= n_max; ++n) compare("tadpole-comparison", tadpole_name(n, 4), tadpole_name(n, 3), n);
    for (int n = 4; n <= n_max; ++n) {
      compare("path-comparison", path_name(n), path_name(n + 1), n);
      compare("path-comparison", path_name(n + 1), tadpole_name(n, 3), n);
    }
    // The maximum of the eigenfunction sits on the head t_1..t_{i-1}, never
    // on the tail t_i..t_n (ids i-1..n-1).
    for (int n = 4; n <= n_max; ++n) {
      for (int i : {3, 4}) {
        if (n <= i) continue;
        const Solved& s = *by_name.at(tadpole_name(n, i));
        const DomainGraph g = tadpole(n, i);
        double head = 0.0;
        double tail = 0.0;
        for (Vertex v = 0; v < n; ++v) {
          double& side = v < i - 1 ? head : tail;
          side = std::max(side, s.f[v]);
        }
        LemmaCheck c{"max-in-head", "argmax f on " + tadpole_name(n, i) + " lies off the tail", n, p, head, tail,
                     head - tail, false};
        c.passed = s.converged && find_max_vertex(g, s.f) < i - 1 && c.margin > 0.0;
        rep.checks.push_back(std::move(c));
      }
    }
  }
  rep.passed = rep.bounds_ok &&
               std::all_of(rep.checks.begin(), rep.checks.end(), [](const LemmaCheck& c) { return c.passed; });
  return rep;
}

DeletionReport deletion_identities(const DomainGraph& g, Vertex v0, double p, const VertexFunction& f) {
  if (v0 < 0 || v0 >= g.vertex_count() || !g.is_boundary(v0)) {
    fail(ErrorCode::NotPendant, "vertex " + std::to_string(v0) + " is not a pendant vertex");
  }
  if (static_cast<int>(f.size()) != g.vertex_count()) fail(ErrorCode::BadFunction, "function size mismatch");
  DomainGraph remainder;
  try {
    remainder = validate_domain(remove_vertex(g.graph(), v0));
  } catch (const Error& err) {
    fail(ErrorCode::InadmissibleRemainder, "removing vertex " + std::to_string(v0) + " leaves " +
                                               std::string(to_string(err.code())));
  }
  VertexFunction source = f;
  source[v0] = 0.0;
  VertexFunction restricted;
  for (Vertex x = 0; x < g.vertex_count(); ++x) {
    if (x != v0) restricted.push_back(source[x]);
  }

  DeletionReport rep;
  rep.v0 = v0;
  rep.vj = g.graph().neighbors(v0)[0];
  rep.p = p;
  rep.removed = std::pow(std::abs(source[rep.vj]), p);
  rep.energy_source = dirichlet_energy(g, p, source);
  rep.norm_source = weighted_p_norm(g, p, source);
  rep.energy_remainder = dirichlet_energy(remainder, p, restricted);
  rep.norm_remainder = weighted_p_norm(remainder, p, restricted);
  rep.energy_identity_error = std::abs(rep.energy_remainder - (rep.energy_source - rep.removed));
  rep.norm_identity_error = std::abs(rep.norm_remainder - (rep.norm_source - rep.removed));
  rep.identities_hold =
      rep.energy_identity_error <= kIdentityTolerance * std::max(1.0, rep.energy_source) &&
      rep.norm_identity_error <= kIdentityTolerance * std::max(1.0, rep.norm_source);
  rep.restricted_in_cb = std::all_of(remainder.boundary().begin(), remainder.boundary().end(),
                                     [&](Vertex b) { return restricted[b] == 0.0; });
  if (rep.norm_source > 0.0) rep.rayleigh_source = rep.energy_source / rep.norm_source;
  if (rep.norm_remainder > 0.0) rep.rayleigh_remainder = rep.energy_remainder / rep.norm_remainder;
  // (a - c) / (b - c) <= a / b whenever a / b <= 1 and 0 <= c < b.
  rep.rayleigh_bound_holds = rep.norm_remainder > 0.0 && rep.rayleigh_source <= 1.0 + kIdentityTolerance &&
                             rep.rayleigh_remainder <= rep.rayleigh_source + kIdentityTolerance;
  rep.passed = rep.identities_hold && rep.rayleigh_bound_holds;
  return rep;
}

DeletionReport vertex_deletion_comparison(const DomainGraph& g, Vertex v0, const SolverConfig& cfg) {
  if (v0 < 0 || v0 >= g.vertex_count() || !g.is_boundary(v0)) {
    fail(ErrorCode::NotPendant, "vertex " + std::to_string(v0) + " is not a pendant vertex");
  }
  const EigenResult r = first_eigen(g, cfg);
  DeletionReport rep = deletion_identities(g, v0, cfg.p, r.eigenfunction);
  if (rep.restricted_in_cb) {
    const DomainGraph remainder = validate_domain(remove_vertex(g.graph(), v0));
    rep.lambda_remainder = first_eigen(remainder, cfg).lambda;
    rep.passed = rep.passed && rep.lambda_remainder <= rep.rayleigh_remainder + cfg.residual_tol;
  }
  return rep;
}

LimitReport limit_trend(const DomainGraph& g, std::span<const double> p_seq, const SolverConfig& cfg) {
  if (p_seq.empty()) fail(ErrorCode::InvalidParams, "p sequence is empty");
  for (std::size_t k = 0; k < p_seq.size(); ++k) {
    if (!(p_seq[k] > 1.0) || (k > 0 && !(p_seq[k] < p_seq[k - 1]))) {
      fail(ErrorCode::InvalidParams, "p sequence must be strictly decreasing and above 1");
    }
  }
  LimitReport rep;
  rep.h_d = dirichlet_cheeger(g).value;
  rep.residual_tol = cfg.residual_tol;
  const double h = to_double(rep.h_d);
  rep.below_cheeger = true;
  rep.non_increasing = true;
  bool converged = true;
  for (double p : p_seq) {
    SolverConfig local = cfg;
    local.p = p;
    const EigenResult r = solve_first_eigen(g, local);
    LimitRow row{p, r.lambda, r.residual, r.converged, std::abs(r.lambda - h)};
    converged = converged && r.converged;
    rep.below_cheeger = rep.below_cheeger && r.lambda <= h + cfg.residual_tol;
    if (!rep.rows.empty() && row.gap > rep.rows.back().gap + kMarginFactor * cfg.residual_tol) {
      rep.non_increasing = false;
    }
    rep.rows.push_back(row);
  }
  rep.passed = converged && rep.below_cheeger && rep.non_increasing;
  return rep;
}

std::vector<SweepRow> sweep_p(const DomainGraph& g, std::span<const double> p_grid, const SolverConfig& cfg) {
  for (double p : p_grid) {
    if (!(p > 1.0)) fail(ErrorCode::BadExponent, "sweep exponents must exceed 1");
  }
  std::vector<SweepRow> rows;
  for (double p : p_grid) {
    SolverConfig local = cfg;
    local.p = p;
    const EigenResult r = solve_first_eigen(g, local);
    rows.push_back(SweepRow{p, r.lambda, r.residual, r.iterations, r.converged});
  }
  return rows;
}

}  // namespace pfk
