#include "pfk/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace pfk {
namespace {

Json edges_json(const Graph& g) {
  Json out = Json::array();
  for (const auto& [u, v] : g.edges()) out.push_back({u, v});
  return out;
}

void write_value(std::ostream& out, const Json& j, int depth) {
  const std::string pad(static_cast<std::size_t>(depth + 1) * 2, ' ');
  const std::string close_pad(static_cast<std::size_t>(depth) * 2, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out << "{}";
        return;
      }
      out << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out << ",\n";
        first = false;
        out << pad << Json(it.key()).dump() << ": ";
        write_value(out, it.value(), depth + 1);
      }
      out << '\n' << close_pad << '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out << "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      const bool flat = std::none_of(j.begin(), j.end(), [](const Json& e) { return e.is_structured(); });
      if (flat) {
        out << '[';
        for (std::size_t k = 0; k < j.size(); ++k) {
          if (k > 0) out << ", ";
          write_value(out, j[k], depth + 1);
        }
        out << ']';
        return;
      }
      out << "[\n";
      for (std::size_t k = 0; k < j.size(); ++k) {
        if (k > 0) out << ",\n";
        out << pad;
        write_value(out, j[k], depth + 1);
      }
      out << '\n' << close_pad << ']';
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (std::isfinite(v)) out << format_real(v);
      else out << "null";
      return;
    }
    default:
      out << j.dump();
  }
}

}  // namespace

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Json to_json(const EigenResult& r) {
  return Json{{"lambda", r.lambda},
              {"residual", r.residual},
              {"iterations", r.iterations},
              {"converged", r.converged},
              {"eigenfunction", r.eigenfunction}};
}

Json to_json(const CheegerResult& r) {
  return Json{{"cut", r.cut}, {"volume", r.volume}, {"value", to_string(r.value)}, {"witness", r.witness}};
}

Json to_json(const SurgeryTrace& t) {
  Json out{{"p", t.p},
           {"source_edges", edges_json(t.source.graph())},
           {"lambda_source", t.lambda_source},
           {"max_vertex", t.max_vertex},
           {"path", t.path},
           {"i", t.i},
           {"applicable", t.applicable}};
  if (!t.applicable) {
    out["status"] = "NotApplicable";
    return out;
  }
  out["transplanted"] = t.transplanted;
  out["energy_source"] = t.energy_source;
  out["energy_target"] = t.energy_target;
  out["energy_slack"] = t.energy_slack;
  out["norm_source"] = t.norm_source;
  out["norm_target"] = t.norm_target;
  out["norm_slack"] = t.norm_slack;
  out["rayleigh_source"] = t.rayleigh_source;
  out["rayleigh_target"] = t.rayleigh_target;
  out["inequalities_hold"] = t.inequalities_hold;
  out["lambda_target"] = t.lambda_target;
  out["target_gap"] = t.target_gap;
  out["strict"] = t.strict;
  return out;
}

Json to_json(const FKReport& r) {
  Json graphs = Json::array();
  for (const auto& e : r.per_graph) {
    Json g{{"canonical_key", e.key},
           {"vertices", e.vertices},
           {"pendant_count", e.pendant_count},
           {"lambda", e.lambda},
           {"residual", e.residual},
           {"iterations", e.iterations},
           {"converged", e.converged},
           {"h_d", to_string(e.h_d)},
           {"bounds_ok", e.bounds_ok},
           {"is_tadpole_n3", e.is_tadpole_n3}};
    if (!e.error.empty()) g["error"] = e.error;
    graphs.push_back(std::move(g));
  }
  return Json{{"n", r.n},
              {"p", r.p},
              {"residual_tol", r.residual_tol},
              {"graph_count", r.per_graph.size()},
              {"minimizer_key", r.minimizer_key},
              {"minimizer_lambda", r.minimizer_lambda},
              {"margin", r.margin},
              {"failed_keys", r.failed_keys},
              {"bounds_ok", r.bounds_ok},
              {"passed", r.passed},
              {"per_graph", std::move(graphs)}};
}

Json to_json(const LemmaReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    checks.push_back(Json{{"lemma", c.lemma},
                          {"statement", c.statement},
                          {"n", c.n},
                          {"p", c.p},
                          {"lhs", c.lhs},
                          {"rhs", c.rhs},
                          {"margin", c.margin},
                          {"passed", c.passed}});
  }
  return Json{{"n_max", r.n_max},
              {"p_list", r.p_list},
              {"residual_tol", r.residual_tol},
              {"bounds_ok", r.bounds_ok},
              {"passed", r.passed},
              {"checks", std::move(checks)}};
}

Json to_json(const DeletionReport& r) {
  return Json{{"v0", r.v0},
              {"vj", r.vj},
              {"p", r.p},
              {"removed", r.removed},
              {"energy_source", r.energy_source},
              {"energy_remainder", r.energy_remainder},
              {"energy_identity_error", r.energy_identity_error},
              {"norm_source", r.norm_source},
              {"norm_remainder", r.norm_remainder},
              {"norm_identity_error", r.norm_identity_error},
              {"rayleigh_source", r.rayleigh_source},
              {"rayleigh_remainder", r.rayleigh_remainder},
              {"restricted_in_cb", r.restricted_in_cb},
              {"lambda_remainder", r.lambda_remainder},
              {"identities_hold", r.identities_hold},
              {"rayleigh_bound_holds", r.rayleigh_bound_holds},
              {"passed", r.passed}};
}

Json to_json(const LimitReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    rows.push_back(Json{{"p", row.p},
                        {"lambda", row.lambda},
                        {"residual", row.residual},
                        {"converged", row.converged},
                        {"gap", row.gap}});
  }
  return Json{{"h_d", to_string(r.h_d)},
              {"residual_tol", r.residual_tol},
              {"below_cheeger", r.below_cheeger},
              {"non_increasing", r.non_increasing},
              {"passed", r.passed},
              {"rows", std::move(rows)}};
}

Json to_json(std::span<const SweepRow> rows) {
  Json out = Json::array();
  for (const auto& row : rows) {
    out.push_back(Json{{"p", row.p},
                       {"lambda", row.lambda},
                       {"residual", row.residual},
                       {"iterations", row.iterations},
                       {"converged", row.converged}});
  }
  return out;
}

Json make_report(const std::string& kind, Json body) {
  Json out{{"schema", kReportSchema}, {"kind", kind}};
  if (body.is_object()) {
    for (auto it = body.begin(); it != body.end(); ++it) out[it.key()] = std::move(it.value());
  } else {
    out["data"] = std::move(body);
  }
  return out;
}

void write_json(std::ostream& out, const Json& j) {
  write_value(out, j, 0);
  out << '\n';
}

std::string dump_json(const Json& j) {
  std::ostringstream out;
  write_json(out, j);
  return out.str();
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows) {
  out << "p,lambda,residual,iterations,converged\n";
  for (const auto& row : rows) {
    out << format_real(row.p) << ',' << format_real(row.lambda) << ',' << format_real(row.residual) << ','
        << row.iterations << ',' << (row.converged ? "true" : "false") << '\n';
  }
}

}  // namespace pfk
