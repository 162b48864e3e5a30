#include "pfk/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include "pfk/canonical.hpp"
#include "pfk/cheeger.hpp"
#include "pfk/enumeration.hpp"
#include "pfk/error.hpp"
#include "pfk/report.hpp"
#include "pfk/spectral.hpp"
#include "pfk/surgery.hpp"
#include "pfk/verify.hpp"

namespace pfk::cli {
namespace {

// Signals a failed check after output has been produced.
struct AssertionFailed {};

bool is_input_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::SelfLoop:
    case ErrorCode::DuplicateEdge:
    case ErrorCode::EmptyEdgeList:
    case ErrorCode::NegativeVertex:
    case ErrorCode::ParseError:
    case ErrorCode::IoError:
    case ErrorCode::Disconnected:
    case ErrorCode::NoBoundary:
    case ErrorCode::NoInterior:
    case ErrorCode::InvalidParams:
    case ErrorCode::TooLarge:
    case ErrorCode::InvalidSpec:
    case ErrorCode::BadExponent:
    case ErrorCode::TooManyInteriorVertices:
    case ErrorCode::NotInterior:
    case ErrorCode::NotPendant:
    case ErrorCode::InadmissibleRemainder:
      return true;
    default:
      return false;
  }
}

std::string one_line(std::string text) {
  std::replace(text.begin(), text.end(), '\n', ' ');
  return text;
}

struct GraphSource {
  std::string file;
  std::vector<int> tadpole;
  int path = 0;

  void attach(CLI::App* sub) {
    sub->add_option("--graph", file, "Edge-list file (\"u v\" per line)");
    sub->add_option("--tadpole", tadpole, "Tadpole T_{n,i}: n i")->expected(2);
    sub->add_option("--path", path, "Path graph P_n: n");
  }

  DomainGraph resolve() const {
    const int given = int(!file.empty()) + int(!tadpole.empty()) + int(path != 0);
    if (given != 1) fail(ErrorCode::InvalidParams, "give exactly one of --graph, --tadpole, --path");
    if (!file.empty()) return validate_domain(read_edge_list_file(file));
    if (!tadpole.empty()) return pfk::tadpole(tadpole[0], tadpole[1]);
    return path_graph(path);
  }
};

struct SolverFlags {
  SolverConfig cfg;

  void attach(CLI::App* sub) {
    sub->add_option("--tol", cfg.residual_tol, "Residual tolerance");
    sub->add_option("--max-iter", cfg.max_iter, "Iteration budget per continuation stage");
    sub->add_option("--restarts", cfg.restarts, "Randomized restarts for the multiplicity check");
    sub->add_option("--seed", cfg.rng_seed, "Restart RNG seed");
    sub->add_option("--continuation-steps", cfg.continuation_steps, "Steps in p from the linear solution");
  }

  SolverConfig at(double p) const {
    SolverConfig c = cfg;
    c.p = p;
    return c;
  }
};

struct Output {
  std::string format = "text";
  std::string path;

  void attach(CLI::App* sub, bool with_out) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
    if (with_out) sub->add_option("--out", path, "Write the report to this file");
  }

  bool json() const { return format == "json"; }

  // Writes `text` to the --out file when given, else to the console stream.
  void emit(std::ostream& console, const std::string& text) const {
    if (path.empty()) {
      console << text;
      return;
    }
    std::ofstream file(path);
    if (!file) fail(ErrorCode::IoError, "cannot write " + path);
    file << text;
  }
};

std::string join(std::span<const Vertex> values) {
  std::string out;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k > 0) out += ' ';
    out += std::to_string(values[k]);
  }
  return out;
}

std::string join_reals(std::span<const double> values) {
  std::string out;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k > 0) out += ' ';
    out += format_real(values[k]);
  }
  return out;
}

std::string describe(const DomainGraph& g) {
  return std::to_string(g.vertex_count()) + " vertices, " + std::to_string(g.edge_count()) +
         " edges, boundary [" + join(g.boundary()) + "]";
}

}  // namespace

double parse_exponent(const std::string& text) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (text.empty() || ec != std::errc() || ptr != last || !std::isfinite(value)) {
    fail(ErrorCode::BadExponent, "cannot parse exponent \"" + text + "\"");
  }
  if (value < 1.0) fail(ErrorCode::BadExponent, "exponent " + text + " is below 1");
  return value;
}

std::vector<double> parse_exponent_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(parse_exponent(item));
  if (out.empty()) fail(ErrorCode::BadExponent, "empty exponent list");
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"First Dirichlet eigenvalues of the normalized p-Laplacian on graphs with pendant boundary"};
  app.name("pfk");
  app.require_subcommand(1);

  std::function<void()> action;

  // eig
  GraphSource eig_graph;
  SolverFlags eig_solver;
  Output eig_out;
  std::string eig_p;
  bool eig_linear = false;
  auto* eig = app.add_subcommand("eig", "First Dirichlet eigenpair lambda_{1,p}");
  eig_graph.attach(eig);
  eig_solver.attach(eig);
  eig_out.attach(eig, true);
  eig->add_option("--p", eig_p, "Exponent p >= 1 (p = 1 uses the Cheeger constant)")->required();
  eig->add_flag("--linear", eig_linear, "Use the direct symmetric solver (p = 2 only)");
  eig->callback([&] {
    action = [&] {
      const double p = parse_exponent(eig_p);
      const DomainGraph g = eig_graph.resolve();
      if (p == 1.0) {
        const CheegerResult h = dirichlet_cheeger(g);
        if (eig_out.json()) {
          Json body{{"method", "lambda_1,1 via h_D"}, {"p", 1.0}, {"lambda", to_double(h.value)}};
          body["cheeger"] = to_json(h);
          eig_out.emit(out, dump_json(make_report("eig", std::move(body))));
        } else {
          eig_out.emit(out, "graph: " + describe(g) + "\np: 1\nmethod: lambda_1,1 via h_D\nlambda: " +
                                to_string(h.value) + " (" + format_real(to_double(h.value)) + ")\nwitness: " +
                                join(h.witness) + "\n");
        }
        return;
      }
      if (eig_linear && p != 2.0) fail(ErrorCode::BadExponent, "--linear requires p = 2");
      const EigenResult r = eig_linear ? first_eigen_linear(g) : solve_first_eigen(g, eig_solver.at(p));
      if (eig_out.json()) {
        Json body{{"p", p}};
        body["result"] = to_json(r);
        eig_out.emit(out, dump_json(make_report("eig", std::move(body))));
      } else {
        eig_out.emit(out, "graph: " + describe(g) + "\np: " + format_real(p) + "\nlambda: " + format_real(r.lambda) +
                              "\nresidual: " + format_real(r.residual) + "\niterations: " +
                              std::to_string(r.iterations) + "\nconverged: " + (r.converged ? "true" : "false") +
                              "\neigenfunction: " + join_reals(r.eigenfunction) + "\n");
      }
      if (!r.converged) throw AssertionFailed{};
    };
  });

  // cheeger
  GraphSource cheeger_graph;
  Output cheeger_out;
  auto* cheeger = app.add_subcommand("cheeger", "Exact Dirichlet Cheeger constant h_D");
  cheeger_graph.attach(cheeger);
  cheeger_out.attach(cheeger, true);
  cheeger->callback([&] {
    action = [&] {
      const DomainGraph g = cheeger_graph.resolve();
      const CheegerResult h = dirichlet_cheeger(g);
      if (cheeger_out.json()) {
        cheeger_out.emit(out, dump_json(make_report("cheeger", to_json(h))));
      } else {
        cheeger_out.emit(out, "value: " + to_string(h.value) + "\ncut: " + std::to_string(h.cut) +
                                  "\nvolume: " + std::to_string(h.volume) + "\nwitness: " + join(h.witness) + "\n");
      }
    };
  });

  // sweep
  GraphSource sweep_graph;
  SolverFlags sweep_solver;
  Output sweep_out;
  std::string sweep_grid;
  auto* sweep = app.add_subcommand("sweep", "lambda_{1,p} over a grid of exponents (CSV)");
  sweep_graph.attach(sweep);
  sweep_solver.attach(sweep);
  sweep_out.attach(sweep, true);
  sweep->add_option("--p-grid", sweep_grid, "Comma-separated exponents > 1")->required();
  sweep->callback([&] {
    action = [&] {
      const auto grid = parse_exponent_list(sweep_grid);
      const DomainGraph g = sweep_graph.resolve();
      const auto rows = sweep_p(g, grid, sweep_solver.cfg);
      if (sweep_out.json()) {
        sweep_out.emit(out, dump_json(make_report("sweep", Json{{"rows", to_json(rows)}})));
      } else {
        std::ostringstream csv;
        write_sweep_csv(csv, rows);
        sweep_out.emit(out, csv.str());
      }
    };
  });

  // surgery
  GraphSource surgery_graph;
  SolverFlags surgery_solver;
  Output surgery_out;
  std::string surgery_p = "2";
  auto* surgery = app.add_subcommand("surgery", "Eigenfunction transplant onto T_{n,3}");
  surgery_graph.attach(surgery);
  surgery_solver.attach(surgery);
  surgery_out.attach(surgery, true);
  surgery->add_option("--p", surgery_p, "Exponent p > 1");
  surgery->callback([&] {
    action = [&] {
      const double p = parse_exponent(surgery_p);
      const DomainGraph g = surgery_graph.resolve();
      const SurgeryTrace t = check_surgery(g, surgery_solver.at(p));
      if (surgery_out.json()) {
        surgery_out.emit(out, dump_json(make_report("surgery", to_json(t))));
      } else {
        std::string text = "graph: " + describe(g) + "\np: " + format_real(p) +
                           "\nlambda: " + format_real(t.lambda_source) +
                           "\nmax_vertex: " + std::to_string(t.max_vertex) + "\npath: " + join(t.path) +
                           "\ni: " + std::to_string(t.i) + "\napplicable: " + (t.applicable ? "true" : "false") + "\n";
        if (t.applicable) {
          text += "energy: " + format_real(t.energy_source) + " >= " + format_real(t.energy_target) +
                  " (slack " + format_real(t.energy_slack) + ")\nnorm: " + format_real(t.norm_source) +
                  " <= " + format_real(t.norm_target) + " (slack " + format_real(t.norm_slack) +
                  ")\nrayleigh: " + format_real(t.rayleigh_source) + " >= " + format_real(t.rayleigh_target) +
                  "\nlambda_target: " + format_real(t.lambda_target) + "\nstrict: " +
                  (t.strict ? "true" : "false") + "\ninequalities_hold: " + (t.inequalities_hold ? "true" : "false") +
                  "\n";
        }
        surgery_out.emit(out, text);
      }
      if (t.applicable && !t.inequalities_hold) throw AssertionFailed{};
    };
  });

  // enumerate
  int enum_n = 0;
  std::string enum_dump;
  Output enum_out;
  auto* enumerate = app.add_subcommand("enumerate", "Admissible graphs with n edges up to isomorphism");
  enumerate->add_option("--n", enum_n, "Number of edges (4..9)")->required();
  enumerate->add_option("--dump", enum_dump, "Directory for n{n}_k{index}.edges files");
  enum_out.attach(enumerate, false);
  enumerate->callback([&] {
    action = [&] {
      const auto graphs = enumerate_graphs(EnumerationSpec{enum_n});
      if (!enum_dump.empty()) dump_edge_lists(graphs, enum_n, enum_dump);
      if (enum_out.json()) {
        Json keys = Json::array();
        for (const auto& g : graphs) keys.push_back(key_hex(g.key));
        out << dump_json(make_report("enumerate", Json{{"n", enum_n}, {"count", graphs.size()}, {"keys", keys}}));
      } else {
        out << "count: " << graphs.size() << '\n';
      }
    };
  });

  // verify
  auto* verify = app.add_subcommand("verify", "Verification harnesses");
  verify->require_subcommand(1);

  int fk_n = 0;
  std::string fk_p = "1.5,2,3";
  SolverFlags fk_solver;
  Output fk_out;
  auto* fk = verify->add_subcommand("fk", "T_{n,3} is the unique minimizer among graphs with n edges");
  fk->add_option("--n", fk_n, "Number of edges (4..8)")->required();
  fk->add_option("--p-list", fk_p, "Comma-separated exponents > 1");
  fk_solver.attach(fk);
  fk_out.attach(fk, true);
  fk->callback([&] {
    action = [&] {
      const auto ps = parse_exponent_list(fk_p);
      const auto reports = verify_faber_krahn(fk_n, ps, fk_solver.cfg);
      Json list = Json::array();
      bool ok = true;
      std::string summary;
      for (const auto& r : reports) {
        list.push_back(to_json(r));
        ok = ok && r.passed;
        summary += "n=" + std::to_string(r.n) + " p=" + format_real(r.p) + " graphs=" +
                   std::to_string(r.per_graph.size()) + " minimizer_lambda=" + format_real(r.minimizer_lambda) +
                   " margin=" + format_real(r.margin) + (r.passed ? " PASS" : " FAIL") + "\n";
      }
      const Json report = make_report("faber-krahn", Json{{"reports", std::move(list)}, {"passed", ok}});
      if (fk_out.json() || !fk_out.path.empty()) fk_out.emit(out, dump_json(report));
      if (!fk_out.json()) out << summary;
      if (!ok) throw AssertionFailed{};
    };
  });

  int lemma_n = 0;
  std::string lemma_p = "1.5,2,3";
  SolverFlags lemma_solver;
  Output lemma_out;
  auto* lemmas = verify->add_subcommand("lemmas", "Tadpole and path comparison lemmas");
  lemmas->add_option("--n-max", lemma_n, "Largest n (4..12)")->required();
  lemmas->add_option("--p-list", lemma_p, "Comma-separated exponents > 1");
  lemma_solver.attach(lemmas);
  lemma_out.attach(lemmas, true);
  lemmas->callback([&] {
    action = [&] {
      const LemmaReport r = verify_lemmas(lemma_n, parse_exponent_list(lemma_p), lemma_solver.cfg);
      if (lemma_out.json() || !lemma_out.path.empty()) lemma_out.emit(out, dump_json(make_report("lemmas", to_json(r))));
      if (!lemma_out.json()) {
        for (const auto& c : r.checks) {
          out << (c.passed ? "PASS " : "FAIL ") << c.statement << " p=" << format_real(c.p)
              << " margin=" << format_real(c.margin) << '\n';
        }
      }
      if (!r.passed) throw AssertionFailed{};
    };
  });

  GraphSource limit_graph;
  std::string limit_seq = "1.5,1.3,1.2,1.1,1.05";
  SolverFlags limit_solver;
  Output limit_out;
  auto* limit = verify->add_subcommand("limit", "lambda_{1,p} approaches h_D as p decreases to 1");
  limit_graph.attach(limit);
  limit->add_option("--p-seq", limit_seq, "Strictly decreasing exponents > 1");
  limit_solver.attach(limit);
  limit_out.attach(limit, true);
  limit->callback([&] {
    action = [&] {
      const DomainGraph g = limit_graph.resolve();
      const LimitReport r = limit_trend(g, parse_exponent_list(limit_seq), limit_solver.cfg);
      if (limit_out.json() || !limit_out.path.empty()) limit_out.emit(out, dump_json(make_report("limit", to_json(r))));
      if (!limit_out.json()) {
        out << "h_D: " << to_string(r.h_d) << '\n';
        for (const auto& row : r.rows) {
          out << "p=" << format_real(row.p) << " lambda=" << format_real(row.lambda) << " gap=" << format_real(row.gap)
              << '\n';
        }
        out << (r.passed ? "PASS" : "FAIL") << '\n';
      }
      if (!r.passed) throw AssertionFailed{};
    };
  });

  GraphSource deletion_graph;
  int deletion_v0 = -1;
  std::string deletion_p = "2";
  SolverFlags deletion_solver;
  Output deletion_out;
  auto* deletion = verify->add_subcommand("deletion", "Norm identities when a pendant vertex is removed");
  deletion_graph.attach(deletion);
  deletion->add_option("--v0", deletion_v0, "Pendant vertex to remove")->required();
  deletion->add_option("--p", deletion_p, "Exponent p > 1");
  deletion_solver.attach(deletion);
  deletion_out.attach(deletion, true);
  deletion->callback([&] {
    action = [&] {
      const DomainGraph g = deletion_graph.resolve();
      const DeletionReport r = vertex_deletion_comparison(g, deletion_v0, deletion_solver.at(parse_exponent(deletion_p)));
      deletion_out.emit(out, dump_json(make_report("deletion", to_json(r))));
      if (!r.passed) throw AssertionFailed{};
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "pfk: error: UsageError: " << one_line(e.what()) << '\n' << app.help();
    return kExitInput;
  }

  try {
    if (action) action();
    return kExitOk;
  } catch (const AssertionFailed&) {
    err << "pfk: error: AssertionFailed: a verification check did not pass\n";
    return kExitAssertion;
  } catch (const Error& e) {
    err << "pfk: error: " << to_string(e.code()) << ": " << one_line(e.what()) << '\n';
    return is_input_error(e.code()) ? kExitInput : kExitAssertion;
  } catch (const std::exception& e) {
    err << "pfk: error: InternalError: " << one_line(e.what()) << '\n';
    return kExitAssertion;
  }
}

}  // namespace pfk::cli
