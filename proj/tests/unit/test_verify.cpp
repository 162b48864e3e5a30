#include <doctest.h>

#include <atomic>
#include <cmath>
#include <stdexcept>

#include "pfk/canonical.hpp"
#include "pfk/error.hpp"
#include "pfk/verify.hpp"

using namespace pfk;

namespace {

const std::vector<double> kPs{1.5, 2.0, 3.0};

}  // namespace

TEST_CASE("parallel_for") {
  std::atomic<int> sum{0};
  parallel_for(100, 4, [&](std::size_t k) { sum += int(k); });
  CHECK(sum == 4950);
  CHECK_THROWS_AS(parallel_for(10, 3, [](std::size_t k) {
                    if (k == 7) throw std::runtime_error("boom");
                  }),
                  std::runtime_error);
}

TEST_CASE("bounds") {
  CHECK(check_bounds(0.1, Rational(1, 7), 1e-8).ok());
  CHECK_FALSE(check_bounds(0.0, Rational(1, 7), 1e-8).ok());
  CHECK_FALSE(check_bounds(0.2, Rational(1, 7), 1e-8).ok());
  CHECK_FALSE(check_bounds(0.2, Rational(3, 2), 1e-8).ok());
}

TEST_CASE("Faber-Krahn harness") {
  SolverConfig c;
  const std::vector<double> two{2.0};
  const auto n4 = verify_faber_krahn(4, two, c);
  REQUIRE(n4.size() == 1);
  CHECK(n4[0].passed);
  CHECK(n4[0].per_graph.size() == 4);
  CHECK(std::abs(n4[0].minimizer_lambda - (9 - std::sqrt(57.0)) / 12) < 1e-6);

  const auto n5 = verify_faber_krahn(5, kPs, c);
  const std::string key = canonical_key(tadpole(5, 3).graph());
  for (const auto& r : n5) {
    CHECK(r.passed);
    CHECK(r.minimizer_key == key_hex(key));
    CHECK(r.margin > kMarginFactor * c.residual_tol);
  }

  FKOptions drop;
  drop.exclude = [](const EnumeratedGraph& g) { return g.key == canonical_key(tadpole(4, 3).graph()); };
  CHECK_FALSE(verify_faber_krahn(4, two, c, drop)[0].passed);

  CHECK_THROWS_AS(verify_faber_krahn(9, two, c), Error);
}

TEST_CASE("thread count does not change reports") {
  SolverConfig c;
  FKOptions one, many;
  one.threads = 1;
  many.threads = 4;
  const auto a = verify_faber_krahn(6, kPs, c, one);
  const auto b = verify_faber_krahn(6, kPs, c, many);
  REQUIRE(a.size() == b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    REQUIRE(a[k].per_graph.size() == b[k].per_graph.size());
    for (std::size_t j = 0; j < a[k].per_graph.size(); ++j) {
      CHECK(a[k].per_graph[j].key == b[k].per_graph[j].key);
      CHECK(a[k].per_graph[j].lambda == b[k].per_graph[j].lambda);
    }
  }
}

TEST_CASE("lemmas") {
  SolverConfig c;
  const LemmaReport r = verify_lemmas(6, kPs, c);
  CHECK(r.passed);
  CHECK(r.bounds_ok);
  int tadpole_checks = 0, path_checks = 0, head_checks = 0;
  for (const auto& check : r.checks) {
    CHECK(check.passed);
    CHECK(check.margin > 0);
    tadpole_checks += check.lemma == "tadpole-comparison";
    path_checks += check.lemma == "path-comparison";
    head_checks += check.lemma == "max-in-head";
  }
  CHECK(tadpole_checks == 2 * 3);
  CHECK(path_checks > 0);
  CHECK(head_checks > 0);
  CHECK_THROWS_AS(verify_lemmas(3, kPs, c), Error);
}

TEST_CASE("vertex deletion") {
  // P_4 with an extra pendant at vertex 1
  std::vector<Edge> e{{0, 1}, {1, 2}, {2, 3}, {1, 4}};
  const DomainGraph g = validate_domain(from_edge_list(e));
  SolverConfig c;
  const DeletionReport r = vertex_deletion_comparison(g, 0, c);
  CHECK(r.identities_hold);
  CHECK(r.energy_identity_error <= 1e-12);
  CHECK(r.norm_identity_error <= 1e-12);
  CHECK(r.passed);
  CHECK_THROWS_AS(vertex_deletion_comparison(g, 1, c), Error);

  const VertexFunction zero_at_neighbor{0, 0, 0.7, 0, 0};
  const DeletionReport z = deletion_identities(g, 0, 2.0, zero_at_neighbor);
  CHECK(z.removed == 0.0);
  CHECK(z.energy_remainder == z.energy_source);
  CHECK(z.norm_remainder == z.norm_source);
}

TEST_CASE("limit trend") {
  SolverConfig c;
  const std::vector<double> seq{1.5, 1.3, 1.2, 1.1, 1.05};
  const LimitReport t = limit_trend(tadpole(6, 3), seq, c);
  CHECK(t.h_d == Rational(1, 11));
  CHECK(t.passed);
  const LimitReport p3 = limit_trend(path_graph(3), seq, c);
  for (const auto& row : p3.rows) CHECK(row.gap < 1e-8);
  const LimitReport p4 = limit_trend(path_graph(4), seq, c);
  CHECK(p4.h_d == Rational(1, 2));
  for (const auto& row : p4.rows) CHECK(row.gap < 1e-8);
  const std::vector<double> bad{1.2, 1.3};
  CHECK_THROWS_AS(limit_trend(path_graph(3), bad, c), Error);
}

TEST_CASE("sweep") {
  SolverConfig c;
  for (const auto& row : sweep_p(path_graph(3), kPs, c)) CHECK(std::abs(row.lambda - 1) < 1e-6);
  for (const auto& row : sweep_p(path_graph(4), kPs, c)) CHECK(std::abs(row.lambda - 0.5) < 1e-6);
  const std::vector<double> two{2.0};
  CHECK(std::abs(sweep_p(tadpole(4, 3), two, c)[0].lambda - 0.1208472) < 1e-7);
}
