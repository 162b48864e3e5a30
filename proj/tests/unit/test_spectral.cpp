#include <doctest.h>

#include <cmath>
#include <random>

#include "../oracles.hpp"
#include "pfk/canonical.hpp"
#include "pfk/detail/kernels.hpp"
#include "pfk/enumeration.hpp"
#include "pfk/error.hpp"
#include "pfk/spectral.hpp"

using namespace pfk;
using doctest::Approx;

namespace {

const double kT43 = (9.0 - std::sqrt(57.0)) / 12.0;

SolverConfig at(double p) {
  SolverConfig c;
  c.p = p;
  return c;
}

}  // namespace

TEST_CASE("p-Laplacian") {
  const DomainGraph p3 = path_graph(3);
  const DomainGraph p4 = path_graph(4);
  for (double p : {1.5, 2.0, 3.0}) {
    CHECK(p_laplacian_apply(p3, p, {0, 1, 0})[1] == Approx(1.0));
    for (double v : p_laplacian_apply(tadpole(5, 3), p, {2, 2, 2, 2, 2})) CHECK(v == 0.0);
    const double t = 0.7;
    const auto out = p_laplacian_apply(p4, p, {0, t, t, 0});
    CHECK(out[1] == Approx(std::pow(t, p - 1) / 2));
    CHECK(out[2] == Approx(std::pow(t, p - 1) / 2));
  }
  CHECK_THROWS_AS(p_laplacian_apply(p3, 1.0, {0, 1, 0}), Error);
}

TEST_CASE("energy, norm and quotient") {
  const DomainGraph p3 = path_graph(3);
  const DomainGraph t43 = tadpole(4, 3);
  CHECK(dirichlet_energy(p3, 2, {0, 1, 0}) == Approx(2));
  for (double p : {1.0, 1.5, 3.0}) {
    VertexFunction ind(t43.vertex_count(), 0.0);
    for (Vertex x : t43.interior()) ind[x] = 1;
    CHECK(dirichlet_energy(t43, p, ind) == Approx(double(t43.boundary().size())));
    CHECK(weighted_p_norm(p3, p, {0, 1, 0}) == Approx(2));
    CHECK(rayleigh_quotient(p3, p, {0, 1, 0}) == Approx(1));
    CHECK(rayleigh_quotient(path_graph(4), p, {0, 1, 1, 0}) == Approx(0.5));
  }
  VertexFunction single(t43.vertex_count(), 0.0);
  single[2] = 1;
  CHECK(weighted_p_norm(t43, 1.7, single) == Approx(3));

  const double a = 0.8, b = 0.3;
  CHECK(dirichlet_energy(t43, 2, {a, a, b, 0}) == Approx(b * b + 2 * (a - b) * (a - b)));
  CHECK(weighted_p_norm(t43, 2, {a, a, b, 0}) == Approx(4 * a * a + 3 * b * b));

  CHECK_THROWS_AS(rayleigh_quotient(p3, 2, {1, 1, 0}), Error);
  CHECK_THROWS_AS(rayleigh_quotient(p3, 2, {0, 0, 0}), Error);
  CHECK_THROWS_AS(rayleigh_quotient(p3, 2, {0, 1}), Error);
}

TEST_CASE("residual") {
  const DomainGraph p3 = path_graph(3);
  const DomainGraph p4 = path_graph(4);
  for (double p : {1.5, 2.0, 3.0}) CHECK(residual(p3, p, {0, 1, 0}, 1) < 1e-14);
  CHECK(residual(p4, 2, {0, 1, 1, 0}, 0.5) < 1e-14);
  CHECK(residual(p4, 2, {0, 1, 1, 0}, 1.0) == Approx(0.5));
}

TEST_CASE("closed forms") {
  CHECK(first_eigen_linear(path_graph(3)).lambda == Approx(1).epsilon(1e-12));
  CHECK(std::abs(first_eigen_linear(path_graph(4)).lambda - 0.5) < 1e-10);
  CHECK(std::abs(first_eigen_linear(tadpole(4, 3)).lambda - kT43) < 1e-10);
  // quadratic 6x^2 - 9x + 1 has kT43 as its smaller root
  CHECK(std::abs(6 * kT43 * kT43 - 9 * kT43 + 1) < 1e-14);
  for (double p : {1.5, 2.0, 3.0}) {
    const EigenResult r3 = first_eigen(path_graph(3), at(p));
    CHECK(std::abs(r3.lambda - 1) < 1e-6);
    CHECK(r3.eigenfunction[0] == 0.0);
    CHECK(r3.eigenfunction[1] > 0.0);
    const EigenResult r4 = first_eigen(path_graph(4), at(p));
    CHECK(std::abs(r4.lambda - 0.5) < 1e-6);
    CHECK(r4.eigenfunction[1] == Approx(r4.eigenfunction[2]));
  }
  CHECK(std::abs(first_eigen(tadpole(4, 3), at(2)).lambda - kT43) < 1e-6);
}

TEST_CASE("linear solver against inertia bisection") {
  for (int n = 4; n <= 6; ++n) {
    for (const auto& g : enumerate_graphs({n})) {
      const double expect = oracle::linear_first_eigenvalue(g.graph.graph());
      CHECK(std::abs(first_eigen_linear(g.graph).lambda - expect) < 1e-10);
      CHECK(std::abs(first_eigen(g.graph, at(2)).lambda - expect) < 1e-6);
    }
  }
}

TEST_CASE("eigenpairs satisfy the equation") {
  for (double p : {1.1, 1.5, 2.5, 3.0, 4.0}) {
    for (const auto& g : enumerate_graphs({5})) {
      const EigenResult r = first_eigen(g.graph, at(p));
      CHECK(r.converged);
      CHECK(r.residual <= 1e-8);
      // recompute the eigen-equation with the oracle p-Laplacian
      double sup = 0, worst = 0;
      for (Vertex x : g.graph.interior()) sup = std::max(sup, std::abs(r.eigenfunction[x]));
      for (Vertex x : g.graph.interior()) {
        const double f = r.eigenfunction[x];
        CHECK(f > 0);
        const double lhs = oracle::p_laplacian(g.graph.graph(), p, r.eigenfunction, x);
        worst = std::max(worst, std::abs(lhs - r.lambda * std::pow(f, p - 1)));
      }
      CHECK(worst / std::max(1.0, std::pow(sup, p - 1)) < 1e-7);
      CHECK(r.lambda == Approx(oracle::rayleigh(g.graph.graph(), p, r.eigenfunction)).epsilon(1e-12));
    }
  }
}

TEST_CASE("Rayleigh gradient matches finite differences") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(0.2, 1.5);
  for (double p : {1.5, 2.0, 3.0}) {
    for (const auto& g : enumerate_graphs({6})) {
      const DomainGraph& d = g.graph;
      VertexFunction f(d.vertex_count(), 0.0);
      for (Vertex x : d.interior()) f[x] = u(rng);
      const auto grad = rayleigh_gradient(d, p, f);
      for (Vertex x : d.interior()) {
        const double h = 1e-6;
        auto fp = f, fm = f;
        fp[x] += h;
        fm[x] -= h;
        const double fd = (oracle::rayleigh(d.graph(), p, fp) - oracle::rayleigh(d.graph(), p, fm)) / (2 * h);
        CHECK(std::abs(grad[x] - fd) <= 1e-5 * std::max(std::abs(fd), 1e-3));
      }
      for (Vertex x : d.boundary()) CHECK(grad[x] == 0.0);
    }
  }
}

TEST_CASE("reduced gradient matches finite differences") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(0.2, 1.5);
  for (double p : {1.5, 2.0, 3.0}) {
    for (const auto& g : enumerate_graphs({6})) {
      const auto orbit = automorphism_orbits(g.graph.graph());
      const auto s = detail::ReducedStructure::build(g.graph, orbit);
      const detail::ReducedProblem<double> prob(s, p);
      std::vector<double> c(s.classes);
      for (double& v : c) v = u(rng);
      const auto grad = prob.gradient(c);
      for (int k = 0; k < s.classes; ++k) {
        const double h = 1e-6;
        auto cp = c, cm = c;
        cp[k] += h;
        cm[k] -= h;
        // the reduced quotient equals the full quotient of the expanded function
        const double rp = oracle::rayleigh(g.graph.graph(), p, s.expand<double>(cp));
        const double rm = oracle::rayleigh(g.graph.graph(), p, s.expand<double>(cm));
        const double fd = (rp - rm) / (2 * h);
        CHECK(std::abs(grad[k] - fd) <= 1e-5 * std::max(std::abs(fd), 1e-3));
      }
    }
  }
}

TEST_CASE("restarts and determinism") {
  SolverConfig c = at(1.5);
  c.restarts = 8;
  const DomainGraph g = tadpole(7, 4);
  const EigenResult a = first_eigen(g, c);
  const EigenResult b = first_eigen(g, c);
  CHECK(a.lambda == b.lambda);
  CHECK(a.eigenfunction == b.eigenfunction);
  CHECK(a.iterations == b.iterations);
}

TEST_CASE("low exponents") {
  // lambda approaches h_D = 1/11 from below
  const EigenResult r = first_eigen(tadpole(6, 3), at(1.05));
  CHECK(r.converged);
  CHECK(r.lambda < 1.0 / 11);
  CHECK(r.lambda > 1.0 / 11 - 1e-3);
}

TEST_CASE("configuration errors") {
  SolverConfig c;
  c.p = 1.0;
  CHECK_THROWS_AS(first_eigen(path_graph(3), c), Error);
  c = SolverConfig{};
  c.residual_tol = 0;
  CHECK_THROWS_AS(first_eigen(path_graph(3), c), Error);
  c = SolverConfig{};
  c.max_iter = 1;
  c.continuation_steps = 0;
  c.p = 3;
  const EigenResult r = solve_first_eigen(tadpole(8, 5), c);
  CHECK_FALSE(r.converged);
  CHECK_THROWS_AS(first_eigen(tadpole(8, 5), c), Error);
}
