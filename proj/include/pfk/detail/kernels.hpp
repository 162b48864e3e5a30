#pragma once

// Precision-generic building blocks of the spectral module. Real is double
// or boost::multiprecision::float128; math functions are found through ADL.

#include <algorithm>
#include <array>
#include <cmath>
#include <span>
#include <vector>

#include "pfk/graph.hpp"

namespace pfk::detail {

/// |t|^{p-2} t, extended by 0 at t = 0 for every p > 1.
template <class Real>
Real signed_power(const Real& t, const Real& p) {
  using std::abs;
  using std::pow;
  if (t == 0) return Real(0);
  const Real m = pow(abs(t), p - 1);
  return t > 0 ? m : Real(-m);
}

/// Derivative of signed_power. At t = 0 and p < 2 it is clamped to a large
/// finite value instead of infinity.
template <class Real>
Real signed_power_slope(const Real& t, const Real& p) {
  using std::abs;
  using std::pow;
  Real a = abs(t);
  if (a == 0) {
    if (p > 2) return Real(0);
    if (p == 2) return Real(1);
    a = Real(1e-300);
  }
  return (p - 1) * pow(a, p - 2);
}

template <class Real>
Real edge_energy(const DomainGraph& g, const Real& p, std::span<const Real> f) {
  using std::abs;
  using std::pow;
  Real sum = 0;
  for (Vertex x = 0; x < g.vertex_count(); ++x) {
    for (Vertex y : g.graph().neighbors(x)) {
      if (x < y) {
        const Real d = abs(f[x] - f[y]);
        if (d != 0) sum += pow(d, p);
      }
    }
  }
  return sum;
}

template <class Real>
Real degree_norm(const DomainGraph& g, const Real& p, std::span<const Real> f) {
  using std::abs;
  using std::pow;
  Real sum = 0;
  for (Vertex x = 0; x < g.vertex_count(); ++x) {
    const Real a = abs(f[x]);
    if (a != 0) sum += pow(a, p) * g.degree(x);
  }
  return sum;
}

template <class Real>
Real laplacian_at(const DomainGraph& g, const Real& p, std::span<const Real> f, Vertex x) {
  Real sum = 0;
  for (Vertex y : g.graph().neighbors(x)) sum += signed_power<Real>(f[x] - f[y], p);
  return sum / g.degree(x);
}

template <class Real>
Real eigen_defect(const DomainGraph& g, const Real& p, std::span<const Real> f, const Real& lambda) {
  using std::abs;
  using std::pow;
  Real worst = 0;
  Real sup = 0;
  for (Vertex x = 0; x < g.vertex_count(); ++x) sup = std::max<Real>(sup, abs(f[x]));
  for (Vertex x : g.interior()) {
    const Real defect = abs(laplacian_at<Real>(g, p, f, x) - lambda * signed_power<Real>(f[x], p));
    worst = std::max<Real>(worst, defect);
  }
  const Real scale = std::max<Real>(Real(1), sup == 0 ? Real(0) : Real(pow(sup, p - 1)));
  return worst / scale;
}

/// Interior vertices grouped by automorphism orbit. Values are shared within
/// an orbit, so edges inside an orbit never contribute and are dropped.
struct ReducedStructure {
  int classes = 0;
  std::vector<int> class_of;                   // -1 on the boundary
  std::vector<std::vector<Vertex>> members;
  std::vector<double> weight;                  // total degree of each class
  std::vector<std::array<int, 2>> edges;       // class pairs, -1 marks the boundary

  static ReducedStructure build(const DomainGraph& g, std::span<const Vertex> orbit);

  template <class Real>
  std::vector<Real> expand(std::span<const Real> u) const {
    std::vector<Real> f(class_of.size(), Real(0));
    for (std::size_t x = 0; x < class_of.size(); ++x) {
      if (class_of[x] >= 0) f[x] = u[class_of[x]];
    }
    return f;
  }

  /// Orbit average of f on the interior.
  std::vector<double> restrict_average(const VertexFunction& f) const;
};

template <class Real>
class ReducedProblem {
 public:
  ReducedProblem(const ReducedStructure& s, Real p) : s_(s), p_(p) {}

  const Real& exponent() const { return p_; }
  int size() const { return s_.classes; }
  Real weight(int c) const { return Real(s_.weight[c]); }
  const ReducedStructure& structure() const { return s_; }

  Real energy(std::span<const Real> u) const {
    using std::abs;
    using std::pow;
    Real sum = 0;
    for (const auto& [a, b] : s_.edges) {
      const Real d = abs(value(u, a) - value(u, b));
      if (d != 0) sum += pow(d, p_);
    }
    return sum;
  }

  Real norm(std::span<const Real> u) const {
    using std::abs;
    using std::pow;
    Real sum = 0;
    for (int c = 0; c < s_.classes; ++c) {
      if (u[c] != 0) sum += Real(s_.weight[c]) * pow(abs(u[c]), p_);
    }
    return sum;
  }

  Real quotient(std::span<const Real> u) const { return energy(u) / norm(u); }

  void normalize(std::vector<Real>& u) const {
    using std::pow;
    const Real scale = pow(norm(u), Real(-1) / p_);
    for (Real& x : u) x *= scale;
  }

  /// Per class: sum over its vertices of deg(x) * (Delta_p f(x) - lambda phi(f(x))).
  std::vector<Real> equation(std::span<const Real> u, const Real& lambda) const {
    std::vector<Real> r(s_.classes, Real(0));
    for (const auto& [a, b] : s_.edges) {
      const Real flux = signed_power<Real>(value(u, a) - value(u, b), p_);
      if (a >= 0) r[a] += flux;
      if (b >= 0) r[b] -= flux;
    }
    for (int c = 0; c < s_.classes; ++c) {
      r[c] -= lambda * Real(s_.weight[c]) * signed_power<Real>(u[c], p_);
    }
    return r;
  }

  /// Same quantity as eigen_defect on the expanded function.
  Real defect(std::span<const Real> u, const Real& lambda) const {
    using std::abs;
    using std::pow;
    const auto r = equation(u, lambda);
    Real worst = 0;
    Real sup = 0;
    for (int c = 0; c < s_.classes; ++c) {
      worst = std::max<Real>(worst, Real(abs(r[c]) / Real(s_.weight[c])));
      sup = std::max<Real>(sup, abs(u[c]));
    }
    const Real scale = std::max<Real>(Real(1), sup == 0 ? Real(0) : Real(pow(sup, p_ - 1)));
    return worst / scale;
  }

  /// Gradient of the Rayleigh quotient in class coordinates.
  std::vector<Real> gradient(std::span<const Real> u) const {
    const Real n = norm(u);
    const Real lambda = energy(u) / n;
    auto r = equation(u, lambda);
    for (Real& x : r) x *= p_ / n;
    return r;
  }

  /// Jacobian of (equation(u, lambda), (norm(u) - 1) / p) with respect to
  /// (u, lambda), row-major, size (k+1) x (k+1).
  std::vector<Real> jacobian(std::span<const Real> u, const Real& lambda) const {
    const int k = s_.classes;
    const int dim = k + 1;
    std::vector<Real> j(static_cast<std::size_t>(dim) * dim, Real(0));
    auto at = [&](int r, int c) -> Real& { return j[static_cast<std::size_t>(r) * dim + c]; };
    for (const auto& [a, b] : s_.edges) {
      const Real slope = signed_power_slope<Real>(value(u, a) - value(u, b), p_);
      if (a >= 0) at(a, a) += slope;
      if (b >= 0) at(b, b) += slope;
      if (a >= 0 && b >= 0) {
        at(a, b) -= slope;
        at(b, a) -= slope;
      }
    }
    for (int c = 0; c < k; ++c) {
      const Real w = Real(s_.weight[c]);
      at(c, c) -= lambda * w * signed_power_slope<Real>(u[c], p_);
      const Real phi = w * signed_power<Real>(u[c], p_);
      at(c, k) = -phi;
      at(k, c) = phi;
    }
    return j;
  }

 private:
  static Real value(std::span<const Real> u, int c) { return c < 0 ? Real(0) : u[c]; }

  const ReducedStructure& s_;
  Real p_;
};

}  // namespace pfk::detail
