#pragma once

// Charts, analytic metric / vector fields evaluated as jets, chart
// transitions, and the shared static spherically-symmetric metric family.
//
// Every field evaluation goes through jets seeded on the chart coordinates,
// so all derivative information downstream is exact (no finite differences
// anywhere in the engine).

#include <array>
#include <functional>
#include <memory>
#include <string>

#include "kmns/jet.hpp"
#include "kmns/multivector.hpp"

namespace kmns {

using Point = std::array<double, 4>;
using JetPoint = std::array<Jet, 4>;

// coordinates seeded as independent variables of the requested order
JetPoint seed_point(const Point& p, int order);

Matrix4<double> value_of(const Matrix4<Jet>& m);

// ---------------------------------------------------------------------------
// fields

class MetricField {
 public:
  virtual ~MetricField() = default;
  virtual const std::string& chart() const = 0;
  // throws chart_domain_error when p is outside the chart's validity region
  virtual void check_domain(const Point& p) const = 0;
  // covariant components from already-seeded (or composed) coordinates
  virtual Matrix4<Jet> components(const JetPoint& x) const = 0;
};

class FunctionMetric : public MetricField {
 public:
  using CompFn = std::function<Matrix4<Jet>(const JetPoint&)>;
  using DomainFn = std::function<void(const Point&)>;

  FunctionMetric(std::string chart, CompFn comp, DomainFn domain = {})
      : chart_(std::move(chart)),
        comp_(std::move(comp)),
        domain_(std::move(domain)) {}

  const std::string& chart() const override { return chart_; }
  void check_domain(const Point& p) const override {
    if (domain_) domain_(p);
  }
  Matrix4<Jet> components(const JetPoint& x) const override {
    return comp_(x);
  }

 private:
  std::string chart_;
  CompFn comp_;
  DomainFn domain_;
};

class VectorField {
 public:
  virtual ~VectorField() = default;
  virtual JetPoint components(const JetPoint& x) const = 0;
};

// contravariant vector components from seeded coordinates
using VectorFn = std::function<JetPoint(const JetPoint&)>;

class FunctionVector : public VectorField {
 public:
  using CompFn = std::function<JetPoint(const JetPoint&)>;
  explicit FunctionVector(CompFn comp) : comp_(std::move(comp)) {}
  JetPoint components(const JetPoint& x) const override { return comp_(x); }

 private:
  CompFn comp_;
};

// Validated jet-valued metric data at a point: runs the double-valued
// symmetry/determinant/signature gate, then assembles inverse and volume
// density in jet arithmetic.
MetricData<Jet> metric_data_at(const MetricField& mf, const Point& p,
                               int order);

// ---------------------------------------------------------------------------
// chart transitions

// (t, r, theta, phi) -> (t, x, y, z)
JetPoint spherical_to_cartesian(const JetPoint& s);
// (t, x, y, z) -> (t, r, theta, phi); throws chart_domain_error on the axis
JetPoint cartesian_to_spherical(const JetPoint& c);

// Jacobian [alpha][mu] = d y^alpha / d x^mu, one jet order lower than y
Matrix4<Jet> jacobian_of(const JetPoint& y_of_x);

// Components in the x-chart of a metric defined in the y-chart, through the
// transition y(x):  g'_{mu nu}(x) = J^a_mu J^b_nu g_{ab}(y(x)).
Matrix4<Jet> pullback_metric(const MetricField& in_ychart,
                             const JetPoint& y_of_x);

// Components in the y-chart of a vector field defined in the x-chart,
// evaluated at y, through the inverse transition x(y):
//   X'^a(y) = (J^{-1})^a_mu X^mu(x(y))  with J = d x / d y.
JetPoint pushforward_vector(const VectorField& in_xchart,
                            const JetPoint& x_of_y);

// ---------------------------------------------------------------------------
// static spherically-symmetric family, shared by the built-in scenarios
//
//   g = f(r) dt^2 - dr^2/f(r) - r^2 dtheta^2 - r^2 sin^2(theta) dphi^2

using RadialFn = std::function<Jet(const Jet&)>;

// spherical chart (t, r, theta, phi)
Matrix4<Jet> static_spherical_metric(const RadialFn& f, const JetPoint& x);

// Cartesian chart (t, x, y, z), closed form:
//   g_tt = f,  g_ij = -delta_ij - ((1-f)/f) n_i n_j,  n = x_vec / r
Matrix4<Jet> static_spherical_metric_cartesian(const RadialFn& f,
                                               const JetPoint& x);

// Diagonal orthonormal coframe rows e^a_mu in the spherical chart:
//   e^0 = sqrt(f) dt, e^1 = dr/sqrt(f), e^2 = r dtheta, e^3 = r sin dphi
Matrix4<Jet> static_spherical_coframe(const RadialFn& f, const JetPoint& x);

}  // namespace kmns
