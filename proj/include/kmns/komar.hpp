#pragma once

// Conserved current of a one-parameter-group generator, its explicit
// stress-tensor form, the surface-integral energy over large spheres with
// polynomial extrapolation in 1/r, and the volume-form energy for symmetry
// generators.  Surface/volume quadrature assumes the spherical chart
// (t, r, theta, phi).

#include <functional>
#include <vector>

#include "kmns/curvature.hpp"
#include "kmns/geometry.hpp"
#include "kmns/multivector.hpp"

namespace kmns {

// stress tensor components at a point, given the seeded coordinates and the
// already-assembled metric data there
using StressFn =
    std::function<Matrix4<Jet>(const JetPoint&, const MetricData<Jet>&)>;

// Gauss-Legendre rule on [-1, 1]; weights sum to 2
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussLegendre gauss_legendre(int n);

struct SphereQuadrature {
  std::vector<double> radii;  // >= 3 distinct values for extrapolation
  int n_theta = 32;           // Gauss-Legendre order in cos(theta), >= 8
  int n_phi = 64;             // uniform nodes in phi, >= 16
};

// Pointwise two-route current comparison.  The direct route is -delta F;
// the explicit route is T(A) - (tr T / 2) A + d delta A + box A, which
// matches it whenever the field equation holds.
struct KomarCurrentPoint {
  double two_route = 0.0;      // max |J_direct - J_explicit|
  double conservation = 0.0;   // |delta J_direct|
  double killing_term = 0.0;   // max |d delta A| (vanishes for symmetries)
  Mv J;                        // direct-route current value at the point
};
KomarCurrentPoint komar_current_at(const MetricData<Jet>& md,
                                   const CurvatureBundle& cb,
                                   const JetPoint& X, const Matrix4<Jet>& T);

struct RadiusEstimate {
  double radius = 0.0;
  double estimate = 0.0;
};
struct KomarSurfaceResult {
  double value = 0.0;  // extrapolated toward r -> infinity
  std::vector<RadiusEstimate> table;
};

// E(r) = -(1/8 pi) * integral over the constant-(t, r) sphere of the dual
// of F = dA, A = g(X, .), then polynomial extrapolation in u = 1/r.
// Throws convergence_error when the per-radius estimates diverge and
// config_error on an invalid quadrature.  `outward` flips the sphere
// orientation (and hence the sign) when false.
KomarSurfaceResult komar_energy_surface(const MetricField& mf, const VectorFn& X,
                                        const SphereQuadrature& quad,
                                        double t0 = 0.0, bool outward = true);

// E = (1/8 pi) * integral over the constant-t ball r_inner < r < r_outer of
// the dual 3-form of T(A) - (tr T / 2) A.
double killing_energy_volume(const MetricField& mf, const VectorFn& X,
                             const StressFn& stress, double r_inner,
                             double r_outer, int n_r, int n_theta, int n_phi,
                             double t0 = 0.0);

}  // namespace kmns
