#include "kmns/komar.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "kmns/calculus.hpp"
#include "kmns/errors.hpp"
#include "kmns/killing.hpp"

namespace kmns {

namespace {

constexpr double kPi = std::numbers::pi;

// compensated accumulation in a fixed order, for reproducible quadrature
struct KahanSum {
  double s = 0.0;
  double c = 0.0;
  void add(double v) {
    const double y = v - c;
    const double t = s + y;
    c = (t - s) - y;
    s = t;
  }
};

Jet stress_trace(const Matrix4<Jet>& T, const MetricData<Jet>& md) {
  Jet tr;
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) tr += md.ginv[m][n] * T[n][m];
  return tr;
}

// dual of F = dA evaluated on the (d_phi, d_theta)-oriented sphere element
double surface_integrand(const MetricField& mf, const VectorFn& X,
                         const Point& p) {
  mf.check_domain(p);
  const JetPoint xj = seed_point(p, 2);
  const MetricData<Jet> md = metric_data_from_g(mf.components(xj));
  const MvJ A = oneform_of_vector(md, X(xj));
  const MvJ sF = hodge(ext_d(A), md);
  return -sF.c[12].value();  // minus the d_theta^d_phi coefficient
}

double raw_surface_energy(const MetricField& mf, const VectorFn& X, double r,
                          const GaussLegendre& gl, int n_phi, double t0,
                          double orient) {
  const double dphi = 2.0 * kPi / n_phi;
  KahanSum sum;
  for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
    const double x = gl.nodes[i];
    const double sin_theta = std::sqrt(1.0 - x * x);
    const double theta = std::acos(x);
    const double w_theta = gl.weights[i] / sin_theta;
    for (int j = 0; j < n_phi; ++j) {
      const double phi = dphi * (j + 0.5);
      sum.add(w_theta * dphi *
              surface_integrand(mf, X, Point{t0, r, theta, phi}));
    }
  }
  return -orient * sum.s / (8.0 * kPi);
}

}  // namespace

GaussLegendre gauss_legendre(int n) {
  if (n < 1) throw config_error("quadrature order must be positive");
  GaussLegendre out;
  out.nodes.assign(std::size_t(n), 0.0);
  out.weights.assign(std::size_t(n), 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double step = p1 / dp;
      x -= step;
      if (std::abs(step) < 1e-15) break;
    }
    out.nodes[std::size_t(i)] = -x;
    out.nodes[std::size_t(n - 1 - i)] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    out.weights[std::size_t(i)] = w;
    out.weights[std::size_t(n - 1 - i)] = w;
  }
  return out;
}

KomarCurrentPoint komar_current_at(const MetricData<Jet>& md,
                                   const CurvatureBundle& cb,
                                   const JetPoint& X, const Matrix4<Jet>& T) {
  const MvJ A = oneform_of_vector(md, X);
  const MvJ F = ext_d(A);
  const MvJ J_direct = -codiff(F, md);

  const MvJ d_delta_A = ext_d(codiff(A, md));
  const MvJ box_A = dalembert_split(A, md, cb).box;
  const MvJ J_explicit = tensor_action(T, md, A) -
                         (0.5 * stress_trace(T, md)) * A + d_delta_A + box_A;

  KomarCurrentPoint out;
  out.two_route = mv_norm(J_direct - J_explicit);
  out.conservation = mv_norm(codiff(J_direct, md));
  out.killing_term = mv_norm(d_delta_A);
  out.J = value_of(J_direct);
  return out;
}

KomarSurfaceResult komar_energy_surface(const MetricField& mf,
                                        const VectorFn& X,
                                        const SphereQuadrature& quad,
                                        double t0, bool outward) {
  if (quad.n_theta < 8 || quad.n_phi < 16)
    throw config_error("sphere quadrature needs n_theta >= 8, n_phi >= 16");
  if (quad.radii.size() < 3)
    throw config_error("radius extrapolation needs at least 3 radii");
  std::vector<double> radii = quad.radii;
  std::sort(radii.begin(), radii.end());
  for (std::size_t k = 0; k < radii.size(); ++k) {
    if (radii[k] <= 0.0) throw config_error("sphere radii must be positive");
    if (k > 0 && radii[k] - radii[k - 1] < 1e-12)
      throw config_error("sphere radii must be distinct");
  }

  const GaussLegendre gl = gauss_legendre(quad.n_theta);
  const double orient = outward ? 1.0 : -1.0;

  KomarSurfaceResult out;
  for (const double r : radii)
    out.table.push_back(
        {r, raw_surface_energy(mf, X, r, gl, quad.n_phi, t0, orient)});

  // growing gaps between successive estimates mean there is no r -> infinity
  // limit to extrapolate toward
  const std::size_t n = out.table.size();
  const double d_first = std::abs(out.table[1].estimate - out.table[0].estimate);
  const double d_last =
      std::abs(out.table[n - 1].estimate - out.table[n - 2].estimate);
  if (d_last > 1.5 * d_first + 1e-12 && d_last > 1e-10) {
    std::ostringstream msg;
    msg << "surface energy diverges with radius:";
    for (const auto& row : out.table)
      msg << " E(" << row.radius << ")=" << row.estimate;
    throw convergence_error(msg.str());
  }

  // polynomial extrapolation in u = 1/r evaluated at u = 0
  const int m = int(n);
  Eigen::MatrixXd V(m, m);
  Eigen::VectorXd e(m);
  for (int k = 0; k < m; ++k) {
    const double u = 1.0 / out.table[std::size_t(k)].radius;
    double up = 1.0;
    for (int p = 0; p < m; ++p) {
      V(k, p) = up;
      up *= u;
    }
    e(k) = out.table[std::size_t(k)].estimate;
  }
  out.value = V.fullPivLu().solve(e)(0);
  return out;
}

double killing_energy_volume(const MetricField& mf, const VectorFn& X,
                             const StressFn& stress, double r_inner,
                             double r_outer, int n_r, int n_theta, int n_phi,
                             double t0) {
  if (n_r < 4 || n_theta < 8 || n_phi < 16)
    throw config_error("ball quadrature needs n_r >= 4, n_theta >= 8, n_phi >= 16");
  if (!(r_inner >= 0.0) || !(r_outer > r_inner))
    throw config_error("ball needs 0 <= r_inner < r_outer");

  const GaussLegendre gl_r = gauss_legendre(n_r);
  const GaussLegendre gl_t = gauss_legendre(n_theta);
  const double dphi = 2.0 * kPi / n_phi;
  const double mid = 0.5 * (r_outer + r_inner);
  const double half = 0.5 * (r_outer - r_inner);

  KahanSum sum;
  for (std::size_t a = 0; a < gl_r.nodes.size(); ++a) {
    const double r = mid + half * gl_r.nodes[a];
    const double w_r = half * gl_r.weights[a];
    for (std::size_t i = 0; i < gl_t.nodes.size(); ++i) {
      const double x = gl_t.nodes[i];
      const double sin_theta = std::sqrt(1.0 - x * x);
      const double theta = std::acos(x);
      const double w_theta = gl_t.weights[i] / sin_theta;
      for (int j = 0; j < n_phi; ++j) {
        const double phi = dphi * (j + 0.5);
        const Point p{t0, r, theta, phi};
        mf.check_domain(p);
        const JetPoint xj = seed_point(p, 1);
        const MetricData<Jet> md = metric_data_from_g(mf.components(xj));
        const Matrix4<Jet> T = stress(xj, md);
        const MvJ A = oneform_of_vector(md, X(xj));
        const MvJ W =
            tensor_action(T, md, A) - (0.5 * stress_trace(T, md)) * A;
        const MvJ sW = hodge(W, md);
        // minus the d_r^d_theta^d_phi coefficient: (d_r, d_phi, d_theta)
        sum.add(-w_r * w_theta * dphi * sW.c[14].value());
      }
    }
  }
  return sum.s / (8.0 * kPi);
}

}  // namespace kmns
