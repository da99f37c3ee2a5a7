#include "kmns/geometry.hpp"

#include <cmath>
#include <sstream>

#include "kmns/errors.hpp"

namespace kmns {

JetPoint seed_point(const Point& p, int order) {
  JetPoint x;
  for (int i = 0; i < 4; ++i) x[i] = Jet::variable(p[i], i, order);
  return x;
}

Matrix4<double> value_of(const Matrix4<Jet>& m) {
  Matrix4<double> out;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) out[r][c] = m[r][c].value();
  return out;
}

MetricData<Jet> metric_data_at(const MetricField& mf, const Point& p,
                               int order) {
  mf.check_domain(p);
  const Matrix4<Jet> g = mf.components(seed_point(p, order));
  MetricAtPoint::make(value_of(g));  // symmetry / determinant / signature gate
  return metric_data_from_g(g);
}

JetPoint spherical_to_cartesian(const JetPoint& s) {
  const Jet& t = s[0];
  const Jet& r = s[1];
  const Jet st = sin(s[2]), ct = cos(s[2]);
  const Jet sp = sin(s[3]), cp = cos(s[3]);
  return {t, r * st * cp, r * st * sp, r * ct};
}

JetPoint cartesian_to_spherical(const JetPoint& c) {
  const Jet& t = c[0];
  const Jet r2 = c[1] * c[1] + c[2] * c[2] + c[3] * c[3];
  if (r2.value() <= 0.0)
    throw chart_domain_error("spherical coordinates undefined at the origin");
  const Jet r = sqrt(r2);
  const Jet rho2 = c[1] * c[1] + c[2] * c[2];
  if (rho2.value() <= 1e-16 * r2.value())
    throw chart_domain_error(
        "spherical coordinates undefined on the polar axis");
  return {t, r, acos(c[3] / r), atan2(c[2], c[1])};
}

Matrix4<Jet> jacobian_of(const JetPoint& y_of_x) {
  Matrix4<Jet> J;
  for (int a = 0; a < 4; ++a)
    for (int mu = 0; mu < 4; ++mu) J[a][mu] = y_of_x[a].deriv(mu);
  return J;
}

Matrix4<Jet> pullback_metric(const MetricField& in_ychart,
                             const JetPoint& y_of_x) {
  const Matrix4<Jet> gy = in_ychart.components(y_of_x);
  const Matrix4<Jet> J = jacobian_of(y_of_x);
  Matrix4<Jet> out{};
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = mu; nu < 4; ++nu) {
      Jet s;
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) s += J[a][mu] * J[b][nu] * gy[a][b];
      out[mu][nu] = s;
      out[nu][mu] = s;
    }
  return out;
}

JetPoint pushforward_vector(const VectorField& in_xchart,
                            const JetPoint& x_of_y) {
  const JetPoint X = in_xchart.components(x_of_y);
  const Matrix4<Jet> J = jacobian_of(x_of_y);  // d x / d y
  const Jet det = det4(J);
  if (std::abs(det.value()) < 1e-14)
    throw chart_domain_error("chart transition Jacobian is singular");
  const Matrix4<Jet> Jinv = inverse4(J, det);  // d y / d x at x(y)
  JetPoint out;
  for (int a = 0; a < 4; ++a) {
    Jet s;
    for (int mu = 0; mu < 4; ++mu) s += Jinv[a][mu] * X[mu];
    out[a] = s;
  }
  return out;
}

Matrix4<Jet> static_spherical_metric(const RadialFn& f, const JetPoint& x) {
  const Jet& r = x[1];
  const Jet fr = f(r);
  const Jet st = sin(x[2]);
  Matrix4<Jet> g{};
  g[0][0] = fr;
  g[1][1] = -1.0 / fr;
  g[2][2] = -(r * r);
  g[3][3] = -(r * r * st * st);
  return g;
}

Matrix4<Jet> static_spherical_metric_cartesian(const RadialFn& f,
                                               const JetPoint& x) {
  const Jet r2 = x[1] * x[1] + x[2] * x[2] + x[3] * x[3];
  if (r2.value() <= 0.0)
    throw chart_domain_error("metric components singular at the origin");
  const Jet r = sqrt(r2);
  const Jet fr = f(r);
  const Jet coef = (1.0 - fr) / (fr * r2);  // (1-f)/f * 1/r^2
  Matrix4<Jet> g{};
  g[0][0] = fr;
  for (int i = 1; i < 4; ++i) {
    for (int j = i; j < 4; ++j) {
      Jet v = -(coef * x[i] * x[j]);
      if (i == j) v -= 1.0;
      g[i][j] = v;
      g[j][i] = v;
    }
  }
  return g;
}

Matrix4<Jet> static_spherical_coframe(const RadialFn& f, const JetPoint& x) {
  const Jet& r = x[1];
  const Jet fr = f(r);
  if (fr.value() <= 0.0)
    throw chart_domain_error("coframe undefined where the lapse vanishes");
  const Jet sf = sqrt(fr);
  Matrix4<Jet> e{};
  e[0][0] = sf;
  e[1][1] = 1.0 / sf;
  e[2][2] = r;
  e[3][3] = r * sin(x[2]);
  return e;
}

}  // namespace kmns
