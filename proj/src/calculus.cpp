#include "kmns/calculus.hpp"

#include "kmns/errors.hpp"

namespace kmns {

MvJ ext_d(const MvJ& w) {
  MvJ out;
  for (int mu = 0; mu < 4; ++mu) {
    MvJ dmu;
    for (int b = 0; b < kBlades; ++b) dmu.c[b] = w.c[b].deriv(mu);
    out += onef_wedge(mu, dmu);
  }
  return out;
}

MvJ codiff(const MvJ& w, const MetricData<Jet>& md) {
  MvJ out;
  for (int r = 0; r <= 4; ++r) {
    const MvJ part = grade_part(w, r);
    MvJ d = hodge_inv(ext_d(hodge(part, md)), md);
    if (r & 1) d = -d;
    out += d;
  }
  return out;
}

MvJ dirac(const MvJ& w, const MetricData<Jet>& md) {
  return ext_d(w) - codiff(w, md);
}

DalembertSplit dalembert_split(const MvJ& w, const MetricData<Jet>& md,
                               const CurvatureBundle& cb) {
  for (int b = 0; b < kBlades; ++b) {
    if (blade_grade(b) == 1) continue;
    for (int k = 0; k < kJetCoeffs; ++k)
      if (w.c[b].coeff(k) != 0.0)
        throw error("second-order split requires a pure 1-form input");
  }

  DalembertSplit out;
  out.square = -(ext_d(codiff(w, md)) + codiff(ext_d(w), md));

  // mixed Ricci components R^mu_nu = g^{mu a} R_{a nu}
  for (int nu = 0; nu < 4; ++nu) {
    Jet s;
    for (int mu = 0; mu < 4; ++mu) {
      Jet rmix;
      for (int a = 0; a < 4; ++a) rmix += md.ginv[mu][a] * cb.ricci[a][nu];
      s += w.c[1 << mu] * rmix;
    }
    out.ricci_part.c[1 << nu] = s;
  }

  out.box = out.square - out.ricci_part;
  return out;
}

Matrix4<Jet> lie_derivative_metric(const MetricData<Jet>& md,
                                   const JetPoint& X) {
  Matrix4<Jet> out;
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = mu; nu < 4; ++nu) {
      Jet s;
      for (int r = 0; r < 4; ++r)
        s += X[r] * md.g[mu][nu].deriv(r) + md.g[r][nu] * X[r].deriv(mu) +
             md.g[mu][r] * X[r].deriv(nu);
      out[mu][nu] = s;
      out[nu][mu] = s;
    }
  return out;
}

}  // namespace kmns
