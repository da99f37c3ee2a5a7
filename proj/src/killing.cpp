#include "kmns/killing.hpp"

#include <cmath>

#include "kmns/errors.hpp"

namespace kmns {

namespace {

constexpr std::array<double, 4> kEta = {1.0, -1.0, -1.0, -1.0};

// max over blades of |value| for the difference of two jet multivectors
double max_abs_value(const MvJ& A) { return mv_norm(A); }

// mixed tensor M^mu_nu = g^{mu rho} T_{rho nu}, values only
Matrix4<double> mixed_values(const Matrix4<Jet>& T, const MetricData<Jet>& md) {
  Matrix4<double> out{};
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) {
      double s = 0.0;
      for (int r = 0; r < 4; ++r)
        s += md.ginv[mu][r].value() * T[r][nu].value();
      out[mu][nu] = s;
    }
  return out;
}

MvJ oneform_from_row(const Matrix4<Jet>& rows, int a) {
  MvJ w;
  for (int mu = 0; mu < 4; ++mu) w.c[std::size_t{1} << mu] = rows[a][mu];
  return w;
}

}  // namespace

MvJ oneform_of_vector(const MetricData<Jet>& md, const JetPoint& X) {
  MvJ A;
  for (int mu = 0; mu < 4; ++mu) {
    Jet s;
    for (int nu = 0; nu < 4; ++nu) s += md.g[mu][nu] * X[nu];
    A.c[std::size_t{1} << mu] = s;
  }
  return A;
}

MvJ tensor_action(const Matrix4<Jet>& T, const MetricData<Jet>& md,
                  const MvJ& A) {
  MvJ out;
  for (int nu = 0; nu < 4; ++nu) {
    Jet s;
    for (int mu = 0; mu < 4; ++mu) {
      Jet mixed;  // T^mu_nu
      for (int r = 0; r < 4; ++r) mixed += md.ginv[mu][r] * T[r][nu];
      s += mixed * A.c[std::size_t{1} << mu];
    }
    out.c[std::size_t{1} << nu] = s;
  }
  return out;
}

double killing_residual_at(const MetricData<Jet>& md, const JetPoint& X) {
  const Matrix4<Jet> lie = lie_derivative_metric(md, X);
  double worst = 0.0;
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu)
      worst = std::max(worst, std::abs(lie[mu][nu].value()));
  return worst;
}

LemmaResiduals lemma_residuals_at(const MetricData<Jet>& md,
                                  const CurvatureBundle& cb,
                                  const JetPoint& X) {
  const MvJ A = oneform_of_vector(md, X);
  LemmaResiduals out;
  out.lorenz = max_abs_value(codiff(A, md));
  const DalembertSplit split = dalembert_split(A, md, cb);
  out.wave_ricci = max_abs_value(split.box - split.ricci_part);
  return out;
}

WaveResiduals wave_residuals_at(const MetricData<Jet>& md,
                                const CurvatureBundle& cb, const JetPoint& X,
                                const Matrix4<Jet>& T) {
  const MvJ A = oneform_of_vector(md, X);
  const DalembertSplit split = dalembert_split(A, md, cb);
  const MvJ source = (0.5 * cb.scalar) * A + tensor_action(T, md, A);

  WaveResiduals out;
  out.wave = max_abs_value(split.box - source);

  // mixed field-equation matrix R^mu_nu - (R/2) delta^mu_nu - T^mu_nu
  const Matrix4<double> Rm = mixed_values(cb.ricci, md);
  const Matrix4<double> Tm = mixed_values(T, md);
  Matrix4<double> M{};
  const double half_R = 0.5 * cb.scalar.value();
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu)
      M[mu][nu] = Rm[mu][nu] - (mu == nu ? half_R : 0.0) - Tm[mu][nu];
  out.lhe_det = std::abs(det4(M));
  return out;
}

MaxwellResiduals maxwell_residuals_at(const MetricData<Jet>& md,
                                      const CurvatureBundle& cb,
                                      const JetPoint& X,
                                      const Matrix4<Jet>& T) {
  const MvJ A = oneform_of_vector(md, X);
  const MvJ F = ext_d(A);
  const MvJ dF = ext_d(F);
  const MvJ deltaF = codiff(F, md);
  const MvJ J = cb.scalar * A + 2.0 * tensor_action(T, md, A);
  const MvJ J_s = cb.scalar * A;
  const MvJ two_R_A = 2.0 * tensor_action(cb.ricci, md, A);

  MaxwellResiduals out;
  out.dF = max_abs_value(dF);
  out.deltaF = max_abs_value(deltaF + J);
  out.dirac_eq = max_abs_value((dF - deltaF) - J);
  out.two_route = max_abs_value(J - two_R_A);
  out.J = value_of(J);
  out.J_s = value_of(J_s);
  return out;
}

double current_conservation_at(const MetricData<Jet>& md, const JetPoint& X) {
  const MvJ A = oneform_of_vector(md, X);
  const MvJ F = ext_d(A);
  const MvJ deltaF = codiff(F, md);
  return max_abs_value(codiff(deltaF, md));
}

TeleparallelResiduals teleparallel_at(const MetricData<Jet>& md,
                                      const CurvatureBundle& cb,
                                      const JetPoint& X,
                                      const Matrix4<Jet>& T,
                                      const Matrix4<Jet>& coframe,
                                      double gauge_tol) {
  TeleparallelResiduals out;

  // the coframe must reconstruct the metric: eta_ab e^a_mu e^b_nu = g_mu_nu
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) {
      double s = 0.0;
      for (int a = 0; a < 4; ++a)
        s += kEta[std::size_t(a)] * coframe[a][mu].value() *
             coframe[a][nu].value();
      out.ortho = std::max(out.ortho, std::abs(s - md.g[mu][nu].value()));
    }
  if (out.ortho > 1e-8)
    throw config_error("coframe does not reconstruct the metric (residual " +
                       std::to_string(out.ortho) + ")");

  // pointwise gauge condition: each coframe leg must be divergence-free
  std::array<MvJ, 4> legs;
  for (int a = 0; a < 4; ++a) {
    legs[std::size_t(a)] = oneform_from_row(coframe, a);
    out.gauge = std::max(
        out.gauge, max_abs_value(codiff(legs[std::size_t(a)], md)));
  }
  out.gauge_ok = out.gauge <= gauge_tol;
  if (!out.gauge_ok) return out;

  // scalar components of A in the coframe basis via the inverse frame matrix
  const MvJ A = oneform_of_vector(md, X);
  const Jet det_e = det4(coframe);
  if (std::abs(det_e.value()) < 1e-14)
    throw config_error("coframe matrix is singular");
  const Matrix4<Jet> frame = inverse4(coframe, det_e);  // frame[mu][a]
  std::array<Jet, 4> A_comp;
  for (int a = 0; a < 4; ++a) {
    Jet s;
    for (int mu = 0; mu < 4; ++mu)
      s += A.c[std::size_t{1} << mu] * frame[mu][a];
    A_comp[std::size_t(a)] = s;
  }

  // t^a = box e^a + (R/2) e^a;  t(A) = A_a t^a - A_a box e^a
  MvJ tA;
  for (int a = 0; a < 4; ++a) {
    const DalembertSplit split = dalembert_split(legs[std::size_t(a)], md, cb);
    const MvJ t_a = split.box + (0.5 * cb.scalar) * legs[std::size_t(a)];
    tA = tA + A_comp[std::size_t(a)] * (t_a - split.box);
  }

  const MvJ F = ext_d(A);
  const MvJ resid = codiff(F, md) + 2.0 * (tA + tensor_action(T, md, A));
  out.residual = max_abs_value(resid);
  return out;
}

}  // namespace kmns
