#include "kmns/bimetric.hpp"

#include <cmath>

#include "kmns/calculus.hpp"
#include "kmns/errors.hpp"
#include "kmns/killing.hpp"

namespace kmns {

namespace {

constexpr std::array<double, 4> kEta = {1.0, -1.0, -1.0, -1.0};

}  // namespace

BimetricPoint bimetric_at(const MetricData<Jet>& /*md*/,
                          const CurvatureBundle& cb) {
  BimetricPoint bp;

  // Q_{alpha beta sigma} = (D_sigma eta)_{alpha beta}.  The flat components
  // are constant on this chart, so the partial-derivative term drops and only
  // the connection terms survive:
  //   Q_{alpha beta sigma} = -Gamma^rho_{sigma alpha} eta_{rho beta}
  //                          -Gamma^rho_{sigma beta} eta_{alpha rho}
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int s = 0; s < 4; ++s)
        bp.Q[std::size_t(a)][b][s] = (-kEta[std::size_t(b)]) *
                                         cb.gamma[std::size_t(b)][s][a] +
                                     (-kEta[std::size_t(a)]) *
                                         cb.gamma[std::size_t(a)][s][b];

  // S^rho_{ab} = eta^{rho sigma} (Q_{ab sigma} - Q_{sigma ab} - Q_{sigma ba});
  // the flat inverse is diagonal, so sigma = rho with a sign.
  for (int r = 0; r < 4; ++r)
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        const Jet combo = bp.Q[std::size_t(a)][b][r] -
                          bp.Q[std::size_t(r)][a][b] -
                          bp.Q[std::size_t(r)][b][a];
        bp.S[std::size_t(r)][a][b] = kEta[std::size_t(r)] * combo;
        bp.K[std::size_t(r)][a][b] = (-0.5) * bp.S[std::size_t(r)][a][b];
        bp.strain_vs_connection =
            std::max(bp.strain_vs_connection,
                     std::abs(0.5 * bp.S[std::size_t(r)][a][b].value() -
                              cb.gamma[std::size_t(r)][a][b].value()));
      }

  // J_{m a} = -d_a K^r_{r m} + d_r K^r_{a m}
  //           + K^r_{a s} K^s_{r m} - K^r_{r s} K^s_{a m}
  // (flat covariant derivatives reduce to partials on this chart)
  for (int m = 0; m < 4; ++m)
    for (int a = 0; a < 4; ++a) {
      Jet acc;
      for (int r = 0; r < 4; ++r) {
        acc -= bp.K[std::size_t(r)][r][m].deriv(a);
        acc += bp.K[std::size_t(r)][a][m].deriv(r);
        for (int s = 0; s < 4; ++s) {
          acc += bp.K[std::size_t(r)][a][s] * bp.K[std::size_t(s)][r][m];
          acc -= bp.K[std::size_t(r)][r][s] * bp.K[std::size_t(s)][a][m];
        }
      }
      bp.J[std::size_t(m)][a] = acc;
    }

  for (int m = 0; m < 4; ++m)
    for (int a = 0; a < 4; ++a) {
      const double jma = bp.J[std::size_t(m)][a].value();
      const double jam = bp.J[std::size_t(a)][m].value();
      bp.ricci_vs_J =
          std::max(bp.ricci_vs_J,
                   std::abs(cb.ricci[std::size_t(m)][a].value() -
                            0.5 * (jma + jam)));
      bp.J_asym = std::max(bp.J_asym, std::abs(jma - jam));
    }
  return bp;
}

ConstraintLastPoint constraint_last_at(const MetricData<Jet>& md,
                                       const CurvatureBundle& cb,
                                       const JetPoint& X,
                                       const Matrix4<Jet>& T) {
  const BimetricPoint bp = bimetric_at(md, cb);
  const MvJ A = oneform_of_vector(md, X);

  // flat-lowered counterpart: Acheck_k = eta_{b k} g^{b s} A_s
  std::array<double, 4> a_cov{};
  for (int mu = 0; mu < 4; ++mu)
    a_cov[std::size_t(mu)] = A.c[std::size_t{1} << mu].value();
  std::array<double, 4> a_check{};
  for (int k = 0; k < 4; ++k) {
    double up = 0.0;
    for (int s = 0; s < 4; ++s)
      up += md.ginv[std::size_t(k)][s].value() * a_cov[std::size_t(s)];
    a_check[std::size_t(k)] = kEta[std::size_t(k)] * up;
  }

  // scalar prefactors
  double trJ_flat = 0.0;   // eta^{ab} J_{ba}
  double trJ_curved = 0.0; // g^{ma} J_{(ma)}
  for (int m = 0; m < 4; ++m) {
    trJ_flat += kEta[std::size_t(m)] * bp.J[std::size_t(m)][m].value();
    for (int a = 0; a < 4; ++a)
      trJ_curved += md.ginv[std::size_t(m)][a].value() * 0.5 *
                    (bp.J[std::size_t(m)][a].value() +
                     bp.J[std::size_t(a)][m].value());
  }

  // right side: (1/2) g^{ma} J_{(ma)} A_k + T^s_k A_s
  const MvJ tA = tensor_action(T, md, A);
  std::array<double, 4> rhs{};
  for (int k = 0; k < 4; ++k)
    rhs[std::size_t(k)] = 0.5 * trJ_curved * a_cov[std::size_t(k)] +
                          tA.c[std::size_t{1} << k].value();

  // curvature action of A (the operator the constraint descends from)
  const DalembertSplit split = dalembert_split(A, md, cb);

  ConstraintLastPoint out;
  for (int k = 0; k < 4; ++k) {
    // literal scalar reading of the left side
    const double lhs_scalar = trJ_flat * a_check[std::size_t(k)];
    // frame-contraction reading subtracts the mixed J action on Acheck
    double j_act = 0.0;
    for (int s = 0; s < 4; ++s)
      j_act += bp.J[std::size_t(k)][s].value() * kEta[std::size_t(s)] *
               a_check[std::size_t(s)];
    const double lhs_operator = lhs_scalar - j_act;
    const double curv_act =
        split.ricci_part.c[std::size_t{1} << k].value();

    out.scalar_gap =
        std::max(out.scalar_gap, std::abs(lhs_scalar - rhs[std::size_t(k)]));
    out.operator_gap = std::max(
        out.operator_gap, std::abs(lhs_operator - rhs[std::size_t(k)]));
    out.identity_gap =
        std::max(out.identity_gap, std::abs(curv_act - lhs_operator));
  }
  return out;
}

}  // namespace kmns
