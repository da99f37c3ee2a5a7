#pragma once

// Pointwise kernels for the symmetry-generator chain: Killing residual,
// the two gauge/wave lemmas, the wave equation with source coupling, the
// field-strength (two-form) system with its current, and the
// coframe-potential split.  All kernels take jet data already evaluated at
// one point; sampling and report assembly live a layer up.

#include <array>

#include "kmns/calculus.hpp"
#include "kmns/curvature.hpp"
#include "kmns/geometry.hpp"
#include "kmns/multivector.hpp"

namespace kmns {

// A_mu = g_{mu nu} X^nu as a 1-form with jet coefficients
MvJ oneform_of_vector(const MetricData<Jet>& md, const JetPoint& X);

// (T(A))_nu = T^mu_nu A_mu with the first index raised by g
MvJ tensor_action(const Matrix4<Jet>& T, const MetricData<Jet>& md,
                  const MvJ& A);

// max |(Lie_X g)_{mu nu}| at the point
double killing_residual_at(const MetricData<Jet>& md, const JetPoint& X);

// Lemma pair for a Killing 1-form A:
//   lorenz      = |delta A|            (A is divergence-free)
//   wave_ricci  = max |box A - R(A)|   (wave operator equals curvature action)
struct LemmaResiduals {
  double lorenz = 0.0;
  double wave_ricci = 0.0;
};
LemmaResiduals lemma_residuals_at(const MetricData<Jet>& md,
                                  const CurvatureBundle& cb,
                                  const JetPoint& X);

// Wave equation with source coupling:
//   wave    = max |box A - (R/2) A - T(A)|
//   lhe_det = |det(R^mu_nu - (R/2) delta^mu_nu - T^mu_nu)|  (reported;
//             vanishes whenever the field equation holds)
struct WaveResiduals {
  double wave = 0.0;
  double lhe_det = 0.0;
};
WaveResiduals wave_residuals_at(const MetricData<Jet>& md,
                                const CurvatureBundle& cb, const JetPoint& X,
                                const Matrix4<Jet>& T);

// Two-form system F = dA with current J = R A + 2 T(A):
//   dF         = max |d F|                     (closure)
//   deltaF     = max |delta F + J|             (source equation)
//   dirac_eq   = max |dirac F - J|             (combined first-order form)
//   two_route  = max |J - 2 R(A)|              (equivalent on-shell route)
//   J, J_s     = current and its curvature-only part R A, as point values
struct MaxwellResiduals {
  double dF = 0.0;
  double deltaF = 0.0;
  double dirac_eq = 0.0;
  double two_route = 0.0;
  Mv J;
  Mv J_s;
};
MaxwellResiduals maxwell_residuals_at(const MetricData<Jet>& md,
                                      const CurvatureBundle& cb,
                                      const JetPoint& X,
                                      const Matrix4<Jet>& T);

// conservation of the current expressed through the potential:
// |delta delta F| at the point
double current_conservation_at(const MetricData<Jet>& md, const JetPoint& X);

// Coframe-potential split.  coframe rows are e^a_mu (each row a 1-form).
//   ortho    = max |eta_ab e^a_mu e^b_nu - g_{mu nu}|; throws config_error
//              above 1e-8 (the coframe does not encode the metric)
//   gauge    = max_a |delta e^a|; gauge_ok = (gauge <= gauge_tol)
//   residual = max |delta F + 2 (t(A) + T(A))| with
//              t^a = (box) e^a + (R/2) e^a  and  t(A) = A_a t^a - A_a box e^a,
//              computed only when the gauge holds (else left at zero)
struct TeleparallelResiduals {
  double ortho = 0.0;
  double gauge = 0.0;
  bool gauge_ok = false;
  double residual = 0.0;
};
TeleparallelResiduals teleparallel_at(const MetricData<Jet>& md,
                                      const CurvatureBundle& cb,
                                      const JetPoint& X,
                                      const Matrix4<Jet>& T,
                                      const Matrix4<Jet>& coframe,
                                      double gauge_tol);

}  // namespace kmns
