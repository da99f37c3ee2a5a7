#pragma once

// Two-metric machinery on the canonical Cartesian chart, where the flat
// metric is eta = diag(+,-,-,-) with vanishing flat connection: nonmetricity
// of the curved connection relative to eta, the strain tensor built from it,
// the curvature reconstruction J from the strain, and the pointwise algebraic
// constraint linking J, the potential, and the stress tensor.

#include <array>

#include "kmns/curvature.hpp"
#include "kmns/geometry.hpp"
#include "kmns/multivector.hpp"

namespace kmns {

struct BimetricPoint {
  // Q[alpha][beta][sigma] = (D_sigma eta)_{alpha beta}
  std::array<Matrix4<Jet>, 4> Q{};
  // S[rho][alpha][beta]: strain; K = -S/2
  std::array<Matrix4<Jet>, 4> S{};
  std::array<Matrix4<Jet>, 4> K{};
  Matrix4<Jet> J{};               // curvature reconstruction from K
  double strain_vs_connection = 0.0;  // max |S/2 - Gamma|
  double ricci_vs_J = 0.0;            // max |Ricci - sym(J)|
  double J_asym = 0.0;                // max |J - J^T|
};

BimetricPoint bimetric_at(const MetricData<Jet>& md, const CurvatureBundle& cb);

// Pointwise two-side evaluation of the algebraic constraint
//   (eta^{ab} J_{ba}) Acheck_k  =  (1/2) g^{ma} J_{(ma)} A_k + T^s_k A_s
// with Acheck_k = eta_{bk} g^{bs} A_s, under two readings of the contracted
// left side, plus the gap of the operator identity the constraint descends
// from (curvature action of A vs the flat-frame expression).
struct ConstraintLastPoint {
  double scalar_gap = 0.0;    // literal scalar-prefactor reading
  double operator_gap = 0.0;  // frame-contraction reading
  double identity_gap = 0.0;  // curvature action vs frame expression
};
ConstraintLastPoint constraint_last_at(const MetricData<Jet>& md,
                                       const CurvatureBundle& cb,
                                       const JetPoint& X,
                                       const Matrix4<Jet>& T);

}  // namespace kmns
