#pragma once

// Differential-operator zoo on jet-valued multivector fields: exterior
// derivative, codifferential, Dirac operator and its two second-order
// decompositions, and the Lie derivative of the metric.
//
// Operators act pointwise on already-evaluated jets; each derivative layer
// consumes one jet order, so callers evaluate inputs at (requested + depth).

#include <functional>

#include "kmns/curvature.hpp"
#include "kmns/geometry.hpp"
#include "kmns/jet.hpp"
#include "kmns/multivector.hpp"

namespace kmns {

// A multivector field: evaluator over seeded coordinates plus the set of
// grades it promises to populate (bit r set = grade r allowed).
struct FormField {
  std::function<MvJ(const JetPoint&)> eval;
  unsigned grades = 0x1F;

  MvJ at(const JetPoint& x) const { return eval(x); }
};

// d: grade r -> r+1, metric-free; output jets one order lower.
MvJ ext_d(const MvJ& w);

// codifferential, per input grade r: (-1)^r star^{-1} d star; r -> r-1.
MvJ codiff(const MvJ& w, const MetricData<Jet>& md);

// Dirac operator d - codiff; mixes grades by +-1.
MvJ dirac(const MvJ& w, const MetricData<Jet>& md);

// Second-order split on 1-forms:
//   square     = -(d codiff + codiff d) w   (full operator square)
//   ricci_part = w_mu R^mu, the curvature action, computed extensorially
//                from the Ricci tensor: (ricci_part)_nu = w_mu g^{mu a} R_{a nu}
//   box        = square - ricci_part        (covariant wave operator)
struct DalembertSplit {
  MvJ square;
  MvJ ricci_part;
  MvJ box;
};
DalembertSplit dalembert_split(const MvJ& w, const MetricData<Jet>& md,
                               const CurvatureBundle& cb);

// (Lie_X g)_{mu nu} = X^rho d_rho g_{mu nu} + g_{rho nu} d_mu X^rho
//                   + g_{mu rho} d_nu X^rho
Matrix4<Jet> lie_derivative_metric(const MetricData<Jet>& md,
                                   const JetPoint& X);

}  // namespace kmns
