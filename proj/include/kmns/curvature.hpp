#pragma once

// Connection and curvature from jet-valued metric data.  Input metric jets
// of order n yield Christoffel symbols at order n-1, curvature tensors at
// n-2, and the contracted-identity residual at n-3; the jet arithmetic
// tracks those drops automatically.

#include <array>

#include "kmns/jet.hpp"
#include "kmns/multivector.hpp"

namespace kmns {

struct CurvatureBundle {
  // gamma[rho][mu][nu] = Christoffel symbol with upper rho, symmetric lower
  std::array<Matrix4<Jet>, 4> gamma{};
  // riemann[rho][sigma][mu][nu]: upper rho, lower sigma mu nu, built as
  //   d_mu Gamma^rho_{nu sigma} - d_nu Gamma^rho_{mu sigma}
  //   + Gamma^rho_{mu lam} Gamma^lam_{nu sigma}
  //   - Gamma^rho_{nu lam} Gamma^lam_{mu sigma}
  std::array<std::array<Matrix4<Jet>, 4>, 4> riemann{};
  Matrix4<Jet> ricci{};     // R_{sigma nu} = riemann[rho][sigma][nu][rho]
  Jet scalar{};             // g^{mu nu} R_{mu nu}
  Matrix4<Jet> einstein{};  // R_{mu nu} - (R/2) g_{mu nu}
};

CurvatureBundle curvature_at(const MetricData<Jet>& md);

// full quadratic curvature invariant R_{abcd} R^{abcd}
Jet kretschmann(const CurvatureBundle& cb, const MetricData<Jet>& md);

// pointwise max-abs of (field equation) G_{mu nu} - T_{mu nu}
double einstein_residual(const CurvatureBundle& cb, const Matrix4<Jet>& T);

// covariant divergence D_mu G^mu_nu, one value per nu (vanishes identically
// for any metric; a strong internal consistency probe)
std::array<double, 4> bianchi_contracted(const CurvatureBundle& cb,
                                         const MetricData<Jet>& md);

}  // namespace kmns
