#include "kmns/multivector.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <sstream>

namespace kmns {

MetricAtPoint MetricAtPoint::make(const Matrix4<double>& g) {
  for (int r = 0; r < 4; ++r)
    for (int c = r + 1; c < 4; ++c)
      if (std::abs(g[r][c] - g[c][r]) > 1e-12) {
        std::ostringstream os;
        os << "metric components not symmetric: g[" << r << "][" << c
           << "]=" << g[r][c] << " vs g[" << c << "][" << r
           << "]=" << g[c][r];
        throw error(os.str());
      }

  const double det = det4(g);
  if (std::abs(det) <= 1e-14) {
    std::ostringstream os;
    os << "metric determinant " << det << " below invertibility floor";
    throw singular_metric_error(os.str());
  }

  Eigen::Matrix4d eg;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) eg(r, c) = g[r][c];
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(eg);
  int pos = 0, neg = 0;
  for (int i = 0; i < 4; ++i) {
    const double ev = es.eigenvalues()(i);
    if (ev > 0)
      ++pos;
    else if (ev < 0)
      ++neg;
  }
  if (pos != 1 || neg != 3) {
    std::ostringstream os;
    os << "metric eigenvalues give signature (" << pos << "+," << neg
       << "-); need (1+,3-)";
    throw signature_error(os.str());
  }

  MetricAtPoint mp;
  mp.data = metric_data_from_g(g);

  // round-trip check: g . ginv must be the identity to tight tolerance
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      double s = 0.0;
      for (int k = 0; k < 4; ++k) s += g[r][k] * mp.data.ginv[k][c];
      const double want = (r == c) ? 1.0 : 0.0;
      if (std::abs(s - want) > 1e-12) {
        std::ostringstream os;
        os << "metric inverse failed round-trip at (" << r << "," << c
           << "): " << s;
        throw singular_metric_error(os.str());
      }
    }
  return mp;
}

}  // namespace kmns
