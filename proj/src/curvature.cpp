#include "kmns/curvature.hpp"

#include <cmath>

namespace kmns {

CurvatureBundle curvature_at(const MetricData<Jet>& md) {
  CurvatureBundle cb;

  std::array<Matrix4<Jet>, 4> dg;  // dg[l][m][n] = d_l g_{mn}
  for (int l = 0; l < 4; ++l)
    for (int m = 0; m < 4; ++m)
      for (int n = 0; n < 4; ++n) dg[l][m][n] = md.g[m][n].deriv(l);

  for (int r = 0; r < 4; ++r)
    for (int m = 0; m < 4; ++m)
      for (int n = m; n < 4; ++n) {
        Jet s;
        for (int l = 0; l < 4; ++l)
          s += md.ginv[r][l] * (dg[m][l][n] + dg[n][l][m] - dg[l][m][n]);
        s = 0.5 * s;
        cb.gamma[r][m][n] = s;
        cb.gamma[r][n][m] = s;
      }

  for (int r = 0; r < 4; ++r)
    for (int sg = 0; sg < 4; ++sg)
      for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n) {
          Jet s = cb.gamma[r][n][sg].deriv(m) - cb.gamma[r][m][sg].deriv(n);
          for (int l = 0; l < 4; ++l)
            s += cb.gamma[r][m][l] * cb.gamma[l][n][sg] -
                 cb.gamma[r][n][l] * cb.gamma[l][m][sg];
          cb.riemann[r][sg][m][n] = s;
        }

  for (int sg = 0; sg < 4; ++sg)
    for (int n = 0; n < 4; ++n) {
      Jet s;
      for (int r = 0; r < 4; ++r) s += cb.riemann[r][sg][n][r];
      cb.ricci[sg][n] = s;
    }

  Jet sc;
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) sc += md.ginv[m][n] * cb.ricci[m][n];
  cb.scalar = sc;

  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n)
      cb.einstein[m][n] = cb.ricci[m][n] - 0.5 * cb.scalar * md.g[m][n];

  return cb;
}

Jet kretschmann(const CurvatureBundle& cb, const MetricData<Jet>& md) {
  // lower the first slot, raise the last three, contract fully
  std::array<std::array<Matrix4<Jet>, 4>, 4> low;  // R_{a s m n}
  for (int a = 0; a < 4; ++a)
    for (int sg = 0; sg < 4; ++sg)
      for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n) {
          Jet s;
          for (int r = 0; r < 4; ++r)
            s += md.g[a][r] * cb.riemann[r][sg][m][n];
          low[a][sg][m][n] = s;
        }
  // raise one slot at a time
  auto up = low;
  for (int slot = 0; slot < 4; ++slot) {
    auto next = up;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        for (int c = 0; c < 4; ++c)
          for (int d = 0; d < 4; ++d) {
            Jet s;
            for (int p = 0; p < 4; ++p) {
              const int idx[4] = {a, b, c, d};
              int j[4] = {a, b, c, d};
              j[slot] = p;
              s += md.ginv[idx[slot]][p] * up[j[0]][j[1]][j[2]][j[3]];
            }
            next[a][b][c][d] = s;
          }
    up = next;
  }
  Jet total;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) total += low[a][b][c][d] * up[a][b][c][d];
  return total;
}

double einstein_residual(const CurvatureBundle& cb, const Matrix4<Jet>& T) {
  double worst = 0.0;
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n)
      worst = std::max(worst,
                       std::abs(cb.einstein[m][n].value() - T[m][n].value()));
  return worst;
}

std::array<double, 4> bianchi_contracted(const CurvatureBundle& cb,
                                         const MetricData<Jet>& md) {
  Matrix4<Jet> mixed;  // G^m_n
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) {
      Jet s;
      for (int r = 0; r < 4; ++r) s += md.ginv[m][r] * cb.einstein[r][n];
      mixed[m][n] = s;
    }
  std::array<double, 4> out{};
  for (int n = 0; n < 4; ++n) {
    Jet s;
    for (int m = 0; m < 4; ++m) {
      s += mixed[m][n].deriv(m);
      for (int l = 0; l < 4; ++l)
        s += cb.gamma[m][m][l] * mixed[l][n] - cb.gamma[l][m][n] * mixed[m][l];
    }
    out[n] = s.value();
  }
  return out;
}

}  // namespace kmns
