#include "kmns/jet.hpp"

namespace kmns {
namespace detail {

JetTables::JetTables() {
  int idx = 0;
  int lookup[4][4][4][4];
  for (auto& a : lookup)
    for (auto& b : a)
      for (auto& c : b)
        for (auto& d : c) d = -1;

  for (int deg = 0; deg <= kJetMaxOrder; ++deg) {
    deg_start[deg] = idx;
    for (int e0 = deg; e0 >= 0; --e0)
      for (int e1 = deg - e0; e1 >= 0; --e1)
        for (int e2 = deg - e0 - e1; e2 >= 0; --e2) {
          const int e3 = deg - e0 - e1 - e2;
          exps[idx] = {e0, e1, e2, e3};
          degree[idx] = deg;
          lookup[e0][e1][e2][e3] = idx;
          ++idx;
        }
  }
  deg_start[kJetMaxOrder + 1] = idx;

  // product triples grouped by target degree
  int t = 0;
  for (int cd = 0; cd <= kJetMaxOrder; ++cd) {
    for (int a = 0; a < kJetCoeffs; ++a)
      for (int b = 0; b < kJetCoeffs; ++b) {
        if (degree[a] + degree[b] != cd) continue;
        const int s0 = exps[a][0] + exps[b][0], s1 = exps[a][1] + exps[b][1],
                  s2 = exps[a][2] + exps[b][2], s3 = exps[a][3] + exps[b][3];
        triples[t++] = {static_cast<std::int16_t>(lookup[s0][s1][s2][s3]),
                        static_cast<std::int16_t>(a),
                        static_cast<std::int16_t>(b)};
      }
    triples_upto[cd] = t;
  }
  triple_count = t;
  triples_upto[kJetMaxOrder + 1] = t;

  for (int i = 0; i < kJetCoeffs; ++i)
    for (int mu = 0; mu < 4; ++mu) {
      auto e = exps[i];
      e[mu] += 1;
      if (e[0] + e[1] + e[2] + e[3] > kJetMaxOrder) {
        didx[i][mu] = -1;
        dfac[i][mu] = 0.0;
      } else {
        didx[i][mu] = lookup[e[0]][e[1]][e[2]][e[3]];
        dfac[i][mu] = static_cast<double>(e[mu]);
      }
    }
}

const JetTables& jet_tables() {
  static const JetTables tables;
  return tables;
}

}  // namespace detail

double Jet::d1(int i) const { return c_[1 + i]; }

double Jet::d2(int i, int j) const {
  const auto& T = detail::jet_tables();
  for (int idx = T.deg_start[2]; idx < T.deg_start[3]; ++idx) {
    auto e = T.exps[idx];
    e[i] -= 1;
    e[j] -= 1;
    if (e[0] == 0 && e[1] == 0 && e[2] == 0 && e[3] == 0)
      return c_[idx] * (i == j ? 2.0 : 1.0);
  }
  return 0.0;
}

double Jet::d3(int i, int j, int k) const {
  const auto& T = detail::jet_tables();
  for (int idx = T.deg_start[3]; idx < T.deg_start[4]; ++idx) {
    auto e = T.exps[idx];
    e[i] -= 1;
    e[j] -= 1;
    e[k] -= 1;
    if (e[0] == 0 && e[1] == 0 && e[2] == 0 && e[3] == 0) {
      // gamma! for the multi-index of this monomial
      double fact = 1.0;
      for (int m = 0; m < 4; ++m)
        fact *= (T.exps[idx][m] == 3 ? 6.0 : (T.exps[idx][m] == 2 ? 2.0 : 1.0));
      return c_[idx] * fact;
    }
  }
  return 0.0;
}

Jet Jet::deriv(int mu) const {
  const auto& T = detail::jet_tables();
  Jet r;
  r.ord_ = ord_ - 1;
  if (r.ord_ < 0) throw std::logic_error("jet derivative below order 0");
  for (int i = 0; i < T.deg_start[r.ord_ + 1]; ++i) {
    const int src = T.didx[i][mu];
    if (src >= 0) r.c_[i] = c_[src] * T.dfac[i][mu];
  }
  return r;
}

Jet Jet::operator-() const {
  Jet r = *this;
  for (auto& v : r.c_) v = -v;
  return r;
}

Jet& Jet::operator+=(const Jet& o) {
  if (o.ord_ < ord_) ord_ = o.ord_;
  for (int i = 0; i < kJetCoeffs; ++i) c_[i] += o.c_[i];
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  if (o.ord_ < ord_) ord_ = o.ord_;
  for (int i = 0; i < kJetCoeffs; ++i) c_[i] -= o.c_[i];
  return *this;
}

Jet& Jet::operator*=(double v) {
  for (auto& x : c_) x *= v;
  return *this;
}

Jet operator*(const Jet& a, const Jet& b) {
  const auto& T = detail::jet_tables();
  Jet r;
  r.ord_ = a.ord_ < b.ord_ ? a.ord_ : b.ord_;
  const int bound = T.triples_upto[r.ord_];
  for (int t = 0; t < bound; ++t) {
    const auto& tr = T.triples[t];
    r.c_[tr.c] += a.c_[tr.a] * b.c_[tr.b];
  }
  return r;
}

Jet Jet::compose(double f0, double f1, double f2, double f3) const {
  Jet h = *this;
  h.c_[0] = 0.0;  // nilpotent part
  Jet r = Jet::constant(f3 / 6.0, ord_);
  r = r * h + Jet::constant(f2 / 2.0, ord_);
  r = r * h + Jet::constant(f1, ord_);
  r = r * h + Jet::constant(f0, ord_);
  return r;
}

Jet inv(const Jet& a) {
  const double u = a.value();
  if (u == 0.0) throw std::domain_error("jet inverse of zero value");
  const double iu = 1.0 / u;
  return a.compose(iu, -iu * iu, 2.0 * iu * iu * iu, -6.0 * iu * iu * iu * iu);
}

Jet operator/(const Jet& a, const Jet& b) { return a * inv(b); }
Jet operator/(double a, const Jet& b) { return inv(b) * a; }

Jet sqrt(const Jet& a) {
  const double u = a.value();
  if (u <= 0.0) throw std::domain_error("jet sqrt of non-positive value");
  const double s = std::sqrt(u);
  return a.compose(s, 0.5 / s, -0.25 / (s * u), 0.375 / (s * u * u));
}

Jet sin(const Jet& a) {
  const double s = std::sin(a.value()), c = std::cos(a.value());
  return a.compose(s, c, -s, -c);
}

Jet cos(const Jet& a) {
  const double s = std::sin(a.value()), c = std::cos(a.value());
  return a.compose(c, -s, -c, s);
}

Jet exp(const Jet& a) {
  const double e = std::exp(a.value());
  return a.compose(e, e, e, e);
}

Jet log(const Jet& a) {
  const double u = a.value();
  if (u <= 0.0) throw std::domain_error("jet log of non-positive value");
  return a.compose(std::log(u), 1.0 / u, -1.0 / (u * u), 2.0 / (u * u * u));
}

Jet atan(const Jet& a) {
  const double u = a.value();
  const double d = 1.0 + u * u;
  return a.compose(std::atan(u), 1.0 / d, -2.0 * u / (d * d),
                   (6.0 * u * u - 2.0) / (d * d * d));
}

Jet acos(const Jet& a) {
  const double u = a.value();
  const double w = 1.0 - u * u;
  if (w <= 0.0) throw std::domain_error("jet acos at |u| >= 1");
  const double rw = std::sqrt(w);
  return a.compose(std::acos(u), -1.0 / rw, -u / (rw * w),
                   -(1.0 + 2.0 * u * u) / (rw * w * w));
}

Jet atan2(const Jet& y, const Jet& x) {
  // branch constants do not affect derivatives
  const double xv = x.value(), yv = y.value();
  if (xv == 0.0 && yv == 0.0) throw std::domain_error("jet atan2 at origin");
  if (std::abs(xv) >= std::abs(yv)) {
    Jet r = atan(y / x);
    const double shift = std::atan2(yv, xv) - std::atan(yv / xv);
    return r + shift;
  }
  Jet r = -atan(x / y);
  const double shift = std::atan2(yv, xv) + std::atan(xv / yv);
  return r + shift;
}

Jet pow_int(const Jet& a, int n) {
  if (n < 0) throw std::domain_error("pow_int expects n >= 0");
  Jet r = Jet::constant(1.0, a.order());
  Jet base = a;
  while (n > 0) {
    if (n & 1) r = r * base;
    base = base * base;
    n >>= 1;
  }
  return r;
}

}  // namespace kmns
