#pragma once

// Truncated multivariate Taylor arithmetic in the four chart coordinates.
//
// A Jet carries the value and all partial derivatives of a scalar quantity up
// to total order `ord` (at most 3), stored as Taylor coefficients
// t_gamma = d^gamma f / gamma!. All field evaluation in the engine runs on
// this type, so first/second/third derivatives of any closed-form expression
// are exact to roundoff; nothing is ever finite-differenced outside the test
// oracles. Derived fields obtained by differentiating (exterior derivative,
// codifferential, ...) lose one available order per application, which the
// callers track.

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace kmns {

inline constexpr int kJetMaxOrder = 3;
inline constexpr int kJetCoeffs = 35;  // monomials of degree <= 3 in 4 vars

namespace detail {

struct JetTables {
  // exponent tuple of each monomial, ordered by total degree then lex
  std::array<std::array<int, 4>, kJetCoeffs> exps{};
  std::array<int, kJetCoeffs> degree{};
  // product triples (target, a, b) sorted by target degree, with prefix
  // boundaries per degree so multiplication can truncate at runtime order
  struct Triple {
    std::int16_t c, a, b;
  };
  std::array<Triple, 560> triples{};
  int triple_count = 0;
  std::array<int, kJetMaxOrder + 2> triples_upto{};  // index bound per degree
  // deriv[i][mu]: index of exps[i]+e_mu (or -1 past order 3) and the factor
  std::array<std::array<int, 4>, kJetCoeffs> didx{};
  std::array<std::array<double, 4>, kJetCoeffs> dfac{};
  // first index of each degree block
  std::array<int, kJetMaxOrder + 2> deg_start{};

  JetTables();
};

const JetTables& jet_tables();

}  // namespace detail

class Jet {
 public:
  Jet() = default;

  // implicit: plain numbers act as constants of full order, so templated
  // kernels can mix double literals with jets
  Jet(double v) { c_[0] = v; }

  static Jet constant(double v, int order = kJetMaxOrder) {
    Jet j;
    j.ord_ = order;
    j.c_[0] = v;
    return j;
  }

  // seed coordinate `dim` with value v: f = v + x_dim
  static Jet variable(double v, int dim, int order) {
    Jet j;
    j.ord_ = order;
    j.c_[0] = v;
    if (order >= 1) j.c_[1 + dim] = 1.0;
    return j;
  }

  int order() const { return ord_; }
  double value() const { return c_[0]; }
  double d1(int i) const;
  double d2(int i, int j) const;
  double d3(int i, int j, int k) const;

  double coeff(int idx) const { return c_[idx]; }
  double& coeff(int idx) { return c_[idx]; }

  // partial derivative as a jet one order lower
  Jet deriv(int mu) const;

  Jet operator-() const;
  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator+=(double v) {
    c_[0] += v;
    return *this;
  }
  Jet& operator-=(double v) {
    c_[0] -= v;
    return *this;
  }
  Jet& operator*=(double v);
  Jet& operator/=(double v) { return (*this) *= (1.0 / v); }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator+(Jet a, double b) { return a += b; }
  friend Jet operator-(Jet a, double b) { return a -= b; }
  friend Jet operator+(double a, Jet b) { return b += a; }
  friend Jet operator-(double a, const Jet& b) { return (-b) + a; }
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator*(Jet a, double b) { return a *= b; }
  friend Jet operator*(double a, Jet b) { return b *= a; }
  friend Jet operator/(const Jet& a, const Jet& b);
  friend Jet operator/(Jet a, double b) { return a /= b; }
  friend Jet operator/(double a, const Jet& b);

  // univariate composition: f with derivatives f0..f3 at this->value()
  Jet compose(double f0, double f1, double f2, double f3) const;

 private:
  std::array<double, kJetCoeffs> c_{};
  int ord_ = kJetMaxOrder;
};

Jet inv(const Jet& a);
Jet sqrt(const Jet& a);
Jet sin(const Jet& a);
Jet cos(const Jet& a);
Jet exp(const Jet& a);
Jet log(const Jet& a);
Jet atan(const Jet& a);
Jet acos(const Jet& a);
Jet atan2(const Jet& y, const Jet& x);
Jet pow_int(const Jet& a, int n);  // n >= 0

}  // namespace kmns
