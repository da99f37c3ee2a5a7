#pragma once

// Clifford algebra of differential forms over a 4-dimensional chart.
//
// A Multivector stores 16 blade coefficients indexed by bitmask: bit i set
// means the coordinate 1-form dx^i participates, with factors ordered by
// ascending index (so mask 0b0110 is dx^1 ^ dx^2).  The metric enters every
// product through the contravariant components g^{mu nu}, which define the
// pairing  <dx^mu, dx^nu> = g^{mu nu}  of coordinate 1-forms.
//
// All kernels are templated over the scalar type so the same code runs on
// plain doubles (point evaluation) and on truncated Taylor jets (exact
// derivative propagation).

#include <array>
#include <bit>
#include <cmath>
#include <cstdlib>

#include "kmns/errors.hpp"
#include "kmns/jet.hpp"

namespace kmns {

inline constexpr int kBlades = 16;

template <typename S>
using Matrix4 = std::array<std::array<S, 4>, 4>;

// Everything the pointwise algebra needs to know about the metric.
template <typename S>
struct MetricData {
  Matrix4<S> g{};       // covariant components g_{mu nu}
  Matrix4<S> ginv{};    // contravariant components g^{mu nu}
  S sqrt_abs_det{};     // sqrt(|det g|), the volume density
  double det_sign = -1.0;  // sign of det g (-1 for one-plus-three signature)
};

template <typename S>
struct Multivector {
  std::array<S, kBlades> c{};

  static Multivector scalar(const S& v) {
    Multivector m;
    m.c[0] = v;
    return m;
  }
  static Multivector blade(int mask, const S& v) {
    Multivector m;
    m.c[mask] = v;
    return m;
  }

  Multivector& operator+=(const Multivector& o) {
    for (int b = 0; b < kBlades; ++b) c[b] += o.c[b];
    return *this;
  }
  Multivector& operator-=(const Multivector& o) {
    for (int b = 0; b < kBlades; ++b) c[b] -= o.c[b];
    return *this;
  }
  Multivector& operator*=(const S& s) {
    for (int b = 0; b < kBlades; ++b) c[b] = c[b] * s;
    return *this;
  }
  Multivector& operator*=(double s)
    requires(!std::is_same_v<S, double>)
  {
    for (int b = 0; b < kBlades; ++b) c[b] = c[b] * s;
    return *this;
  }
  friend Multivector operator+(Multivector a, const Multivector& b) {
    return a += b;
  }
  friend Multivector operator-(Multivector a, const Multivector& b) {
    return a -= b;
  }
  friend Multivector operator*(Multivector a, const S& s) { return a *= s; }
  friend Multivector operator*(const S& s, Multivector a) { return a *= s; }
  Multivector operator-() const {
    Multivector m = *this;
    for (int b = 0; b < kBlades; ++b) m.c[b] = -m.c[b];
    return m;
  }
};

using Mv = Multivector<double>;
using MvJ = Multivector<Jet>;

inline int blade_grade(int mask) { return std::popcount(unsigned(mask)); }

// Sign of blade(a) ^ blade(b) relative to blade(a|b); 0 when they overlap.
inline int wedge_sign(int a, int b) {
  if (a & b) return 0;
  int swaps = 0;
  for (int j = 0; j < 4; ++j)
    if (b & (1 << j)) swaps += std::popcount(unsigned(a) >> (j + 1));
  return (swaps & 1) ? -1 : 1;
}

// Position of index k among the set bits of mask (0-based).
inline int bit_position(int k, int mask) {
  return std::popcount(unsigned(mask) & ((1u << k) - 1));
}

// ---------------------------------------------------------------------------
// metric-free exterior product

template <typename S>
Multivector<S> wedge(const Multivector<S>& A, const Multivector<S>& B) {
  Multivector<S> out;
  for (int a = 0; a < kBlades; ++a)
    for (int b = 0; b < kBlades; ++b) {
      const int s = wedge_sign(a, b);
      if (s == 0) continue;
      if (s > 0)
        out.c[a | b] += A.c[a] * B.c[b];
      else
        out.c[a | b] -= A.c[a] * B.c[b];
    }
  return out;
}

// ---------------------------------------------------------------------------
// building blocks for the geometric product

// dx^i ^ B
template <typename S>
Multivector<S> onef_wedge(int i, const Multivector<S>& B) {
  Multivector<S> out;
  const int bi = 1 << i;
  for (int m = 0; m < kBlades; ++m) {
    const int s = wedge_sign(bi, m);
    if (s == 0) continue;
    if (s > 0)
      out.c[bi | m] += B.c[m];
    else
      out.c[bi | m] -= B.c[m];
  }
  return out;
}

// dx^i _| B  (left contraction of a coordinate 1-form, graded Leibniz rule)
template <typename S>
Multivector<S> onef_contract(int i, const Multivector<S>& B,
                             const Matrix4<S>& ginv) {
  Multivector<S> out;
  for (int m = 0; m < kBlades; ++m)
    for (int k = 0; k < 4; ++k) {
      if (!(m & (1 << k))) continue;
      const int sign = (bit_position(k, m) & 1) ? -1 : 1;
      const S term = ginv[i][k] * B.c[m];
      if (sign > 0)
        out.c[m & ~(1 << k)] += term;
      else
        out.c[m & ~(1 << k)] -= term;
    }
  return out;
}

// blade(mask) . B, by peeling the lowest-index factor:
//   blade = dx^i ^ R  =  dx^i . R - dx^i _| R
// so blade . B = dx^i . (R . B) - (dx^i _| R) . B, and for a bare 1-form
//   dx^i . B = dx^i _| B + dx^i ^ B.  The contraction dx^i _| R is expanded
// blade by blade so every recursive call strictly shrinks the left mask.
template <typename S>
Multivector<S> blade_gprod(int mask, const Multivector<S>& B,
                           const Matrix4<S>& ginv) {
  if (mask == 0) return B;
  const int i = std::countr_zero(unsigned(mask));
  const int rest = mask & (mask - 1);
  if (rest == 0) return onef_contract(i, B, ginv) + onef_wedge(i, B);
  const Multivector<S> RB = blade_gprod(rest, B, ginv);
  Multivector<S> out = onef_contract(i, RB, ginv) + onef_wedge(i, RB);
  for (int k = 0; k < 4; ++k) {
    if (!(rest & (1 << k))) continue;
    const int sgn = (bit_position(k, rest) & 1) ? -1 : 1;
    const Multivector<S> sub = blade_gprod(rest & ~(1 << k), B, ginv);
    for (int b = 0; b < kBlades; ++b) {
      const S term = ginv[i][k] * sub.c[b];
      if (sgn > 0)
        out.c[b] -= term;
      else
        out.c[b] += term;
    }
  }
  return out;
}

template <typename S>
Multivector<S> gprod(const Multivector<S>& A, const Multivector<S>& B,
                     const Matrix4<S>& ginv) {
  Multivector<S> out;
  for (int a = 0; a < kBlades; ++a) {
    const Multivector<S> part = blade_gprod(a, B, ginv);
    for (int b = 0; b < kBlades; ++b) out.c[b] += A.c[a] * part.c[b];
  }
  return out;
}

template <typename S>
Multivector<S> gprod(const Multivector<S>& A, const Multivector<S>& B,
                     const MetricData<S>& md) {
  return gprod(A, B, md.ginv);
}

// ---------------------------------------------------------------------------
// grade bookkeeping

template <typename S>
Multivector<S> grade_part(const Multivector<S>& A, int r) {
  Multivector<S> out;
  for (int b = 0; b < kBlades; ++b)
    if (blade_grade(b) == r) out.c[b] = A.c[b];
  return out;
}

// reversal: (-1)^{r(r-1)/2} per grade-r part
template <typename S>
Multivector<S> reverse(const Multivector<S>& A) {
  Multivector<S> out = A;
  for (int b = 0; b < kBlades; ++b) {
    const int r = blade_grade(b);
    if (((r * (r - 1) / 2) & 1) != 0) out.c[b] = -out.c[b];
  }
  return out;
}

// Left contraction of general multivectors through grade projection:
//   <A>_r _| <B>_s := < <A>_r . <B>_s >_{s-r}   (zero when r > s)
template <typename S>
Multivector<S> contract_left(const Multivector<S>& A, const Multivector<S>& B,
                             const Matrix4<S>& ginv) {
  Multivector<S> out;
  for (int r = 0; r <= 4; ++r)
    for (int s = r; s <= 4; ++s) {
      const Multivector<S> p =
          gprod(grade_part(A, r), grade_part(B, s), ginv);
      out += grade_part(p, s - r);
    }
  return out;
}

// ---------------------------------------------------------------------------
// Hodge duality

// Oriented unit volume form: sqrt(|det g|) dx^0^dx^1^dx^2^dx^3.
template <typename S>
Multivector<S> volume_form(const MetricData<S>& md) {
  Multivector<S> tau;
  tau.c[kBlades - 1] = md.sqrt_abs_det;
  return tau;
}

// Hodge star:  *C = reverse(C) . tau  (geometric product with the volume
// form), applied to all grades at once.
template <typename S>
Multivector<S> hodge(const Multivector<S>& A, const MetricData<S>& md) {
  return gprod(reverse(A), volume_form(md), md.ginv);
}

// Inverse star, per input grade s:  (-1)^{s(4-s)} sign(det g) * star.
template <typename S>
Multivector<S> hodge_inv(const Multivector<S>& A, const MetricData<S>& md) {
  Multivector<S> scaled;
  for (int b = 0; b < kBlades; ++b) {
    const int s = blade_grade(b);
    double f = md.det_sign;
    if ((s * (4 - s)) & 1) f = -f;
    scaled.c[b] = A.c[b] * f;
  }
  return hodge(scaled, md);
}

// ---------------------------------------------------------------------------
// scalar-type bridges and norms

inline Mv value_of(const MvJ& A) {
  Mv out;
  for (int b = 0; b < kBlades; ++b) out.c[b] = A.c[b].value();
  return out;
}

inline MvJ promote(const Mv& A, int order = kJetMaxOrder) {
  MvJ out;
  for (int b = 0; b < kBlades; ++b) out.c[b] = Jet::constant(A.c[b], order);
  return out;
}

// Residual magnitude of a form: largest blade coefficient in absolute value.
inline double mv_norm(const Mv& A) {
  double n = 0.0;
  for (int b = 0; b < kBlades; ++b) n = std::max(n, std::abs(A.c[b]));
  return n;
}
inline double mv_norm(const MvJ& A) { return mv_norm(value_of(A)); }

// ---------------------------------------------------------------------------
// 4x4 matrix helpers shared by the metric plumbing (closed-form cofactor
// inverse so the same code runs on jets)

namespace detail {

template <typename S>
S det3(const S& a, const S& b, const S& c, const S& d, const S& e, const S& f,
       const S& g, const S& h, const S& i) {
  return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g);
}

}  // namespace detail

template <typename S>
S det4(const Matrix4<S>& m) {
  S det{};
  for (int col = 0; col < 4; ++col) {
    std::array<S, 9> sub;
    int w = 0;
    for (int r = 1; r < 4; ++r)
      for (int cc = 0; cc < 4; ++cc)
        if (cc != col) sub[w++] = m[r][cc];
    const S minor = detail::det3(sub[0], sub[1], sub[2], sub[3], sub[4],
                                 sub[5], sub[6], sub[7], sub[8]);
    const S term = m[0][col] * minor;
    if (col & 1)
      det -= term;
    else
      det += term;
  }
  return det;
}

template <typename S>
Matrix4<S> inverse4(const Matrix4<S>& m, const S& det) {
  Matrix4<S> inv;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      std::array<S, 9> sub;
      int w = 0;
      for (int i = 0; i < 4; ++i) {
        if (i == r) continue;
        for (int j = 0; j < 4; ++j) {
          if (j == c) continue;
          sub[w++] = m[i][j];
        }
      }
      S minor = detail::det3(sub[0], sub[1], sub[2], sub[3], sub[4], sub[5],
                             sub[6], sub[7], sub[8]);
      if ((r + c) & 1) minor = -minor;
      inv[c][r] = minor / det;  // adjugate transpose
    }
  return inv;
}

// Assemble MetricData from covariant components; no validation (jets cannot
// be compared), so the double-valued gate below must run first at each point.
template <typename S>
MetricData<S> metric_data_from_g(const Matrix4<S>& g) {
  MetricData<S> md;
  md.g = g;
  const S det = det4(g);
  md.ginv = inverse4(g, det);
  double dv;
  if constexpr (std::is_same_v<S, Jet>)
    dv = det.value();
  else
    dv = det;
  md.det_sign = dv < 0 ? -1.0 : 1.0;
  if constexpr (std::is_same_v<S, Jet>)
    md.sqrt_abs_det = kmns::sqrt(det * md.det_sign);
  else
    md.sqrt_abs_det = std::sqrt(std::abs(det));
  return md;
}

// Validated pointwise metric: symmetry, invertibility, signature.  Throws
// singular_metric_error / signature_error / error on violation.
struct MetricAtPoint {
  MetricData<double> data;
  static MetricAtPoint make(const Matrix4<double>& g);
};

}  // namespace kmns
