#pragma once

#include <Eigen/Core>

#include <array>
#include <bit>

#include "gralg/jet.hpp"
#include "gralg/types.hpp"

namespace gralg {

// Basis blades of the cotangent Clifford algebra, stored in canonical
// order: scalar, the four 1-forms, then higher grades lexicographically.
// Internally a blade is a 4-bit mask (bit mu set means gamma^mu present).
inline constexpr std::array<int, 16> kBladeMask = {
    0b0000,                                  // 1
    0b0001, 0b0010, 0b0100, 0b1000,          // g0 g1 g2 g3
    0b0011, 0b0101, 0b1001, 0b0110, 0b1010,  // g01 g02 g03 g12 g13
    0b1100,                                  // g23
    0b0111, 0b1011, 0b1101, 0b1110,          // g012 g013 g023 g123
    0b1111,                                  // g0123
};

inline constexpr std::array<int, 16> make_index_of_mask() {
  std::array<int, 16> t{};
  for (int i = 0; i < 16; ++i) t[kBladeMask[i]] = i;
  return t;
}
inline constexpr std::array<int, 16> kIndexOfMask = make_index_of_mask();

inline int blade_grade(int mask) { return std::popcount(static_cast<unsigned>(mask)); }

// Sign of sorting the concatenation of two ascending index lists.
inline int blade_reorder_sign(int a, int b) {
  int inv = 0;
  for (int i = 1; i < 4; ++i)
    if (a & (1 << i)) inv += std::popcount(static_cast<unsigned>(b & ((1 << i) - 1)));
  return (inv & 1) ? -1 : 1;
}

template <typename S>
struct Multivector {
  Eigen::Matrix<S, 16, 1> c;

  Multivector() : c(Eigen::Matrix<S, 16, 1>::Zero()) {}

  S& operator[](int i) { return c[i]; }
  const S& operator[](int i) const { return c[i]; }

  S& blade(int mask) { return c[kIndexOfMask[mask]]; }
  const S& blade(int mask) const { return c[kIndexOfMask[mask]]; }

  Multivector& operator+=(const Multivector& b) {
    c += b.c;
    return *this;
  }
  Multivector& operator-=(const Multivector& b) {
    c -= b.c;
    return *this;
  }
};

template <typename S>
Multivector<S> operator+(Multivector<S> a, const Multivector<S>& b) {
  return a += b;
}
template <typename S>
Multivector<S> operator-(Multivector<S> a, const Multivector<S>& b) {
  return a -= b;
}
template <typename S>
Multivector<S> operator-(const Multivector<S>& a) {
  Multivector<S> r;
  r.c = -a.c;
  return r;
}
template <typename S, typename K>
Multivector<S> operator*(const K& s, const Multivector<S>& a) {
  Multivector<S> r;
  for (int i = 0; i < 16; ++i) r.c[i] = s * a.c[i];
  return r;
}

template <typename S>
Multivector<S> scalar_mv(const S& s) {
  Multivector<S> r;
  r.c[0] = s;
  return r;
}

template <typename S>
Multivector<S> basis_one_form(int mu) {
  Multivector<S> r;
  r.c[1 + mu] = S(1.0);
  return r;
}

template <typename S>
Multivector<S> basis_blade_mv(int mask) {
  Multivector<S> r;
  r.blade(mask) = S(1.0);
  return r;
}

// Metric data on the cotangent fibre: gamma^mu . gamma^nu = g^{mu nu}.
template <typename S>
struct CotangentMetric {
  Mat4<S> lower, upper;
  S det, sqrt_minus_g;

  static CotangentMetric from_lower(const Mat4<S>& gl) {
    CotangentMetric m;
    m.lower = gl;
    m.det = det4(gl);
    if (!(value_of(m.det) < 0.0)) throw DomainError("metric determinant is not negative");
    m.upper = inverse4(gl, m.det);
    m.sqrt_minus_g = sqrt(-m.det);
    return m;
  }
};

template <typename S>
Multivector<S> lowered_basis_one_form(const CotangentMetric<S>& m, int mu) {
  Multivector<S> r;
  for (int nu = 0; nu < 4; ++nu) r.c[1 + nu] = m.lower(mu, nu);
  return r;
}

template <typename S>
Multivector<S> grade(const Multivector<S>& a, int k) {
  if (k < 0 || k > 4) throw DomainError("grade index outside 0..4");
  Multivector<S> r;
  for (int i = 0; i < 16; ++i)
    if (blade_grade(kBladeMask[i]) == k) r.c[i] = a.c[i];
  return r;
}

template <typename S>
Multivector<S> reverse(const Multivector<S>& a) {
  Multivector<S> r;
  for (int i = 0; i < 16; ++i) {
    int k = blade_grade(kBladeMask[i]);
    r.c[i] = ((k * (k - 1) / 2) & 1) ? -a.c[i] : a.c[i];
  }
  return r;
}

template <typename S>
Multivector<S> grade_involution(const Multivector<S>& a) {
  Multivector<S> r;
  for (int i = 0; i < 16; ++i) r.c[i] = (blade_grade(kBladeMask[i]) & 1) ? -a.c[i] : a.c[i];
  return r;
}

template <typename S>
Multivector<S> wedge(const Multivector<S>& a, const Multivector<S>& b) {
  Multivector<S> r;
  for (int i = 0; i < 16; ++i) {
    int ma = kBladeMask[i];
    for (int j = 0; j < 16; ++j) {
      int mb = kBladeMask[j];
      if (ma & mb) continue;
      int sign = blade_reorder_sign(ma, mb);
      S term = a.c[i] * b.c[j];
      r.blade(ma | mb) += (sign < 0) ? S(-term) : term;
    }
  }
  return r;
}

// gamma^mu left-contracted into a basis blade, with metric contractions.
template <typename S>
void contract_vector_into_blade(const CotangentMetric<S>& m, int mu, int mask, const S& coeff,
                                Multivector<S>& out) {
  int pos = 0;
  for (int j = 0; j < 4; ++j) {
    if (!(mask & (1 << j))) continue;
    S term = coeff * m.upper(mu, j);
    out.blade(mask & ~(1 << j)) += (pos & 1) ? S(-term) : term;
    ++pos;
  }
}

template <typename S>
Multivector<S> clifford_product(const CotangentMetric<S>& m, const Multivector<S>& a,
                                const Multivector<S>& b);

namespace detail {

// gamma^mu B = gamma^mu _| B + gamma^mu ^ B.
template <typename S>
Multivector<S> gp_vector(const CotangentMetric<S>& m, int mu, const Multivector<S>& b) {
  Multivector<S> r;
  for (int j = 0; j < 16; ++j) {
    int mb = kBladeMask[j];
    contract_vector_into_blade(m, mu, mb, b.c[j], r);
    if (!(mb & (1 << mu))) {
      int sign = blade_reorder_sign(1 << mu, mb);
      r.blade(mb | (1 << mu)) += (sign < 0) ? S(-b.c[j]) : b.c[j];
    }
  }
  return r;
}

// Peels the lowest basis vector off a blade:
// gamma^{i} ^ R = gamma^{i} R - gamma^{i} _| R, hence
// blade * B = gamma^{i} (R * B) - (gamma^{i} _| R) * B.
template <typename S>
Multivector<S> gp_blade(const CotangentMetric<S>& m, int mask, const Multivector<S>& b) {
  if (mask == 0) return b;
  int i = std::countr_zero(static_cast<unsigned>(mask));
  int rest = mask & ~(1 << i);
  Multivector<S> r = gp_vector(m, i, gp_blade(m, rest, b));
  Multivector<S> hook;
  contract_vector_into_blade(m, i, rest, S(1.0), hook);
  r -= clifford_product(m, hook, b);
  return r;
}

}  // namespace detail

template <typename S>
Multivector<S> clifford_product(const CotangentMetric<S>& m, const Multivector<S>& a,
                                const Multivector<S>& b) {
  Multivector<S> r;
  for (int i = 0; i < 16; ++i) {
    Multivector<S> part = detail::gp_blade(m, kBladeMask[i], b);
    r += a.c[i] * part;
  }
  return r;
}

// A_r _| B_s = <A_r B_s>_{s-r} for r <= s, extended bilinearly.
template <typename S>
Multivector<S> contract_left(const CotangentMetric<S>& m, const Multivector<S>& a,
                             const Multivector<S>& b) {
  Multivector<S> r;
  for (int ra = 0; ra <= 4; ++ra)
    for (int sb = ra; sb <= 4; ++sb)
      r += grade(clifford_product(m, grade(a, ra), grade(b, sb)), sb - ra);
  return r;
}

template <typename S>
Multivector<S> contract_right(const CotangentMetric<S>& m, const Multivector<S>& a,
                              const Multivector<S>& b) {
  Multivector<S> r;
  for (int ra = 0; ra <= 4; ++ra)
    for (int sb = 0; sb <= ra; ++sb)
      r += grade(clifford_product(m, grade(a, ra), grade(b, sb)), ra - sb);
  return r;
}

// A . B = sum_r <reverse(A_r) B_r>_0; the Gram-determinant scalar product.
template <typename S>
S scalar_product(const CotangentMetric<S>& m, const Multivector<S>& a, const Multivector<S>& b) {
  return clifford_product(m, reverse(a), b).c[0];
}

template <typename S>
Multivector<S> volume_form(const CotangentMetric<S>& m) {
  Multivector<S> r;
  r.c[15] = m.sqrt_minus_g;
  return r;
}

// star A = reverse(A) _| tau_g; for blades against the top form the
// clifford product is already the contraction.
template <typename S>
Multivector<S> hodge(const CotangentMetric<S>& m, const Multivector<S>& a) {
  return clifford_product(m, reverse(a), volume_form(m));
}

// Inverse Hodge from star^{-1} = (-1)^{r(n-r)} sgn(det g) star on images
// of r-forms; here n = 4 and sgn(det g) = -1.
template <typename S>
Multivector<S> hodge_inverse(const CotangentMetric<S>& m, const Multivector<S>& a) {
  Multivector<S> r;
  Multivector<S> h = hodge(m, a);
  for (int i = 0; i < 16; ++i) {
    int s = blade_grade(kBladeMask[i]);
    int rr = 4 - s;
    double f = ((rr * s) & 1) ? 1.0 : -1.0;
    r.c[i] = f * h.c[i];
  }
  return r;
}

// Components t^mu of a 1-form t recovered from its dual 3-form star(t)
// via t^mu = (star t) . (star gamma^mu).
template <typename S>
Vec4<S> one_form_components_from_dual(const CotangentMetric<S>& m, const Multivector<S>& star_t) {
  Vec4<S> r;
  for (int mu = 0; mu < 4; ++mu)
    r[mu] = scalar_product(m, star_t, hodge(m, basis_one_form<S>(mu)));
  return r;
}

}  // namespace gralg
