#pragma once

#include <Eigen/Core>

#include <cmath>
#include <type_traits>

namespace gralg {

// Forward-mode derivative scalar: value plus N partial derivatives.
// Nesting Jet<Jet<double>> yields second derivatives.  All operations
// compute the value slot with the same sequence of base operations at
// every nesting depth, so the outer level of a depth-2 evaluation matches
// a depth-1 evaluation bit for bit.
template <typename T, int N = 4>
struct Jet {
  using Partials = Eigen::Matrix<T, N, 1>;

  T value;
  Partials partials;

  Jet() : value(0.0), partials(Partials::Zero()) {}
  Jet(double v) : value(v), partials(Partials::Zero()) {}
  template <typename U = T, typename = std::enable_if_t<!std::is_same_v<U, double>>>
  Jet(const T& v) : value(v), partials(Partials::Zero()) {}
  Jet(const T& v, const Partials& p) : value(v), partials(p) {}

  static Jet variable(const T& v, int slot) {
    Jet j{v, Partials::Zero()};
    j.partials[slot] = T(1.0);
    return j;
  }

  Jet& operator+=(const Jet& b) { return *this = *this + b; }
  Jet& operator-=(const Jet& b) { return *this = *this - b; }
  Jet& operator*=(const Jet& b) { return *this = *this * b; }
  Jet& operator/=(const Jet& b) { return *this = *this / b; }
};

using Jet1 = Jet<double, 4>;
using Jet2 = Jet<Jet1, 4>;

inline double value_of(double x) { return x; }
template <typename T, int N>
double value_of(const Jet<T, N>& j) {
  return value_of(j.value);
}

template <typename T, int N>
Jet<T, N> operator-(const Jet<T, N>& a) {
  return {-a.value, (-a.partials).eval()};
}

template <typename T, int N>
Jet<T, N> operator+(const Jet<T, N>& a, const Jet<T, N>& b) {
  return {a.value + b.value, (a.partials + b.partials).eval()};
}

template <typename T, int N>
Jet<T, N> operator-(const Jet<T, N>& a, const Jet<T, N>& b) {
  return {a.value - b.value, (a.partials - b.partials).eval()};
}

template <typename T, int N>
Jet<T, N> operator*(const Jet<T, N>& a, const Jet<T, N>& b) {
  return {a.value * b.value, (a.partials * b.value + b.partials * a.value).eval()};
}

template <typename T, int N>
Jet<T, N> operator/(const Jet<T, N>& a, const Jet<T, N>& b) {
  T inv = T(1.0) / b.value;
  T v = a.value * inv;
  return {v, ((a.partials - b.partials * v) * inv).eval()};
}

template <typename T, int N>
Jet<T, N> operator+(const Jet<T, N>& a, double s) {
  return {a.value + T(s), a.partials};
}
template <typename T, int N>
Jet<T, N> operator+(double s, const Jet<T, N>& a) {
  return a + s;
}
template <typename T, int N>
Jet<T, N> operator-(const Jet<T, N>& a, double s) {
  return {a.value - T(s), a.partials};
}
template <typename T, int N>
Jet<T, N> operator-(double s, const Jet<T, N>& a) {
  return {T(s) - a.value, (-a.partials).eval()};
}
template <typename T, int N>
Jet<T, N> operator*(const Jet<T, N>& a, double s) {
  return {a.value * T(s), (a.partials * T(s)).eval()};
}
template <typename T, int N>
Jet<T, N> operator*(double s, const Jet<T, N>& a) {
  return a * s;
}
template <typename T, int N>
Jet<T, N> operator/(const Jet<T, N>& a, double s) {
  return a * (1.0 / s);
}
template <typename T, int N>
Jet<T, N> operator/(double s, const Jet<T, N>& a) {
  return Jet<T, N>(s) / a;
}

template <typename T, int N>
bool operator==(const Jet<T, N>& a, const Jet<T, N>& b) {
  return value_of(a) == value_of(b);
}
template <typename T, int N>
bool operator<(const Jet<T, N>& a, const Jet<T, N>& b) {
  return value_of(a) < value_of(b);
}
template <typename T, int N>
bool operator>(const Jet<T, N>& a, const Jet<T, N>& b) {
  return value_of(a) > value_of(b);
}

template <typename T, int N>
Jet<T, N> sqrt(const Jet<T, N>& a) {
  using std::sqrt;
  T s = sqrt(a.value);
  T d = T(0.5) / s;
  return {s, (a.partials * d).eval()};
}

template <typename T, int N>
Jet<T, N> sin(const Jet<T, N>& a) {
  using std::cos;
  using std::sin;
  return {sin(a.value), (a.partials * cos(a.value)).eval()};
}

template <typename T, int N>
Jet<T, N> cos(const Jet<T, N>& a) {
  using std::cos;
  using std::sin;
  return {cos(a.value), (a.partials * (-sin(a.value))).eval()};
}

template <typename T, int N>
Jet<T, N> tan(const Jet<T, N>& a) {
  using std::cos;
  using std::tan;
  T c = cos(a.value);
  T d = T(1.0) / (c * c);
  return {tan(a.value), (a.partials * d).eval()};
}

template <typename T, int N>
Jet<T, N> exp(const Jet<T, N>& a) {
  using std::exp;
  T e = exp(a.value);
  return {e, (a.partials * e).eval()};
}

template <typename T, int N>
Jet<T, N> log(const Jet<T, N>& a) {
  using std::log;
  T d = T(1.0) / a.value;
  return {log(a.value), (a.partials * d).eval()};
}

template <typename T, int N>
Jet<T, N> abs(const Jet<T, N>& a) {
  return value_of(a) < 0.0 ? -a : a;
}

// Integer powers by repeated multiplication; exact and domain-free.
template <typename S>
S pow_int(const S& base, int n) {
  if (n < 0) return S(1.0) / pow_int(base, -n);
  S r(1.0);
  S b = base;
  int k = n;
  while (k > 0) {
    if (k & 1) r = r * b;
    b = b * b;
    k >>= 1;
  }
  return r;
}

inline double pow_real(double base, double e) { return std::pow(base, e); }
template <typename T, int N>
Jet<T, N> pow_real(const Jet<T, N>& a, double e) {
  using std::pow;
  T v = pow_real(a.value, e);
  T d = pow_real(a.value, e - 1.0) * T(e);
  return {v, (a.partials * d).eval()};
}

// Seeds the four coordinates as independent jet variables one nesting
// level above S.  Applying it twice builds the depth-2 evaluation.
template <typename S>
Eigen::Matrix<Jet<S, 4>, 4, 1> seed_coordinates(const Eigen::Matrix<S, 4, 1>& x) {
  Eigen::Matrix<Jet<S, 4>, 4, 1> seeded;
  for (int i = 0; i < 4; ++i) seeded[i] = Jet<S, 4>::variable(x[i], i);
  return seeded;
}

}  // namespace gralg

namespace Eigen {

template <typename T, int N>
struct NumTraits<gralg::Jet<T, N>> {
  using Self = gralg::Jet<T, N>;
  using Real = Self;
  using NonInteger = Self;
  using Nested = Self;
  using Literal = Self;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1 + N,
    AddCost = 1 + N,
    MulCost = 3 * (1 + N),
  };
  static Self epsilon() { return Self(NumTraits<double>::epsilon()); }
  static Self dummy_precision() { return Self(NumTraits<double>::dummy_precision()); }
  static Self highest() { return Self(NumTraits<double>::highest()); }
  static Self lowest() { return Self(NumTraits<double>::lowest()); }
  static int digits10() { return NumTraits<double>::digits10(); }
  static int max_digits10() { return NumTraits<double>::max_digits10(); }
};

}  // namespace Eigen
