#pragma once

#include <Eigen/Core>

#include <array>
#include <stdexcept>
#include <string>

namespace gralg {

template <typename S>
using Vec4 = Eigen::Matrix<S, 4, 1>;
template <typename S>
using Mat4 = Eigen::Matrix<S, 4, 4>;

using Vec4d = Vec4<double>;
using Mat4d = Mat4<double>;

// Errors are split by exit-code class: parse (2), domain (3), precondition (4).
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EvalError : DomainError {
  Vec4d point;
  EvalError(const std::string& msg, const Vec4d& at) : DomainError(msg), point(at) {}
};

struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Cofactor determinant and adjugate inverse, valid for any scalar with
// field arithmetic (plain doubles or nested jets).
template <typename S>
S det4(const Mat4<S>& m) {
  S s0 = m(0, 0) * m(1, 1) - m(1, 0) * m(0, 1);
  S s1 = m(0, 0) * m(1, 2) - m(1, 0) * m(0, 2);
  S s2 = m(0, 0) * m(1, 3) - m(1, 0) * m(0, 3);
  S s3 = m(0, 1) * m(1, 2) - m(1, 1) * m(0, 2);
  S s4 = m(0, 1) * m(1, 3) - m(1, 1) * m(0, 3);
  S s5 = m(0, 2) * m(1, 3) - m(1, 2) * m(0, 3);

  S c5 = m(2, 2) * m(3, 3) - m(3, 2) * m(2, 3);
  S c4 = m(2, 1) * m(3, 3) - m(3, 1) * m(2, 3);
  S c3 = m(2, 1) * m(3, 2) - m(3, 1) * m(2, 2);
  S c2 = m(2, 0) * m(3, 3) - m(3, 0) * m(2, 3);
  S c1 = m(2, 0) * m(3, 2) - m(3, 0) * m(2, 2);
  S c0 = m(2, 0) * m(3, 1) - m(3, 0) * m(2, 1);

  return s0 * c5 - s1 * c4 + s2 * c3 + s3 * c2 - s4 * c1 + s5 * c0;
}

template <typename S>
Mat4<S> inverse4(const Mat4<S>& m, const S& det) {
  S s0 = m(0, 0) * m(1, 1) - m(1, 0) * m(0, 1);
  S s1 = m(0, 0) * m(1, 2) - m(1, 0) * m(0, 2);
  S s2 = m(0, 0) * m(1, 3) - m(1, 0) * m(0, 3);
  S s3 = m(0, 1) * m(1, 2) - m(1, 1) * m(0, 2);
  S s4 = m(0, 1) * m(1, 3) - m(1, 1) * m(0, 3);
  S s5 = m(0, 2) * m(1, 3) - m(1, 2) * m(0, 3);

  S c5 = m(2, 2) * m(3, 3) - m(3, 2) * m(2, 3);
  S c4 = m(2, 1) * m(3, 3) - m(3, 1) * m(2, 3);
  S c3 = m(2, 1) * m(3, 2) - m(3, 1) * m(2, 2);
  S c2 = m(2, 0) * m(3, 3) - m(3, 0) * m(2, 3);
  S c1 = m(2, 0) * m(3, 2) - m(3, 0) * m(2, 2);
  S c0 = m(2, 0) * m(3, 1) - m(3, 0) * m(2, 1);

  S inv_det = S(1.0) / det;

  Mat4<S> r;
  r(0, 0) = (m(1, 1) * c5 - m(1, 2) * c4 + m(1, 3) * c3) * inv_det;
  r(0, 1) = (-m(0, 1) * c5 + m(0, 2) * c4 - m(0, 3) * c3) * inv_det;
  r(0, 2) = (m(3, 1) * s5 - m(3, 2) * s4 + m(3, 3) * s3) * inv_det;
  r(0, 3) = (-m(2, 1) * s5 + m(2, 2) * s4 - m(2, 3) * s3) * inv_det;

  r(1, 0) = (-m(1, 0) * c5 + m(1, 2) * c2 - m(1, 3) * c1) * inv_det;
  r(1, 1) = (m(0, 0) * c5 - m(0, 2) * c2 + m(0, 3) * c1) * inv_det;
  r(1, 2) = (-m(3, 0) * s5 + m(3, 2) * s2 - m(3, 3) * s1) * inv_det;
  r(1, 3) = (m(2, 0) * s5 - m(2, 2) * s2 + m(2, 3) * s1) * inv_det;

  r(2, 0) = (m(1, 0) * c4 - m(1, 1) * c2 + m(1, 3) * c0) * inv_det;
  r(2, 1) = (-m(0, 0) * c4 + m(0, 1) * c2 - m(0, 3) * c0) * inv_det;
  r(2, 2) = (m(3, 0) * s4 - m(3, 1) * s2 + m(3, 3) * s0) * inv_det;
  r(2, 3) = (-m(2, 0) * s4 + m(2, 1) * s2 - m(2, 3) * s0) * inv_det;

  r(3, 0) = (-m(1, 0) * c3 + m(1, 1) * c1 - m(1, 2) * c0) * inv_det;
  r(3, 1) = (m(0, 0) * c3 - m(0, 1) * c1 + m(0, 2) * c0) * inv_det;
  r(3, 2) = (-m(3, 0) * s3 + m(3, 1) * s1 - m(3, 2) * s0) * inv_det;
  r(3, 3) = (m(2, 0) * s3 - m(2, 1) * s1 + m(2, 2) * s0) * inv_det;
  return r;
}

}  // namespace gralg
