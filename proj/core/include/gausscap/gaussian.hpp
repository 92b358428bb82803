// Copyright 2026 The gausscap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// One-mode moment algebra: 2x2 matrices, Gaussian-state entropy and the
// symplectic decompositions used by the channel reduction.

#include <cmath>

#include "gausscap/error.hpp"

namespace gausscap {

namespace tol {
inline constexpr double cm = 1e-9;     // slack on det(V) >= 1/4
inline constexpr double symp = 1e-9;   // slack on det(S) == 1
inline constexpr double recon = 1e-9;  // decomposition reconstruction
inline constexpr double rank = 1e-12;  // rank decisions on det and norms
}  // namespace tol

struct Vec2 {
  double q = 0.0;
  double p = 0.0;

  friend constexpr Vec2 operator+(Vec2 x, Vec2 y) { return {x.q + y.q, x.p + y.p}; }
  friend constexpr Vec2 operator-(Vec2 x, Vec2 y) { return {x.q - y.q, x.p - y.p}; }
  friend constexpr bool operator==(Vec2, Vec2) = default;
};

/// Row-major real 2x2 matrix [[a00, a01], [a10, a11]].
struct Mat2 {
  double a00 = 0.0, a01 = 0.0, a10 = 0.0, a11 = 0.0;

  static constexpr Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static constexpr Mat2 zero() { return {}; }
  static constexpr Mat2 diag(double x, double y) { return {x, 0.0, 0.0, y}; }
  /// Counter-clockwise rotation by `angle` radians.
  static Mat2 rotation(double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    return {c, -s, s, c};
  }

  [[nodiscard]] constexpr double det() const { return a00 * a11 - a01 * a10; }
  [[nodiscard]] constexpr double trace() const { return a00 + a11; }
  [[nodiscard]] constexpr Mat2 transpose() const { return {a00, a10, a01, a11}; }
  [[nodiscard]] double max_abs() const {
    return std::fmax(std::fmax(std::fabs(a00), std::fabs(a01)),
                     std::fmax(std::fabs(a10), std::fabs(a11)));
  }
  /// Throws ErrorCode::degenerate when the determinant vanishes.
  [[nodiscard]] Mat2 inverse() const;

  [[nodiscard]] constexpr Vec2 operator*(Vec2 v) const {
    return {a00 * v.q + a01 * v.p, a10 * v.q + a11 * v.p};
  }
  friend constexpr Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.a00 * y.a00 + x.a01 * y.a10, x.a00 * y.a01 + x.a01 * y.a11,
            x.a10 * y.a00 + x.a11 * y.a10, x.a10 * y.a01 + x.a11 * y.a11};
  }
  friend constexpr Mat2 operator+(const Mat2& x, const Mat2& y) {
    return {x.a00 + y.a00, x.a01 + y.a01, x.a10 + y.a10, x.a11 + y.a11};
  }
  friend constexpr Mat2 operator-(const Mat2& x, const Mat2& y) {
    return {x.a00 - y.a00, x.a01 - y.a01, x.a10 - y.a10, x.a11 - y.a11};
  }
  friend constexpr Mat2 operator*(double k, const Mat2& x) {
    return {k * x.a00, k * x.a01, k * x.a10, k * x.a11};
  }
  friend constexpr bool operator==(const Mat2&, const Mat2&) = default;
};

/// Symmetric 2x2 matrix [[a, c], [c, b]].
struct SymMat2 {
  double a = 0.0, b = 0.0, c = 0.0;

  static constexpr SymMat2 identity() { return {1.0, 1.0, 0.0}; }
  static constexpr SymMat2 scalar(double k) { return {k, k, 0.0}; }
  static constexpr SymMat2 diag(double x, double y) { return {x, y, 0.0}; }

  [[nodiscard]] constexpr double det() const { return a * b - c * c; }
  [[nodiscard]] constexpr double trace() const { return a + b; }
  [[nodiscard]] constexpr Mat2 mat() const { return {a, c, c, b}; }
  [[nodiscard]] double max_abs() const {
    return std::fmax(std::fmax(std::fabs(a), std::fabs(b)), std::fabs(c));
  }
  /// Positive semidefinite up to `slack` on diagonal entries and determinant.
  [[nodiscard]] bool is_psd(double slack = tol::rank) const {
    return a >= -slack && b >= -slack && det() >= -slack;
  }

  friend constexpr SymMat2 operator+(SymMat2 x, SymMat2 y) {
    return {x.a + y.a, x.b + y.b, x.c + y.c};
  }
  friend constexpr SymMat2 operator-(SymMat2 x, SymMat2 y) {
    return {x.a - y.a, x.b - y.b, x.c - y.c};
  }
  friend constexpr SymMat2 operator*(double k, SymMat2 x) {
    return {k * x.a, k * x.b, k * x.c};
  }
  friend constexpr bool operator==(SymMat2, SymMat2) = default;
};

/// S M S^T, symmetrized.
constexpr SymMat2 congruence(const Mat2& s, const SymMat2& m) {
  const Mat2 sm = s * m.mat();
  const double a = sm.a00 * s.a00 + sm.a01 * s.a01;
  const double b = sm.a10 * s.a10 + sm.a11 * s.a11;
  const double c = 0.5 * ((sm.a00 * s.a10 + sm.a01 * s.a11) +
                          (sm.a10 * s.a00 + sm.a11 * s.a01));
  return {a, b, c};
}

/// Eigen-decomposition of a symmetric 2x2 matrix: m = R(angle) diag(hi, lo) R(angle)^T.
struct SymEigen {
  double hi = 0.0;
  double lo = 0.0;
  double angle = 0.0;
};
SymEigen sym_eigen(const SymMat2& m);

/// Physical covariance matrix: positive definite with det >= 1/4 (within tol::cm).
class CovarianceMatrix {
 public:
  /// Throws ErrorCode::domain when `m` is not a physical covariance matrix.
  explicit CovarianceMatrix(const SymMat2& m);

  static CovarianceMatrix vacuum() { return CovarianceMatrix(SymMat2::scalar(0.5)); }
  /// Pure squeezed state diag(1/(2s), s/2) rotated by `angle`.
  static CovarianceMatrix squeezed(double s, double angle = 0.0);

  [[nodiscard]] const SymMat2& matrix() const noexcept { return m_; }
  [[nodiscard]] double det() const noexcept { return m_.det(); }

 private:
  SymMat2 m_;
};

class SymplecticMat2 {
 public:
  /// Throws ErrorCode::invalid_symplectic when |det m - 1| > tol::symp.
  explicit SymplecticMat2(const Mat2& m);

  static SymplecticMat2 identity() { return SymplecticMat2(Mat2::identity()); }
  /// diag(sqrt(r), 1/sqrt(r)).
  static SymplecticMat2 squeezer(double r);
  static SymplecticMat2 rotation(double angle) { return SymplecticMat2(Mat2::rotation(angle)); }

  [[nodiscard]] const Mat2& matrix() const noexcept { return m_; }
  /// Inverse via the adjugate; exact for det == 1.
  [[nodiscard]] SymplecticMat2 inverse() const;

  friend SymplecticMat2 operator*(const SymplecticMat2& x, const SymplecticMat2& y) {
    return SymplecticMat2(x.m_ * y.m_);
  }

 private:
  struct Unchecked {};
  SymplecticMat2(const Mat2& m, Unchecked) : m_(m) {}
  Mat2 m_;
};

/// h(x) = (x+1/2) log2(x+1/2) - (x-1/2) log2(x-1/2), in bits, for x >= 1/2.
double entropy_h(double x);

/// Von Neumann entropy of a one-mode Gaussian state, h(sqrt(det V)).
double state_entropy(const CovarianceMatrix& v);

/// Entropy of the symmetric matrix `m` treated as a covariance matrix;
/// throws ErrorCode::domain when det(m) < 1/4 - tol::cm.
double state_entropy(const SymMat2& m);

/// S = rotation(outer) * diag(sqrt(r), 1/sqrt(r)) * rotation(inner), r >= 1.
struct EulerFactors {
  Mat2 outer;
  double r = 1.0;
  Mat2 inner;

  [[nodiscard]] Mat2 squeeze() const {
    const double k = std::sqrt(r);
    return Mat2::diag(k, 1.0 / k);
  }
  [[nodiscard]] Mat2 reconstruct() const { return outer * squeeze() * inner; }
};
EulerFactors euler_decompose(const SymplecticMat2& s);

/// N = S (nu I) S^T with nu = sqrt(det N).
struct WilliamsonForm {
  SymplecticMat2 s = SymplecticMat2::identity();
  double nu = 0.0;
};
WilliamsonForm williamson_1mode(const SymMat2& n);

/// S N S^T = diag(1, 0) for a rank-one PSD N; lam is the nonzero eigenvalue.
struct RankOneForm {
  SymplecticMat2 s = SymplecticMat2::identity();
  double lam = 0.0;
};
RankOneForm rank_one_reduce(const SymMat2& n);

}  // namespace gausscap
