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

#include "gausscap/gaussian.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

namespace gausscap {

namespace {

std::string describe(const SymMat2& m) {
  std::ostringstream os;
  os.precision(17);
  os << "[[" << m.a << ", " << m.c << "], [" << m.c << ", " << m.b << "]]";
  return os.str();
}

}  // namespace

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::domain: return "domain";
    case ErrorCode::invalid_symplectic: return "invalid_symplectic";
    case ErrorCode::degenerate: return "degenerate";
    case ErrorCode::zero_matrix: return "zero_matrix";
    case ErrorCode::invalid_channel: return "invalid_channel";
    case ErrorCode::unreducible: return "unreducible";
    case ErrorCode::class_mismatch: return "class_mismatch";
    case ErrorCode::infeasible_energy: return "infeasible_energy";
    case ErrorCode::infeasible_encoding: return "infeasible_encoding";
    case ErrorCode::unsupported_class: return "unsupported_class";
  }
  return "unknown";
}

Mat2 Mat2::inverse() const {
  const double d = det();
  if (d == 0.0 || !std::isfinite(d)) {
    throw Error(ErrorCode::degenerate, "matrix is singular");
  }
  return {a11 / d, -a01 / d, -a10 / d, a00 / d};
}

SymEigen sym_eigen(const SymMat2& m) {
  const double mean = 0.5 * (m.a + m.b);
  const double half_diff = 0.5 * (m.a - m.b);
  const double radius = std::hypot(half_diff, m.c);
  // atan2(0, 0) == 0 keeps isotropic inputs aligned with the axes.
  return {mean + radius, mean - radius, 0.5 * std::atan2(m.c, half_diff)};
}

CovarianceMatrix::CovarianceMatrix(const SymMat2& m) : m_(m) {
  if (!std::isfinite(m.a) || !std::isfinite(m.b) || !std::isfinite(m.c)) {
    throw Error(ErrorCode::domain, "covariance matrix has non-finite entries");
  }
  if (m.a <= 0.0 || m.det() <= 0.0) {
    throw Error(ErrorCode::domain, "covariance matrix is not positive definite: " + describe(m));
  }
  if (m.det() < 0.25 - tol::cm) {
    throw Error(ErrorCode::domain,
                "covariance matrix violates det(V) >= 1/4: " + describe(m));
  }
}

CovarianceMatrix CovarianceMatrix::squeezed(double s, double angle) {
  if (!(s > 0.0)) throw Error(ErrorCode::domain, "squeezing parameter must be positive");
  const SymMat2 d = SymMat2::diag(0.5 / s, 0.5 * s);
  return CovarianceMatrix(angle == 0.0 ? d : congruence(Mat2::rotation(angle), d));
}

SymplecticMat2::SymplecticMat2(const Mat2& m) : m_(m) {
  const double d = m.det();
  if (!std::isfinite(d) || std::fabs(d - 1.0) > tol::symp) {
    std::ostringstream os;
    os.precision(17);
    os << "matrix is not symplectic: det = " << d;
    throw Error(ErrorCode::invalid_symplectic, os.str());
  }
}

SymplecticMat2 SymplecticMat2::squeezer(double r) {
  if (!(r > 0.0)) throw Error(ErrorCode::domain, "squeeze factor must be positive");
  const double k = std::sqrt(r);
  return SymplecticMat2(Mat2::diag(k, 1.0 / k), Unchecked{});
}

SymplecticMat2 SymplecticMat2::inverse() const {
  return SymplecticMat2(Mat2{m_.a11, -m_.a01, -m_.a10, m_.a00}, Unchecked{});
}

double entropy_h(double x) {
  if (!(x >= 0.5 - tol::cm)) {
    std::ostringstream os;
    os.precision(17);
    os << "entropy_h requires x >= 1/2, got " << x;
    throw Error(ErrorCode::domain, os.str());
  }
  const double y = x - 0.5;
  if (y <= 0.0) return 0.0;
  if (y <= 1e-12) return (x + 0.5) * std::log2(x + 0.5);
  // (x+1/2) log2(x+1/2) - y log2 y rearranged to avoid cancellation at large x.
  return std::log2(x + 0.5) + y * std::log1p(1.0 / y) / std::numbers::ln2;
}

double state_entropy(const SymMat2& m) {
  const double d = m.det();
  if (!(d >= 0.25 - tol::cm)) {
    throw Error(ErrorCode::domain, "state_entropy requires det >= 1/4: " + describe(m));
  }
  return entropy_h(std::sqrt(std::fmax(d, 0.25)));
}

double state_entropy(const CovarianceMatrix& v) { return state_entropy(v.matrix()); }

EulerFactors euler_decompose(const SymplecticMat2& sym) {
  const Mat2& s = sym.matrix();
  // Closed-form 2x2 SVD; det > 0 keeps both factors proper rotations.
  const double e = 0.5 * (s.a00 + s.a11);
  const double f = 0.5 * (s.a00 - s.a11);
  const double g = 0.5 * (s.a10 + s.a01);
  const double h = 0.5 * (s.a10 - s.a01);
  const double q = std::hypot(e, h);
  const double rr = std::hypot(f, g);
  const double a1 = std::atan2(g, f);
  const double a2 = std::atan2(h, e);
  const double sigma = q + rr;

  EulerFactors out;
  out.outer = Mat2::rotation(0.5 * (a2 + a1));
  out.inner = Mat2::rotation(0.5 * (a2 - a1));
  out.r = sigma * sigma;
  return out;
}

WilliamsonForm williamson_1mode(const SymMat2& n) {
  const double d = n.det();
  if (!(d > tol::rank) || n.a <= 0.0) {
    throw Error(ErrorCode::degenerate,
                "williamson_1mode requires a positive-definite matrix: " + describe(n));
  }
  const double nu = std::sqrt(d);
  const SymEigen eig = sym_eigen((1.0 / nu) * n);
  // Normalized spectrum is (lam, 1/lam); recompute the small one from det = 1.
  const double k = std::sqrt(eig.hi);
  const Mat2 s = Mat2::rotation(eig.angle) * Mat2::diag(k, 1.0 / k);
  return {SymplecticMat2(s), nu};
}

RankOneForm rank_one_reduce(const SymMat2& n) {
  if (n.max_abs() <= tol::rank) {
    throw Error(ErrorCode::zero_matrix, "rank_one_reduce requires a nonzero matrix");
  }
  if (n.det() > tol::rank || !n.is_psd()) {
    throw Error(ErrorCode::degenerate,
                "rank_one_reduce requires a rank-one PSD matrix: " + describe(n));
  }
  const SymEigen eig = sym_eigen(n);
  const double lam = eig.hi;
  const double k = std::sqrt(lam);
  const Mat2 s = Mat2::diag(1.0 / k, k) * Mat2::rotation(-eig.angle);
  return {SymplecticMat2(s), lam};
}

}  // namespace gausscap
