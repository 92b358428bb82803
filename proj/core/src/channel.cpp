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

#include "gausscap/channel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

namespace gausscap {

namespace {

constexpr Mat2 kZ = Mat2::diag(1.0, -1.0);

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

double max_abs_diff(const Mat2& x, const Mat2& y) { return (x - y).max_abs(); }
double max_abs_diff(const SymMat2& x, const SymMat2& y) { return (x - y).max_abs(); }

void require_cp(const GaussianChannel& ch) {
  if (!cp_check(ch)) throw Error(ErrorCode::invalid_channel, cp_violation(ch));
}

}  // namespace

std::string_view to_string(ChannelClass cls) noexcept {
  switch (cls) {
    case ChannelClass::A1: return "A1";
    case ChannelClass::A2: return "A2";
    case ChannelClass::B1: return "B1";
    case ChannelClass::B2: return "B2";
    case ChannelClass::C_att: return "C_att";
    case ChannelClass::C_amp: return "C_amp";
    case ChannelClass::D: return "D";
  }
  return "?";
}

std::optional<ChannelClass> parse_channel_class(std::string_view name) noexcept {
  for (auto cls : {ChannelClass::A1, ChannelClass::A2, ChannelClass::B1, ChannelClass::B2,
                   ChannelClass::C_att, ChannelClass::C_amp, ChannelClass::D}) {
    if (to_string(cls) == name) return cls;
  }
  return std::nullopt;
}

std::string cp_violation(const GaussianChannel& ch) {
  if (!ch.N.is_psd()) {
    return "N is not positive semidefinite (diag = " + sci(ch.N.a) + ", " + sci(ch.N.b) +
           ", det = " + sci(ch.N.det()) + ")";
  }
  const double tau = ch.T.det();
  const double rhs = 0.25 * (tau - 1.0) * (tau - 1.0);
  const double lhs = ch.N.det();
  if (lhs < rhs - tol::cp) {
    return "complete positivity violated: det(N) = " + sci(lhs) +
           " < ((det(T) - 1)/2)^2 = " + sci(rhs);
  }
  return {};
}

bool cp_check(const GaussianChannel& ch) {
  if (!ch.N.is_psd()) return false;
  const double tau = ch.T.det();
  return ch.N.det() >= 0.25 * (tau - 1.0) * (tau - 1.0) - tol::cp;
}

Moments apply(const GaussianChannel& ch, Vec2 mean, const CovarianceMatrix& v) {
  require_cp(ch);
  return {ch.T * mean + ch.d, CovarianceMatrix(congruence(ch.T, v.matrix()) + ch.N)};
}

GaussianChannel compose_unitaries(const GaussianChannel& ch, const GaussianUnitary& pre,
                                  const GaussianUnitary& post) {
  require_cp(ch);
  const Mat2& sa = pre.S.matrix();
  const Mat2& sb = post.S.matrix();
  return {sb * (ch.T * pre.f + ch.d) + post.f, sb * ch.T * sa, congruence(sb, ch.N)};
}

ChannelClass classify(const GaussianChannel& ch) {
  require_cp(ch);
  const double tau = ch.T.det();
  if (ch.T.max_abs() <= tol::rank) return ChannelClass::A1;
  if (std::fabs(tau) < tol::rank) return ChannelClass::A2;
  if (std::fabs(tau - 1.0) <= tol::rank) {
    const bool rank_one = ch.N.det() <= tol::rank && ch.N.max_abs() > tol::rank;
    return rank_one ? ChannelClass::B1 : ChannelClass::B2;
  }
  if (tau < 0.0) return ChannelClass::D;
  return tau < 1.0 ? ChannelClass::C_att : ChannelClass::C_amp;
}

ChannelInvariants invariants_of(const GaussianChannel& ch) {
  return {ch.T.det(), ch.N.det()};
}

CanonicalForm canonical_reduce(const GaussianChannel& ch) {
  CanonicalForm cf;
  cf.cls = classify(ch);
  cf.tau = ch.T.det();

  switch (cf.cls) {
    case ChannelClass::A1: {
      const auto w = williamson_1mode(ch.N);
      cf.S_B = w.s.inverse();
      cf.T_c = Mat2::zero();
      cf.N_c = SymMat2::scalar(w.nu);
      cf.nbar = std::max(0.0, w.nu - 0.5);
      break;
    }
    case ChannelClass::A2: {
      const auto w = williamson_1mode(ch.N);
      const Mat2 sb0 = w.s.inverse().matrix();
      // S_B0 T = sigma u v^T; rotate u onto the first axis, then map v to e1
      // and absorb sigma into a squeeze of S_A.
      const Mat2 p = sb0 * ch.T;
      const SymMat2 ptp = congruence(p.transpose(), SymMat2::identity());
      const SymEigen eig = sym_eigen(ptp);
      const double sigma = std::sqrt(std::max(eig.hi, 0.0));
      const Vec2 v{std::cos(eig.angle), std::sin(eig.angle)};
      const Vec2 pv = p * v;
      const Mat2 q = Mat2::rotation(-std::atan2(pv.p, pv.q));
      cf.S_B = SymplecticMat2(q * sb0);
      cf.S_A = SymplecticMat2(Mat2::rotation(eig.angle) * Mat2::diag(1.0 / sigma, sigma));
      cf.T_c = Mat2::diag(1.0, 0.0);
      cf.N_c = SymMat2::scalar(w.nu);
      cf.nbar = std::max(0.0, w.nu - 0.5);
      cf.t = sigma * sigma;
      break;
    }
    case ChannelClass::B1: {
      const auto ro = rank_one_reduce(ch.N);
      cf.S_B = ro.s;
      cf.S_A = SymplecticMat2(ch.T.inverse() * ro.s.inverse().matrix());
      cf.T_c = Mat2::identity();
      cf.N_c = SymMat2::diag(1.0, 0.0);
      cf.n = congruence(cf.S_A.matrix(), cf.N_c).trace();
      break;
    }
    case ChannelClass::B2: {
      double nu = 0.0;
      if (ch.N.max_abs() > tol::rank) {
        const auto w = williamson_1mode(ch.N);
        cf.S_B = w.s.inverse();
        nu = w.nu;
      }
      cf.S_A = SymplecticMat2(ch.T.inverse() * cf.S_B.inverse().matrix());
      cf.T_c = Mat2::identity();
      cf.N_c = SymMat2::scalar(nu);
      cf.nbar = nu;
      break;
    }
    case ChannelClass::C_att:
    case ChannelClass::C_amp:
    case ChannelClass::D: {
      const auto w = williamson_1mode(ch.N);
      const double gain = std::sqrt(std::fabs(cf.tau));
      cf.T_c = cf.cls == ChannelClass::D ? gain * kZ : gain * Mat2::identity();
      cf.S_B = w.s.inverse();
      cf.S_A = SymplecticMat2(ch.T.inverse() * w.s.matrix() * cf.T_c);
      cf.N_c = SymMat2::scalar(w.nu);
      cf.nbar = std::max(0.0, w.nu / std::fabs(1.0 - cf.tau) - 0.5);
      break;
    }
  }

  cf.r = euler_decompose(cf.S_A).r;

  const Mat2& sa = cf.S_A.matrix();
  const Mat2& sb = cf.S_B.matrix();
  cf.residual_T = max_abs_diff(sb * ch.T * sa, cf.T_c);
  cf.residual_N = max_abs_diff(congruence(sb, ch.N), cf.N_c);

  const double scale =
      std::max({1.0, ch.T.max_abs() * sa.max_abs() * sb.max_abs(),
                ch.N.max_abs() * sb.max_abs() * sb.max_abs()});
  if (cf.residual_T > tol::recon * scale || cf.residual_N > tol::recon * scale) {
    throw Error(ErrorCode::unreducible,
                "canonical reduction residual too large: T " + sci(cf.residual_T) + ", N " +
                    sci(cf.residual_N));
  }
  return cf;
}

GaussianChannel canonical_channel(ChannelClass cls, double tau, double nbar) {
  const double shifted = nbar + 0.5;
  switch (cls) {
    case ChannelClass::A1:
      return {{}, Mat2::zero(), SymMat2::scalar(shifted)};
    case ChannelClass::A2:
      return {{}, Mat2::diag(1.0, 0.0), SymMat2::scalar(shifted)};
    case ChannelClass::B1:
      return {{}, Mat2::identity(), SymMat2::diag(1.0, 0.0)};
    case ChannelClass::B2:
      return {{}, Mat2::identity(), SymMat2::scalar(nbar)};
    case ChannelClass::C_att:
    case ChannelClass::C_amp:
      if (!(tau > 0.0) || tau == 1.0) {
        throw Error(ErrorCode::class_mismatch, "class C requires tau in (0,1) or (1,inf)");
      }
      if ((cls == ChannelClass::C_att) != (tau < 1.0)) {
        throw Error(ErrorCode::class_mismatch, "tau does not match attenuator/amplifier tag");
      }
      return {{}, std::sqrt(tau) * Mat2::identity(),
              SymMat2::scalar(std::fabs(1.0 - tau) * shifted)};
    case ChannelClass::D:
      if (!(tau < 0.0)) throw Error(ErrorCode::class_mismatch, "class D requires tau < 0");
      return {{}, std::sqrt(-tau) * kZ, SymMat2::scalar((1.0 - tau) * shifted)};
  }
  throw Error(ErrorCode::class_mismatch, "unknown channel class");
}

GaussianChannel channel_from_parameters(ChannelClass cls, double tau, double nbar,
                                        double residual) {
  GaussianChannel ch = canonical_channel(cls, tau, nbar);
  switch (cls) {
    case ChannelClass::A1:
      break;
    case ChannelClass::A2:
      ch.T = Mat2::diag(std::sqrt(residual), 0.0);
      break;
    case ChannelClass::B1:
      ch.N = SymMat2::diag(residual, 0.0);
      break;
    case ChannelClass::B2:
    case ChannelClass::C_att:
    case ChannelClass::C_amp:
    case ChannelClass::D:
      ch.T = ch.T * SymplecticMat2::squeezer(residual).matrix();
      break;
  }
  return ch;
}

std::vector<std::string> boundary_warnings(const GaussianChannel& ch, double band) {
  std::vector<std::string> out;
  const ChannelClass cls = classify(ch);
  const double tau = ch.T.det();
  const std::string band_text = " (tolerance band " + sci(tol::rank) + ")";
  switch (cls) {
    case ChannelClass::A1:
      if (ch.T.max_abs() != 0.0) {
        out.push_back("|T| = " + sci(ch.T.max_abs()) + " treated as zero" + band_text);
      }
      break;
    case ChannelClass::A2:
      if (tau != 0.0) out.push_back("det(T) = " + sci(tau) + " treated as zero" + band_text);
      if (ch.T.max_abs() <= band) {
        out.push_back("|T| = " + sci(ch.T.max_abs()) + " is near the A1 boundary");
      }
      break;
    case ChannelClass::B1:
    case ChannelClass::B2:
      if (tau != 1.0) {
        out.push_back("det(T) - 1 = " + sci(tau - 1.0) + " treated as zero" + band_text);
      }
      if (cls == ChannelClass::B1 && ch.N.det() != 0.0) {
        out.push_back("det(N) = " + sci(ch.N.det()) + " treated as zero" + band_text);
      }
      if (cls == ChannelClass::B2 && ch.N.max_abs() > tol::rank && ch.N.det() <= band) {
        out.push_back("det(N) = " + sci(ch.N.det()) + " is near the B1 boundary");
      }
      break;
    case ChannelClass::C_att:
    case ChannelClass::C_amp:
    case ChannelClass::D:
      if (std::fabs(tau - 1.0) <= band) {
        out.push_back("det(T) - 1 = " + sci(tau - 1.0) + " is near the B1/B2 boundary");
      }
      if (std::fabs(tau) <= band) {
        out.push_back("det(T) = " + sci(tau) + " is near the A1/A2 boundary");
      }
      break;
  }
  return out;
}

}  // namespace gausscap
