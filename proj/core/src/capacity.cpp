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

#include "gausscap/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "gausscap/maximize.hpp"

namespace gausscap {

namespace {

constexpr std::size_t kGrid1d = 2001;
constexpr std::size_t kGrid2d = 256;
constexpr double kLogTol = 1e-13;

// Entropy of a CP-channel output given its determinant; rounding below 1/4
// is clamped.
double h_of_det(double det) { return entropy_h(std::sqrt(std::max(det, 0.25))); }

void expect_class(const CanonicalForm& cf, std::initializer_list<ChannelClass> allowed,
                  std::string_view op) {
  for (auto cls : allowed) {
    if (cf.cls == cls) return;
  }
  throw Error(ErrorCode::class_mismatch,
              std::string(op) + " does not apply to class " + std::string(to_string(cf.cls)));
}

double modulation_total(const EnergyBudget& budget, double s) {
  return std::max(0.0, 2.0 * budget.half_trace_cap() - 0.5 * s - 0.5 / s);
}

Mat2 rotation_to(Vec2 dir) { return Mat2::rotation(std::atan2(dir.p, dir.q)); }

EncodingParams rotated_encoding(const Mat2& frame, double s, SymMat2 m_diag) {
  return {CovarianceMatrix(congruence(frame, SymMat2::diag(0.5 / s, 0.5 * s))),
          congruence(frame, m_diag)};
}

// 1-D maximization over s in log coordinates.
template <class F>
detail::Maximum maximize_over_s(F&& objective, const EnergyBudget& budget, std::size_t points) {
  const auto [lo, hi] = squeeze_interval(budget);
  auto in_log = [&](double u) { return objective(std::exp(u)); };
  detail::Maximum m =
      detail::grid_golden_maximize(in_log, std::log(lo), std::log(hi), points, kLogTol);
  m.x = std::exp(m.x);
  return m;
}

// For fixed s the first determinant is a concave quadratic in m1.
struct ProfilePoint {
  double value;
  double m1;
  double m2;
};

ProfilePoint isotropic_profile(const IsotropicNoiseProblem& p, const EnergyBudget& budget,
                               double s) {
  const double g = p.gain, c = p.noise, r = p.r;
  const double total = modulation_total(budget, s);
  const double a = g * r * 0.5 / s + c;
  const double b = g * 0.5 * s / r + c;
  const double alpha = g * r;
  const double beta = g / r;
  double m1 = (alpha * (b + beta * total) - beta * a) / (2.0 * alpha * beta);
  m1 = std::clamp(m1, 0.0, total);
  const double m2 = total - m1;
  const double outer = (a + alpha * m1) * (b + beta * m2);
  return {h_of_det(outer) - h_of_det(a * b), m1, m2};
}

CapacityBound map_isotropic_witness(const CanonicalForm& cf, const ReducedOptimum& opt) {
  // Effective input map K = S_A^{-1} = R D R'; the signal lives in the frame of R'.
  const EulerFactors k = euler_decompose(cf.S_A.inverse());
  CapacityBound out;
  out.value = opt.value;
  out.regime = opt.regime;
  out.s_opt = opt.s;
  out.witness = rotated_encoding(k.inner.transpose(), opt.s, SymMat2::diag(opt.m1, opt.m2));
  return out;
}

IsotropicNoiseProblem isotropic_problem(const CanonicalForm& cf) {
  const double shifted = cf.nbar + 0.5;
  switch (cf.cls) {
    case ChannelClass::B2:
      return {1.0, cf.nbar, cf.r};
    case ChannelClass::C_att:
    case ChannelClass::C_amp:
      return {cf.tau, std::fabs(1.0 - cf.tau) * shifted, cf.r};
    case ChannelClass::D:
      return {std::fabs(cf.tau), (1.0 + std::fabs(cf.tau)) * shifted, cf.r};
    default:
      throw Error(ErrorCode::class_mismatch, "class has no isotropic-noise form");
  }
}

}  // namespace

std::string_view to_string(Regime regime) noexcept {
  switch (regime) {
    case Regime::analytic: return "analytic";
    case Regime::numeric: return "numeric";
    case Regime::zero: return "zero";
  }
  return "?";
}

EnergyBudget::EnergyBudget(double e) : e_(e) {
  if (!std::isfinite(e) || e < 0.5) {
    std::ostringstream os;
    os.precision(17);
    os << "energy budget must be a finite value >= 1/2, got " << e;
    throw Error(ErrorCode::infeasible_energy, os.str());
  }
}

double holevo_gaussian(const GaussianChannel& ch, const EncodingParams& enc) {
  if (!cp_check(ch)) throw Error(ErrorCode::invalid_channel, cp_violation(ch));
  if (!enc.M.is_psd(tol::cm)) {
    throw Error(ErrorCode::infeasible_encoding, "modulation covariance is not PSD");
  }
  const SymMat2& v = enc.V.matrix();
  const double outer = state_entropy(congruence(ch.T, v + enc.M) + ch.N);
  const double inner = state_entropy(congruence(ch.T, v) + ch.N);
  const double chi = outer - inner;
  if (chi < -tol::opt) {
    std::ostringstream os;
    os.precision(17);
    os << "negative Holevo information " << chi;
    throw Error(ErrorCode::domain, os.str());
  }
  return std::max(chi, 0.0);
}

SqueezeInterval squeeze_interval(const EnergyBudget& budget) {
  const double k = 2.0 * budget.half_trace_cap();  // 2E + 1
  const double hi = k + std::sqrt((k - 1.0) * (k + 1.0));
  return {1.0 / hi, hi};
}

double a2_objective(double t, double nbar, const EnergyBudget& budget, double s) {
  const double c = nbar + 0.5;
  const double k = 2.0 * budget.half_trace_cap();
  const double outer = (t * (k - 0.5 * s) + c) * c;
  const double inner = (t * 0.5 / s + c) * c;
  return h_of_det(outer) - h_of_det(inner);
}

double b1_objective(double n, const EnergyBudget& budget, double s) {
  const double k = 2.0 * budget.half_trace_cap();
  const double q = 0.5 / s;
  const double outer = (q + n) * (k - q);
  const double inner = 0.25 + n * 0.5 * s;
  return h_of_det(outer) - h_of_det(inner);
}

ValidityMargins validity_margins(const IsotropicNoiseProblem& p, const EnergyBudget& budget) {
  const double shift = 0.5 * (p.noise / p.gain) * (p.r - 1.0 / p.r);
  const double base = budget.half_trace_cap();
  return {base + shift - 0.5 / p.r, base - shift - 0.5 * p.r};
}

double isotropic_noise_closed_form(const IsotropicNoiseProblem& p, const EnergyBudget& budget) {
  const double outer =
      p.gain * budget.half_trace_cap() + p.noise * 0.5 * (p.r + 1.0 / p.r);
  return entropy_h(outer) - entropy_h(0.5 * p.gain + p.noise);
}

ReducedOptimum isotropic_noise_numeric(const IsotropicNoiseProblem& p,
                                       const EnergyBudget& budget) {
  auto profile = [&](double s) { return isotropic_profile(p, budget, s).value; };
  const detail::Maximum best = maximize_over_s(profile, budget, kGrid2d);
  const ProfilePoint at = isotropic_profile(p, budget, best.x);
  return {at.value, Regime::numeric, best.x, at.m1, at.m2};
}

ReducedOptimum isotropic_noise_bound(const IsotropicNoiseProblem& p, const EnergyBudget& budget,
                                     const BoundOptions& opts) {
  if (opts.force_numeric) return isotropic_noise_numeric(p, budget);

  const ValidityMargins margin = validity_margins(p, budget);
  const double worst = std::min(margin.plus, margin.minus);
  if (worst < -tol::regime) return isotropic_noise_numeric(p, budget);

  // Closed-form optimum: pure signal diag(1/(2r), r/2) mapped to vacuum.
  const double split = 0.5 * (p.noise / p.gain) * (p.r - 1.0 / p.r);
  const double x = budget.half_trace_cap() + split;
  const double y = budget.half_trace_cap() - split;
  ReducedOptimum analytic{isotropic_noise_closed_form(p, budget), Regime::analytic, p.r,
                          std::max(0.0, x - 0.5 / p.r), std::max(0.0, y - 0.5 * p.r)};
  if (worst > tol::regime) return analytic;

  ReducedOptimum numeric = isotropic_noise_numeric(p, budget);
  if (analytic.value > numeric.value) {
    analytic.regime = Regime::numeric;
    return analytic;
  }
  return numeric;
}

CapacityBound bound_a1(const CanonicalForm& cf) {
  expect_class(cf, {ChannelClass::A1}, "bound_a1");
  return {0.0, Regime::zero, EncodingParams{}, std::nullopt};
}

CapacityBound bound_a2(const CanonicalForm& cf, const EnergyBudget& budget) {
  expect_class(cf, {ChannelClass::A2}, "bound_a2");
  auto objective = [&](double s) { return a2_objective(cf.t, cf.nbar, budget, s); };
  const detail::Maximum best = maximize_over_s(objective, budget, kGrid1d);

  // Transmitted input direction v: T_c S_A^{-1} = sqrt(t) e1 v^T.
  const Mat2 k = cf.S_A.inverse().matrix();
  const Vec2 row{k.a00, k.a01};
  const double s = best.x;
  CapacityBound out;
  out.value = best.value;
  out.regime = Regime::numeric;
  out.s_opt = s;
  out.witness = rotated_encoding(rotation_to(row), s,
                                 SymMat2::diag(modulation_total(budget, s), 0.0));
  return out;
}

CapacityBound bound_b1(const CanonicalForm& cf, const EnergyBudget& budget) {
  expect_class(cf, {ChannelClass::B1}, "bound_b1");
  auto objective = [&](double s) { return b1_objective(cf.n, budget, s); };
  const detail::Maximum best = maximize_over_s(objective, budget, kGrid1d);

  // Effective noise T^{-1} N T^{-T} = n w w^T with w along S_A e1.
  const Mat2& sa = cf.S_A.matrix();
  const double s = best.x;
  CapacityBound out;
  out.value = best.value;
  out.regime = Regime::numeric;
  out.s_opt = s;
  out.witness = rotated_encoding(rotation_to(Vec2{sa.a00, sa.a10}), s,
                                 SymMat2::diag(0.0, modulation_total(budget, s)));
  return out;
}

CapacityBound bound_b2(const CanonicalForm& cf, const EnergyBudget& budget,
                       const BoundOptions& opts) {
  expect_class(cf, {ChannelClass::B2}, "bound_b2");
  return map_isotropic_witness(cf, isotropic_noise_bound(isotropic_problem(cf), budget, opts));
}

CapacityBound bound_c(const CanonicalForm& cf, const EnergyBudget& budget,
                      const BoundOptions& opts) {
  expect_class(cf, {ChannelClass::C_att, ChannelClass::C_amp}, "bound_c");
  return map_isotropic_witness(cf, isotropic_noise_bound(isotropic_problem(cf), budget, opts));
}

CapacityBound bound_d(const CanonicalForm& cf, const EnergyBudget& budget,
                      const BoundOptions& opts) {
  expect_class(cf, {ChannelClass::D}, "bound_d");
  return map_isotropic_witness(cf, isotropic_noise_bound(isotropic_problem(cf), budget, opts));
}

CapacityBound bound(const CanonicalForm& cf, const EnergyBudget& budget,
                    const BoundOptions& opts) {
  switch (cf.cls) {
    case ChannelClass::A1: return bound_a1(cf);
    case ChannelClass::A2: return bound_a2(cf, budget);
    case ChannelClass::B1: return bound_b1(cf, budget);
    case ChannelClass::B2: return bound_b2(cf, budget, opts);
    case ChannelClass::C_att:
    case ChannelClass::C_amp: return bound_c(cf, budget, opts);
    case ChannelClass::D: return bound_d(cf, budget, opts);
  }
  throw Error(ErrorCode::class_mismatch, "unknown channel class");
}

CapacityBound bound(const GaussianChannel& ch, const EnergyBudget& budget,
                    const BoundOptions& opts) {
  return bound(canonical_reduce(ch), budget, opts);
}

double asymptote(const CanonicalForm& cf, const EnergyBudget& budget) {
  const double e = budget.value();
  constexpr double log2e = std::numbers::log2e;
  switch (cf.cls) {
    case ChannelClass::A1:
      return 0.0;
    case ChannelClass::A2:
      throw Error(ErrorCode::unsupported_class, "no high-energy asymptote for class A2");
    case ChannelClass::B1:
      return log2e + std::log2(e);
    case ChannelClass::B2:
      return log2e + std::log2(e) - entropy_h(cf.nbar + 0.5);
    case ChannelClass::C_att:
    case ChannelClass::C_amp:
    case ChannelClass::D: {
      const double tau = std::fabs(cf.tau);
      return log2e + std::log2(tau * e) -
             entropy_h(0.5 * tau + std::fabs(1.0 - cf.tau) * (cf.nbar + 0.5));
    }
  }
  throw Error(ErrorCode::class_mismatch, "unknown channel class");
}

std::string_view asymptote_formula(ChannelClass cls) {
  switch (cls) {
    case ChannelClass::A1: return "0";
    case ChannelClass::A2: return "";
    case ChannelClass::B1: return "log2(e) + log2(E)";
    case ChannelClass::B2: return "log2(e) + log2(E) - h(nbar + 1/2)";
    case ChannelClass::C_att:
    case ChannelClass::C_amp:
    case ChannelClass::D: return "log2(e) + log2(|tau| E) - h[|tau|/2 + |1 - tau| (nbar + 1/2)]";
  }
  return "";
}

}  // namespace gausscap
