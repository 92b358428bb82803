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

// Energy-constrained lower bounds on the classical capacity of one-mode
// Gaussian channels, restricted to Gaussian encodings.
//
// Energy convention: an encoding (V, M) spends (1/2)Tr(V + M) - 1/2 above
// the vacuum, and a budget E admits every encoding with
// (1/2)Tr(V + M) <= E + 1/2. Budgets below 1/2 are rejected.

#include <optional>
#include <string_view>

#include "gausscap/channel.hpp"
#include "gausscap/gaussian.hpp"

namespace gausscap {

namespace tol {
inline constexpr double opt = 1e-9;     // optimizer value tolerance
inline constexpr double regime = 1e-9;  // validity-region boundary band
}  // namespace tol

class EnergyBudget {
 public:
  /// Throws ErrorCode::infeasible_energy for E < 1/2 or non-finite E.
  explicit EnergyBudget(double e);

  [[nodiscard]] double value() const noexcept { return e_; }
  /// Largest admissible (1/2)Tr(V + M).
  [[nodiscard]] double half_trace_cap() const noexcept { return e_ + 0.5; }

 private:
  double e_;
};

/// Signal covariance V and modulation covariance M.
struct EncodingParams {
  CovarianceMatrix V = CovarianceMatrix::vacuum();
  SymMat2 M;

  /// (1/2)Tr(V + M) - 1/2.
  [[nodiscard]] double energy() const noexcept {
    return 0.5 * (V.matrix().trace() + M.trace()) - 0.5;
  }
  [[nodiscard]] bool feasible(const EnergyBudget& budget, double slack = tol::cm) const {
    return M.is_psd(slack) && energy() <= budget.value() + slack;
  }
};

enum class Regime { analytic, numeric, zero };
std::string_view to_string(Regime regime) noexcept;

struct CapacityBound {
  double value = 0.0;  // bits per channel use
  Regime regime = Regime::zero;
  EncodingParams witness;
  std::optional<double> s_opt;  // squeezing of the optimal signal state
};

struct BoundOptions {
  bool force_numeric = false;  // skip the closed form for B2/C/D
};

/// S[T(V+M)T^T + N] - S[T V T^T + N].
double holevo_gaussian(const GaussianChannel& ch, const EncodingParams& enc);

/// Interval [s-, s+] of squeezings diag(1/(2s), s/2) that fit the budget.
struct SqueezeInterval {
  double lo = 1.0;
  double hi = 1.0;
};
SqueezeInterval squeeze_interval(const EnergyBudget& budget);

// Reduced objectives of the rank-deficient classes as functions of s.
double a2_objective(double t, double nbar, const EnergyBudget& budget, double s);
double b1_objective(double n, const EnergyBudget& budget, double s);

/// Isotropic-noise problem max S[g D(V+M)D + c I] - S[g D V D + c I] with
/// D = diag(sqrt(r), 1/sqrt(r)). Classes C (g = tau, c = |1-tau|(nbar+1/2)),
/// B2 (g = 1, c = nbar) and D (g = |tau|, c = (1+|tau|)(nbar+1/2)) reduce to it.
struct IsotropicNoiseProblem {
  double gain = 1.0;
  double noise = 0.0;
  double r = 1.0;
};

/// Both KKT validity inequalities; the closed form holds when both are >= 0.
struct ValidityMargins {
  double plus = 0.0;   // (E+1/2) + (c/g)(r - 1/r)/2 - 1/(2r)
  double minus = 0.0;  // (E+1/2) - (c/g)(r - 1/r)/2 - r/2
};
ValidityMargins validity_margins(const IsotropicNoiseProblem& p, const EnergyBudget& budget);

/// h[g(E+1/2) + c(r + 1/r)/2] - h[g/2 + c], regardless of validity.
double isotropic_noise_closed_form(const IsotropicNoiseProblem& p, const EnergyBudget& budget);

/// Optimum in the diagonal frame of D: V = diag(1/(2s), s/2), M = diag(m1, m2).
struct ReducedOptimum {
  double value = 0.0;
  Regime regime = Regime::analytic;
  double s = 1.0;
  double m1 = 0.0;
  double m2 = 0.0;
};
ReducedOptimum isotropic_noise_bound(const IsotropicNoiseProblem& p, const EnergyBudget& budget,
                                     const BoundOptions& opts = {});
/// Numeric maximization only (log-grid scan over s, closed-form modulation
/// split, golden-section refinement).
ReducedOptimum isotropic_noise_numeric(const IsotropicNoiseProblem& p,
                                       const EnergyBudget& budget);

// Per-class bounds. Each throws ErrorCode::class_mismatch for the wrong class.
// Witnesses are expressed in the input frame of the channel that was reduced.
CapacityBound bound_a1(const CanonicalForm& cf);
CapacityBound bound_a2(const CanonicalForm& cf, const EnergyBudget& budget);
CapacityBound bound_b1(const CanonicalForm& cf, const EnergyBudget& budget);
CapacityBound bound_b2(const CanonicalForm& cf, const EnergyBudget& budget,
                       const BoundOptions& opts = {});
CapacityBound bound_c(const CanonicalForm& cf, const EnergyBudget& budget,
                      const BoundOptions& opts = {});
CapacityBound bound_d(const CanonicalForm& cf, const EnergyBudget& budget,
                      const BoundOptions& opts = {});

/// Reduce, then dispatch on class. Independent of the displacement d.
CapacityBound bound(const GaussianChannel& ch, const EnergyBudget& budget,
                    const BoundOptions& opts = {});
CapacityBound bound(const CanonicalForm& cf, const EnergyBudget& budget,
                    const BoundOptions& opts = {});

/// High-energy limit of the bound; ErrorCode::unsupported_class for A2.
double asymptote(const CanonicalForm& cf, const EnergyBudget& budget);
std::string_view asymptote_formula(ChannelClass cls);

}  // namespace gausscap
