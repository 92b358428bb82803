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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "test_support.hpp"

namespace gausscap {
namespace {

using testing::h_reference;
using testing::kAllClasses;
using testing::uniform;

// Frozen from a 50-digit evaluation of the defining formula of h.
constexpr double kH2 = 2.4273764861366715974951901578017506765;
constexpr double kH5Over4 = 1.7241492380599400519331420971948415336;
constexpr double kH3MinusH3Over2 = 1.0209219899832085063710940365879323906;

CanonicalForm reduce(ChannelClass cls, double tau, double nbar, double residual) {
  return canonical_reduce(channel_from_parameters(cls, tau, nbar, residual));
}

TEST(EnergyBudget, RejectsBelowVacuum) {
  EXPECT_NO_THROW(EnergyBudget(0.5));
  try {
    EnergyBudget(0.4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::infeasible_energy);
  }
  EXPECT_THROW(EnergyBudget(std::nan("")), Error);
}

TEST(SqueezeInterval, MatchesClosedForm) {
  const auto [lo, hi] = squeeze_interval(EnergyBudget(2.0));
  EXPECT_NEAR(hi, 5.0 + std::sqrt(24.0), 1e-13);
  EXPECT_NEAR(lo * hi, 1.0, 1e-15);
  // Both ends exhaust the budget: (1/2)Tr diag(1/(2s), s/2) = E + 1/2.
  EXPECT_NEAR(0.25 * (lo + 1.0 / lo), 2.5, 1e-12);
}

TEST(Holevo, ZeroModulationGivesZero) {
  const EncodingParams enc{CovarianceMatrix(SymMat2{1.0, 2.0, 0.1}), {}};
  EXPECT_EQ(holevo_gaussian(GaussianChannel::identity(), enc), 0.0);
  EXPECT_EQ(holevo_gaussian(canonical_channel(ChannelClass::C_amp, 3.0, 1.0), enc), 0.0);
}

TEST(Holevo, IdentityChannel) {
  const EncodingParams enc{CovarianceMatrix::vacuum(), SymMat2::identity()};
  EXPECT_EQ(holevo_gaussian(GaussianChannel::identity(), enc), 2.0);
}

TEST(Holevo, PureLossAttenuatorMatchesDirectEvaluation) {
  const GaussianChannel att = canonical_channel(ChannelClass::C_att, 0.5, 0.0);
  const EncodingParams enc{CovarianceMatrix::vacuum(), SymMat2::scalar(2.0)};
  // Outputs (1/2)(5/2)I + I/4 = (3/2)I and (1/2)(1/2)I + I/4 = I/2.
  const double ref = static_cast<double>(testing::entropy_reference(1.5, 1.5, 0.0) -
                                         testing::entropy_reference(0.5, 0.5, 0.0));
  EXPECT_NEAR(holevo_gaussian(att, enc), ref, 1e-14);
  EXPECT_NEAR(holevo_gaussian(att, enc), 2.0, 1e-14);
}

TEST(Holevo, RejectsIndefiniteModulation) {
  const EncodingParams enc{CovarianceMatrix::vacuum(), SymMat2::diag(1.0, -1.0)};
  try {
    holevo_gaussian(GaussianChannel::identity(), enc);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::infeasible_encoding);
  }
}

TEST(BoundA1, AlwaysZero) {
  const CanonicalForm cf = reduce(ChannelClass::A1, 0.0, 1.7, 1.0);
  const CapacityBound b = bound_a1(cf);
  EXPECT_EQ(b.value, 0.0);
  EXPECT_EQ(b.regime, Regime::zero);
  for (double e : {0.5, 1.0, 1e6}) EXPECT_EQ(bound(cf, EnergyBudget(e)).value, 0.0);
}

TEST(BoundA1, ClassMismatch) {
  try {
    bound_a1(canonical_reduce(GaussianChannel::identity()));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::class_mismatch);
  }
  EXPECT_THROW(bound_c(reduce(ChannelClass::D, -1.0, 0.0, 1.0), EnergyBudget(1.0)), Error);
  EXPECT_THROW(bound_d(reduce(ChannelClass::C_att, 0.5, 0.0, 1.0), EnergyBudget(1.0)), Error);
  EXPECT_THROW(bound_a2(reduce(ChannelClass::B1, 1.0, 0.0, 1.0), EnergyBudget(1.0)), Error);
  EXPECT_THROW(bound_b1(reduce(ChannelClass::A2, 0.0, 0.0, 1.0), EnergyBudget(1.0)), Error);
  EXPECT_THROW(bound_b2(reduce(ChannelClass::B1, 1.0, 0.0, 1.0), EnergyBudget(1.0)), Error);
}

TEST(BoundA2, MatchesDenseGridOracle) {
  const double e = 2.0;
  const CanonicalForm cf = reduce(ChannelClass::A2, 0.0, 0.0, 1.0);
  const CapacityBound b = bound_a2(cf, EnergyBudget(e));
  const long double ref = testing::reference_max_over_s(
      [&](long double s) { return testing::a2_reference(1.0L, 0.0L, e, s); }, e, 1000000);
  EXPECT_NEAR(b.value, static_cast<double>(ref), 1e-8);
  EXPECT_GE(b.value, static_cast<double>(ref) - 1e-12);
}

TEST(BoundA2, VacuumBudget) {
  const double e = 0.5;
  for (double t : {0.3, 1.0, 2.5}) {
    const CanonicalForm cf = reduce(ChannelClass::A2, 0.0, 0.8, t);
    const long double ref = testing::reference_max_over_s(
        [&](long double s) { return testing::a2_reference(t, 0.8L, e, s); }, e, 1000000);
    EXPECT_NEAR(bound_a2(cf, EnergyBudget(e)).value, static_cast<double>(ref), 1e-8);
  }
}

TEST(BoundA2, InteriorOptimumHasDerivativeSignChange) {
  const EnergyBudget budget(2.0);
  const CanonicalForm cf = reduce(ChannelClass::A2, 0.0, 0.0, 1.0);
  const CapacityBound b = bound_a2(cf, budget);
  ASSERT_TRUE(b.s_opt.has_value());
  const auto [lo, hi] = squeeze_interval(budget);
  const double s = *b.s_opt;
  ASSERT_GT(s, lo);
  ASSERT_LT(s, hi);
  const double d = 1e-4 * s;
  auto f = [&](double x) { return a2_objective(1.0, 0.0, budget, x); };
  EXPECT_GT((f(s - d) - f(s - 2 * d)) / d, 0.0);
  EXPECT_LT((f(s + 2 * d) - f(s + d)) / d, 0.0);
}

TEST(BoundB1, MatchesDenseGridOracle) {
  const double e = 2.0;
  const CanonicalForm cf = reduce(ChannelClass::B1, 1.0, 0.0, 1.0);
  EXPECT_NEAR(cf.n, 1.0, 1e-14);
  const long double ref = testing::reference_max_over_s(
      [&](long double s) { return testing::b1_reference(1.0L, e, s); }, e, 1000000);
  EXPECT_NEAR(bound_b1(cf, EnergyBudget(e)).value, static_cast<double>(ref), 1e-8);
}

TEST(BoundB1, VacuumBudget) {
  const double e = 0.5;
  for (double n : {0.2, 1.0, 4.0}) {
    const CanonicalForm cf = reduce(ChannelClass::B1, 1.0, 0.0, n);
    const long double ref = testing::reference_max_over_s(
        [&](long double s) { return testing::b1_reference(n, e, s); }, e, 1000000);
    EXPECT_NEAR(bound_b1(cf, EnergyBudget(e)).value, static_cast<double>(ref), 1e-8);
  }
}

TEST(BoundB1, VanishingNoiseApproachesIdentityChannel) {
  for (double e : {1.0, 3.0}) {
    const double noiseless = static_cast<double>(h_reference(e + 0.5L));
    double prev_gap = 1e9;
    for (double n : {1e-2, 1e-4, 1e-6}) {
      const double v = bound_b1(reduce(ChannelClass::B1, 1.0, 0.0, n), EnergyBudget(e)).value;
      const double gap = noiseless - v;
      EXPECT_GE(gap, -1e-9);
      EXPECT_LT(gap, prev_gap);
      prev_gap = gap;
    }
    EXPECT_LT(prev_gap, 1e-3);
  }
  double prev = 0.0;
  for (double e : {0.5, 1.0, 2.0, 4.0}) {
    const double v = bound_b1(reduce(ChannelClass::B1, 1.0, 0.0, 1e-6), EnergyBudget(e)).value;
    EXPECT_GT(v, prev);
    prev = v;
  }
}

TEST(BoundC, AnalyticExample) {
  const CapacityBound b = bound_c(reduce(ChannelClass::C_att, 0.5, 0.0, 1.0), EnergyBudget(1.5));
  EXPECT_EQ(b.regime, Regime::analytic);
  EXPECT_NEAR(b.value, kH5Over4, 1e-12);
}

TEST(BoundC, UnitSqueezeAlwaysInsideValidityRegion) {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 200; ++i) {
    const IsotropicNoiseProblem p{uniform(rng, 0.05, 5.0), uniform(rng, 0.0, 5.0), 1.0};
    const double e = uniform(rng, 0.5, 100.0);
    const ValidityMargins m = validity_margins(p, EnergyBudget(e));
    EXPECT_NEAR(m.plus, e, 1e-12 * e);
    EXPECT_NEAR(m.minus, e, 1e-12 * e);
  }
}

TEST(BoundC, NumericRegimeOutsideValidityRegion) {
  const CanonicalForm cf = reduce(ChannelClass::C_att, 0.5, 2.0, 4.0);
  const EnergyBudget budget(0.6);
  const ValidityMargins m = validity_margins({0.5, 0.5 * 2.5, 4.0}, budget);
  EXPECT_LT(std::min(m.plus, m.minus), 0.0);
  const CapacityBound b = bound_c(cf, budget);
  EXPECT_EQ(b.regime, Regime::numeric);
  // Closed form overshoots once the validity region is left.
  EXPECT_LT(b.value, isotropic_noise_closed_form({0.5, 1.25, 4.0}, budget));
}

TEST(BoundC, NumericOptimumIsLocallyOptimal) {
  // Perturbing the reduced witness along feasible directions never helps.
  const IsotropicNoiseProblem p{0.5, 1.25, 4.0};
  const EnergyBudget budget(0.6);
  const ReducedOptimum opt = isotropic_noise_numeric(p, budget);
  auto objective = [&](double s, double m1) {
    const double total = 2.0 * budget.half_trace_cap() - 0.5 * s - 0.5 / s;
    const double m2 = total - m1;
    if (m1 < 0 || m2 < 0) return -1.0;
    const double d = p.r;
    const double a = p.gain * d * (0.5 / s + m1) + p.noise;
    const double b = p.gain / d * (0.5 * s + m2) + p.noise;
    const double a0 = p.gain * d * 0.5 / s + p.noise;
    const double b0 = p.gain / d * 0.5 * s + p.noise;
    return static_cast<double>(h_reference(std::sqrt(static_cast<long double>(a) * b)) -
                               h_reference(std::sqrt(static_cast<long double>(a0) * b0)));
  };
  EXPECT_NEAR(objective(opt.s, opt.m1), opt.value, 1e-12);
  for (double ds : {-1e-3, 0.0, 1e-3}) {
    for (double dm : {-1e-3, 0.0, 1e-3}) {
      EXPECT_LE(objective(opt.s * (1 + ds), opt.m1 + dm), opt.value + 1e-12);
    }
  }
}

TEST(BoundB2, IdentityChannel) {
  const CapacityBound b = bound_b2(reduce(ChannelClass::B2, 1.0, 0.0, 1.0), EnergyBudget(1.5));
  EXPECT_EQ(b.regime, Regime::analytic);
  EXPECT_NEAR(b.value, kH2, 1e-12);
}

TEST(BoundB2, ClassicalNoise) {
  const CapacityBound b = bound_b2(reduce(ChannelClass::B2, 1.0, 1.0, 1.0), EnergyBudget(1.5));
  EXPECT_EQ(b.regime, Regime::analytic);
  EXPECT_NEAR(b.value, kH3MinusH3Over2, 1e-12);
}

TEST(BoundB2, StrongSqueezeLeavesValidityRegion) {
  const EnergyBudget budget(0.55);
  const ValidityMargins m = validity_margins({1.0, 1.0, 8.0}, budget);
  // E + 1/2 - (8 - 1/8)/2 - 4 < 0
  EXPECT_NEAR(m.minus, 1.05 - 3.9375 - 4.0, 1e-12);
  const CapacityBound b = bound_b2(reduce(ChannelClass::B2, 1.0, 1.0, 8.0), budget);
  EXPECT_EQ(b.regime, Regime::numeric);
  EXPECT_GT(b.value, 0.0);
}

TEST(BoundD, SharesIsotropicEvaluator) {
  std::mt19937_64 rng(32);
  for (int i = 0; i < 100; ++i) {
    const double tau = uniform(rng, -4.0, -0.05);
    const double nbar = uniform(rng, 0.0, 3.0);
    const double r = uniform(rng, 1.0, 6.0);
    const EnergyBudget budget(uniform(rng, 0.5, 20.0));
    const CanonicalForm cf = reduce(ChannelClass::D, tau, nbar, r);
    const IsotropicNoiseProblem p{std::fabs(cf.tau), (1.0 + std::fabs(cf.tau)) * (cf.nbar + 0.5),
                                  cf.r};
    const ReducedOptimum direct = isotropic_noise_bound(p, budget);
    const CapacityBound via_d = bound_d(cf, budget);
    EXPECT_NEAR(via_d.value, direct.value, 1e-12);
    EXPECT_EQ(via_d.regime, direct.regime);
  }
}

TEST(BoundD, UnitGainExample) {
  const CapacityBound b = bound_d(reduce(ChannelClass::D, -1.0, 0.0, 1.0), EnergyBudget(1.5));
  EXPECT_EQ(b.regime, Regime::analytic);
  EXPECT_NEAR(b.value, kH3MinusH3Over2, 1e-12);
}

TEST(Bound, IdentityChannel) {
  EXPECT_NEAR(bound(GaussianChannel::identity(), EnergyBudget(1.5)).value, kH2, 1e-12);
}

TEST(Bound, IndependentOfDisplacement) {
  std::mt19937_64 rng(33);
  for (int i = 0; i < 70; ++i) {
    const auto sample = testing::random_class_sample(kAllClasses[i % 7], rng);
    GaussianChannel shifted = sample.channel;
    shifted.d = {uniform(rng, -10, 10), uniform(rng, -10, 10)};
    const EnergyBudget budget(uniform(rng, 0.5, 10.0));
    EXPECT_EQ(bound(sample.channel, budget).value, bound(shifted, budget).value);
  }
}

TEST(Bound, WitnessReproducesValue) {
  std::mt19937_64 rng(34);
  for (int i = 0; i < 700; ++i) {
    const auto sample = testing::random_class_sample(kAllClasses[i % 7], rng);
    const EnergyBudget budget(std::exp(uniform(rng, std::log(0.5), std::log(200.0))));
    const CapacityBound b = bound(sample.channel, budget);
    EXPECT_TRUE(b.witness.feasible(budget)) << to_string(classify(sample.channel));
    EXPECT_NEAR(holevo_gaussian(sample.channel, b.witness), b.value, 1e-8)
        << to_string(classify(sample.channel)) << " E=" << budget.value();
  }
}

TEST(Bound, NonnegativeAndMonotoneInEnergy) {
  std::mt19937_64 rng(35);
  for (auto cls : kAllClasses) {
    for (int k = 0; k < 5; ++k) {
      const auto sample = testing::random_class_sample(cls, rng);
      const CanonicalForm cf = canonical_reduce(sample.channel);
      double prev = 0.0;
      for (int i = 0; i < 20; ++i) {
        const double e = 0.5 * std::pow(1.5, i);
        const double v = bound(cf, EnergyBudget(e)).value;
        EXPECT_GE(v, 0.0);
        EXPECT_GE(v, prev - 1e-9) << to_string(cls) << " E=" << e;
        prev = v;
      }
    }
  }
}

TEST(Bound, AnalyticAgreesWithForcedNumeric) {
  std::mt19937_64 rng(36);
  int checked = 0;
  while (checked < 100) {
    const double gain = uniform(rng, 0.05, 4.0);
    const IsotropicNoiseProblem p{gain, std::fabs(1.0 - gain) * uniform(rng, 0.5, 3.0),
                                  uniform(rng, 1.0, 4.0)};
    const EnergyBudget budget(uniform(rng, 0.5, 30.0));
    const ValidityMargins m = validity_margins(p, budget);
    if (std::min(m.plus, m.minus) < 1e-3) continue;
    const ReducedOptimum analytic = isotropic_noise_bound(p, budget);
    ASSERT_EQ(analytic.regime, Regime::analytic);
    const ReducedOptimum numeric = isotropic_noise_bound(p, budget, {.force_numeric = true});
    EXPECT_EQ(numeric.regime, Regime::numeric);
    EXPECT_NEAR(analytic.value, numeric.value, 1e-6);
    EXPECT_LE(numeric.value, analytic.value + 1e-9);
    ++checked;
  }
}

TEST(Bound, OrbitDoesNotDetermineValue) {
  const EnergyBudget budget(1.0);
  const double unsqueezed = bound(reduce(ChannelClass::C_att, 0.5, 2.0, 1.0), budget).value;
  const double squeezed = bound(reduce(ChannelClass::C_att, 0.5, 2.0, 4.0), budget).value;
  EXPECT_GT(std::fabs(unsqueezed - squeezed), 1e-3);
}

TEST(Asymptote, Examples) {
  EXPECT_EQ(asymptote(reduce(ChannelClass::A1, 0.0, 1.0, 1.0), EnergyBudget(50.0)), 0.0);
  EXPECT_NEAR(asymptote(reduce(ChannelClass::B2, 1.0, 0.0, 1.0), EnergyBudget(1024.0)),
              std::numbers::log2e + 10.0, 1e-12);
  EXPECT_NEAR(asymptote(reduce(ChannelClass::B1, 1.0, 0.0, 1.0), EnergyBudget(1024.0)),
              std::numbers::log2e + 10.0, 1e-12);
  // tau = 1/2, nbar = 0: h(1/4 + 1/4) = 0.
  EXPECT_NEAR(asymptote(reduce(ChannelClass::C_att, 0.5, 0.0, 1.0), EnergyBudget(1 << 20)),
              std::numbers::log2e + 19.0, 1e-12);
  try {
    asymptote(reduce(ChannelClass::A2, 0.0, 0.0, 1.0), EnergyBudget(2.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::unsupported_class);
  }
}

TEST(Asymptote, BoundConvergesAtHighEnergy) {
  const CanonicalForm forms[] = {
      reduce(ChannelClass::B1, 1.0, 0.0, 1.0),    reduce(ChannelClass::B2, 1.0, 0.0, 1.0),
      reduce(ChannelClass::B2, 1.0, 1.0, 1.0),    reduce(ChannelClass::C_att, 0.5, 0.0, 1.0),
      reduce(ChannelClass::C_amp, 2.0, 0.0, 1.0), reduce(ChannelClass::D, -1.0, 0.0, 1.0)};
  for (const auto& cf : forms) {
    double prev = 1e9;
    for (double e : {16.0, 256.0, 4096.0, 65536.0}) {
      const EnergyBudget budget(e);
      const double gap = std::fabs(bound(cf, budget).value - asymptote(cf, budget));
      EXPECT_LT(gap, prev) << to_string(cf.cls) << " E=" << e;
      prev = gap;
    }
    EXPECT_LE(prev, 1e-3) << to_string(cf.cls);
  }
}

}  // namespace
}  // namespace gausscap
