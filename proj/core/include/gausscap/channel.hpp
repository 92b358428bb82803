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

// One-mode Gaussian channels as moment maps (d, T, N): validity, action,
// composition with Gaussian unitaries, classification and canonical reduction.

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gausscap/gaussian.hpp"

namespace gausscap {

namespace tol {
inline constexpr double cp = 1e-9;
}  // namespace tol

/// Z0 -> T Z0 + d,  V -> T V T^T + N.
struct GaussianChannel {
  Vec2 d;
  Mat2 T;
  SymMat2 N;

  static GaussianChannel identity() { return {{}, Mat2::identity(), {}}; }
};

enum class ChannelClass { A1, A2, B1, B2, C_att, C_amp, D };

std::string_view to_string(ChannelClass cls) noexcept;
std::optional<ChannelClass> parse_channel_class(std::string_view name) noexcept;

/// Complete positivity: N PSD and det N >= ((det T - 1)/2)^2 - tol::cp.
bool cp_check(const GaussianChannel& ch);

/// Human-readable description of the violated CP inequality, empty when valid.
std::string cp_violation(const GaussianChannel& ch);

struct Moments {
  Vec2 mean;
  CovarianceMatrix cov;
};

/// Throws ErrorCode::invalid_channel when cp_check fails.
Moments apply(const GaussianChannel& ch, Vec2 mean, const CovarianceMatrix& v);

/// Gaussian unitary (f, S, 0).
struct GaussianUnitary {
  Vec2 f;
  SymplecticMat2 S = SymplecticMat2::identity();
};

/// Pre-process with `pre`, then post-process with `post`.
GaussianChannel compose_unitaries(const GaussianChannel& ch, const GaussianUnitary& pre,
                                  const GaussianUnitary& post);

ChannelClass classify(const GaussianChannel& ch);

struct ChannelInvariants {
  double tau = 0.0;
  double det_noise = 0.0;
};
ChannelInvariants invariants_of(const GaussianChannel& ch);

/// Canonical representative (0, T_c, N_c) with S_B T S_A = T_c and
/// S_B N S_B^T = N_c, plus the residual pre-processing parameters that the
/// capacity bound still depends on.
struct CanonicalForm {
  ChannelClass cls = ChannelClass::A1;
  double tau = 0.0;
  double nbar = 0.0;
  double r = 1.0;  // Euler squeeze of S_A
  double t = 0.0;  // A2: squared singular value of the transmitted direction
  double n = 0.0;  // B1: nonzero eigenvalue of the effective rank-one noise
  SymplecticMat2 S_A = SymplecticMat2::identity();
  SymplecticMat2 S_B = SymplecticMat2::identity();
  Mat2 T_c;
  SymMat2 N_c;
  double residual_T = 0.0;  // max |S_B T S_A - T_c|
  double residual_N = 0.0;  // max |S_B N S_B^T - N_c|
};

/// Throws ErrorCode::invalid_channel for non-CP input and
/// ErrorCode::unreducible when the verification residual exceeds tol::recon
/// (scaled by the magnitude of the input).
CanonicalForm canonical_reduce(const GaussianChannel& ch);

/// Table representative (0, T_c, N_c) for the given class parameters.
/// `tau` is ignored for A1, A2, B1 and B2.
GaussianChannel canonical_channel(ChannelClass cls, double tau, double nbar);

/// Channel in class `cls` whose reduction reproduces (tau, nbar) and the
/// residual parameter `residual` (r for B2/C/D, t for A2, n for B1; unused for A1).
GaussianChannel channel_from_parameters(ChannelClass cls, double tau, double nbar,
                                        double residual);

/// Distance-to-boundary notes for channels whose class sits near a
/// tolerance band (measure-zero classes or a sign change of tau).
std::vector<std::string> boundary_warnings(const GaussianChannel& ch,
                                           double band = 1e-6);

}  // namespace gausscap
