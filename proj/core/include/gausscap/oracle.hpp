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

// Brute-force maximizer of the Gaussian Holevo objective on the unreduced
// channel. Used to cross-check the reduction and the per-class optimizers;
// it is never the shipped bound.

#include <cstddef>

#include "gausscap/capacity.hpp"
#include "gausscap/channel.hpp"

namespace gausscap {

struct OracleConfig {
  std::size_t grid_s = 64;
  std::size_t grid_theta = 32;
  std::size_t grid_phi = 32;
  std::size_t grid_split = 64;
  std::size_t refine_iters = 200;
  bool freeze_rotations = false;  // pin theta = phi = 0
  std::size_t threads = 0;        // 0: hardware concurrency

  /// Throws ErrorCode::domain when any grid count is below 2.
  void validate() const;
};

/// Search point: V = R(theta) diag(1/(2s), s/2) R(theta)^T (scaled by
/// sqrt(purity) for the impure probe), M = R(phi) diag(x, 1 - x) m_tot R(phi)^T.
struct OraclePoint {
  double s = 1.0;
  double theta = 0.0;
  double phi = 0.0;
  double x = 0.5;
};

/// Encoding at `point` with det V = purity / 4, spending the whole budget.
/// Returns false when the signal alone exceeds the budget.
bool oracle_encoding(const OraclePoint& point, double purity, const EnergyBudget& budget,
                     EncodingParams& out);

/// Grid scan + cyclic golden-section coordinate refinement over pure signals.
CapacityBound oracle_bound(const GaussianChannel& ch, const EnergyBudget& budget,
                           const OracleConfig& cfg = {});

/// Coarse grid maximum over impure signals with det V = purity / 4.
double oracle_impure_probe(const GaussianChannel& ch, const EnergyBudget& budget,
                           double purity, const OracleConfig& cfg = {});

}  // namespace gausscap
