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

#include <cmath>
#include <cstddef>
#include <limits>

namespace gausscap::detail {

struct Maximum {
  double x = 0.0;
  double value = -std::numeric_limits<double>::infinity();
};

/// Golden-section search for a maximum of `f` on [lo, hi]. Assumes a single
/// peak inside the bracket; endpoints are candidates too.
template <class F>
Maximum golden_maximize(F&& f, double lo, double hi, double xtol, int max_iter = 300) {
  constexpr double kInvPhi = 0.6180339887498948482;
  Maximum best{lo, f(lo)};
  if (const double v = f(hi); v > best.value) best = {hi, v};
  double a = lo, b = hi;
  double x1 = b - kInvPhi * (b - a), x2 = a + kInvPhi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < max_iter && (b - a) > xtol; ++i) {
    if (f1 >= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    }
  }
  if (f1 > best.value) best = {x1, f1};
  if (f2 > best.value) best = {x2, f2};
  return best;
}

/// Uniform scan with `points` samples on [lo, hi] followed by golden-section
/// refinement inside the bracket around the best sample (first index wins ties).
template <class F>
Maximum grid_golden_maximize(F&& f, double lo, double hi, std::size_t points, double xtol) {
  if (!(hi > lo)) return {lo, f(lo)};
  const double step = (hi - lo) / static_cast<double>(points - 1);
  std::size_t best_i = 0;
  double best_v = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < points; ++i) {
    const double x = i + 1 == points ? hi : lo + step * static_cast<double>(i);
    const double v = f(x);
    if (v > best_v) {
      best_v = v;
      best_i = i;
    }
  }
  const double a = best_i == 0 ? lo : lo + step * static_cast<double>(best_i - 1);
  const double b = best_i + 1 >= points ? hi : lo + step * static_cast<double>(best_i + 1);
  Maximum refined = golden_maximize(f, a, b, xtol);
  const double x_best = best_i + 1 == points ? hi : lo + step * static_cast<double>(best_i);
  if (best_v > refined.value) refined = {x_best, best_v};
  return refined;
}

}  // namespace gausscap::detail
