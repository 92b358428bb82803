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

#include "gausscap/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>
#include <optional>
#include <thread>
#include <vector>

#include "gausscap/maximize.hpp"

namespace gausscap {

namespace {

constexpr double kPi = std::numbers::pi;

struct Objective {
  const GaussianChannel& ch;
  const EnergyBudget& budget;
  double purity;

  double operator()(const OraclePoint& pt) const {
    EncodingParams enc;
    if (!oracle_encoding(pt, purity, budget, enc)) {
      return -std::numeric_limits<double>::infinity();
    }
    const SymMat2& v = enc.V.matrix();
    const SymMat2 out_sum = congruence(ch.T, v + enc.M) + ch.N;
    const SymMat2 out_sig = congruence(ch.T, v) + ch.N;
    return entropy_h(std::sqrt(std::max(out_sum.det(), 0.25))) -
           entropy_h(std::sqrt(std::max(out_sig.det(), 0.25)));
  }
};

struct Interval {
  double lo;
  double hi;
};

// s-range for signals with det V = purity/4 inside the budget.
std::optional<Interval> log_s_range(const EnergyBudget& budget, double purity) {
  const double k = 2.0 * budget.half_trace_cap() / std::sqrt(purity);  // s + 1/s <= 2k
  if (k < 1.0) return std::nullopt;
  const double hi = k + std::sqrt(std::max(0.0, (k - 1.0) * (k + 1.0)));
  return Interval{-std::log(hi), std::log(hi)};
}

double grid_value(std::size_t i, std::size_t count, double lo, double hi) {
  if (count == 1) return lo;
  if (i + 1 == count) return hi;
  return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
}

// Periodic coordinates sample [0, pi) without the duplicate endpoint.
double angle_value(std::size_t i, std::size_t count) {
  return kPi * static_cast<double>(i) / static_cast<double>(count);
}

struct GridBest {
  double value = -std::numeric_limits<double>::infinity();
  std::size_t index = std::numeric_limits<std::size_t>::max();
  OraclePoint point;
};

struct GridShape {
  std::size_t s, theta, phi, split;
};

GridBest scan_slice(const Objective& f, const GridShape& shape, Interval log_s,
                    std::size_t i_begin, std::size_t i_end) {
  GridBest best;
  for (std::size_t i = i_begin; i < i_end; ++i) {
    const double s = std::exp(grid_value(i, shape.s, log_s.lo, log_s.hi));
    for (std::size_t j = 0; j < shape.theta; ++j) {
      for (std::size_t k = 0; k < shape.phi; ++k) {
        for (std::size_t l = 0; l < shape.split; ++l) {
          const OraclePoint pt{s, angle_value(j, shape.theta), angle_value(k, shape.phi),
                               grid_value(l, shape.split, 0.0, 1.0)};
          const double v = f(pt);
          const std::size_t index =
              ((i * shape.theta + j) * shape.phi + k) * shape.split + l;
          if (v > best.value) best = {v, index, pt};
        }
      }
    }
  }
  return best;
}

GridBest scan(const Objective& f, const GridShape& shape, Interval log_s, std::size_t threads) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, shape.s);
  std::vector<std::future<GridBest>> parts;
  const std::size_t chunk = (shape.s + threads - 1) / threads;
  for (std::size_t begin = 0; begin < shape.s; begin += chunk) {
    const std::size_t end = std::min(shape.s, begin + chunk);
    parts.push_back(std::async(threads == 1 ? std::launch::deferred : std::launch::async,
                               scan_slice, std::cref(f), shape, log_s, begin, end));
  }
  GridBest best;
  for (auto& part : parts) {
    const GridBest b = part.get();
    // Equal values resolve to the lexicographically smallest grid index.
    if (b.value > best.value || (b.value == best.value && b.index < best.index)) best = b;
  }
  return best;
}

GridShape shape_of(const OracleConfig& cfg) {
  return {cfg.grid_s, cfg.freeze_rotations ? 1 : cfg.grid_theta,
          cfg.freeze_rotations ? 1 : cfg.grid_phi, cfg.grid_split};
}

void refine(const Objective& f, const OracleConfig& cfg, Interval log_s, GridBest& best) {
  const double ds = (log_s.hi - log_s.lo) / static_cast<double>(cfg.grid_s - 1);
  std::array<double, 4> width{ds, kPi / static_cast<double>(cfg.grid_theta),
                              kPi / static_cast<double>(cfg.grid_phi),
                              1.0 / static_cast<double>(cfg.grid_split - 1)};
  const std::size_t coords = cfg.freeze_rotations ? 2 : 4;
  constexpr std::array<std::size_t, 4> order{0, 3, 1, 2};  // u, x, theta, phi

  OraclePoint pt = best.point;
  double value = best.value;
  for (std::size_t iter = 0; iter < cfg.refine_iters; ++iter) {
    const double start = value;
    for (std::size_t c = 0; c < coords; ++c) {
      const std::size_t axis = order[c];
      auto along = [&](double z) {
        OraclePoint q = pt;
        switch (axis) {
          case 0: q.s = std::exp(z); break;
          case 1: q.theta = z; break;
          case 2: q.phi = z; break;
          default: q.x = z; break;
        }
        return f(q);
      };
      double cur = 0.0, lo = 0.0, hi = 0.0;
      switch (axis) {
        case 0:
          cur = std::log(pt.s);
          lo = std::max(log_s.lo, cur - width[0]);
          hi = std::min(log_s.hi, cur + width[0]);
          break;
        case 1: cur = pt.theta; lo = cur - width[1]; hi = cur + width[1]; break;
        case 2: cur = pt.phi; lo = cur - width[2]; hi = cur + width[2]; break;
        default:
          cur = pt.x;
          lo = std::max(0.0, cur - width[3]);
          hi = std::min(1.0, cur + width[3]);
          break;
      }
      const detail::Maximum m = detail::golden_maximize(along, lo, hi, 1e-13);
      if (m.value > value) {
        value = m.value;
        switch (axis) {
          case 0: pt.s = std::exp(m.x); break;
          case 1: pt.theta = m.x; break;
          case 2: pt.phi = m.x; break;
          default: pt.x = m.x; break;
        }
      }
    }
    if (value - start < 1e-10) {
      for (double& w : width) w *= 0.5;
      if (*std::max_element(width.begin(), width.end()) < 1e-10) break;
    }
  }
  best.point = pt;
  best.value = value;
}

void require_inputs(const GaussianChannel& ch, const OracleConfig& cfg) {
  cfg.validate();
  if (!cp_check(ch)) throw Error(ErrorCode::invalid_channel, cp_violation(ch));
}

}  // namespace

void OracleConfig::validate() const {
  if (grid_s < 2 || grid_theta < 2 || grid_phi < 2 || grid_split < 2 || refine_iters < 2) {
    throw Error(ErrorCode::domain, "oracle grid counts must all be >= 2");
  }
}

bool oracle_encoding(const OraclePoint& pt, double purity, const EnergyBudget& budget,
                     EncodingParams& out) {
  const double scale = std::sqrt(purity);
  const double total = 2.0 * budget.half_trace_cap() - scale * 0.5 * (pt.s + 1.0 / pt.s);
  if (total < -tol::cm) return false;
  const double m_tot = std::max(total, 0.0);
  const Mat2 rv = Mat2::rotation(pt.theta);
  const Mat2 rm = Mat2::rotation(pt.phi);
  out.V = CovarianceMatrix(congruence(rv, SymMat2::diag(scale * 0.5 / pt.s, scale * 0.5 * pt.s)));
  out.M = congruence(rm, SymMat2::diag(pt.x * m_tot, (1.0 - pt.x) * m_tot));
  return true;
}

CapacityBound oracle_bound(const GaussianChannel& ch, const EnergyBudget& budget,
                           const OracleConfig& cfg) {
  require_inputs(ch, cfg);
  const Objective f{ch, budget, 1.0};
  const Interval log_s = *log_s_range(budget, 1.0);
  GridBest best = scan(f, shape_of(cfg), log_s, cfg.threads);
  refine(f, cfg, log_s, best);

  CapacityBound out;
  out.value = std::max(0.0, best.value);
  out.regime = Regime::numeric;
  out.s_opt = best.point.s;
  oracle_encoding(best.point, 1.0, budget, out.witness);
  return out;
}

double oracle_impure_probe(const GaussianChannel& ch, const EnergyBudget& budget,
                           double purity, const OracleConfig& cfg) {
  require_inputs(ch, cfg);
  if (!(purity >= 1.0)) throw Error(ErrorCode::domain, "purity factor must be >= 1");
  const auto log_s = log_s_range(budget, purity);
  if (!log_s) return 0.0;
  const Objective f{ch, budget, purity};
  GridShape coarse = shape_of(cfg);
  coarse.s = std::max<std::size_t>(2, coarse.s / 2);
  coarse.theta = std::max<std::size_t>(1, coarse.theta / 2);
  coarse.phi = std::max<std::size_t>(1, coarse.phi / 2);
  coarse.split = std::max<std::size_t>(2, coarse.split / 2);
  return std::max(0.0, scan(f, coarse, *log_s, cfg.threads).value);
}

}  // namespace gausscap
