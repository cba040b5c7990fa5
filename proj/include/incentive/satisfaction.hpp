// Copyright 2026 The Authors.
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

#ifndef INCENTIVE_SATISFACTION_HPP
#define INCENTIVE_SATISFACTION_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "incentive/core_model.hpp"
#include "incentive/errors.hpp"

namespace incentive {

// s(n) = 1 for n <= N1, 1 - lambda * exp(-2 NC / (n - N1)) for N1 < n <= NC.
// Realtime traffic uses N1 = 0.
struct SatisfactionCurve {
  ApplicationKind kind = ApplicationKind::kElastic;
  int soft_threshold = 0;
  int capacity = 1;
  double lambda = 1.0;

  double operator()(long n) const {
    if (n < 0) throw ValidationError("satisfaction: negative active count");
    if (n > capacity) {
      throw InfeasibleError("satisfaction: active count " + std::to_string(n) + " exceeds capacity " +
                            std::to_string(capacity));
    }
    return evaluate(n);
  }

  // Same curve with the argument clamped to [0, capacity].
  double clamped(long n) const { return evaluate(std::clamp<long>(n, 0, capacity)); }

 private:
  double evaluate(long n) const {
    if (n <= soft_threshold) return 1.0;
    const double excess = static_cast<double>(n - soft_threshold);
    return 1.0 - lambda * std::exp(-2.0 * static_cast<double>(capacity) / excess);
  }
};

inline SatisfactionCurve curve_for(const Scenario& sc, std::size_t a, std::size_t b, std::size_t l) {
  SatisfactionCurve c;
  c.kind = sc.applications.at(a).kind;
  c.capacity = sc.cells.at(l).capacity;
  c.soft_threshold = c.kind == ApplicationKind::kRealtime ? 0 : sc.cells.at(l).soft_threshold;
  c.lambda = sc.contracts.at(b).lambda;
  return c;
}

// Monotone on [0, NC] with s(NC) >= 0, and f(n) = n s(n) discretely concave
// there.
inline bool curve_is_admissible(const SatisfactionCurve& c) {
  auto f = [&](long n) { return static_cast<double>(n) * c(n); };
  if (c(c.capacity) < 0.0) return false;
  for (long n = 0; n < c.capacity; ++n) {
    if (c(n + 1) > c(n)) return false;
  }
  for (long n = 1; n + 1 <= c.capacity; ++n) {
    if (f(n + 1) + f(n - 1) > 2.0 * f(n)) return false;
  }
  return true;
}

inline void validate_curves(const Scenario& sc) {
  for (std::size_t a = 0; a < sc.A(); ++a) {
    for (std::size_t b = 0; b < sc.B(); ++b) {
      for (std::size_t l = 0; l < sc.cells.size(); ++l) {
        if (!curve_is_admissible(curve_for(sc, a, b, l))) {
          throw ValidationError("satisfaction curve for application " + std::to_string(a) + ", contract " +
                                std::to_string(b) + ", cell " + std::to_string(l) +
                                " is not a monotone curve in [0, 1] with concave n*s(n)");
        }
      }
    }
  }
}

inline void validate(const Scenario& sc) {
  validate_structure(sc);
  validate_curves(sc);
}

// Sum over classes of gamma_b * N^{a,b} * s^{a,b}(N) for one cell and time.
// `curves`, `counts` and `gammas` are indexed by class.
inline double cell_objective(std::span<const SatisfactionCurve> curves, std::span<const long> counts, long total,
                             std::span<const double> gammas) {
  if (curves.size() != counts.size() || curves.size() != gammas.size()) {
    throw ValidationError("cell_objective: class arrays differ in length");
  }
  long sum = 0;
  for (long c : counts) sum += c;
  if (sum != total) throw ValidationError("cell_objective: counts do not add up to the aggregate");
  double value = 0.0;
  for (std::size_t c = 0; c < curves.size(); ++c) {
    if (counts[c] != 0) value += gammas[c] * static_cast<double>(counts[c]) * curves[c](total);
  }
  return value;
}

// Traffic of every (application, contract) block, block index a * B + b.
struct BlockTraffic {
  std::size_t A = 1;
  std::size_t B = 1;
  std::size_t n = 0;
  std::vector<std::vector<long>> blocks;

  BlockTraffic() = default;
  BlockTraffic(std::size_t apps, std::size_t contracts, std::size_t slots)
      : A(apps), B(contracts), n(slots), blocks(apps * contracts, std::vector<long>(slots, 0)) {}

  std::vector<long>& at(std::size_t a, std::size_t b) { return blocks[a * B + b]; }
  const std::vector<long>& at(std::size_t a, std::size_t b) const { return blocks[a * B + b]; }

  long aggregate(Slot i) const {
    long s = 0;
    for (const auto& blk : blocks) s += blk[i];
    return s;
  }
};

// M = 1 + gamma_max * sum of all demands; exceeds any attainable objective.
inline double penalty_weight(const Scenario& sc) {
  double gamma_max = 0.0;
  for (const auto& c : sc.contracts) gamma_max = std::max(gamma_max, c.gamma);
  long total = 0;
  for (const auto& cust : sc.customers) {
    for (const auto& app : cust.apps) total += app.demand;
  }
  return 1.0 + gamma_max * static_cast<double>(total);
}

// Objective of one slot given the per-block counts there; over-capacity
// loads are evaluated on the clamped curve and charged `penalty` per unit.
inline double slot_value(const Scenario& sc, const BlockTraffic& traffic, Slot i, double penalty) {
  const std::size_t l = i % static_cast<std::size_t>(sc.L);
  const long total = traffic.aggregate(i);
  double value = 0.0;
  for (std::size_t a = 0; a < traffic.A; ++a) {
    for (std::size_t b = 0; b < traffic.B; ++b) {
      const long cnt = traffic.at(a, b)[i];
      if (cnt != 0) value += sc.contracts[b].gamma * static_cast<double>(cnt) * curve_for(sc, a, b, l).clamped(total);
    }
  }
  const long over = total - sc.cells[l].capacity;
  if (over > 0) value -= penalty * static_cast<double>(over);
  return value;
}

inline double penalized_objective(const Scenario& sc, const BlockTraffic& traffic, double penalty) {
  double value = 0.0;
  for (Slot i = 0; i < traffic.n; ++i) value += slot_value(sc, traffic, i, penalty);
  return value;
}

inline double penalized_objective(const Scenario& sc, const BlockTraffic& traffic) {
  return penalized_objective(sc, traffic, penalty_weight(sc));
}

inline long capacity_excess(const Scenario& sc, const BlockTraffic& traffic) {
  long excess = 0;
  for (Slot i = 0; i < traffic.n; ++i) {
    const long over = traffic.aggregate(i) - sc.cells[i % static_cast<std::size_t>(sc.L)].capacity;
    if (over > 0) excess += over;
  }
  return excess;
}

}  // namespace incentive

#endif  // INCENTIVE_SATISFACTION_HPP
