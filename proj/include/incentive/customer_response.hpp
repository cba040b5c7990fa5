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

// Exact best response of one customer to a price schedule: pick the R
// allowed slots with the largest rho + y. The optimal value, seen as a
// function of y, is a max-plus polynomial homogeneous of degree R.

#ifndef INCENTIVE_CUSTOMER_RESPONSE_HPP
#define INCENTIVE_CUSTOMER_RESPONSE_HPP

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "incentive/core_model.hpp"
#include "incentive/errors.hpp"

namespace incentive {

using ConsumptionProfile = std::vector<std::uint8_t>;
using PriceSchedule = std::vector<double>;
using TrafficVector = std::vector<long>;

namespace detail {

inline void check_response_inputs(const FeasibleSetDescriptor& set, std::span<const double> score,
                                  std::span<const double> y) {
  if (score.size() != set.n || y.size() != set.n) throw ValidationError("response: vector length mismatch");
  if (set.demand < 0 || static_cast<std::size_t>(set.demand) > set.allowed_count()) {
    throw InfeasibleError("response: demand exceeds allowed slots");
  }
}

// Allowed slots ordered by decreasing score + y, ties by increasing index.
inline std::vector<Slot> ranked_slots(const FeasibleSetDescriptor& set, std::span<const double> score,
                                      std::span<const double> y) {
  std::vector<Slot> order;
  order.reserve(set.allowed_count());
  for (Slot i = 0; i < set.n; ++i) {
    if (set.is_allowed(i)) order.push_back(i);
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](Slot a, Slot b) { return score[a] + y[a] > score[b] + y[b]; });
  return order;
}

}  // namespace detail

inline ConsumptionProfile best_response(const FeasibleSetDescriptor& set, std::span<const double> score,
                                        std::span<const double> y) {
  detail::check_response_inputs(set, score, y);
  const auto order = detail::ranked_slots(set, score, y);
  ConsumptionProfile u(set.n, 0);
  for (int r = 0; r < set.demand; ++r) u[order[static_cast<std::size_t>(r)]] = 1;
  return u;
}

inline double tropical_value(const FeasibleSetDescriptor& set, std::span<const double> score,
                             std::span<const double> y) {
  detail::check_response_inputs(set, score, y);
  const auto order = detail::ranked_slots(set, score, y);
  double value = 0.0;
  for (int r = 0; r < set.demand; ++r) {
    const Slot i = order[static_cast<std::size_t>(r)];
    value += score[i] + y[i];
  }
  return value;
}

// Compact description of every optimal profile: all slots strictly above
// the R-th best value are taken, and the remainder comes from the ties.
struct ArgmaxSet {
  std::vector<Slot> above;
  std::vector<Slot> tied;
  int from_tied = 0;
  double threshold = -kInfinity;

  bool contains(const FeasibleSetDescriptor& set, const ConsumptionProfile& u) const {
    if (u.size() != set.n) return false;
    int ones = 0;
    for (Slot i = 0; i < set.n; ++i) {
      if (u[i] > 1) return false;
      if (u[i] == 1) {
        if (!set.is_allowed(i)) return false;
        ++ones;
      }
    }
    if (ones != set.demand) return false;
    for (Slot i : above) {
      if (u[i] != 1) return false;
    }
    int used = 0;
    for (Slot i : tied) used += u[i];
    return used == from_tied;
  }
};

inline ArgmaxSet argmax_set(const FeasibleSetDescriptor& set, std::span<const double> score,
                            std::span<const double> y) {
  detail::check_response_inputs(set, score, y);
  ArgmaxSet result;
  if (set.demand == 0) return result;
  const auto order = detail::ranked_slots(set, score, y);
  const Slot pivot = order[static_cast<std::size_t>(set.demand - 1)];
  result.threshold = score[pivot] + y[pivot];
  for (Slot i : order) {
    const double v = score[i] + y[i];
    if (v > result.threshold) {
      result.above.push_back(i);
    } else if (v == result.threshold) {
      result.tied.push_back(i);
    }
  }
  std::sort(result.above.begin(), result.above.end());
  std::sort(result.tied.begin(), result.tied.end());
  result.from_tied = set.demand - static_cast<int>(result.above.size());
  return result;
}

// <rho, u> over the allowed support of u.
inline double profile_score(std::span<const double> score, const ConsumptionProfile& u) {
  double s = 0.0;
  for (Slot i = 0; i < u.size(); ++i) {
    if (u[i]) s += score[i];
  }
  return s;
}

}  // namespace incentive

#endif  // INCENTIVE_CUSTOMER_RESPONSE_HPP
