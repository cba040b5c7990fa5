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

// Feasibility by majorization when no customer has forbidden slots, and the
// corresponding fast greedy.

#ifndef INCENTIVE_MAJORIZATION_HPP
#define INCENTIVE_MAJORIZATION_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "incentive/core_model.hpp"
#include "incentive/discrete_opt.hpp"
#include "incentive/errors.hpp"
#include "incentive/exchange_graph.hpp"
#include "incentive/flow.hpp"

namespace incentive {

// Conjugate of the demand sequence: nmax[i] = #{k : R_k > i}.
struct MajorizationBound {
  std::vector<long> nmax;    // nonincreasing
  std::vector<long> prefix;  // prefix[k] = sum of the k largest entries

  long total() const { return prefix.back(); }
};

inline MajorizationBound conjugate_bound(const std::vector<int>& demands, std::size_t n) {
  MajorizationBound b;
  b.nmax.assign(n, 0);
  for (int r : demands) {
    if (r < 0 || static_cast<std::size_t>(r) > n) {
      throw ValidationError("conjugate_bound: demand " + std::to_string(r) + " outside [0, " +
                            std::to_string(n) + "]");
    }
    for (int i = 0; i < r; ++i) ++b.nmax[static_cast<std::size_t>(i)];
  }
  b.prefix.assign(n + 1, 0);
  for (std::size_t k = 0; k < n; ++k) b.prefix[k + 1] = b.prefix[k] + b.nmax[k];
  return b;
}

inline MajorizationBound conjugate_bound(const Slice& slice) {
  std::vector<int> demands;
  for (const auto& c : slice.customers) demands.push_back(c.set.demand);
  return conjugate_bound(demands, slice.n);
}

inline bool is_majorized(const TrafficVector& N, const MajorizationBound& bound) {
  if (N.size() != bound.nmax.size()) return false;
  TrafficVector sorted = N;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  if (!sorted.empty() && sorted.back() < 0) return false;
  long s = 0;
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    s += sorted[k];
    if (s > bound.prefix[k + 1]) return false;
  }
  return s == bound.total();
}

// Sorted snapshot of N answering single-exchange feasibility in O(log n).
class MajorizationState {
 public:
  MajorizationState(const TrafficVector& N, const MajorizationBound& bound) : N_(N) {
    const std::size_t n = N.size();
    sorted_ = N;
    std::sort(sorted_.begin(), sorted_.end(), std::greater<>());
    tight_.assign(n + 1, 0);
    long s = 0;
    for (std::size_t k = 0; k < n; ++k) {
      s += sorted_[k];
      tight_[k + 1] = tight_[k] + (s >= bound.prefix[k + 1] ? 1 : 0);
    }
  }

  // Whether N - e_i + e_j is still majorized by the bound.
  bool neighbor_feasible(Slot i, Slot j) const {
    if (i == j) return true;
    if (N_[i] <= 0) return false;
    if (N_[i] > N_[j]) return true;
    // Ranks are 1-based: kj is the first rank holding N_j, ki the last
    // holding N_i. The move raises the prefix sums S(k) for kj <= k < ki.
    const std::size_t kj = first_rank(N_[j]);
    const std::size_t ki = last_rank(N_[i]);
    return tight_[ki - 1] - tight_[kj - 1] == 0;
  }

  std::vector<char> targets(Slot i) const {
    std::vector<char> mask(N_.size(), 0);
    for (Slot j = 0; j < N_.size(); ++j) mask[j] = neighbor_feasible(i, j) ? 1 : 0;
    return mask;
  }

 private:
  std::size_t first_rank(long v) const {
    return static_cast<std::size_t>(std::lower_bound(sorted_.begin(), sorted_.end(), v, std::greater<>()) -
                                    sorted_.begin()) + 1;
  }
  std::size_t last_rank(long v) const {
    return static_cast<std::size_t>(std::upper_bound(sorted_.begin(), sorted_.end(), v, std::greater<>()) -
                                    sorted_.begin());
  }

  TrafficVector N_;
  TrafficVector sorted_;
  std::vector<long> tight_;  // tight_[k] = #{m <= k : S(N, m) == S(Nmax, m)}
};

inline bool neighbor_feasible_major(const TrafficVector& N, const MajorizationBound& bound, Slot i, Slot j) {
  return MajorizationState(N, bound).neighbor_feasible(i, j);
}

inline void require_unrestricted(const Slice& slice) {
  for (const auto& c : slice.customers) {
    if (!c.set.forbidden.empty()) {
      throw ValidationError("majorization mode needs customers without forbidden slots; customer " +
                            std::to_string(c.customer) + " has " + std::to_string(c.set.forbidden.size()));
    }
  }
}

// Greedy on traffic vectors alone, then one min-cost-flow decomposition and
// price recovery. `start` defaults to the zero-price response.
template <SlotObjective F>
SolveResult solve_major(const Slice& slice, const F& f, std::optional<TrafficVector> start = std::nullopt,
                        const GreedyOptions& opt = {}, Slot source = 0) {
  require_unrestricted(slice);
  const MajorizationBound bound = conjugate_bound(slice);
  SolveResult out;
  out.N = start ? *start : initial_decomposition(slice).N;
  if (!is_majorized(out.N, bound)) throw InfeasibleError("solve_major: start is not an achievable traffic vector");
  out.trace.push_back(out.N);
  const std::size_t cap = iteration_cap(slice, opt);
  while (true) {
    const MajorizationState state(out.N, bound);
    const auto move = best_move(f, out.N, [&](Slot i) { return state.targets(i); });
    if (!move) break;
    if (out.iterations == cap) throw InvariantError("solve_major: iteration cap reached");
    --out.N[move->from];
    ++out.N[move->to];
    ++out.iterations;
    out.trace.push_back(out.N);
  }
  out.decomposition = mincostflow_decompose(slice, out.N).decomposition;
  out.prices = recover_prices(slice, out.decomposition, source);
  out.value = evaluate(f, out.N);
  return out;
}

}  // namespace incentive

#endif  // INCENTIVE_MAJORIZATION_HPP
