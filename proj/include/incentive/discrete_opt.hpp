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

// Steepest-ascent exchange greedy for M-concave objectives over the
// Minkowski sum of the customers' feasible sets.

#ifndef INCENTIVE_DISCRETE_OPT_HPP
#define INCENTIVE_DISCRETE_OPT_HPP

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "incentive/core_model.hpp"
#include "incentive/customer_response.hpp"
#include "incentive/errors.hpp"
#include "incentive/exchange_graph.hpp"
#include "incentive/flow.hpp"
#include "incentive/satisfaction.hpp"

namespace incentive {

// A separable objective: value contributed by `count` requests in a slot.
template <class F>
concept SlotObjective = requires(const F& f, Slot i, long count) {
  { f(i, count) } -> std::convertible_to<double>;
};

template <SlotObjective F>
double evaluate(const F& f, const TrafficVector& N) {
  double v = 0.0;
  for (Slot i = 0; i < N.size(); ++i) v += f(i, N[i]);
  return v;
}

// gamma_b * x * s(x) - M * max(x - NC, 0) for one (application, contract)
// pair alone in the network.
class SatisfactionObjective {
 public:
  SatisfactionObjective(const Scenario& sc, std::size_t a, std::size_t b)
      : SatisfactionObjective(sc, a, b, penalty_weight(sc)) {}
  SatisfactionObjective(const Scenario& sc, std::size_t a, std::size_t b, double penalty)
      : L_(static_cast<std::size_t>(sc.L)), gamma_(sc.contracts.at(b).gamma), penalty_(penalty) {
    for (std::size_t l = 0; l < L_; ++l) curves_.push_back(curve_for(sc, a, b, l));
  }

  double operator()(Slot i, long x) const {
    const SatisfactionCurve& c = curves_[i % L_];
    double v = gamma_ * static_cast<double>(x) * c.clamped(x);
    if (x > c.capacity) v -= penalty_ * static_cast<double>(x - c.capacity);
    return v;
  }

  double penalty() const { return penalty_; }

 private:
  std::size_t L_;
  double gamma_;
  double penalty_;
  std::vector<SatisfactionCurve> curves_;
};

// Every customer answers a zero price: optimal for its own sum.
inline Decomposition initial_decomposition(const Slice& slice) {
  const PriceSchedule zero(slice.n, 0.0);
  std::vector<ConsumptionProfile> profiles;
  profiles.reserve(slice.K());
  for (const auto& sk : slice.customers) profiles.push_back(best_response(sk.set, sk.score, zero));
  return Decomposition::from_profiles(slice, std::move(profiles));
}

// Optimal decomposition of a given achievable N (a valid greedy start).
inline Decomposition decomposition_at(const Slice& slice, const TrafficVector& N) {
  return mincostflow_decompose(slice, N).decomposition;
}

struct Move {
  Slot from = 0;
  Slot to = 0;
  double gain = 0.0;
};

// Best strictly improving single-unit move N -> N - e_i + e_j.
// `feasible(i)` returns the mask of admissible targets from i and is only
// called for sources that can still win. Ties go to the lexicographically
// greatest (i, j).
template <SlotObjective F, class Feasible>
std::optional<Move> best_move(const F& f, const TrafficVector& N, Feasible&& feasible) {
  const std::size_t n = N.size();
  std::vector<double> remove(n, 0.0), add(n, 0.0);
  double best_add = -kInfinity;
  for (Slot i = 0; i < n; ++i) {
    const double here = f(i, N[i]);
    if (N[i] > 0) remove[i] = f(i, N[i] - 1) - here;
    add[i] = f(i, N[i] + 1) - here;
    best_add = std::max(best_add, add[i]);
  }
  std::optional<Move> best;
  for (Slot i = 0; i < n; ++i) {
    if (N[i] <= 0) continue;
    const double bound = remove[i] + best_add;
    if (!(bound > 0.0) || (best && bound < best->gain)) continue;
    const std::vector<char> mask = feasible(i);
    for (Slot j = 0; j < n; ++j) {
      if (j == i || !mask[j]) continue;
      const double gain = remove[i] + add[j];
      if (!(gain > 0.0)) continue;
      if (!best || gain >= best->gain) best = Move{i, j, gain};
    }
  }
  return best;
}

struct GreedyOptions {
  // 0 selects a bound proportional to n * (R + 1).
  std::size_t max_iterations = 0;
};

struct GreedyResult {
  Decomposition decomposition;
  std::vector<TrafficVector> trace;  // N at every iterate, start included
  std::size_t iterations = 0;
  double value = 0.0;
};

inline std::size_t iteration_cap(const Slice& slice, const GreedyOptions& opt) {
  if (opt.max_iterations != 0) return opt.max_iterations;
  return 4 * (slice.n + 1) * (static_cast<std::size_t>(slice.total_demand()) + 1);
}

// Maximizes a separable concave (penalized) objective over the achievable
// traffic vectors, starting from an optimal decomposition and keeping it
// optimal through exchange-graph updates.
template <SlotObjective F>
GreedyResult greedy_maximize(const Slice& slice, Decomposition start, const F& f, const GreedyOptions& opt = {}) {
  GreedyResult out;
  out.decomposition = std::move(start);
  Decomposition& dec = out.decomposition;
  ExchangeGraph graph = ExchangeGraph::build(slice, dec);
  out.trace.push_back(dec.N);
  const std::size_t cap = iteration_cap(slice, opt);
  while (true) {
    const auto move = best_move(f, dec.N, [&](Slot i) { return graph.reachable_from(i); });
    if (!move) break;
    if (out.iterations == cap) throw InvariantError("greedy_maximize: iteration cap reached");
    graph.exchange(slice, dec, move->from, move->to);
    ++out.iterations;
    out.trace.push_back(dec.N);
  }
  out.value = evaluate(f, dec.N);
  return out;
}

// Outcome of solving one (application, contract) block.
struct SolveResult {
  TrafficVector N;
  Decomposition decomposition;
  RecoveredPrices prices;
  double value = 0.0;
  std::vector<TrafficVector> trace;
  std::size_t iterations = 0;
};

}  // namespace incentive

#endif  // INCENTIVE_DISCRETE_OPT_HPP
