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

// Provider-level solves: one block, the fast path, and block descent over
// every (application, contract) pair.

#ifndef INCENTIVE_BILEVEL_HPP
#define INCENTIVE_BILEVEL_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "incentive/core_model.hpp"
#include "incentive/discrete_opt.hpp"
#include "incentive/errors.hpp"
#include "incentive/exchange_graph.hpp"
#include "incentive/majorization.hpp"
#include "incentive/satisfaction.hpp"

namespace incentive {

template <SlotObjective F>
SolveResult solve_single(const Slice& slice, const F& f, std::optional<Decomposition> start = std::nullopt,
                         const GreedyOptions& opt = {}, Slot source = 0) {
  GreedyResult g = greedy_maximize(slice, start ? std::move(*start) : initial_decomposition(slice), f, opt);
  SolveResult out;
  out.N = g.decomposition.N;
  out.decomposition = std::move(g.decomposition);
  out.prices = recover_prices(slice, out.decomposition, source);
  out.value = g.value;
  out.trace = std::move(g.trace);
  out.iterations = g.iterations;
  return out;
}

struct OverlapReport {
  std::size_t first = 0;
  std::size_t second = 0;
  int time = 0;
};

// First pair of applications whose allowed times intersect, if any.
inline std::optional<OverlapReport> find_overlap(const Customer& c, int T) {
  std::vector<int> owner(static_cast<std::size_t>(T), -1);
  for (std::size_t a = 0; a < c.apps.size(); ++a) {
    std::vector<char> blocked(static_cast<std::size_t>(T), 0);
    for (int t : c.apps[a].forbidden_times) {
      if (t >= 0 && t < T) blocked[static_cast<std::size_t>(t)] = 1;
    }
    for (int t = 0; t < T; ++t) {
      if (blocked[static_cast<std::size_t>(t)]) continue;
      int& o = owner[static_cast<std::size_t>(t)];
      if (o >= 0) return OverlapReport{static_cast<std::size_t>(o), a, t};
      o = static_cast<int>(a);
    }
  }
  return std::nullopt;
}

inline bool check_disjointness(const Customer& c, int T) { return !find_overlap(c, T).has_value(); }

inline void require_disjoint(const Scenario& sc) {
  for (std::size_t k = 0; k < sc.K(); ++k) {
    if (const auto o = find_overlap(sc.customers[k], sc.T)) {
      throw ValidationError("customer " + std::to_string(k) + ": applications " + std::to_string(o->first) +
                            " and " + std::to_string(o->second) + " are both allowed at time " +
                            std::to_string(o->time));
    }
  }
}

// Satisfaction curves and weights of every block, looked up by block and cell.
class CurveTable {
 public:
  explicit CurveTable(const Scenario& sc) : A_(sc.A()), B_(sc.B()), L_(static_cast<std::size_t>(sc.L)) {
    for (std::size_t a = 0; a < A_; ++a) {
      for (std::size_t b = 0; b < B_; ++b) {
        for (std::size_t l = 0; l < L_; ++l) curves_.push_back(curve_for(sc, a, b, l));
      }
    }
    for (const auto& c : sc.contracts) gamma_.push_back(c.gamma);
    for (const auto& cell : sc.cells) capacity_.push_back(cell.capacity);
  }

  const SatisfactionCurve& curve(std::size_t block, Slot i) const { return curves_[block * L_ + i % L_]; }
  double gamma(std::size_t block) const { return gamma_[block % B_]; }
  long capacity(Slot i) const { return capacity_[i % L_]; }
  std::size_t blocks() const { return A_ * B_; }
  std::size_t B() const { return B_; }

  // Objective at slot i when block `own` carries x and the rest is as in
  // `traffic`.
  double slot_value(const BlockTraffic& traffic, Slot i, std::size_t own, long x, double penalty) const {
    long total = x;
    for (std::size_t blk = 0; blk < traffic.blocks.size(); ++blk) {
      if (blk != own) total += traffic.blocks[blk][i];
    }
    double value = 0.0;
    for (std::size_t blk = 0; blk < traffic.blocks.size(); ++blk) {
      const long cnt = blk == own ? x : traffic.blocks[blk][i];
      if (cnt != 0) value += gamma(blk) * static_cast<double>(cnt) * curve(blk, i).clamped(total);
    }
    const long over = total - capacity(i);
    if (over > 0) value -= penalty * static_cast<double>(over);
    return value;
  }

  double objective(const BlockTraffic& traffic, double penalty) const {
    double v = 0.0;
    for (Slot i = 0; i < traffic.n; ++i) v += slot_value(traffic, i, 0, traffic.blocks[0][i], penalty);
    return v;
  }

  // Contribution of one block, without penalty.
  double block_value(const BlockTraffic& traffic, std::size_t blk) const {
    double v = 0.0;
    for (Slot i = 0; i < traffic.n; ++i) {
      const long cnt = traffic.blocks[blk][i];
      if (cnt != 0) v += gamma(blk) * static_cast<double>(cnt) * curve(blk, i).clamped(traffic.aggregate(i));
    }
    return v;
  }

 private:
  std::size_t A_, B_, L_;
  std::vector<SatisfactionCurve> curves_;
  std::vector<double> gamma_;
  std::vector<long> capacity_;
};

// Slot objective of one block with all other blocks frozen.
class BlockObjective {
 public:
  BlockObjective(const CurveTable& table, const BlockTraffic& traffic, std::size_t block, double penalty)
      : table_(&table), traffic_(&traffic), block_(block), penalty_(penalty) {}

  double operator()(Slot i, long x) const { return table_->slot_value(*traffic_, i, block_, x, penalty_); }

 private:
  const CurveTable* table_;
  const BlockTraffic* traffic_;
  std::size_t block_;
  double penalty_;
};

struct BlockResult {
  std::size_t application = 0;
  std::size_t contract = 0;
  TrafficVector baseline;
  SolveResult result;
};

struct GeneralResult {
  std::vector<BlockResult> blocks;  // block a * B + b
  BlockTraffic baseline;
  BlockTraffic traffic;
  double penalty = 0.0;
  double baseline_objective = 0.0;
  double objective = 0.0;
  std::vector<double> objective_trace;
  std::size_t rounds = 0;
};

struct GeneralOptions {
  std::size_t max_rounds = 0;  // 0 selects a bound from the total demand
  Slot source = 0;
};

// Block descent: every round each block proposes its best exchange with the
// others frozen. All proposals are applied together when that improves the
// objective, otherwise only the best one.
inline GeneralResult solve_general(const Scenario& sc, const GeneralOptions& opt = {}) {
  require_disjoint(sc);
  const CurveTable table(sc);
  const std::size_t nb = table.blocks();
  const std::size_t n = sc.slot_count();

  std::vector<Slice> slices;
  std::vector<Decomposition> decs;
  std::vector<ExchangeGraph> graphs;
  GeneralResult out;
  out.traffic = BlockTraffic(sc.A(), sc.B(), n);
  out.penalty = penalty_weight(sc);
  for (std::size_t blk = 0; blk < nb; ++blk) {
    slices.push_back(make_slice(sc, blk / sc.B(), blk % sc.B()));
    decs.push_back(initial_decomposition(slices.back()));
    graphs.push_back(ExchangeGraph::build(slices.back(), decs.back()));
    out.traffic.blocks[blk] = decs.back().N;
  }
  out.baseline = out.traffic;
  out.baseline_objective = table.objective(out.traffic, out.penalty);
  double value = out.baseline_objective;
  out.objective_trace.push_back(value);

  std::vector<std::vector<TrafficVector>> traces(nb);
  std::vector<std::size_t> iterations(nb, 0);
  for (std::size_t blk = 0; blk < nb; ++blk) traces[blk].push_back(decs[blk].N);

  long demand = 0;
  for (const auto& s : slices) demand += s.total_demand();
  const std::size_t cap =
      opt.max_rounds != 0 ? opt.max_rounds : 4 * (n + 1) * (static_cast<std::size_t>(demand) + 1);

  auto apply = [&](std::size_t blk, const Move& m) {
    graphs[blk].exchange(slices[blk], decs[blk], m.from, m.to);
    out.traffic.blocks[blk] = decs[blk].N;
    ++iterations[blk];
    traces[blk].push_back(decs[blk].N);
  };

  while (true) {
    std::vector<std::optional<Move>> moves(nb);
    bool any = false;
    for (std::size_t blk = 0; blk < nb; ++blk) {
      const BlockObjective f(table, out.traffic, blk, out.penalty);
      moves[blk] = best_move(f, out.traffic.blocks[blk], [&](Slot i) { return graphs[blk].reachable_from(i); });
      any = any || moves[blk].has_value();
    }
    if (!any) break;
    if (out.rounds == cap) throw InvariantError("solve_general: round cap reached");

    BlockTraffic combined = out.traffic;
    for (std::size_t blk = 0; blk < nb; ++blk) {
      if (!moves[blk]) continue;
      --combined.blocks[blk][moves[blk]->from];
      ++combined.blocks[blk][moves[blk]->to];
    }
    const double combined_value = table.objective(combined, out.penalty);
    if (combined_value > value) {
      for (std::size_t blk = 0; blk < nb; ++blk) {
        if (moves[blk]) apply(blk, *moves[blk]);
      }
      value = combined_value;
    } else {
      std::size_t pick = nb;
      for (std::size_t blk = 0; blk < nb; ++blk) {
        if (moves[blk] && (pick == nb || moves[blk]->gain > moves[pick]->gain)) pick = blk;
      }
      apply(pick, *moves[pick]);
      value = table.objective(out.traffic, out.penalty);
    }
    ++out.rounds;
    out.objective_trace.push_back(value);
  }
  out.objective = value;

  for (std::size_t blk = 0; blk < nb; ++blk) {
    BlockResult br;
    br.application = blk / sc.B();
    br.contract = blk % sc.B();
    br.baseline = out.baseline.blocks[blk];
    br.result.N = decs[blk].N;
    br.result.prices = recover_prices(slices[blk], decs[blk], opt.source);
    br.result.decomposition = std::move(decs[blk]);
    br.result.value = table.block_value(out.traffic, blk);
    br.result.trace = std::move(traces[blk]);
    br.result.iterations = iterations[blk];
    out.blocks.push_back(std::move(br));
  }
  return out;
}

// True when no single exchange in block `blk` improves the objective with
// the other blocks frozen.
inline bool block_is_optimal(const Scenario& sc, const GeneralResult& r, std::size_t blk) {
  const CurveTable table(sc);
  const Slice slice = make_slice(sc, blk / sc.B(), blk % sc.B());
  ExchangeGraph graph = ExchangeGraph::build(slice, r.blocks[blk].result.decomposition);
  const BlockObjective f(table, r.traffic, blk, r.penalty);
  return !best_move(f, r.traffic.blocks[blk], [&](Slot i) { return graph.reachable_from(i); }).has_value();
}

enum class SolveMode { kAuto, kSingle, kMajor, kGeneral };

inline const char* mode_name(SolveMode m) {
  switch (m) {
    case SolveMode::kAuto: return "auto";
    case SolveMode::kSingle: return "single";
    case SolveMode::kMajor: return "major";
    case SolveMode::kGeneral: return "general";
  }
  return "auto";
}

inline SolveMode resolve_mode(const Scenario& sc, SolveMode requested) {
  if (requested != SolveMode::kAuto) return requested;
  if (sc.A() != 1 || sc.B() != 1) return SolveMode::kGeneral;
  for (std::size_t k = 0; k < sc.K(); ++k) {
    if (!feasible_set(sc, k, 0).forbidden.empty()) return SolveMode::kSingle;
  }
  return SolveMode::kMajor;
}

// Solves a validated scenario in the requested mode; single-block modes are
// reported as a one-block general result.
inline GeneralResult solve_scenario(const Scenario& sc, SolveMode mode, Slot source = 0) {
  mode = resolve_mode(sc, mode);
  if (mode == SolveMode::kGeneral) {
    GeneralOptions opt;
    opt.source = source;
    return solve_general(sc, opt);
  }
  if (sc.A() != 1 || sc.B() != 1) {
    throw ValidationError(std::string("mode ") + mode_name(mode) + " needs one application and one contract");
  }
  const Slice slice = make_slice(sc, 0, 0);
  const SatisfactionObjective f(sc, 0, 0);
  const Decomposition start = initial_decomposition(slice);
  GeneralResult out;
  out.penalty = f.penalty();
  out.baseline = BlockTraffic(1, 1, slice.n);
  out.baseline.blocks[0] = start.N;
  BlockResult br;
  br.baseline = start.N;
  br.result = mode == SolveMode::kMajor ? solve_major(slice, f, start.N, {}, source)
                                        : solve_single(slice, f, start, {}, source);
  out.traffic = BlockTraffic(1, 1, slice.n);
  out.traffic.blocks[0] = br.result.N;
  const CurveTable table(sc);
  out.baseline_objective = table.objective(out.baseline, out.penalty);
  out.objective = table.objective(out.traffic, out.penalty);
  for (const auto& N : br.result.trace) {
    BlockTraffic t(1, 1, slice.n);
    t.blocks[0] = N;
    out.objective_trace.push_back(table.objective(t, out.penalty));
  }
  out.rounds = br.result.iterations;
  br.result.value = table.block_value(out.traffic, 0);
  out.blocks.push_back(std::move(br));
  return out;
}

}  // namespace incentive

#endif  // INCENTIVE_BILEVEL_HPP
