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

// Exchange graph of an optimal decomposition N = sum_k u_k. Vertices are
// slots; arc i -> j carries min_k rho_k(i) - rho_k(j) over the customers
// that consume at i, not at j, and may consume at j. A finite path i ~> j
// certifies N - e_i + e_j as achievable, and a shortest one tells which
// customers to move so the decomposition stays optimal. Shortest distances
// from a source with big-M completion are supporting prices.

#ifndef INCENTIVE_EXCHANGE_GRAPH_HPP
#define INCENTIVE_EXCHANGE_GRAPH_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <deque>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "incentive/core_model.hpp"
#include "incentive/customer_response.hpp"
#include "incentive/errors.hpp"

namespace incentive {

inline constexpr std::size_t kNoCustomer = std::numeric_limits<std::size_t>::max();

// A traffic vector together with one profile per slice customer.
struct Decomposition {
  std::vector<ConsumptionProfile> profiles;
  TrafficVector N;
  double psi = 0.0;  // -sum_k <rho_k, u_k>

  static Decomposition from_profiles(const Slice& slice, std::vector<ConsumptionProfile> profiles) {
    if (profiles.size() != slice.K()) throw ValidationError("decomposition: one profile per customer required");
    Decomposition d;
    d.N.assign(slice.n, 0);
    for (std::size_t k = 0; k < profiles.size(); ++k) {
      const auto& u = profiles[k];
      const auto& set = slice.customers[k].set;
      if (u.size() != slice.n) throw ValidationError("decomposition: profile has wrong length");
      int ones = 0;
      for (Slot i = 0; i < slice.n; ++i) {
        if (!u[i]) continue;
        if (!set.is_allowed(i)) throw ValidationError("decomposition: profile uses a forbidden slot");
        ++d.N[i];
        ++ones;
      }
      if (ones != set.demand) throw ValidationError("decomposition: profile does not meet demand");
      d.psi -= profile_score(slice.customers[k].score, u);
    }
    d.profiles = std::move(profiles);
    return d;
  }
};

struct Arc {
  Slot from = 0;
  Slot to = 0;
  double weight = 0.0;
};

struct ShortestPathTree {
  std::vector<double> distance;
  std::vector<Slot> predecessor;
  bool negative_cycle = false;
};

inline constexpr Slot kNoSlot = std::numeric_limits<Slot>::max();

inline bool improves(double candidate, double current) { return candidate < current; }

inline ShortestPathTree bellman_ford(std::size_t n, std::span<const Arc> arcs, Slot source) {
  ShortestPathTree tree;
  tree.distance.assign(n, kInfinity);
  tree.predecessor.assign(n, kNoSlot);
  tree.distance[source] = 0.0;
  for (std::size_t pass = 0; pass < n; ++pass) {
    bool changed = false;
    for (const Arc& a : arcs) {
      if (tree.distance[a.from] == kInfinity) continue;
      const double cand = tree.distance[a.from] + a.weight;
      if (improves(cand, tree.distance[a.to])) {
        tree.distance[a.to] = cand;
        tree.predecessor[a.to] = a.from;
        changed = true;
      }
    }
    if (!changed) return tree;
  }
  // Still relaxing after n passes.
  tree.negative_cycle = true;
  return tree;
}

struct ExchangePath {
  std::vector<Slot> slots;               // i = slots.front(), j = slots.back()
  std::vector<std::size_t> customers;    // customer moved along each arc
  double length = 0.0;
};

class ExchangeGraph {
 public:
  ExchangeGraph() = default;

  static ExchangeGraph build(const Slice& slice, const Decomposition& dec) {
    ExchangeGraph g;
    g.n_ = slice.n;
    g.weight_.assign(g.n_ * g.n_, kInfinity);
    g.arg_.assign(g.n_ * g.n_, kNoCustomer);
    g.slot_customers_.assign(g.n_, {});
    for (std::size_t k = 0; k < slice.K(); ++k) {
      const auto& sk = slice.customers[k];
      for (Slot i = 0; i < g.n_; ++i) {
        if (sk.set.is_allowed(i)) g.slot_customers_[i].push_back(k);
      }
    }
    for (std::size_t k = 0; k < slice.K(); ++k) {
      const auto& sk = slice.customers[k];
      const auto& u = dec.profiles[k];
      for (Slot i = 0; i < g.n_; ++i) {
        if (!u[i]) continue;
        for (Slot j = 0; j < g.n_; ++j) {
          if (u[j] || !sk.set.is_allowed(j)) continue;
          const double w = sk.score[i] - sk.score[j];
          if (w < g.weight_[g.index(i, j)]) {
            g.weight_[g.index(i, j)] = w;
            g.arg_[g.index(i, j)] = k;
          }
        }
      }
    }
    g.adjacency_dirty_ = true;
    return g;
  }

  std::size_t size() const { return n_; }
  double weight(Slot i, Slot j) const { return weight_[index(i, j)]; }
  bool has_arc(Slot i, Slot j) const { return weight_[index(i, j)] < kInfinity; }
  std::size_t arg_customer(Slot i, Slot j) const { return arg_[index(i, j)]; }

  std::vector<Arc> arcs() const {
    std::vector<Arc> out;
    for (Slot i = 0; i < n_; ++i) {
      for (Slot j = 0; j < n_; ++j) {
        if (has_arc(i, j)) out.push_back({i, j, weight(i, j)});
      }
    }
    return out;
  }

  // Slots reachable from i along finite arcs (i itself included).
  std::vector<char> reachable_from(Slot i) const {
    refresh_adjacency();
    std::vector<char> seen(n_, 0);
    std::vector<Slot> stack{i};
    seen[i] = 1;
    while (!stack.empty()) {
      const Slot v = stack.back();
      stack.pop_back();
      for (Slot w : out_[v]) {
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
      }
    }
    return seen;
  }

  bool neighbor_feasible(Slot i, Slot j) const {
    check_slot(i);
    check_slot(j);
    if (i == j) return true;
    return reachable_from(i)[j] != 0;
  }

  ExchangePath shortest_path(Slot i, Slot j) const {
    check_slot(i);
    check_slot(j);
    ExchangePath path;
    path.slots.push_back(i);
    if (i == j) return path;
    const auto all = arcs();
    const ShortestPathTree tree = bellman_ford(n_, all, i);
    if (tree.negative_cycle) {
      throw InvariantError("exchange graph has a negative cycle: decomposition is not optimal");
    }
    if (tree.distance[j] == kInfinity) {
      throw InfeasibleError("slot " + std::to_string(j) + " is not reachable from slot " + std::to_string(i));
    }
    std::vector<Slot> rev;
    for (Slot v = j; v != kNoSlot; v = tree.predecessor[v]) {
      rev.push_back(v);
      if (rev.size() > n_) throw InvariantError("exchange graph: predecessor chain does not terminate");
    }
    path.slots.assign(rev.rbegin(), rev.rend());
    for (std::size_t q = 0; q + 1 < path.slots.size(); ++q) {
      const Slot a = path.slots[q];
      const Slot b = path.slots[q + 1];
      path.customers.push_back(arg_customer(a, b));
      path.length += weight(a, b);
    }
    return path;
  }

  // Moves one request of N from i to j along a shortest path, keeping the
  // decomposition optimal, and patches the arcs of the customers involved.
  // Returns the path used.
  ExchangePath exchange(const Slice& slice, Decomposition& dec, Slot i, Slot j) {
    ExchangePath path = shortest_path(i, j);
    if (path.slots.size() < 2) return path;
    std::vector<std::vector<Slot>> flipped(slice.K());
    for (std::size_t q = 0; q + 1 < path.slots.size(); ++q) {
      const std::size_t k = path.customers[q];
      const Slot a = path.slots[q];
      const Slot b = path.slots[q + 1];
      auto& u = dec.profiles[k];
      if (u[a] != 1 || u[b] != 0) throw InvariantError("exchange: arc owner does not match its profile");
      u[a] = 0;
      u[b] = 1;
      flipped[k].push_back(a);
      flipped[k].push_back(b);
    }
    --dec.N[i];
    ++dec.N[j];
    dec.psi += path.length;
    patch(slice, dec, flipped);
    return path;
  }

 private:
  std::size_t index(Slot i, Slot j) const { return i * n_ + j; }

  void check_slot(Slot i) const {
    if (i >= n_) throw ValidationError("exchange graph: slot " + std::to_string(i) + " out of range");
  }

  void recompute_arc(const Slice& slice, const Decomposition& dec, Slot a, Slot b) {
    double best = kInfinity;
    std::size_t who = kNoCustomer;
    if (a != b) {
      for (std::size_t k : slot_customers_[a]) {
        const auto& u = dec.profiles[k];
        const auto& sk = slice.customers[k];
        if (u[a] != 1 || u[b] != 0 || !sk.set.is_allowed(b)) continue;
        const double w = sk.score[a] - sk.score[b];
        if (w < best) {
          best = w;
          who = k;
        }
      }
    }
    weight_[index(a, b)] = best;
    arg_[index(a, b)] = who;
  }

  void patch(const Slice& slice, const Decomposition& dec, const std::vector<std::vector<Slot>>& flipped) {
    std::vector<char> mark(n_ * n_, 0);
    std::vector<std::size_t> todo;
    auto touch = [&](Slot a, Slot b) {
      if (a == b) return;
      const std::size_t idx = index(a, b);
      if (!mark[idx]) {
        mark[idx] = 1;
        todo.push_back(idx);
      }
    };
    for (std::size_t k = 0; k < flipped.size(); ++k) {
      if (flipped[k].empty()) continue;
      const auto& set = slice.customers[k].set;
      for (Slot f : flipped[k]) {
        for (Slot other = 0; other < n_; ++other) {
          if (!set.is_allowed(other)) continue;
          touch(f, other);
          touch(other, f);
        }
      }
    }
    for (std::size_t idx : todo) recompute_arc(slice, dec, idx / n_, idx % n_);
    adjacency_dirty_ = true;
  }

  void refresh_adjacency() const {
    if (!adjacency_dirty_) return;
    out_.assign(n_, {});
    for (Slot i = 0; i < n_; ++i) {
      for (Slot j = 0; j < n_; ++j) {
        if (has_arc(i, j)) out_[i].push_back(j);
      }
    }
    adjacency_dirty_ = false;
  }

  std::size_t n_ = 0;
  std::vector<double> weight_;
  std::vector<std::size_t> arg_;
  std::vector<std::vector<std::size_t>> slot_customers_;
  mutable std::vector<std::vector<Slot>> out_;
  mutable bool adjacency_dirty_ = true;
};

// Value-returning form of ExchangeGraph::exchange.
inline Decomposition exchange(const Slice& slice, const Decomposition& dec, const ExchangeGraph& graph, Slot i,
                              Slot j) {
  Decomposition next = dec;
  ExchangeGraph scratch = graph;
  scratch.exchange(slice, next, i, j);
  return next;
}

struct RecoveredPrices {
  PriceSchedule raw;          // y_s = 0, shortest-path distances elsewhere
  PriceSchedule nonnegative;  // raw shifted so its minimum is 0
  double big_m = 0.0;
  Slot source = 0;
};

// Supporting prices for an optimal decomposition: missing arcs s -> t get
// weight M = 1 + n * max |w_ij|, then y_t = dist(s, t).
inline RecoveredPrices recover_prices(const Slice& slice, const Decomposition& dec, Slot source = 0) {
  RecoveredPrices out;
  out.source = source;
  if (slice.n == 0) return out;
  if (source >= slice.n) throw ValidationError("recover_prices: source slot out of range");
  const ExchangeGraph g = ExchangeGraph::build(slice, dec);
  std::vector<Arc> arcs = g.arcs();
  if (arcs.empty()) {
    // No customer can trade any request: every price vector supports N.
    out.raw.assign(slice.n, 0.0);
    out.nonnegative.assign(slice.n, 0.0);
    out.big_m = 1.0;
    return out;
  }
  double max_abs = 0.0;
  for (const Arc& a : arcs) max_abs = std::max(max_abs, std::abs(a.weight));
  out.big_m = 1.0 + static_cast<double>(slice.n) * max_abs;
  for (Slot t = 0; t < slice.n; ++t) {
    if (t != source && !g.has_arc(source, t)) arcs.push_back({source, t, out.big_m});
  }
  const ShortestPathTree tree = bellman_ford(slice.n, arcs, source);
  if (tree.negative_cycle) throw InvariantError("price recovery: negative cycle after big-M completion");
  out.raw = tree.distance;
  out.raw[source] = 0.0;
  const double lo = *std::min_element(out.raw.begin(), out.raw.end());
  out.nonnegative = out.raw;
  for (double& v : out.nonnegative) v -= lo;
  return out;
}

}  // namespace incentive

#endif  // INCENTIVE_EXCHANGE_GRAPH_HPP
