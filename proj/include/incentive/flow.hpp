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

// Transportation network between customers and slots:
//   source -> customer k (capacity R_k), k -> slot i (capacity 1, i allowed
//   for k), slot i -> sink (capacity N_i).
// Max-flow decides whether N is a sum of one profile per customer; min-cost
// flow with arc costs -rho_k(i) finds the profiles maximizing total score.

#ifndef INCENTIVE_FLOW_HPP
#define INCENTIVE_FLOW_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <queue>
#include <utility>
#include <vector>

#include "incentive/core_model.hpp"
#include "incentive/customer_response.hpp"
#include "incentive/errors.hpp"
#include "incentive/exchange_graph.hpp"

namespace incentive {

class FlowNetwork {
 public:
  struct Edge {
    std::size_t to;
    long capacity;
    double cost;
    std::size_t reverse;  // index of the paired edge in adj_[to]
  };

  explicit FlowNetwork(std::size_t nodes) : adj_(nodes) {}

  // Returns a handle (node, position) of the forward edge.
  std::pair<std::size_t, std::size_t> add_edge(std::size_t from, std::size_t to, long capacity, double cost = 0.0) {
    adj_[from].push_back({to, capacity, cost, adj_[to].size()});
    adj_[to].push_back({from, 0, -cost, adj_[from].size() - 1});
    return {from, adj_[from].size() - 1};
  }

  std::size_t size() const { return adj_.size(); }
  const std::vector<Edge>& edges(std::size_t v) const { return adj_[v]; }
  const Edge& edge(std::pair<std::size_t, std::size_t> h) const { return adj_[h.first][h.second]; }
  long flow(std::pair<std::size_t, std::size_t> h) const {
    const Edge& e = edge(h);
    return adj_[e.to][e.reverse].capacity;
  }

  // Dinic's algorithm.
  long max_flow(std::size_t s, std::size_t t) {
    long total = 0;
    std::vector<long> level(adj_.size());
    std::vector<std::size_t> it(adj_.size());
    while (true) {
      std::fill(level.begin(), level.end(), -1);
      std::queue<std::size_t> q;
      level[s] = 0;
      q.push(s);
      while (!q.empty()) {
        const std::size_t v = q.front();
        q.pop();
        for (const Edge& e : adj_[v]) {
          if (e.capacity > 0 && level[e.to] < 0) {
            level[e.to] = level[v] + 1;
            q.push(e.to);
          }
        }
      }
      if (level[t] < 0) return total;
      std::fill(it.begin(), it.end(), 0);
      while (long pushed = augment(s, t, std::numeric_limits<long>::max(), level, it)) total += pushed;
    }
  }

  // Successive shortest paths with node potentials. Pushes at most `limit`
  // units from s to t; returns (flow, cost). `potential` holds the final
  // node potentials (reduced costs of residual arcs are >= 0).
  std::pair<long, double> min_cost_flow(std::size_t s, std::size_t t, long limit, std::vector<double>& potential) {
    const std::size_t V = adj_.size();
    potential = initial_potentials();
    long flow = 0;
    double cost = 0.0;
    std::vector<double> dist(V);
    std::vector<std::pair<std::size_t, std::size_t>> prev(V);
    while (flow < limit) {
      std::fill(dist.begin(), dist.end(), kInfinity);
      dist[s] = 0.0;
      using Item = std::pair<double, std::size_t>;
      std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
      pq.push({0.0, s});
      while (!pq.empty()) {
        const auto [d, v] = pq.top();
        pq.pop();
        if (d > dist[v]) continue;
        for (std::size_t ei = 0; ei < adj_[v].size(); ++ei) {
          const Edge& e = adj_[v][ei];
          if (e.capacity <= 0) continue;
          const double reduced = std::max(0.0, e.cost + potential[v] - potential[e.to]);
          if (dist[v] + reduced < dist[e.to]) {
            dist[e.to] = dist[v] + reduced;
            prev[e.to] = {v, ei};
            pq.push({dist[e.to], e.to});
          }
        }
      }
      if (dist[t] == kInfinity) break;
      double reach = 0.0;
      for (double d : dist) {
        if (d < kInfinity) reach = std::max(reach, d);
      }
      for (std::size_t v = 0; v < V; ++v) potential[v] += dist[v] < kInfinity ? dist[v] : reach;
      long push = limit - flow;
      for (std::size_t v = t; v != s; v = prev[v].first) {
        push = std::min(push, adj_[prev[v].first][prev[v].second].capacity);
      }
      for (std::size_t v = t; v != s; v = prev[v].first) {
        Edge& e = adj_[prev[v].first][prev[v].second];
        e.capacity -= push;
        adj_[v][e.reverse].capacity += push;
        cost += static_cast<double>(push) * e.cost;
      }
      flow += push;
    }
    return {flow, cost};
  }

 private:
  long augment(std::size_t v, std::size_t t, long f, const std::vector<long>& level, std::vector<std::size_t>& it) {
    if (v == t) return f;
    for (; it[v] < adj_[v].size(); ++it[v]) {
      Edge& e = adj_[v][it[v]];
      if (e.capacity <= 0 || level[e.to] != level[v] + 1) continue;
      const long d = augment(e.to, t, std::min(f, e.capacity), level, it);
      if (d > 0) {
        e.capacity -= d;
        adj_[e.to][e.reverse].capacity += d;
        return d;
      }
    }
    return 0;
  }

  // Shortest distances from a virtual source joined to every node by a
  // zero-cost arc: valid potentials for the whole residual graph.
  std::vector<double> initial_potentials() const {
    const std::size_t V = adj_.size();
    std::vector<double> d(V, 0.0);
    for (std::size_t pass = 0; pass < V; ++pass) {
      bool changed = false;
      for (std::size_t v = 0; v < V; ++v) {
        for (const Edge& e : adj_[v]) {
          if (e.capacity > 0 && d[v] + e.cost < d[e.to]) {
            d[e.to] = d[v] + e.cost;
            changed = true;
          }
        }
      }
      if (!changed) break;
    }
    return d;
  }

  std::vector<std::vector<Edge>> adj_;
};

// The customer/slot network for a slice and a target traffic vector.
struct TransportNetwork {
  FlowNetwork net;
  std::size_t source;
  std::size_t sink;
  std::vector<std::vector<std::pair<std::pair<std::size_t, std::size_t>, Slot>>> assignment;  // per customer

  TransportNetwork(const Slice& slice, const TrafficVector& N)
      : net(slice.K() + slice.n + 2), source(slice.K() + slice.n), sink(slice.K() + slice.n + 1),
        assignment(slice.K()) {
    for (std::size_t k = 0; k < slice.K(); ++k) {
      const auto& sk = slice.customers[k];
      net.add_edge(source, k, sk.set.demand);
      for (Slot i = 0; i < slice.n; ++i) {
        if (sk.set.is_allowed(i)) assignment[k].push_back({net.add_edge(k, slice.K() + i, 1, -sk.score[i]), i});
      }
    }
    for (Slot i = 0; i < slice.n; ++i) net.add_edge(slice.K() + i, sink, N[i]);
  }

  std::vector<ConsumptionProfile> profiles(std::size_t n) const {
    std::vector<ConsumptionProfile> out(assignment.size(), ConsumptionProfile(n, 0));
    for (std::size_t k = 0; k < assignment.size(); ++k) {
      for (const auto& [handle, slot] : assignment[k]) {
        if (net.flow(handle) > 0) out[k][slot] = 1;
      }
    }
    return out;
  }
};

namespace detail {
inline bool totals_match(const Slice& slice, const TrafficVector& N) {
  if (N.size() != slice.n) throw ValidationError("traffic vector has wrong length");
  long total = 0;
  for (long v : N) {
    if (v < 0) return false;
    total += v;
  }
  return total == slice.total_demand();
}
}  // namespace detail

// Membership of N in the Minkowski sum of the customers' feasible sets;
// returns a witness decomposition when N belongs to it.
inline std::optional<Decomposition> minkowski_member(const Slice& slice, const TrafficVector& N) {
  if (!detail::totals_match(slice, N)) return std::nullopt;
  TransportNetwork tn(slice, N);
  if (tn.net.max_flow(tn.source, tn.sink) != slice.total_demand()) return std::nullopt;
  return Decomposition::from_profiles(slice, tn.profiles(slice.n));
}

struct FlowDecomposition {
  Decomposition decomposition;
  double value = 0.0;  // sum_k <rho_k, u_k>
  std::vector<double> potential;
  // Reduced cost of every residual arc under `potential` is >= this value
  // (0 up to rounding at an optimum).
  double min_reduced_cost = 0.0;
};

// Profiles u_k with sum_k u_k = N maximizing sum_k <rho_k, u_k>.
inline FlowDecomposition mincostflow_decompose(const Slice& slice, const TrafficVector& N) {
  if (!detail::totals_match(slice, N)) throw InfeasibleError("mincostflow_decompose: totals do not match");
  TransportNetwork tn(slice, N);
  FlowDecomposition out;
  const auto [flow, cost] = tn.net.min_cost_flow(tn.source, tn.sink, slice.total_demand(), out.potential);
  if (flow != slice.total_demand()) throw InfeasibleError("mincostflow_decompose: traffic vector is not achievable");
  out.decomposition = Decomposition::from_profiles(slice, tn.profiles(slice.n));
  out.value = -out.decomposition.psi;
  double worst = kInfinity;
  for (std::size_t v = 0; v < tn.net.size(); ++v) {
    for (const auto& e : tn.net.edges(v)) {
      if (e.capacity > 0) worst = std::min(worst, e.cost + out.potential[v] - out.potential[e.to]);
    }
  }
  out.min_reduced_cost = worst == kInfinity ? 0.0 : worst;
  (void)cost;
  return out;
}

}  // namespace incentive

#endif  // INCENTIVE_FLOW_HPP
