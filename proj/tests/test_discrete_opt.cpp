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

#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "incentive/incentive.hpp"
#include "oracles/brute_force.hpp"
#include "support/examples.hpp"

namespace incentive {
namespace {

TEST(InitialDecomposition, Examples) {
  const auto d = initial_decomposition(fixture::example1());
  EXPECT_EQ(d.N, (TrafficVector{3, 3, 1}));
  EXPECT_EQ(d.profiles, fixture::example1_start());
  const Slice same = make_dense_slice({{1, 1, 1}, {1, 1, 1}, {1, 1, 1}, {1, 1, 1}}, {1, 1, 1, 1});
  EXPECT_EQ(initial_decomposition(same).N, (TrafficVector{4, 0, 0}));
  const Slice one = make_dense_slice({{2, 1, 0}}, {2});
  EXPECT_EQ(initial_decomposition(one).N, (TrafficVector{1, 1, 0}));
}

TEST(Greedy, WorkedExampleTrajectory) {
  const Slice s = fixture::example1();
  const Decomposition start = decomposition_at(s, {5, 2, 0});
  const auto r = greedy_maximize(s, start, fixture::NegSquares{});
  EXPECT_EQ(r.trace, (std::vector<TrafficVector>{{5, 2, 0}, {4, 2, 1}, {3, 2, 2}}));
  EXPECT_EQ(r.iterations, 2u);
  EXPECT_EQ(r.value, -17.0);
  EXPECT_EQ(r.decomposition.psi, -3.5);
}

TEST(Greedy, ZeroPriceStartReachesTheSameOptimum) {
  const Slice s = fixture::example1();
  const auto r = greedy_maximize(s, initial_decomposition(s), fixture::NegSquares{});
  EXPECT_EQ(r.decomposition.N, (TrafficVector{3, 2, 2}));
  EXPECT_EQ(r.decomposition.profiles, fixture::example1_optimum());
}

TEST(Greedy, OptimalStartDoesNothing) {
  const Slice s = fixture::example1();
  const auto r = greedy_maximize(s, decomposition_at(s, {3, 2, 2}), fixture::NegSquares{});
  EXPECT_EQ(r.iterations, 0u);
  EXPECT_EQ(r.trace.size(), 1u);
}

TEST(Greedy, IterationCapIsEnforced) {
  const Slice s = fixture::example1();
  GreedyOptions opt;
  opt.max_iterations = 1;
  EXPECT_THROW(greedy_maximize(s, decomposition_at(s, {5, 2, 0}), fixture::NegSquares{}, opt), InvariantError);
}

TEST(BestMove, PrefersLexicographicallyGreatestTie) {
  const TrafficVector N{3, 3, 1};
  const auto all = [](Slot) { return std::vector<char>(3, 1); };
  const auto m = best_move(fixture::NegSquares{}, N, all);
  ASSERT_TRUE(m.has_value());
  EXPECT_EQ(m->from, 1u);
  EXPECT_EQ(m->to, 2u);
  EXPECT_EQ(m->gain, 2.0);
  const TrafficVector flat{2, 2, 2};
  EXPECT_FALSE(best_move(fixture::NegSquares{}, flat, all).has_value());
}

TEST(GreedyProperty, MatchesEnumeratedMaximum) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const Slice s = oracle::random_slice(rng, {});
    const auto f = oracle::random_concave(rng, s.n, s.total_demand());
    const auto r = greedy_maximize(s, initial_decomposition(s), f);
    ASSERT_EQ(r.value, oracle::max_objective(s, f)) << "trial " << trial;
    ASSERT_LE(r.iterations, static_cast<std::size_t>(2 * s.total_demand()));
    for (std::size_t q = 1; q < r.trace.size(); ++q) ASSERT_GT(evaluate(f, r.trace[q]), evaluate(f, r.trace[q - 1]));
  }
}

TEST(GreedyProperty, LocalOptimaAreGlobal) {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 150; ++trial) {
    const Slice s = oracle::random_slice(rng, {});
    const auto f = oracle::random_concave(rng, s.n, s.total_demand());
    const auto sum = oracle::minkowski_sum(s);
    double best = -kInfinity;
    for (const auto& [N, unused] : sum) best = std::max(best, evaluate(f, N));
    for (const auto& [N, unused] : sum) {
      bool local = true;
      for (Slot i = 0; i < s.n && local; ++i) {
        for (Slot j = 0; j < s.n && local; ++j) {
          if (i == j || N[i] == 0) continue;
          TrafficVector M = N;
          --M[i];
          ++M[j];
          if (sum.count(M) && evaluate(f, M) > evaluate(f, N)) local = false;
        }
      }
      if (local) {
        ASSERT_EQ(evaluate(f, N), best);
      }
    }
  }
}

// Concave table minus a capacity penalty heavier than any table value.
struct Capped {
  oracle::ConcaveTable table;
  std::vector<long> cap;
  double penalty;
  double operator()(Slot i, long x) const {
    return table(i, x) - penalty * static_cast<double>(std::max<long>(0, x - cap[i]));
  }
};

TEST(GreedyProperty, StaysFeasibleOnceFeasible) {
  std::mt19937_64 rng(33);
  int reached = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const Slice s = oracle::random_slice(rng, {});
    Capped f{oracle::random_concave(rng, s.n, s.total_demand()), {}, 0.0};
    for (Slot i = 0; i < s.n; ++i) f.cap.push_back(static_cast<long>(rng() % 4));
    f.penalty = 1.0 + 6.0 * static_cast<double>(s.total_demand() + 1) * static_cast<double>(s.n) * 4.0;
    const auto r = greedy_maximize(s, initial_decomposition(s), f);
    bool feasible = false;
    for (const auto& N : r.trace) {
      bool ok = true;
      for (Slot i = 0; i < s.n; ++i) ok = ok && N[i] <= f.cap[i];
      if (feasible) {
        ASSERT_TRUE(ok);
      }
      feasible = feasible || ok;
    }
    reached += feasible;
    ASSERT_EQ(r.value, oracle::max_objective(s, f));
  }
  EXPECT_GT(reached, 20);
}

TEST(MinkowskiMember, Examples) {
  const Slice s = fixture::example1();
  EXPECT_TRUE(minkowski_member(s, {3, 2, 2}).has_value());
  EXPECT_FALSE(minkowski_member(s, {6, 1, 0}).has_value());
  EXPECT_FALSE(minkowski_member(s, {3, 2, 1}).has_value());
  const auto w = minkowski_member(s, {3, 3, 1});
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->N, (TrafficVector{3, 3, 1}));
}

TEST(MinkowskiMemberProperty, AgreesWithEnumerationAndExchangeAxiom) {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 150; ++trial) {
    const Slice s = oracle::random_slice(rng, {});
    const auto sum = oracle::minkowski_sum(s);
    for (const auto& N : oracle::simplex_slice(s.n, s.total_demand())) {
      const auto w = minkowski_member(s, N);
      ASSERT_EQ(w.has_value(), sum.count(N) != 0);
      if (w) {
        ASSERT_EQ(w->N, N);
      }
    }
    std::vector<TrafficVector> pts;
    for (const auto& [N, unused] : sum) pts.push_back(N);
    for (int q = 0; q < 10; ++q) {
      const TrafficVector& N = pts[rng() % pts.size()];
      const TrafficVector& M = pts[rng() % pts.size()];
      for (Slot i = 0; i < s.n; ++i) {
        if (N[i] <= M[i]) continue;
        bool found = false;
        for (Slot j = 0; j < s.n && !found; ++j) {
          if (N[j] >= M[j]) continue;
          TrafficVector a = N, b = M;
          --a[i];
          ++a[j];
          ++b[i];
          --b[j];
          found = minkowski_member(s, a).has_value() && minkowski_member(s, b).has_value();
        }
        ASSERT_TRUE(found);
      }
    }
  }
}

TEST(MinCostFlow, Examples) {
  const Slice two = make_dense_slice({{1, 0}, {0, 1}}, {1, 1});
  const auto a = mincostflow_decompose(two, {1, 1});
  EXPECT_EQ(a.decomposition.profiles, (std::vector<ConsumptionProfile>{{1, 0}, {0, 1}}));
  EXPECT_EQ(a.value, 2.0);
  const auto b = mincostflow_decompose(fixture::example1(), {3, 2, 2});
  EXPECT_EQ(b.value, 3.5);
  EXPECT_EQ(b.decomposition.profiles, fixture::example1_optimum());
  EXPECT_THROW(mincostflow_decompose(fixture::example1(), {6, 1, 0}), InfeasibleError);
}

TEST(MinCostFlowProperty, MatchesEnumeratedBest) {
  std::mt19937_64 rng(35);
  for (int trial = 0; trial < 200; ++trial) {
    const Slice s = oracle::random_slice(rng, {});
    for (const auto& [N, value] : oracle::minkowski_sum(s)) {
      const auto r = mincostflow_decompose(s, N);
      ASSERT_EQ(r.value, value);
      ASSERT_EQ(r.decomposition.N, N);
      ASSERT_GE(r.min_reduced_cost, -1e-9);
    }
  }
}

}  // namespace
}  // namespace incentive
