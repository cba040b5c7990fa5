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

#include <cmath>
#include <random>
#include <vector>

#include "incentive/incentive.hpp"
#include "oracles/brute_force.hpp"
#include "support/examples.hpp"

namespace incentive {
namespace {

// Small scenario whose applications split the time axis between them.
Scenario random_scenario(std::mt19937_64& rng, std::size_t A, std::size_t B) {
  Scenario sc;
  sc.T = 1 + static_cast<int>(rng() % 3);
  sc.L = 1 + static_cast<int>(rng() % 2);
  for (std::size_t a = 0; a < A; ++a) {
    sc.applications.push_back({"app" + std::to_string(a), rng() % 2 ? ApplicationKind::kRealtime : ApplicationKind::kElastic});
  }
  for (std::size_t b = 0; b < B; ++b) sc.contracts.push_back({1.0 + static_cast<double>(b), 1.0 + 0.5 * static_cast<double>(rng() % 4)});
  for (int l = 0; l < sc.L; ++l) {
    const int nc = 2 + static_cast<int>(rng() % 4);
    sc.cells.push_back({static_cast<int>(rng() % static_cast<unsigned>(nc)), nc});
  }
  const std::size_t K = 1 + rng() % 4;
  for (std::size_t k = 0; k < K; ++k) {
    Customer c;
    c.contract = rng() % B;
    for (int t = 0; t < sc.T; ++t) c.trajectory.push_back(rng() % static_cast<unsigned>(sc.L));
    std::vector<std::size_t> owner;
    for (int t = 0; t < sc.T; ++t) owner.push_back(rng() % (A + 1));
    for (std::size_t a = 0; a < A; ++a) {
      ApplicationDemand app;
      int allowed = 0;
      for (int t = 0; t < sc.T; ++t) {
        if (owner[static_cast<std::size_t>(t)] == a) {
          app.preferences.emplace_back(0.5 * static_cast<double>(rng() % 5) - 1.0);
          ++allowed;
        } else {
          app.preferences.push_back(Preference::forbidden());
          app.forbidden_times.push_back(t);
        }
      }
      app.demand = static_cast<int>(rng() % static_cast<unsigned>(allowed + 1));
      app.sensitivity = rng() % 2 ? 1.0 : 0.5;
      c.apps.push_back(app);
    }
    sc.customers.push_back(c);
  }
  validate(sc);
  return sc;
}

TEST(SolveSingle, WorkedExample) {
  const Slice s = fixture::example1();
  const auto r = solve_single(s, fixture::NegSquares{});
  EXPECT_EQ(r.N, (TrafficVector{3, 2, 2}));
  EXPECT_EQ(r.value, -17.0);
  EXPECT_TRUE(fixture::in_example1_polytope(r.prices.raw));
  EXPECT_TRUE(fixture::in_example1_polytope(r.prices.nonnegative));
}

TEST(SolveSingle, EmptyMarket) {
  const Slice s = make_dense_slice({}, {}, 3);
  const auto r = solve_single(s, fixture::NegSquares{});
  EXPECT_EQ(r.N, (TrafficVector{0, 0, 0}));
  EXPECT_EQ(r.prices.raw, (PriceSchedule{0, 0, 0}));
  EXPECT_EQ(r.iterations, 0u);
}

TEST(SolveSingleProperty, PricesReproduceTheTarget) {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 200; ++trial) {
    const Slice s = oracle::random_slice(rng, {});
    const auto f = oracle::random_concave(rng, s.n, s.total_demand());
    const auto r = solve_single(s, f);
    ASSERT_EQ(r.value, oracle::max_objective(s, f));
    for (const PriceSchedule& y : {r.prices.raw, r.prices.nonnegative}) {
      TrafficVector replay(s.n, 0);
      for (std::size_t k = 0; k < s.K(); ++k) {
        const auto& c = s.customers[k];
        const ArgmaxSet am = argmax_set(c.set, c.score, y);
        ASSERT_TRUE(am.contains(c.set, r.decomposition.profiles[k]));
        for (Slot i = 0; i < s.n; ++i) replay[i] += r.decomposition.profiles[k][i];
        for (double beta : {-5.0, 1.0, 7.0}) {
          PriceSchedule z = y;
          for (double& v : z) v += beta;
          const ArgmaxSet shifted = argmax_set(c.set, c.score, z);
          for (const auto& u : oracle::all_profiles(c.set)) ASSERT_EQ(am.contains(c.set, u), shifted.contains(c.set, u));
        }
      }
      ASSERT_EQ(replay, r.N);
    }
  }
}

TEST(SolveSingleProperty, MatchesRelaxedOptimumOnScenarios) {
  std::mt19937_64 rng(52);
  for (int trial = 0; trial < 150; ++trial) {
    const Scenario sc = random_scenario(rng, 1, 1);
    const Slice s = make_slice(sc, 0, 0);
    const SatisfactionObjective f(sc, 0, 0);
    const auto r = solve_single(s, f);
    // Equal optima reached through different slots may differ in the last
    // bit of the summation.
    const double best = oracle::max_objective(s, f);
    ASSERT_NEAR(r.value, best, 1e-12 * (1.0 + std::abs(best)));
  }
}

TEST(Disjointness, Examples) {
  Customer c;
  c.apps.resize(2);
  c.apps[0].forbidden_times = {0};
  c.apps[1].forbidden_times = {1, 2};
  EXPECT_TRUE(check_disjointness(c, 3));
  c.apps[0].forbidden_times.clear();
  c.apps[1].forbidden_times.clear();
  EXPECT_FALSE(check_disjointness(c, 3));
  c.apps.resize(1);
  EXPECT_TRUE(check_disjointness(c, 3));
}

TEST(SolveGeneral, OverlapIsRejectedByName) {
  Scenario sc = fixture::example1_scenario();
  sc.applications.push_back({"streaming", ApplicationKind::kRealtime});
  for (auto& c : sc.customers) {
    ApplicationDemand app;
    app.demand = 0;
    app.preferences.assign(3, Preference::forbidden());
    app.forbidden_times = {0, 1, 2};
    c.apps.push_back(app);
  }
  sc.customers[3].apps[1].forbidden_times = {0, 1};
  sc.customers[3].apps[1].preferences[2] = Preference(0.0);
  validate(sc);
  try {
    solve_general(sc);
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("customer 3"), std::string::npos);
  }
}

TEST(SolveGeneral, SingleBlockMatchesSolveSingle) {
  std::mt19937_64 rng(53);
  std::vector<Scenario> cases{fixture::example1_scenario()};
  for (int q = 0; q < 100; ++q) cases.push_back(random_scenario(rng, 1, 1));
  for (const auto& sc : cases) {
    const auto g = solve_general(sc);
    const auto s = solve_single(make_slice(sc, 0, 0), SatisfactionObjective(sc, 0, 0));
    ASSERT_EQ(g.blocks.size(), 1u);
    ASSERT_EQ(g.blocks[0].result.N, s.N);
    ASSERT_EQ(g.blocks[0].result.trace, s.trace);
    ASSERT_EQ(g.blocks[0].result.decomposition.profiles, s.decomposition.profiles);
    ASSERT_EQ(g.blocks[0].result.prices.raw, s.prices.raw);
    ASSERT_EQ(g.objective, s.value);
  }
}

TEST(SolveGeneral, UncoupledBlocksAreSolvedIndependently) {
  std::mt19937_64 rng(54);
  for (int q = 0; q < 100; ++q) {
    Scenario sc = random_scenario(rng, 2, 2);
    for (auto& cell : sc.cells) cell = {100, 200};
    validate(sc);
    const auto g = solve_general(sc);
    for (const auto& br : g.blocks) {
      const Slice s = make_slice(sc, br.application, br.contract);
      const auto alone = solve_single(s, SatisfactionObjective(sc, br.application, br.contract));
      ASSERT_EQ(br.result.N, alone.N);
      ASSERT_EQ(br.result.N, br.baseline);
    }
  }
}

TEST(SolveGeneral, EveryBlockIsLocallyOptimal) {
  std::mt19937_64 rng(55);
  for (int q = 0; q < 150; ++q) {
    const Scenario sc = random_scenario(rng, 1 + rng() % 2, 1 + rng() % 2);
    const auto g = solve_general(sc);
    for (std::size_t blk = 0; blk < g.blocks.size(); ++blk) ASSERT_TRUE(block_is_optimal(sc, g, blk));
    for (std::size_t r = 1; r < g.objective_trace.size(); ++r) {
      ASSERT_GT(g.objective_trace[r], g.objective_trace[r - 1]);
    }
    ASSERT_GE(g.objective, g.baseline_objective);
    for (const auto& br : g.blocks) {
      const Slice s = make_slice(sc, br.application, br.contract);
      for (std::size_t k = 0; k < s.K(); ++k) {
        const auto& c = s.customers[k];
        ASSERT_TRUE(argmax_set(c.set, c.score, br.result.prices.raw).contains(c.set, br.result.decomposition.profiles[k]));
      }
      ASSERT_EQ(mincostflow_decompose(s, br.result.N).value, -br.result.decomposition.psi);
    }
  }
}

TEST(SolveScenario, ModeDispatch) {
  const Scenario sc = fixture::example1_scenario();
  EXPECT_EQ(resolve_mode(sc, SolveMode::kAuto), SolveMode::kMajor);
  const auto major = solve_scenario(sc, SolveMode::kMajor);
  const auto single = solve_scenario(sc, SolveMode::kSingle);
  const auto general = solve_scenario(sc, SolveMode::kGeneral);
  EXPECT_EQ(major.blocks[0].result.N, (TrafficVector{3, 2, 2}));
  EXPECT_EQ(single.blocks[0].result.N, (TrafficVector{3, 2, 2}));
  EXPECT_EQ(general.blocks[0].result.N, (TrafficVector{3, 2, 2}));
  EXPECT_EQ(major.objective, single.objective);
  EXPECT_EQ(general.objective, single.objective);

  Scenario restricted = sc;
  restricted.customers[2].apps[0].forbidden_times = {0};
  restricted.customers[2].apps[0].preferences[0] = Preference::forbidden();
  EXPECT_EQ(resolve_mode(restricted, SolveMode::kAuto), SolveMode::kSingle);
  try {
    solve_scenario(restricted, SolveMode::kMajor);
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("customer 2"), std::string::npos);
  }
}

TEST(SolveScenarioProperty, MajorAndSingleAgree) {
  std::mt19937_64 rng(56);
  int eligible = 0;
  for (int q = 0; q < 300; ++q) {
    Scenario sc = random_scenario(rng, 1, 1);
    sc.L = 1;
    sc.cells.resize(1);
    for (auto& c : sc.customers) {
      c.trajectory.assign(static_cast<std::size_t>(sc.T), 0);
      auto& app = c.apps[0];
      app.forbidden_times.clear();
      for (auto& p : app.preferences) {
        if (p.is_forbidden()) p = Preference(0.0);
      }
    }
    validate(sc);
    ASSERT_EQ(resolve_mode(sc, SolveMode::kAuto), SolveMode::kMajor);
    ++eligible;
    ASSERT_EQ(solve_scenario(sc, SolveMode::kMajor).objective, solve_scenario(sc, SolveMode::kSingle).objective);
  }
  EXPECT_EQ(eligible, 300);
}

}  // namespace
}  // namespace incentive
