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

TEST(ConjugateBound, Examples) {
  EXPECT_EQ(conjugate_bound({1, 2, 1, 2, 1}, 3).nmax, (std::vector<long>{5, 2, 0}));
  EXPECT_EQ(conjugate_bound({3, 3}, 3).nmax, (std::vector<long>{2, 2, 2}));
  EXPECT_EQ(conjugate_bound({2}, 4).nmax, (std::vector<long>{1, 1, 0, 0}));
  EXPECT_EQ(conjugate_bound({2}, 4).prefix, (std::vector<long>{0, 1, 2, 2, 2}));
  EXPECT_THROW(conjugate_bound({5}, 4), ValidationError);
}

TEST(IsMajorized, Examples) {
  const auto b = conjugate_bound({1, 2, 1, 2, 1}, 3);
  EXPECT_TRUE(is_majorized({3, 2, 2}, b));
  EXPECT_TRUE(is_majorized({2, 2, 3}, b));
  EXPECT_FALSE(is_majorized({6, 1, 0}, b));
  EXPECT_TRUE(is_majorized({5, 2, 0}, b));
  EXPECT_FALSE(is_majorized({3, 2, 1}, b));
}

TEST(NeighborFeasibleMajor, Examples) {
  const auto b = conjugate_bound({1, 2, 1, 2, 1}, 3);
  const TrafficVector N{3, 2, 2};
  EXPECT_EQ(neighbor_feasible_major(N, b, 2, 1), is_majorized({3, 3, 1}, b));
  EXPECT_EQ(neighbor_feasible_major(N, b, 1, 0), is_majorized({4, 1, 2}, b));
  EXPECT_FALSE(neighbor_feasible_major({0, 5, 2}, b, 0, 1));
  EXPECT_TRUE(neighbor_feasible_major({5, 2, 0}, b, 0, 2));
  EXPECT_FALSE(neighbor_feasible_major({5, 2, 0}, b, 2, 0));
  EXPECT_FALSE(neighbor_feasible_major({5, 2, 0}, b, 1, 0));
}

Slice random_unrestricted(std::mt19937_64& rng, std::size_t max_k, std::size_t max_n) {
  oracle::RandomSliceSpec spec;
  spec.max_customers = max_k;
  spec.max_slots = max_n;
  spec.max_demand = static_cast<int>(max_n);
  spec.forbid_probability = 0.0;
  return oracle::random_slice(rng, spec);
}

TEST(MajorizationProperty, GaleRyserMatchesFlowMembership) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 150; ++trial) {
    const Slice s = random_unrestricted(rng, 6, 6);
    const auto b = conjugate_bound(s);
    for (const auto& N : oracle::simplex_slice(s.n, s.total_demand())) {
      ASSERT_EQ(is_majorized(N, b), minkowski_member(s, N).has_value());
    }
  }
}

TEST(MajorizationProperty, NeighborTestMatchesDirectCheck) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 150; ++trial) {
    const Slice s = random_unrestricted(rng, 6, 6);
    const auto b = conjugate_bound(s);
    for (const auto& N : oracle::simplex_slice(s.n, s.total_demand())) {
      if (!is_majorized(N, b)) continue;
      const MajorizationState state(N, b);
      for (Slot i = 0; i < s.n; ++i) {
        for (Slot j = 0; j < s.n; ++j) {
          TrafficVector M = N;
          bool expect = true;
          if (i != j) {
            expect = M[i] > 0;
            if (expect) {
              --M[i];
              ++M[j];
              expect = is_majorized(M, b);
            }
          }
          ASSERT_EQ(state.neighbor_feasible(i, j), expect);
        }
      }
    }
  }
}

TEST(SolveMajor, WorkedExample) {
  const Slice s = fixture::example1();
  const auto r = solve_major(s, fixture::NegSquares{}, TrafficVector{5, 2, 0});
  EXPECT_EQ(r.trace, (std::vector<TrafficVector>{{5, 2, 0}, {4, 2, 1}, {3, 2, 2}}));
  EXPECT_EQ(r.value, -17.0);
  EXPECT_TRUE(fixture::in_example1_polytope(r.prices.raw));
  const auto z = solve_major(s, fixture::NegSquares{});
  EXPECT_EQ(z.N, (TrafficVector{3, 2, 2}));
}

TEST(SolveMajor, SingleCustomer) {
  const Slice s = make_dense_slice({{0, 3, 1, 2}}, {2});
  const oracle::ConcaveTable f{{{0, 1, 1}, {0, 5, 5}, {0, 4, 4}, {0, 2, 2}}};
  const auto r = solve_major(s, f);
  EXPECT_EQ(r.N, (TrafficVector{0, 1, 1, 0}));
  EXPECT_EQ(r.decomposition.profiles[0], (ConsumptionProfile{0, 1, 1, 0}));
}

TEST(SolveMajor, RejectsForbiddenSlots) {
  const Slice s = make_abstract_slice({{Preference(0), Preference::forbidden()}}, {1}, 2);
  EXPECT_THROW(solve_major(s, fixture::NegSquares{}), ValidationError);
}

TEST(SolveMajorProperty, AgreesWithGenericPipeline) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 150; ++trial) {
    const Slice s = random_unrestricted(rng, 5, 5);
    const auto f = oracle::random_concave(rng, s.n, s.total_demand());
    const auto fast = solve_major(s, f);
    const auto generic = solve_single(s, f);
    ASSERT_EQ(fast.value, generic.value);
    ASSERT_EQ(fast.N, generic.N);
    for (std::size_t k = 0; k < s.K(); ++k) {
      const auto& c = s.customers[k];
      ASSERT_TRUE(argmax_set(c.set, c.score, fast.prices.raw).contains(c.set, fast.decomposition.profiles[k]));
    }
  }
}

}  // namespace
}  // namespace incentive
