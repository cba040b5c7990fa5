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

// The five-customer, three-slot instance used across the suite.

#ifndef INCENTIVE_TESTS_EXAMPLES_HPP
#define INCENTIVE_TESTS_EXAMPLES_HPP

#include <vector>

#include "incentive/incentive.hpp"

namespace fixture {

inline incentive::Slice example1() {
  return incentive::make_dense_slice({{0, 0, 0}, {0, -1, 0}, {-1, 1, 0}, {0.5, 0.5, 0}, {0.5, 2, 0}},
                                     {1, 2, 1, 2, 1});
}

// Zero-price decomposition of N = (3,3,1).
inline std::vector<incentive::ConsumptionProfile> example1_start() {
  return {{1, 0, 0}, {1, 0, 1}, {0, 1, 0}, {1, 1, 0}, {0, 1, 0}};
}

// Optimal decomposition of (3,2,2).
inline std::vector<incentive::ConsumptionProfile> example1_optimum() {
  return {{1, 0, 0}, {1, 0, 1}, {0, 1, 0}, {1, 0, 1}, {0, 1, 0}};
}

struct NegSquares {
  double operator()(incentive::Slot, long x) const { return -static_cast<double>(x * x); }
};

// y1 - y2 <= 3/2, 0 <= y1 - y3, -1 <= y2 - y3 <= -1/2 (0-based slots).
inline bool in_example1_polytope(const std::vector<double>& y) {
  return y[0] - y[1] <= 1.5 && 0.0 <= y[0] - y[2] && -1.0 <= y[1] - y[2] && y[1] - y[2] <= -0.5;
}

// The same customers as a scenario: one cell, T = 3, N1 = 1, NC = 7.
inline incentive::Scenario example1_scenario() {
  using namespace incentive;
  Scenario sc;
  sc.T = 3;
  sc.L = 1;
  sc.applications = {{"download", ApplicationKind::kElastic}};
  sc.contracts = {{1.0, 1.0}};
  sc.cells = {{1, 7}};
  const std::vector<std::vector<double>> rho{{0, 0, 0}, {0, -1, 0}, {-1, 1, 0}, {0.5, 0.5, 0}, {0.5, 2, 0}};
  const std::vector<int> demand{1, 2, 1, 2, 1};
  for (std::size_t k = 0; k < rho.size(); ++k) {
    Customer c;
    c.trajectory = {0, 0, 0};
    ApplicationDemand app;
    app.demand = demand[k];
    for (double v : rho[k]) app.preferences.emplace_back(v);
    c.apps.push_back(app);
    sc.customers.push_back(c);
  }
  return sc;
}

}  // namespace fixture

#endif  // INCENTIVE_TESTS_EXAMPLES_HPP
