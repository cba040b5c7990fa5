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

// Instance data model: scenarios, customers, the (time, cell) -> slot
// flattening, and per-customer feasible-set descriptors.

#ifndef INCENTIVE_CORE_MODEL_HPP
#define INCENTIVE_CORE_MODEL_HPP

#include <algorithm>
#include <cstddef>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "incentive/errors.hpp"

namespace incentive {

using Slot = std::size_t;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// A customer's inclination to consume at a time slot, or the explicit
// "never" sentinel. The sentinel absorbs every addition.
class Preference {
 public:
  constexpr Preference() = default;
  constexpr explicit Preference(double score) : score_(score), forbidden_(false) {}

  static constexpr Preference forbidden() {
    Preference p;
    p.forbidden_ = true;
    return p;
  }

  constexpr bool is_forbidden() const { return forbidden_; }

  // Finite score. Calling this on the sentinel is a logic error.
  double value() const {
    if (forbidden_) throw InvariantError("value() requested on a forbidden preference");
    return score_;
  }

  // -inf for the sentinel; only for interop with numeric code.
  constexpr double as_double() const { return forbidden_ ? -kInfinity : score_; }

  friend constexpr Preference operator+(Preference p, double shift) {
    return p.forbidden_ ? p : Preference(p.score_ + shift);
  }
  friend constexpr Preference operator/(Preference p, double divisor) {
    return p.forbidden_ ? p : Preference(p.score_ / divisor);
  }
  friend constexpr bool operator==(const Preference& a, const Preference& b) {
    return a.forbidden_ == b.forbidden_ && (a.forbidden_ || a.score_ == b.score_);
  }

 private:
  double score_ = 0.0;
  bool forbidden_ = true;
};

enum class ApplicationKind { kElastic, kRealtime };

struct ApplicationParams {
  std::string name;
  ApplicationKind kind = ApplicationKind::kElastic;
};

struct ContractParams {
  double gamma = 1.0;   // provider weight
  double lambda = 1.0;  // satisfaction steepness
};

struct CellParams {
  int soft_threshold = 0;  // elastic traffic is fully satisfied up to here
  int capacity = 1;        // hard capacity
};

// Per-application demand of one customer.
struct ApplicationDemand {
  int demand = 0;                       // requests per day
  std::vector<int> forbidden_times;     // sorted, unique
  std::vector<Preference> preferences;  // one per time slot
  double sensitivity = 1.0;             // response to one unit of discount
};

struct Customer {
  std::size_t contract = 0;
  std::vector<std::size_t> trajectory;  // cell occupied at each time slot
  std::vector<ApplicationDemand> apps;  // one per application
};

struct Scenario {
  int T = 1;
  int L = 1;
  std::vector<ApplicationParams> applications;
  std::vector<ContractParams> contracts;
  std::vector<CellParams> cells;
  std::vector<Customer> customers;

  std::size_t A() const { return applications.size(); }
  std::size_t B() const { return contracts.size(); }
  std::size_t K() const { return customers.size(); }
  std::size_t slot_count() const {
    return static_cast<std::size_t>(T) * static_cast<std::size_t>(L);
  }
};

inline Slot flatten(int t, int l, int T, int L) {
  if (T < 1 || L < 1 || t < 0 || t >= T || l < 0 || l >= L) {
    std::ostringstream os;
    os << "slot (t=" << t << ", l=" << l << ") out of range for T=" << T << ", L=" << L;
    throw ValidationError(os.str());
  }
  return static_cast<Slot>(t) * static_cast<Slot>(L) + static_cast<Slot>(l);
}

// Inverse of flatten: returns (t, l).
inline std::pair<int, int> unflatten(Slot i, int T, int L) {
  if (T < 1 || L < 1 || i >= static_cast<Slot>(T) * static_cast<Slot>(L)) {
    std::ostringstream os;
    os << "slot " << i << " out of range for T=" << T << ", L=" << L;
    throw ValidationError(os.str());
  }
  return {static_cast<int>(i / static_cast<Slot>(L)), static_cast<int>(i % static_cast<Slot>(L))};
}

// Describes F_k: binary vectors with `demand` ones that vanish on the
// forbidden slots.
struct FeasibleSetDescriptor {
  std::size_t n = 0;
  std::vector<Slot> forbidden;  // sorted
  std::vector<char> allowed;    // mask of size n
  int demand = 0;

  std::size_t allowed_count() const { return n - forbidden.size(); }
  bool is_allowed(Slot i) const { return allowed[i] != 0; }

  static FeasibleSetDescriptor from_mask(std::vector<char> mask, int demand) {
    FeasibleSetDescriptor d;
    d.n = mask.size();
    d.allowed = std::move(mask);
    d.demand = demand;
    for (Slot i = 0; i < d.n; ++i) {
      if (!d.allowed[i]) d.forbidden.push_back(i);
    }
    return d;
  }
};

inline std::string customer_label(std::size_t k, std::size_t a) {
  std::ostringstream os;
  os << "customer " << k << " application " << a;
  return os.str();
}

// J_k^a = {(t,l) : t in I_k^a or L_t^k != l}.
inline FeasibleSetDescriptor feasible_set(const Scenario& sc, std::size_t k, std::size_t a) {
  if (k >= sc.K() || a >= sc.A()) throw ValidationError("feasible_set: index out of range");
  const Customer& c = sc.customers[k];
  if (c.trajectory.size() != static_cast<std::size_t>(sc.T) || a >= c.apps.size()) {
    throw ValidationError(customer_label(k, a) + ": malformed customer");
  }
  const ApplicationDemand& app = c.apps[a];
  std::vector<char> mask(sc.slot_count(), 0);
  std::vector<char> blocked(static_cast<std::size_t>(sc.T), 0);
  for (int t : app.forbidden_times) {
    if (t < 0 || t >= sc.T) throw ValidationError(customer_label(k, a) + ": forbidden time out of range");
    blocked[static_cast<std::size_t>(t)] = 1;
  }
  for (int t = 0; t < sc.T; ++t) {
    if (blocked[static_cast<std::size_t>(t)]) continue;
    mask[flatten(t, static_cast<int>(c.trajectory[static_cast<std::size_t>(t)]), sc.T, sc.L)] = 1;
  }
  FeasibleSetDescriptor d = FeasibleSetDescriptor::from_mask(std::move(mask), app.demand);
  if (d.demand < 0 || static_cast<std::size_t>(d.demand) > d.allowed_count()) {
    std::ostringstream os;
    os << customer_label(k, a) << ": demand " << d.demand << " exceeds " << d.allowed_count()
       << " allowed slots";
    throw InfeasibleError(os.str());
  }
  return d;
}

// Structural checks on a scenario: dimensions, index ranges, demands and
// per-customer feasibility. Satisfaction-curve checks live in satisfaction.hpp.
inline void validate_structure(const Scenario& sc) {
  auto fail = [](const std::string& msg) { throw ValidationError(msg); };
  if (sc.T < 1) fail("T must be >= 1");
  if (sc.L < 1) fail("L must be >= 1");
  if (sc.A() < 1) fail("at least one application is required");
  if (sc.B() < 1) fail("at least one contract is required");
  if (sc.cells.size() != static_cast<std::size_t>(sc.L)) fail("cells must have exactly L entries");
  for (std::size_t l = 0; l < sc.cells.size(); ++l) {
    const CellParams& cell = sc.cells[l];
    if (cell.soft_threshold < 0 || cell.soft_threshold >= cell.capacity) {
      fail("cell " + std::to_string(l) + ": need 0 <= soft_threshold < capacity");
    }
  }
  for (std::size_t b = 0; b < sc.B(); ++b) {
    if (!(sc.contracts[b].gamma > 0.0) || !(sc.contracts[b].lambda > 0.0)) {
      fail("contract " + std::to_string(b) + ": gamma and lambda must be positive");
    }
  }
  for (std::size_t k = 0; k < sc.K(); ++k) {
    const Customer& c = sc.customers[k];
    const std::string who = "customer " + std::to_string(k);
    if (c.contract >= sc.B()) fail(who + ": contract index out of range");
    if (c.trajectory.size() != static_cast<std::size_t>(sc.T)) fail(who + ": trajectory must have T entries");
    for (std::size_t cell : c.trajectory) {
      if (cell >= static_cast<std::size_t>(sc.L)) fail(who + ": trajectory cell out of range");
    }
    if (c.apps.size() != sc.A()) fail(who + ": needs one entry per application");
    for (std::size_t a = 0; a < sc.A(); ++a) {
      const ApplicationDemand& app = c.apps[a];
      const std::string wa = customer_label(k, a);
      if (app.preferences.size() != static_cast<std::size_t>(sc.T)) fail(wa + ": preferences must have T entries");
      if (!(app.sensitivity > 0.0)) fail(wa + ": sensitivity must be positive");
      if (!std::is_sorted(app.forbidden_times.begin(), app.forbidden_times.end()) ||
          std::adjacent_find(app.forbidden_times.begin(), app.forbidden_times.end()) != app.forbidden_times.end()) {
        fail(wa + ": forbidden_times must be sorted and unique");
      }
      std::vector<char> blocked(static_cast<std::size_t>(sc.T), 0);
      for (int t : app.forbidden_times) {
        if (t < 0 || t >= sc.T) fail(wa + ": forbidden time out of range");
        blocked[static_cast<std::size_t>(t)] = 1;
      }
      for (int t = 0; t < sc.T; ++t) {
        if (!blocked[static_cast<std::size_t>(t)] && app.preferences[static_cast<std::size_t>(t)].is_forbidden()) {
          fail(wa + ": preference is -inf at allowed time " + std::to_string(t));
        }
      }
      const int allowed = sc.T - static_cast<int>(app.forbidden_times.size());
      if (app.demand < 0 || app.demand > allowed) {
        fail(wa + ": demand " + std::to_string(app.demand) + " exceeds " + std::to_string(allowed) +
             " allowed slots");
      }
    }
  }
}

// One customer's view inside a (application, contract) slice: feasible set
// and normalized scores rho(t)/alpha on allowed slots (-inf elsewhere).
struct SliceCustomer {
  std::size_t customer = 0;  // index in the originating scenario
  FeasibleSetDescriptor set;
  std::vector<double> score;
};

// The single-application, single-contract problem: n slots and the
// customers that compete for them.
struct Slice {
  std::size_t n = 0;
  std::size_t application = 0;
  std::size_t contract = 0;
  std::vector<SliceCustomer> customers;

  std::size_t K() const { return customers.size(); }
  long total_demand() const {
    long r = 0;
    for (const auto& c : customers) r += c.set.demand;
    return r;
  }
  bool all_unrestricted() const {
    return std::all_of(customers.begin(), customers.end(),
                       [](const SliceCustomer& c) { return c.set.forbidden.empty(); });
  }
};

inline Slice make_slice(const Scenario& sc, std::size_t a, std::size_t b) {
  Slice s;
  s.n = sc.slot_count();
  s.application = a;
  s.contract = b;
  for (std::size_t k = 0; k < sc.K(); ++k) {
    const Customer& c = sc.customers[k];
    if (c.contract != b) continue;
    SliceCustomer sk;
    sk.customer = k;
    sk.set = feasible_set(sc, k, a);
    const ApplicationDemand& app = c.apps[a];
    sk.score.assign(s.n, -kInfinity);
    for (int t = 0; t < sc.T; ++t) {
      const Slot i = flatten(t, static_cast<int>(c.trajectory[static_cast<std::size_t>(t)]), sc.T, sc.L);
      if (sk.set.is_allowed(i)) sk.score[i] = (app.preferences[static_cast<std::size_t>(t)] / app.sensitivity).value();
    }
    s.customers.push_back(std::move(sk));
  }
  return s;
}

// Builds a slice directly from per-customer scores; the forbidden slots are
// exactly those holding the sentinel.
inline Slice make_abstract_slice(const std::vector<std::vector<Preference>>& scores, const std::vector<int>& demand,
                                 std::size_t n) {
  if (scores.size() != demand.size()) throw ValidationError("scores and demands differ in length");
  Slice s;
  s.n = n;
  for (std::size_t k = 0; k < scores.size(); ++k) {
    if (scores[k].size() != n) throw ValidationError(customer_label(k, 0) + ": score vector has wrong length");
    std::vector<char> mask(n, 0);
    SliceCustomer sk;
    sk.customer = k;
    sk.score.assign(n, -kInfinity);
    for (Slot i = 0; i < n; ++i) {
      if (!scores[k][i].is_forbidden()) {
        mask[i] = 1;
        sk.score[i] = scores[k][i].value();
      }
    }
    sk.set = FeasibleSetDescriptor::from_mask(std::move(mask), demand[k]);
    if (demand[k] < 0 || static_cast<std::size_t>(demand[k]) > sk.set.allowed_count()) {
      throw InfeasibleError(customer_label(k, 0) + ": demand exceeds allowed slots");
    }
    s.customers.push_back(std::move(sk));
  }
  return s;
}

// Convenience for all-finite score tables; `n_if_empty` sizes a slice
// without customers.
inline Slice make_dense_slice(const std::vector<std::vector<double>>& scores, const std::vector<int>& demand,
                              std::size_t n_if_empty = 0) {
  const std::size_t n = scores.empty() ? n_if_empty : scores.front().size();
  std::vector<std::vector<Preference>> prefs;
  prefs.reserve(scores.size());
  for (const auto& row : scores) {
    std::vector<Preference> p;
    for (double v : row) p.emplace_back(v);
    prefs.push_back(std::move(p));
  }
  return make_abstract_slice(prefs, demand, n);
}

}  // namespace incentive

#endif  // INCENTIVE_CORE_MODEL_HPP
