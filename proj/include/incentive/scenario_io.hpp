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

// JSON scenario and result files, and the seeded synthetic generator.

#ifndef INCENTIVE_SCENARIO_IO_HPP
#define INCENTIVE_SCENARIO_IO_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "incentive/bilevel.hpp"
#include "incentive/core_model.hpp"
#include "incentive/errors.hpp"
#include "incentive/satisfaction.hpp"

namespace incentive {

inline constexpr int kSchemaVersion = 1;

using Json = nlohmann::json;

namespace detail {

// Strict accessor that knows where it is in the document.
class Node {
 public:
  Node(const Json& j, std::string path) : j_(&j), path_(std::move(path)) {}

  const std::string& path() const { return path_; }
  const Json& raw() const { return *j_; }

  [[noreturn]] void fail(const std::string& what) const {
    throw ValidationError((path_.empty() ? std::string("/") : path_) + ": " + what);
  }

  // Requires an object whose keys all come from `keys`.
  const Node& object(std::initializer_list<const char*> keys) const {
    if (!j_->is_object()) fail("expected an object");
    for (auto it = j_->begin(); it != j_->end(); ++it) {
      if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return it.key() == k; })) {
        Node(it.value(), path_ + "/" + it.key()).fail("unknown field");
      }
    }
    return *this;
  }

  bool has(const char* key) const { return j_->contains(key); }

  Node operator[](const char* key) const {
    if (!j_->contains(key)) fail(std::string("missing field \"") + key + "\"");
    return Node(j_->at(key), path_ + "/" + key);
  }

  std::size_t size() const {
    if (!j_->is_array()) fail("expected an array");
    return j_->size();
  }

  Node operator[](std::size_t i) const { return Node(j_->at(i), path_ + "/" + std::to_string(i)); }

  long integer() const {
    if (!j_->is_number_integer()) fail("expected an integer");
    return j_->get<long>();
  }
  int int32() const {
    const long v = integer();
    if (v < -2147483647L || v > 2147483647L) fail("integer out of range");
    return static_cast<int>(v);
  }
  std::size_t index() const {
    const long v = integer();
    if (v < 0) fail("expected a nonnegative integer");
    return static_cast<std::size_t>(v);
  }
  double number() const {
    if (!j_->is_number()) fail("expected a number");
    return j_->get<double>();
  }
  std::string string() const {
    if (!j_->is_string()) fail("expected a string");
    return j_->get<std::string>();
  }
  bool is_null() const { return j_->is_null(); }

  template <class F>
  auto list(F&& f) const {
    std::vector<decltype(f(std::declval<Node>()))> out;
    const std::size_t n = size();
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(f((*this)[i]));
    return out;
  }

 private:
  const Json* j_;
  std::string path_;
};

inline Json parse_text(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ValidationError(origin + ": " + e.what());
  }
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// Writes through a temporary sibling so a failure leaves no partial file.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& text) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ValidationError("cannot write " + path.string());
    out << text;
    out.flush();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw ValidationError("cannot write " + path.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

inline void check_version(const Node& root) {
  const long v = root["schema_version"].integer();
  if (v != kSchemaVersion) root["schema_version"].fail("unsupported schema version " + std::to_string(v));
}

}  // namespace detail

inline const char* kind_name(ApplicationKind k) { return k == ApplicationKind::kRealtime ? "realtime" : "elastic"; }

inline Json to_json(const Scenario& sc) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["T"] = sc.T;
  j["L"] = sc.L;
  j["applications"] = Json::array();
  for (const auto& a : sc.applications) j["applications"].push_back({{"name", a.name}, {"kind", kind_name(a.kind)}});
  j["contracts"] = Json::array();
  for (const auto& c : sc.contracts) j["contracts"].push_back({{"gamma", c.gamma}, {"lambda", c.lambda}});
  j["cells"] = Json::array();
  for (const auto& c : sc.cells) {
    j["cells"].push_back({{"soft_threshold", c.soft_threshold}, {"capacity", c.capacity}});
  }
  j["customers"] = Json::array();
  for (const auto& c : sc.customers) {
    Json jc;
    jc["contract"] = c.contract;
    jc["trajectory"] = c.trajectory;
    jc["apps"] = Json::array();
    for (const auto& app : c.apps) {
      Json prefs = Json::array();
      for (const auto& p : app.preferences) {
        if (p.is_forbidden()) {
          prefs.push_back(nullptr);
        } else {
          prefs.push_back(p.value());
        }
      }
      jc["apps"].push_back({{"demand", app.demand},
                            {"forbidden_times", app.forbidden_times},
                            {"preferences", prefs},
                            {"sensitivity", app.sensitivity}});
    }
    j["customers"].push_back(std::move(jc));
  }
  return j;
}

inline Scenario scenario_from_node(const detail::Node& root) {
  root.object({"schema_version", "T", "L", "applications", "contracts", "cells", "customers"});
  detail::check_version(root);
  Scenario sc;
  sc.T = root["T"].int32();
  sc.L = root["L"].int32();
  sc.applications = root["applications"].list([](const detail::Node& n) {
    n.object({"name", "kind"});
    ApplicationParams a;
    a.name = n["name"].string();
    const std::string kind = n["kind"].string();
    if (kind == "elastic") {
      a.kind = ApplicationKind::kElastic;
    } else if (kind == "realtime") {
      a.kind = ApplicationKind::kRealtime;
    } else {
      n["kind"].fail("expected \"elastic\" or \"realtime\"");
    }
    return a;
  });
  sc.contracts = root["contracts"].list([](const detail::Node& n) {
    n.object({"gamma", "lambda"});
    return ContractParams{n["gamma"].number(), n["lambda"].number()};
  });
  sc.cells = root["cells"].list([](const detail::Node& n) {
    n.object({"soft_threshold", "capacity"});
    return CellParams{n["soft_threshold"].int32(), n["capacity"].int32()};
  });
  sc.customers = root["customers"].list([](const detail::Node& n) {
    n.object({"contract", "trajectory", "apps"});
    Customer c;
    c.contract = n["contract"].index();
    c.trajectory = n["trajectory"].list([](const detail::Node& x) { return x.index(); });
    c.apps = n["apps"].list([](const detail::Node& x) {
      x.object({"demand", "forbidden_times", "preferences", "sensitivity"});
      ApplicationDemand app;
      app.demand = x["demand"].int32();
      app.forbidden_times = x["forbidden_times"].list([](const detail::Node& t) { return t.int32(); });
      app.preferences = x["preferences"].list([](const detail::Node& p) {
        return p.is_null() ? Preference::forbidden() : Preference(p.number());
      });
      app.sensitivity = x["sensitivity"].number();
      return app;
    });
    return c;
  });
  return sc;
}

// Parses and fully validates a scenario document.
inline Scenario parse_scenario(const std::string& text, const std::string& origin = "scenario") {
  const Json j = detail::parse_text(text, origin);
  Scenario sc = scenario_from_node(detail::Node(j, ""));
  validate(sc);
  return sc;
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

inline std::string serialize(const Scenario& sc) { return dump(to_json(sc)); }

inline Scenario load_scenario(const std::filesystem::path& path) {
  return parse_scenario(detail::read_file(path), path.string());
}

inline void save_scenario(const std::filesystem::path& path, const Scenario& sc) {
  detail::write_file_atomic(path, serialize(sc));
}

// A solve together with the scenario it belongs to.
struct StoredResult {
  Scenario scenario;
  SolveMode mode = SolveMode::kGeneral;
  GeneralResult result;
};

inline SolveMode parse_mode(const std::string& s) {
  if (s == "auto") return SolveMode::kAuto;
  if (s == "single") return SolveMode::kSingle;
  if (s == "major") return SolveMode::kMajor;
  if (s == "general") return SolveMode::kGeneral;
  throw ValidationError("unknown mode \"" + s + "\"");
}

inline Json to_json(const StoredResult& r) {
  const Scenario& sc = r.scenario;
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["mode"] = mode_name(r.mode);
  j["scenario"] = to_json(sc);
  j["penalty"] = r.result.penalty;
  j["objective"] = r.result.objective;
  j["baseline_objective"] = r.result.baseline_objective;
  j["objective_trace"] = r.result.objective_trace;
  j["rounds"] = r.result.rounds;
  j["capacity_excess"] = r.result.blocks.empty() ? 0 : capacity_excess(sc, r.result.traffic);
  j["blocks"] = Json::array();
  for (const auto& br : r.result.blocks) {
    const SolveResult& s = br.result;
    Json jb;
    jb["application"] = br.application;
    jb["contract"] = br.contract;
    jb["baseline"] = br.baseline;
    jb["counts"] = s.N;
    jb["value"] = s.value;
    jb["iterations"] = s.iterations;
    jb["trace"] = s.trace;
    jb["prices"] = {{"raw", s.prices.raw},
                    {"nonnegative", s.prices.nonnegative},
                    {"big_m", s.prices.big_m},
                    {"source", s.prices.source}};
    jb["psi"] = s.decomposition.psi;
    Json profiles = Json::array();
    for (const auto& u : s.decomposition.profiles) {
      std::vector<Slot> on;
      for (Slot i = 0; i < u.size(); ++i) {
        if (u[i]) on.push_back(i);
      }
      profiles.push_back(on);
    }
    jb["profiles"] = profiles;
    j["blocks"].push_back(std::move(jb));
  }
  return j;
}

inline std::string serialize(const StoredResult& r) { return dump(to_json(r)); }

inline StoredResult parse_result(const std::string& text, const std::string& origin = "result") {
  const Json j = detail::parse_text(text, origin);
  const detail::Node root(j, "");
  root.object({"schema_version", "mode", "scenario", "penalty", "objective", "baseline_objective",
               "objective_trace", "rounds", "capacity_excess", "blocks"});
  detail::check_version(root);
  StoredResult r;
  r.scenario = scenario_from_node(root["scenario"]);
  validate(r.scenario);
  const Scenario& sc = r.scenario;
  try {
    r.mode = parse_mode(root["mode"].string());
  } catch (const ValidationError& e) {
    root["mode"].fail(e.what());
  }
  GeneralResult& g = r.result;
  g.penalty = root["penalty"].number();
  g.objective = root["objective"].number();
  g.baseline_objective = root["baseline_objective"].number();
  g.objective_trace = root["objective_trace"].list([](const detail::Node& n) { return n.number(); });
  g.rounds = root["rounds"].index();
  root["capacity_excess"].integer();
  const std::size_t n = sc.slot_count();
  auto counts = [n](const detail::Node& v) {
    if (v.size() != n) v.fail("expected " + std::to_string(n) + " entries");
    return v.list([](const detail::Node& x) { return x.integer(); });
  };
  const detail::Node blocks = root["blocks"];
  if (blocks.size() != 0) {
    g.baseline = BlockTraffic(sc.A(), sc.B(), n);
    g.traffic = BlockTraffic(sc.A(), sc.B(), n);
  }
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const detail::Node jb = blocks[b];
    jb.object({"application", "contract", "baseline", "counts", "value", "iterations", "trace", "prices", "psi",
               "profiles"});
    BlockResult br;
    br.application = jb["application"].index();
    br.contract = jb["contract"].index();
    if (br.application >= sc.A() || br.contract >= sc.B()) jb.fail("block index out of range");
    br.baseline = counts(jb["baseline"]);
    br.result.N = counts(jb["counts"]);
    br.result.value = jb["value"].number();
    br.result.iterations = jb["iterations"].index();
    br.result.trace = jb["trace"].list(counts);
    const detail::Node jp = jb["prices"];
    jp.object({"raw", "nonnegative", "big_m", "source"});
    auto prices = [n](const detail::Node& v) {
      if (v.size() != n) v.fail("expected " + std::to_string(n) + " entries");
      return v.list([](const detail::Node& x) { return x.number(); });
    };
    br.result.prices.raw = prices(jp["raw"]);
    br.result.prices.nonnegative = prices(jp["nonnegative"]);
    br.result.prices.big_m = jp["big_m"].number();
    br.result.prices.source = jp["source"].index();
    const Slice slice = make_slice(sc, br.application, br.contract);
    const detail::Node jprof = jb["profiles"];
    if (jprof.size() != slice.K()) jprof.fail("expected one profile per customer of the block");
    std::vector<ConsumptionProfile> profiles;
    for (std::size_t k = 0; k < slice.K(); ++k) {
      ConsumptionProfile u(n, 0);
      for (std::size_t i : jprof[k].list([](const detail::Node& x) { return x.index(); })) {
        if (i >= n) jprof[k].fail("slot out of range");
        u[i] = 1;
      }
      profiles.push_back(std::move(u));
    }
    try {
      br.result.decomposition = Decomposition::from_profiles(slice, std::move(profiles));
    } catch (const ValidationError& e) {
      jprof.fail(e.what());
    }
    if (br.result.decomposition.N != br.result.N) jb["counts"].fail("profiles do not add up to the counts");
    br.result.decomposition.psi = jb["psi"].number();
    g.baseline.at(br.application, br.contract) = br.baseline;
    g.traffic.at(br.application, br.contract) = br.result.N;
    g.blocks.push_back(std::move(br));
  }
  return r;
}

inline StoredResult load_result(const std::filesystem::path& path) {
  return parse_result(detail::read_file(path), path.string());
}

inline void save_result(const std::filesystem::path& path, const StoredResult& r) {
  detail::write_file_atomic(path, serialize(r));
}

// Synthetic instance generator.
struct GeneratorParams {
  std::uint64_t seed = 0;
  int T = 24;
  int L = 4;
  int K = 50;
  double premium_share = 0.3;
  std::vector<int> peaks = {8, 12, 19, 20, 21};  // busy hours
  double peak_weight = 4.0;                      // relative draw weight of a busy hour
  double load_factor = 0.95;                     // baseline busiest slot / capacity
};

namespace detail {

// Raw 64-bit engine output mapped by hand so streams are portable.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t next() { return engine_(); }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(next() % n); }
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Up to `count` distinct entries of `pool`, drawn proportionally to weight.
  std::vector<int> draw(std::vector<int> pool, std::vector<double> weight, std::size_t count) {
    std::vector<int> out;
    while (out.size() < count && !pool.empty()) {
      double total = 0.0;
      for (double w : weight) total += w;
      double x = unit() * total;
      std::size_t pick = pool.size() - 1;
      for (std::size_t p = 0; p < pool.size(); ++p) {
        if (x < weight[p]) {
          pick = p;
          break;
        }
        x -= weight[p];
      }
      out.push_back(pool[pick]);
      pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
      weight.erase(weight.begin() + static_cast<std::ptrdiff_t>(pick));
    }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  std::mt19937_64 engine_;
};

inline ApplicationDemand restricted_demand(int T, const std::vector<int>& allowed, const std::vector<int>& top,
                                           double sensitivity) {
  ApplicationDemand d;
  d.demand = static_cast<int>(top.size());
  d.sensitivity = sensitivity;
  d.preferences.assign(static_cast<std::size_t>(T), Preference::forbidden());
  std::vector<char> ok(static_cast<std::size_t>(T), 0);
  for (int t : allowed) {
    ok[static_cast<std::size_t>(t)] = 1;
    d.preferences[static_cast<std::size_t>(t)] = Preference(0.0);
  }
  for (int t : top) d.preferences[static_cast<std::size_t>(t)] = Preference(1.0);
  for (int t = 0; t < T; ++t) {
    if (!ok[static_cast<std::size_t>(t)]) d.forbidden_times.push_back(t);
  }
  return d;
}

}  // namespace detail

// Two applications (elastic download, realtime streaming) and two contracts
// (0 standard, 1 premium). Customers commute home -> work -> home through a
// transit cell. Downloads may move one hour around their usual times;
// streaming happens at fixed times outside that window. Capacities are set
// from the zero-price load.
inline Scenario generate(const GeneratorParams& p) {
  if (p.T < 1 || p.L < 1 || p.K < 0) throw ValidationError("generate: need T >= 1, L >= 1, K >= 0");
  if (!(p.premium_share >= 0.0 && p.premium_share <= 1.0)) throw ValidationError("generate: premium share in [0, 1]");
  if (!(p.load_factor > 0.0 && p.load_factor <= 1.0)) throw ValidationError("generate: load factor in (0, 1]");
  detail::Rng rng(p.seed);
  Scenario sc;
  sc.T = p.T;
  sc.L = p.L;
  sc.applications = {{"download", ApplicationKind::kElastic}, {"streaming", ApplicationKind::kRealtime}};
  const double e2 = std::exp(2.0);
  sc.contracts = {{1.0, 2.0 / 3.0 * e2}, {2.0, e2}};

  std::vector<double> weight(static_cast<std::size_t>(p.T), 1.0);
  for (int h : p.peaks) {
    if (h >= 0 && h < p.T) weight[static_cast<std::size_t>(h)] = p.peak_weight;
  }
  const int leave_base = std::max(0, p.T / 3 - 1);
  const int back_base = std::max(leave_base + 1, 2 * p.T / 3);

  for (int k = 0; k < p.K; ++k) {
    Customer c;
    c.contract = rng.unit() < p.premium_share ? 1 : 0;
    const std::size_t home = rng.below(static_cast<std::size_t>(p.L));
    const std::size_t work = rng.below(static_cast<std::size_t>(p.L));
    const std::size_t transit = rng.below(static_cast<std::size_t>(p.L));
    const int leave = leave_base + static_cast<int>(rng.below(3));
    const int back = back_base + static_cast<int>(rng.below(3));
    for (int t = 0; t < p.T; ++t) {
      if (t < leave || t > back) {
        c.trajectory.push_back(home);
      } else if (t == leave || t == back) {
        c.trajectory.push_back(transit);
      } else {
        c.trajectory.push_back(work);
      }
    }
    const double alpha = c.contract == 1 ? 1.0 : 0.5;

    std::vector<int> hours(static_cast<std::size_t>(p.T));
    for (int t = 0; t < p.T; ++t) hours[static_cast<std::size_t>(t)] = t;
    const std::vector<int> usual = rng.draw(hours, weight, 1 + rng.below(3));
    std::set<int> window;
    for (int t : usual) {
      for (int d = -1; d <= 1; ++d) {
        if (t + d >= 0 && t + d < p.T) window.insert(t + d);
      }
    }
    c.apps.push_back(detail::restricted_demand(p.T, {window.begin(), window.end()}, usual, alpha));

    std::vector<int> rest;
    std::vector<double> rest_weight;
    for (int t = 0; t < p.T; ++t) {
      if (!window.count(t)) {
        rest.push_back(t);
        rest_weight.push_back(weight[static_cast<std::size_t>(t)]);
      }
    }
    const std::vector<int> watch = rng.draw(rest, rest_weight, rng.below(3));
    c.apps.push_back(detail::restricted_demand(p.T, watch, watch, alpha));
    sc.customers.push_back(std::move(c));
  }

  std::vector<long> peak(static_cast<std::size_t>(p.L), 0);
  std::vector<long> load(sc.slot_count(), 0);
  for (const auto& c : sc.customers) {
    for (const auto& app : c.apps) {
      for (int t = 0; t < p.T; ++t) {
        const Preference& pr = app.preferences[static_cast<std::size_t>(t)];
        if (!pr.is_forbidden() && pr.value() == 1.0) {
          ++load[flatten(t, static_cast<int>(c.trajectory[static_cast<std::size_t>(t)]), p.T, p.L)];
        }
      }
    }
  }
  for (Slot i = 0; i < load.size(); ++i) {
    const std::size_t l = i % static_cast<std::size_t>(p.L);
    peak[l] = std::max(peak[l], load[i]);
  }
  for (int l = 0; l < p.L; ++l) {
    CellParams cell;
    cell.capacity = std::max(2, static_cast<int>(std::ceil(static_cast<double>(peak[static_cast<std::size_t>(l)]) /
                                                           p.load_factor)));
    cell.soft_threshold = cell.capacity / 2;
    sc.cells.push_back(cell);
  }
  validate(sc);
  return sc;
}

}  // namespace incentive

#endif  // INCENTIVE_SCENARIO_IO_HPP
