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

// Tabular and SVG reports of a stored solve.

#ifndef INCENTIVE_REPORT_HPP
#define INCENTIVE_REPORT_HPP

#include <array>
#include <cstddef>
#include <filesystem>
#include <iomanip>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "incentive/bilevel.hpp"
#include "incentive/scenario_io.hpp"

namespace incentive {

inline constexpr std::array<const char*, 5> kBucketLabels = {"lt0.3", "0.3-0.7", "0.7-0.9", "0.9-0.99", "ge0.99"};
inline constexpr std::array<const char*, 5> kBucketFill = {"#000000", "#555555", "#999999", "#cccccc", "#ffffff"};

inline std::size_t satisfaction_bucket(double s) {
  if (s < 0.3) return 0;
  if (s < 0.7) return 1;
  if (s < 0.9) return 2;
  if (s < 0.99) return 3;
  return 4;
}

// Satisfaction of block `blk` at slot i under the given traffic.
inline double block_satisfaction(const CurveTable& table, const BlockTraffic& traffic, std::size_t blk, Slot i) {
  return table.curve(blk, i).clamped(traffic.aggregate(i));
}

// Number of (slot, block) pairs in the critical bucket.
inline std::size_t count_critical(const Scenario& sc, const BlockTraffic& traffic) {
  const CurveTable table(sc);
  std::size_t count = 0;
  for (std::size_t blk = 0; blk < traffic.blocks.size(); ++blk) {
    for (Slot i = 0; i < traffic.n; ++i) {
      if (satisfaction_bucket(block_satisfaction(table, traffic, blk, i)) == 0) ++count;
    }
  }
  return count;
}

inline std::string block_tag(const Scenario& sc, std::size_t a, std::size_t b) {
  return sc.applications[a].name + "_c" + std::to_string(b);
}

namespace detail {

inline std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(10) << v;
  return os.str();
}

inline std::string bucket_csv(const Scenario& sc, const CurveTable& table, const BlockTraffic& traffic,
                              std::size_t blk) {
  std::ostringstream os;
  os << "t";
  for (int l = 0; l < sc.L; ++l) os << ",cell_" << l;
  os << "\n";
  for (int t = 0; t < sc.T; ++t) {
    os << t;
    for (int l = 0; l < sc.L; ++l) {
      os << "," << kBucketLabels[satisfaction_bucket(block_satisfaction(table, traffic, blk, flatten(t, l, sc.T, sc.L)))];
    }
    os << "\n";
  }
  return os.str();
}

inline std::string bucket_svg(const Scenario& sc, const CurveTable& table, const BlockTraffic& traffic,
                              std::size_t blk, const std::string& title) {
  constexpr int kCell = 16;
  constexpr int kMargin = 40;
  const int width = kMargin + sc.L * kCell + 10;
  const int height = kMargin + sc.T * kCell + 10;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
  os << "<text x=\"4\" y=\"14\" font-size=\"12\">" << title << "</text>\n";
  for (int t = 0; t < sc.T; ++t) {
    for (int l = 0; l < sc.L; ++l) {
      const std::size_t bucket =
          satisfaction_bucket(block_satisfaction(table, traffic, blk, flatten(t, l, sc.T, sc.L)));
      os << "<rect x=\"" << kMargin + l * kCell << "\" y=\"" << kMargin + t * kCell << "\" width=\"" << kCell
         << "\" height=\"" << kCell << "\" fill=\"" << kBucketFill[bucket] << "\" stroke=\"#888888\"/>\n";
    }
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace detail

// Report files keyed by name; nothing touches the disk here.
inline std::map<std::string, std::string> build_report(const StoredResult& r, bool svg = false) {
  const Scenario& sc = r.scenario;
  const GeneralResult& g = r.result;
  std::map<std::string, std::string> files;

  std::ostringstream grid;
  grid << "t,l,N,baseline_N";
  for (const auto& br : g.blocks) {
    const std::string tag = block_tag(sc, br.application, br.contract);
    grid << ",count_" << tag << ",s_" << tag << ",baseline_count_" << tag << ",baseline_s_" << tag;
  }
  grid << "\n";
  if (g.blocks.empty()) {
    files["grid.csv"] = grid.str();
    files["summary.csv"] = "metric,value\n";
    return files;
  }

  const CurveTable table(sc);
  for (int t = 0; t < sc.T; ++t) {
    for (int l = 0; l < sc.L; ++l) {
      const Slot i = flatten(t, l, sc.T, sc.L);
      grid << t << "," << l << "," << g.traffic.aggregate(i) << "," << g.baseline.aggregate(i);
      for (const auto& br : g.blocks) {
        const std::size_t blk = br.application * sc.B() + br.contract;
        grid << "," << g.traffic.blocks[blk][i] << "," << detail::fmt(block_satisfaction(table, g.traffic, blk, i))
             << "," << g.baseline.blocks[blk][i] << ","
             << detail::fmt(block_satisfaction(table, g.baseline, blk, i));
      }
      grid << "\n";
    }
  }
  files["grid.csv"] = grid.str();

  for (const auto& br : g.blocks) {
    const std::size_t blk = br.application * sc.B() + br.contract;
    const std::string tag = block_tag(sc, br.application, br.contract);
    files["satisfaction_" + tag + "_baseline.csv"] = detail::bucket_csv(sc, table, g.baseline, blk);
    files["satisfaction_" + tag + "_optimized.csv"] = detail::bucket_csv(sc, table, g.traffic, blk);
    if (svg) {
      files["satisfaction_" + tag + "_baseline.svg"] = detail::bucket_svg(sc, table, g.baseline, blk, tag + " baseline");
      files["satisfaction_" + tag + "_optimized.svg"] =
          detail::bucket_svg(sc, table, g.traffic, blk, tag + " optimized");
    }
  }

  for (int l = 0; l < sc.L; ++l) {
    std::ostringstream os;
    os << "t,capacity";
    for (const auto& br : g.blocks) os << "," << block_tag(sc, br.application, br.contract);
    for (const auto& br : g.blocks) os << ",baseline_" << block_tag(sc, br.application, br.contract);
    os << "\n";
    for (int t = 0; t < sc.T; ++t) {
      const Slot i = flatten(t, l, sc.T, sc.L);
      os << t << "," << sc.cells[static_cast<std::size_t>(l)].capacity;
      for (const auto& br : g.blocks) os << "," << br.result.N[i];
      for (const auto& br : g.blocks) os << "," << br.baseline[i];
      os << "\n";
    }
    files["traffic_cell_" + std::to_string(l) + ".csv"] = os.str();
  }

  std::ostringstream summary;
  summary << "metric,value\n";
  summary << "objective," << detail::fmt(g.objective) << "\n";
  summary << "baseline_objective," << detail::fmt(g.baseline_objective) << "\n";
  summary << "critical_buckets," << count_critical(sc, g.traffic) << "\n";
  summary << "baseline_critical_buckets," << count_critical(sc, g.baseline) << "\n";
  summary << "capacity_excess," << capacity_excess(sc, g.traffic) << "\n";
  summary << "baseline_capacity_excess," << capacity_excess(sc, g.baseline) << "\n";
  files["summary.csv"] = summary.str();
  return files;
}

inline void write_report(const std::filesystem::path& dir, const std::map<std::string, std::string>& files) {
  std::filesystem::create_directories(dir);
  for (const auto& [name, text] : files) detail::write_file_atomic(dir / name, text);
}

}  // namespace incentive

#endif  // INCENTIVE_REPORT_HPP
