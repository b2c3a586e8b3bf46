// Copyright 2026 The SoftGym-CPU Authors
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

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "softgym/task_sim.hpp"

namespace softgym {

struct PerformanceBounds {
  double lower = 0.0;
  double upper = 1.0;

  friend bool operator==(const PerformanceBounds&, const PerformanceBounds&) = default;
};

// Bounds u - l below this are degenerate and re-drawn at cache time.
inline constexpr double kMinBoundGap = 1e-6;

// Lower bound: performance after one do-nothing step from the initial state
// (StraightenRope: minus the straightened length). Upper bound: 0 for
// distance rewards, 1 for PourWater, flat-cloth coverage for SpreadCloth.
PerformanceBounds compute_bounds(const TaskSim& initial);

double normalize(double s, const PerformanceBounds& bounds);

// Coverage of a flat rows x cols cloth with the given spacing.
double flat_cloth_coverage(int rows, int cols, double spacing);

struct EpisodeStep {
  std::vector<double> action;
  double s = 0.0;
  double s_hat = 0.0;
};

struct EpisodeRecord {
  std::uint32_t index = 0;
  std::uint64_t seed = 0;
  std::vector<EpisodeStep> steps;
  double final_s = 0.0;
  double final_s_hat = 0.0;
};

struct EvalSummary {
  std::size_t episodes = 0;
  double mean = 0.0;
  double median = 0.0;
  double p25 = 0.0;
  double p75 = 0.0;
};

struct EvalReport {
  // Sorted by variation index.
  std::vector<EpisodeRecord> episodes;
  EvalSummary summary;
};

// Percentile with linear interpolation between order statistics (q in [0, 1]).
double percentile(std::vector<double> values, double q);

EvalSummary summarize(const std::vector<double>& final_s_hat);

// Sorts the episodes by index and fills the summary from final-step values.
EvalReport make_report(std::vector<EpisodeRecord> episodes);

// Text report: "# key: value" header lines, one "variation" record per
// episode (with "step" lines when `with_steps`), then a summary block.
std::string format_report(const EvalReport& report, const std::vector<std::pair<std::string, std::string>>& header,
                          bool with_steps);

}  // namespace softgym
