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

#include "softgym/metrics.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>

#include "softgym/error.hpp"

namespace softgym {

double flat_cloth_coverage(int rows, int cols, double spacing) {
  std::vector<Vec3> flat;
  flat.reserve(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols));
  const double x0 = -0.5 * (cols - 1) * spacing;
  const double z0 = -0.5 * (rows - 1) * spacing;
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) flat.push_back({x0 + j * spacing, 0.0, z0 + i * spacing});
  }
  return reward_spread(flat, spacing);
}

PerformanceBounds compute_bounds(const TaskSim& initial) {
  const TaskState& task = initial.task;
  PerformanceBounds b;
  if (task.kind == TaskKind::kStraightenRope) {
    b.lower = -task.straight_length;
  } else {
    TaskSim scratch = initial;
    const std::vector<double> zero(task_constants(task.kind).action_space.dim(), 0.0);
    scratch.act(zero);
    b.lower = scratch.performance();
  }
  switch (task.kind) {
    case TaskKind::kPourWater:
      b.upper = 1.0;
      break;
    case TaskKind::kSpreadCloth:
      b.upper = flat_cloth_coverage(task.rows, task.cols, task.cloth_spacing);
      break;
    default:
      b.upper = 0.0;
      break;
  }
  return b;
}

double normalize(double s, const PerformanceBounds& bounds) {
  return (s - bounds.lower) / (bounds.upper - bounds.lower);
}

double percentile(std::vector<double> values, double q) {
  if (values.empty()) throw Error("percentile of an empty set");
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

EvalSummary summarize(const std::vector<double>& final_s_hat) {
  EvalSummary s;
  s.episodes = final_s_hat.size();
  if (final_s_hat.empty()) return s;
  double sum = 0.0;
  for (double v : final_s_hat) sum += v;
  s.mean = sum / static_cast<double>(final_s_hat.size());
  s.median = percentile(final_s_hat, 0.5);
  s.p25 = percentile(final_s_hat, 0.25);
  s.p75 = percentile(final_s_hat, 0.75);
  return s;
}

EvalReport make_report(std::vector<EpisodeRecord> episodes) {
  std::sort(episodes.begin(), episodes.end(),
            [](const EpisodeRecord& a, const EpisodeRecord& b) { return a.index < b.index; });
  EvalReport r;
  std::vector<double> finals;
  for (const EpisodeRecord& e : episodes) finals.push_back(e.final_s_hat);
  r.summary = summarize(finals);
  r.episodes = std::move(episodes);
  return r;
}

namespace {

std::string fmt_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string format_report(const EvalReport& report, const std::vector<std::pair<std::string, std::string>>& header,
                          bool with_steps) {
  std::string out = "# softgym report\n";
  for (const auto& [key, value] : header) out += "# " + key + ": " + value + "\n";
  char buf[128];
  for (const EpisodeRecord& e : report.episodes) {
    std::snprintf(buf, sizeof buf, "variation %" PRIu32 " seed %" PRIu64 " steps %zu", e.index, e.seed,
                  e.steps.size());
    out += buf;
    out += " final_s " + fmt_real(e.final_s) + " final_s_hat " + fmt_real(e.final_s_hat) + "\n";
    if (!with_steps) continue;
    for (std::size_t t = 0; t < e.steps.size(); ++t) {
      const EpisodeStep& st = e.steps[t];
      out += "step " + std::to_string(t) + " action";
      for (double a : st.action) out += " " + fmt_real(a);
      out += " s " + fmt_real(st.s) + " s_hat " + fmt_real(st.s_hat) + "\n";
    }
  }
  const EvalSummary& s = report.summary;
  out += "summary episodes " + std::to_string(s.episodes) + " mean " + fmt_real(s.mean) + " median " +
         fmt_real(s.median) + " p25 " + fmt_real(s.p25) + " p75 " + fmt_real(s.p75) + "\n";
  return out;
}

}  // namespace softgym
