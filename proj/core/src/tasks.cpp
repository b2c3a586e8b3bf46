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

#include "softgym/tasks.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "softgym/assignment.hpp"
#include "softgym/error.hpp"

namespace softgym {

namespace {

constexpr std::array<std::string_view, 10> kNames = {
    "TransportWater", "PourWater", "PourWaterAmount", "StraightenRope", "RopeConfiguration",
    "SpreadCloth",    "FoldCloth", "FoldCrumpledCloth", "DropCloth",    "DropFoldCloth",
};

std::string to_slug(std::string_view camel) {
  std::string out;
  for (std::size_t k = 0; k < camel.size(); ++k) {
    const char c = camel[k];
    if (std::isupper(static_cast<unsigned char>(c))) {
      if (k > 0) out.push_back('_');
      out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    } else {
      out.push_back(c);
    }
  }
  return out;
}

}  // namespace

std::string_view task_name(TaskKind kind) { return kNames.at(static_cast<std::size_t>(kind)); }

std::string task_slug(TaskKind kind) { return to_slug(task_name(kind)); }

TaskKind parse_task(std::string_view name) {
  constexpr std::string_view kPrefix = "softgym/";
  if (name.substr(0, kPrefix.size()) == kPrefix) name.remove_prefix(kPrefix.size());
  for (std::size_t k = 0; k < kNames.size(); ++k) {
    if (name == kNames[k] || name == to_slug(kNames[k])) return static_cast<TaskKind>(k);
  }
  std::string valid;
  for (auto n : kNames) valid += std::string(valid.empty() ? "" : ", ") + std::string(n);
  throw Error("unknown task '" + std::string(name) + "'; valid tasks: " + valid);
}

bool is_water_task(TaskKind kind) {
  return kind == TaskKind::kTransportWater || kind == TaskKind::kPourWater || kind == TaskKind::kPourWaterAmount;
}

bool is_rope_task(TaskKind kind) {
  return kind == TaskKind::kStraightenRope || kind == TaskKind::kRopeConfiguration;
}

bool is_cloth_task(TaskKind kind) { return !is_water_task(kind) && !is_rope_task(kind); }

TaskConstants task_constants(TaskKind kind) {
  switch (kind) {
    case TaskKind::kTransportWater:
      return {8, 75, 7, ActionSpaceSpec::cup_1d()};
    case TaskKind::kPourWater:
    case TaskKind::kPourWaterAmount:
      return {8, 100, 40, ActionSpaceSpec::cup_3d()};
    case TaskKind::kStraightenRope:
    case TaskKind::kRopeConfiguration:
      return {8, 75, 15, ActionSpaceSpec::pickers(2)};
    case TaskKind::kSpreadCloth:
      return {8, 100, 15, ActionSpaceSpec::pickers(2)};
    case TaskKind::kFoldCloth:
    case TaskKind::kFoldCrumpledCloth:
      return {8, 100, 30, ActionSpaceSpec::pickers(2)};
    case TaskKind::kDropCloth:
    case TaskKind::kDropFoldCloth:
      return {32, 15, 15, ActionSpaceSpec::pickers(2)};
  }
  throw Error("unknown task kind");
}

bool inside_cup(const CupState& cup, const Vec3& p) {
  const Vec3 local = cup_local(cup.spec, cup.pose, p);
  return std::abs(local.x) <= 0.5 * cup.spec.width && std::abs(local.y) <= 0.5 * cup.spec.height &&
         std::abs(local.z) <= 0.5 * cup.spec.length;
}

WaterTally classify_water(std::span<const Vec3> fluid, const CupState* control, const CupState* target) {
  WaterTally t;
  t.total = fluid.size();
  for (const Vec3& p : fluid) {
    if (control != nullptr && inside_cup(*control, p)) {
      ++t.in_control;
    } else if (target != nullptr && inside_cup(*target, p)) {
      ++t.in_target;
    } else {
      ++t.spilled;
    }
  }
  return t;
}

double reward_transport(const WaterTally& tally, double cup_x, double target_x, double beta) {
  if (tally.total == 0) throw Error("water tally is empty");
  return -std::abs(cup_x - target_x) -
         beta * static_cast<double>(tally.spilled) / static_cast<double>(tally.total);
}

double reward_pour(const WaterTally& tally) {
  if (tally.total == 0) throw Error("water tally is empty");
  return static_cast<double>(tally.in_target) / static_cast<double>(tally.total);
}

double reward_pour_amount(const WaterTally& tally, double goal_fraction) {
  return -std::abs(reward_pour(tally) - goal_fraction);
}

double reward_straighten(std::span<const Vec3> rope, double straight_length) {
  if (rope.size() < 2) throw Error("rope needs at least two particles");
  return -std::abs(distance(rope.front(), rope.back()) - straight_length);
}

double coverage_area(std::span<const Vec3> positions, double disc_radius, double cell, double half_extent) {
  const auto cells = static_cast<std::ptrdiff_t>(std::ceil(2.0 * half_extent / cell - 1e-9));
  thread_local std::vector<std::uint8_t> grid;
  grid.assign(static_cast<std::size_t>(cells * cells), 0);
  const double r2 = disc_radius * disc_radius;
  std::size_t covered = 0;
  for (const Vec3& p : positions) {
    const double gx = (p.x + half_extent) / cell - 0.5;
    const double gz = (p.z + half_extent) / cell - 0.5;
    const double span = disc_radius / cell;
    const auto x0 = std::max<std::ptrdiff_t>(0, static_cast<std::ptrdiff_t>(std::floor(gx - span)));
    const auto x1 = std::min<std::ptrdiff_t>(cells - 1, static_cast<std::ptrdiff_t>(std::ceil(gx + span)));
    const auto z0 = std::max<std::ptrdiff_t>(0, static_cast<std::ptrdiff_t>(std::floor(gz - span)));
    const auto z1 = std::min<std::ptrdiff_t>(cells - 1, static_cast<std::ptrdiff_t>(std::ceil(gz + span)));
    for (std::ptrdiff_t iz = z0; iz <= z1; ++iz) {
      const double cz = -half_extent + (static_cast<double>(iz) + 0.5) * cell - p.z;
      for (std::ptrdiff_t ix = x0; ix <= x1; ++ix) {
        const double cx = -half_extent + (static_cast<double>(ix) + 0.5) * cell - p.x;
        if (cx * cx + cz * cz > r2) continue;
        std::uint8_t& c = grid[static_cast<std::size_t>(iz * cells + ix)];
        if (c == 0) {
          c = 1;
          ++covered;
        }
      }
    }
  }
  return static_cast<double>(covered) * cell * cell;
}

double reward_spread(std::span<const Vec3> cloth, double spacing) { return coverage_area(cloth, spacing); }

Vec3 anchor_centroid(std::span<const Vec3> cloth, int rows, int cols) {
  if (cloth.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {
    throw Error("cloth positions do not match grid dimensions");
  }
  Vec3 sum{};
  std::size_t count = 0;
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols / 2; ++j) {
      sum += cloth[static_cast<std::size_t>(i * cols + j)];
      ++count;
    }
  }
  return count > 0 ? sum / static_cast<double>(count) : sum;
}

double reward_fold(std::span<const Vec3> cloth, int rows, int cols, const Vec3& initial_anchor_center,
                   double lambda) {
  if (cloth.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {
    throw Error("cloth positions do not match grid dimensions");
  }
  double sum = 0.0;
  std::size_t pairs = 0;
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < (cols + 1) / 2; ++j) {
      const int mirror = cols - 1 - j;
      if (mirror != j) {
        sum += distance(cloth[static_cast<std::size_t>(i * cols + j)],
                        cloth[static_cast<std::size_t>(i * cols + mirror)]);
      }
      ++pairs;
    }
  }
  const double mean = pairs > 0 ? sum / static_cast<double>(pairs) : 0.0;
  return -mean - lambda * distance(anchor_centroid(cloth, rows, cols), initial_anchor_center);
}

double reward_drop(std::span<const Vec3> cloth, std::span<const Vec3> target) {
  if (cloth.size() != target.size() || cloth.empty()) throw Error("cloth and target sizes differ");
  double sum = 0.0;
  for (std::size_t i = 0; i < cloth.size(); ++i) sum += distance(cloth[i], target[i]);
  return -sum / static_cast<double>(cloth.size());
}

double reward_rope_config(std::span<const Vec3> keypoints, std::span<const Vec3> goal) {
  if (keypoints.size() != goal.size()) throw Error("keypoint counts differ");
  if (keypoints.empty()) return 0.0;
  const CostMatrix cost = distance_matrix(keypoints, goal);
  const std::vector<std::size_t> match = solve_assignment(cost);
  return -assignment_cost(cost, match) / static_cast<double>(keypoints.size());
}

std::vector<std::size_t> rope_keypoint_indices(std::size_t n) {
  std::vector<std::size_t> idx;
  for (int k = 0; k < kRopeKeypoints; ++k) {
    idx.push_back(static_cast<std::size_t>(
        std::llround(static_cast<double>(k) * static_cast<double>(n - 1) / (kRopeKeypoints - 1))));
  }
  return idx;
}

std::vector<Vec3> rope_keypoints(std::span<const Vec3> rope) {
  std::vector<Vec3> out;
  for (std::size_t i : rope_keypoint_indices(rope.size())) out.push_back(rope[i]);
  return out;
}

WaterTally water_tally(const Scene& scene, const TaskState& state) {
  return classify_water(scene.particles.positions, state.control_cup ? &*state.control_cup : nullptr,
                        state.target_cup ? &*state.target_cup : nullptr);
}

double water_height(const Scene& scene, const CupState& cup) {
  double top = 0.0;
  for (const Vec3& p : scene.particles.positions) {
    if (!inside_cup(cup, p)) continue;
    top = std::max(top, cup_local(cup.spec, cup.pose, p).y + 0.5 * cup.spec.height);
  }
  return top;
}

double performance(const Scene& scene, const TaskState& state) {
  const auto& pos = scene.particles.positions;
  switch (state.kind) {
    case TaskKind::kTransportWater:
      return reward_transport(water_tally(scene, state), state.control_cup->pose.x, state.target_x);
    case TaskKind::kPourWater:
      return reward_pour(water_tally(scene, state));
    case TaskKind::kPourWaterAmount:
      return reward_pour_amount(water_tally(scene, state), state.goal_fraction);
    case TaskKind::kStraightenRope:
      return reward_straighten(pos, state.straight_length);
    case TaskKind::kRopeConfiguration:
      return reward_rope_config(rope_keypoints(pos), state.goal_keypoints);
    case TaskKind::kSpreadCloth:
      return reward_spread(pos, state.cloth_spacing);
    case TaskKind::kFoldCloth:
    case TaskKind::kFoldCrumpledCloth:
    case TaskKind::kDropFoldCloth:
      return reward_fold(pos, state.rows, state.cols, state.anchor_center);
    case TaskKind::kDropCloth:
      return reward_drop(pos, state.flat_target);
  }
  throw Error("unknown task kind");
}

std::size_t reduced_state_dim(TaskKind kind) {
  switch (kind) {
    case TaskKind::kTransportWater:
      return 7;
    case TaskKind::kPourWater:
      return 13;
    case TaskKind::kPourWaterAmount:
      return 14;
    case TaskKind::kStraightenRope:
    case TaskKind::kRopeConfiguration:
      return 3 * kRopeKeypoints + 6;
    default:
      return 4 * 3 + 6;
  }
}

namespace {

void push(std::vector<double>& out, const Vec3& v) { out.insert(out.end(), {v.x, v.y, v.z}); }

}  // namespace

std::vector<double> reduced_state(const Scene& scene, const TaskState& state) {
  std::vector<double> out;
  out.reserve(reduced_state_dim(state.kind));
  const auto& pos = scene.particles.positions;
  if (is_water_task(state.kind)) {
    const CupState& cc = *state.control_cup;
    const WaterTally tally = water_tally(scene, state);
    const double total = static_cast<double>(std::max<std::size_t>(tally.total, 1));
    if (state.kind == TaskKind::kTransportWater) {
      out.insert(out.end(), {cc.spec.width, cc.spec.length, cc.spec.height, state.target_x - cc.pose.x,
                             water_height(scene, cc), static_cast<double>(tally.in_control) / total,
                             static_cast<double>(tally.total - tally.in_control) / total});
      return out;
    }
    const CupState& tc = *state.target_cup;
    out.insert(out.end(), {cc.spec.width, cc.spec.length, cc.spec.height, tc.spec.width, tc.spec.length,
                           tc.spec.height, cc.pose.x, cc.pose.y, cc.pose.theta, state.initial_distance,
                           water_height(scene, cc), static_cast<double>(tally.in_control) / total,
                           static_cast<double>(tally.in_target) / total});
    if (state.kind == TaskKind::kPourWaterAmount) out.push_back(state.goal_fraction);
    return out;
  }
  if (is_rope_task(state.kind)) {
    for (const Vec3& k : rope_keypoints(pos)) push(out, k);
  } else {
    const auto c = static_cast<std::size_t>(state.cols);
    const auto r = static_cast<std::size_t>(state.rows);
    for (std::size_t idx : {std::size_t{0}, c - 1, (r - 1) * c, r * c - 1}) push(out, pos[idx]);
  }
  for (const Picker& p : scene.pickers) push(out, p.position);
  return out;
}

std::vector<double> full_state(const Scene& scene, const TaskState& state) {
  const auto& pos = scene.particles.positions;
  const std::size_t max_n = std::max(state.max_particles, pos.size());
  std::vector<double> out(3 * max_n, 0.0);
  for (std::size_t i = 0; i < pos.size(); ++i) {
    out[3 * i] = pos[i].x;
    out[3 * i + 1] = pos[i].y;
    out[3 * i + 2] = pos[i].z;
  }
  if (is_water_task(state.kind)) {
    const CupPose& p = state.control_cup->pose;
    out.insert(out.end(), {p.x, p.y, p.theta});
  } else {
    for (const Picker& p : scene.pickers) {
      out.insert(out.end(), {p.position.x, p.position.y, p.position.z, p.attached ? 1.0 : 0.0});
    }
  }
  return out;
}

}  // namespace softgym
