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

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "softgym/actuation.hpp"
#include "softgym/assets.hpp"
#include "softgym/scene.hpp"

namespace softgym {

enum class TaskKind : std::uint16_t {
  kTransportWater = 0,
  kPourWater = 1,
  kPourWaterAmount = 2,
  kStraightenRope = 3,
  kRopeConfiguration = 4,
  kSpreadCloth = 5,
  kFoldCloth = 6,
  kFoldCrumpledCloth = 7,
  kDropCloth = 8,
  kDropFoldCloth = 9,
};

inline constexpr std::array<TaskKind, 10> kAllTasks = {
    TaskKind::kTransportWater, TaskKind::kPourWater,       TaskKind::kPourWaterAmount,
    TaskKind::kStraightenRope, TaskKind::kRopeConfiguration, TaskKind::kSpreadCloth,
    TaskKind::kFoldCloth,      TaskKind::kFoldCrumpledCloth, TaskKind::kDropCloth,
    TaskKind::kDropFoldCloth,
};

// "TransportWater"
std::string_view task_name(TaskKind kind);
// "transport_water"
std::string task_slug(TaskKind kind);
// Accepts "TransportWater", "transport_water" and "softgym/TransportWater".
TaskKind parse_task(std::string_view name);

bool is_water_task(TaskKind kind);
bool is_rope_task(TaskKind kind);
bool is_cloth_task(TaskKind kind);

// Per-task constants: action repetition, horizon, CEM planning horizon.
struct TaskConstants {
  int action_repetition = 8;
  int horizon = 100;
  int planning_horizon = 15;
  ActionSpaceSpec action_space;
};

TaskConstants task_constants(TaskKind kind);

inline constexpr double kSpillPenalty = 4.0;
inline constexpr double kFoldPenalty = 1.0;
inline constexpr double kCoverageCell = 0.01;
inline constexpr double kCoverageHalfExtent = 1.5;
inline constexpr int kRopeKeypoints = 10;

struct CupState {
  CupSpec spec;
  CupPose pose;
  std::size_t first_collider = 0;

  friend bool operator==(const CupState&, const CupState&) = default;
};

// Everything task-specific that is not part of the physical scene.
struct TaskState {
  TaskKind kind = TaskKind::kTransportWater;
  // Water tasks.
  std::optional<CupState> control_cup;
  std::optional<CupState> target_cup;
  double target_x = 0.0;
  double goal_fraction = 0.0;
  double initial_distance = 0.0;
  // Rope tasks.
  double straight_length = 0.0;
  std::vector<Vec3> goal_keypoints;
  // Cloth tasks.
  int rows = 0;
  int cols = 0;
  double cloth_spacing = 0.0;
  Vec3 anchor_center{};
  std::vector<Vec3> flat_target;
  std::size_t max_particles = 0;
  Workspace workspace{};
  CupLimits cup_limits{};

  friend bool operator==(const TaskState&, const TaskState&) = default;
};

struct WaterTally {
  std::size_t in_control = 0;
  std::size_t in_target = 0;
  std::size_t spilled = 0;
  std::size_t total = 0;

  friend bool operator==(const WaterTally&, const WaterTally&) = default;
};

bool inside_cup(const CupState& cup, const Vec3& p);

WaterTally classify_water(std::span<const Vec3> fluid, const CupState* control, const CupState* target);

double reward_transport(const WaterTally& tally, double cup_x, double target_x, double beta = kSpillPenalty);
double reward_pour(const WaterTally& tally);
double reward_pour_amount(const WaterTally& tally, double goal_fraction);
double reward_straighten(std::span<const Vec3> rope, double straight_length);

// Top-down area (m^2) covered by discs of `disc_radius` around each particle,
// rasterised on a grid of `cell` metres over [-half_extent, half_extent]^2.
double coverage_area(std::span<const Vec3> positions, double disc_radius, double cell = kCoverageCell,
                     double half_extent = kCoverageHalfExtent);
double reward_spread(std::span<const Vec3> cloth, double spacing);

// Centroid of columns j < cols / 2.
Vec3 anchor_centroid(std::span<const Vec3> cloth, int rows, int cols);
double reward_fold(std::span<const Vec3> cloth, int rows, int cols, const Vec3& initial_anchor_center,
                   double lambda = kFoldPenalty);
double reward_drop(std::span<const Vec3> cloth, std::span<const Vec3> target);
double reward_rope_config(std::span<const Vec3> keypoints, std::span<const Vec3> goal);

// Keypoint indices round(k (n-1) / 9), k = 0..9.
std::vector<std::size_t> rope_keypoint_indices(std::size_t n);
std::vector<Vec3> rope_keypoints(std::span<const Vec3> rope);

// Task performance s for the current scene.
double performance(const Scene& scene, const TaskState& state);

// Water diagnostics used in observations.
WaterTally water_tally(const Scene& scene, const TaskState& state);
double water_height(const Scene& scene, const CupState& cup);

std::vector<double> reduced_state(const Scene& scene, const TaskState& state);
std::size_t reduced_state_dim(TaskKind kind);

// Particle positions zero-padded to state.max_particles, then tool state:
// (x, y, z, attached) per picker or (x, y, theta) of the controlled cup.
std::vector<double> full_state(const Scene& scene, const TaskState& state);

}  // namespace softgym
