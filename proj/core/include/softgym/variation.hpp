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
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "softgym/rng.hpp"
#include "softgym/scene.hpp"
#include "softgym/task_sim.hpp"
#include "softgym/tasks.hpp"

namespace softgym {

inline constexpr std::uint32_t kNumVariations = 1000;
inline constexpr std::uint32_t kNumTrainVariations = 800;
// Fluid particle radius r of the variation formulas.
inline constexpr double kWaterR = 0.033;

// Generation parameters as a flat key -> number map. The canonical text
// encoding is "key=value\n" per entry, keys sorted, values printed with %.17g.
using ParamMap = std::map<std::string, double>;

std::string encode_params(const ParamMap& params);
ParamMap decode_params(std::string_view text);
double param(const ParamMap& params, const std::string& key);

struct WaterParams {
  int w_w = 0;
  int l_w = 0;
  int h_w = 0;
  bool large = false;
  int m = 0;
  int volume = 0;
  double h = 0.0;
  // Control cup inner sizes.
  double cup_w = 0.0;
  double cup_l = 0.0;
  double cup_h = 0.0;
  // Target cup (PourWater only).
  double target_w = 0.0;
  double target_l = 0.0;
  double target_h = 0.0;
  double distance = 0.0;
  // Target position (TransportWater only).
  double target_offset = 0.0;

  friend bool operator==(const WaterParams&, const WaterParams&) = default;
};

// Draw order: w_w, l_w, level, control height jitter, target height jitter, distance.
WaterParams gen_pour_water(DrawSource& rng);
// Draw order: w_w, l_w, level, target offset.
WaterParams gen_transport_water(DrawSource& rng);
double gen_goal_amount(DrawSource& rng);

struct ClothParams {
  int rows = 0;
  int cols = 0;
  int crumple_index = -1;
  double crumple_height = 0.0;
  double rotation = 0.0;
  double clearance = 0.0;
};

ClothParams gen_cloth(DrawSource& rng, TaskKind kind);

inline constexpr int kRopePerturbations = 4;
inline constexpr int kRopeParticles = 41;

struct RopeParams {
  std::vector<int> indices;
  std::vector<double> heights;
  int letter = -1;
};

RopeParams gen_rope(DrawSource& rng, TaskKind kind);

// Letters of the RopeConfiguration goal library.
inline constexpr std::string_view kGoalLetters = "SCLU";

// Ten keypoints evenly spaced by arc length along the letter template, scaled
// to total length `length`, centred on the origin at height `y`.
std::vector<Vec3> letter_keypoints(int letter, double length, double y);

struct TaskVariation {
  std::uint32_t index = 0;
  std::uint64_t seed = 0;
  ParamMap params;
  Scene initial_scene;
};

std::uint64_t variation_seed(std::uint64_t master_seed, std::uint32_t index, int attempt);

// Full generation pipeline for one variation: draws parameters from the
// index's stream of `master_seed`, assembles and settles the scene, and
// re-draws from the next sub-stream while the performance bounds are degenerate.
TaskVariation build_variation(TaskKind kind, std::uint64_t master_seed, std::uint32_t index,
                              double particle_scale = 1.0);

// Task bookkeeping for a cached variation.
TaskState make_task_state(TaskKind kind, const ParamMap& params, const Scene& initial);

// Simulator ready to step from the cached initial scene.
TaskSim make_task_sim(TaskKind kind, const TaskVariation& variation);

}  // namespace softgym
