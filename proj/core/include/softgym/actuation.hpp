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

#include <cstddef>
#include <span>
#include <vector>

#include "softgym/assets.hpp"
#include "softgym/scene.hpp"

namespace softgym {

enum class ActionKind { kCup1D, kCup3D, kPickers };

// Raw (un-normalized) per-dimension bounds of an action space.
struct ActionSpaceSpec {
  ActionKind kind = ActionKind::kPickers;
  int n_pickers = 0;
  std::vector<double> low;
  std::vector<double> high;

  std::size_t dim() const { return low.size(); }
  void validate() const;

  // dx in [-0.011, 0.011].
  static ActionSpaceSpec cup_1d();
  // (dx, dy, dtheta) in [-0.01, 0.01]^2 x [-0.015, 0.015].
  static ActionSpaceSpec cup_3d();
  // (dx, dy, dz, pick) per picker: [-0.01, 0.01]^3 x [0, 1].
  static ActionSpaceSpec pickers(int n);
};

// Clamps a_norm to [-1, 1] and maps it affinely onto [low, high].
std::vector<double> denormalize(const ActionSpaceSpec& spec, std::span<const double> a_norm);

inline constexpr double kPickThreshold = 0.5;

struct Workspace {
  Vec3 lo{-1.5, 0.0, -1.5};
  Vec3 hi{1.5, 2.5, 1.5};
  // Minimum picker height (DropCloth-style tasks raise it above the floor).
  double picker_floor = 0.0;

  friend bool operator==(const Workspace&, const Workspace&) = default;
};

struct PickerAction {
  Vec3 delta{};
  double pick = 0.0;
};

// Moves picker `index`, then grabs the nearest cloth/rope particle within
// `grab_range` when pick >= 0.5, or releases when pick < 0.5.
void apply_picker(Scene& scene, std::size_t index, const PickerAction& action, const Workspace& ws,
                  double grab_range, double particle_radius);

// Raw-action split for picker spaces.
std::vector<PickerAction> split_picker_action(std::span<const double> raw);

struct CupLimits {
  double x_lo = -1.5;
  double x_hi = 1.5;
  double y_lo = 0.0;
  double y_hi = 2.5;
  double theta_lo = -3.141592653589793;
  double theta_hi = 3.141592653589793;

  friend bool operator==(const CupLimits&, const CupLimits&) = default;
};

// Increments the pose: Cup1D moves x only, Cup3D moves (x, y, theta).
CupPose apply_cup(const CupPose& pose, std::span<const double> raw, ActionKind kind, const CupLimits& limits);

}  // namespace softgym
