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
#include <optional>
#include <vector>

#include "softgym/colliders.hpp"
#include "softgym/constraints.hpp"
#include "softgym/particles.hpp"

namespace softgym {

inline constexpr double kPickerRadius = 0.05;

// Free-floating spherical gripper.
struct Picker {
  Vec3 position{};
  double radius = kPickerRadius;
  std::optional<std::uint32_t> attached;

  friend bool operator==(const Picker&, const Picker&) = default;
};

// Complete simulation state. Constraints are kept in typed arrays and are
// projected in creation order within each type.
struct Scene {
  ParticleSet particles;
  std::vector<DistanceConstraint> distances;
  std::vector<DensityConstraint> densities;
  std::vector<Attachment> attachments;
  std::vector<Collider> colliders;
  std::vector<Picker> pickers;

  void add(const Constraint& c);
  // Offsets particle indices of every constraint by `base` before adding.
  void add_offset(const Constraint& c, std::uint32_t base);

  void validate() const;

  friend bool operator==(const Scene&, const Scene&) = default;
};

}  // namespace softgym
