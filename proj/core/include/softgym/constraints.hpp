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
#include <variant>

#include "softgym/particles.hpp"
#include "softgym/vec3.hpp"

namespace softgym {

enum class DistanceKind : std::uint8_t { kStretch = 0, kBend = 1 };

// |x_i - x_j| = rest_length, projected with the given stiffness.
struct DistanceConstraint {
  std::uint32_t i = 0;
  std::uint32_t j = 0;
  double rest_length = 0.0;
  double stiffness = 1.0;
  DistanceKind kind = DistanceKind::kStretch;

  friend bool operator==(const DistanceConstraint&, const DistanceConstraint&) = default;
};

// Constant-density constraint over every particle of `fluid_group`.
struct DensityConstraint {
  Group fluid_group = Group::kFluid;
  double rest_density = 1.0;
  double kernel_radius = 0.033;
  double relaxation = 100.0;
  double viscosity = 0.01;

  friend bool operator==(const DensityConstraint&, const DensityConstraint&) = default;
};

// Pins a particle to picker position + offset (offset fixed at grab time).
struct Attachment {
  std::uint32_t picker_index = 0;
  std::uint32_t particle_index = 0;
  Vec3 offset{};

  friend bool operator==(const Attachment&, const Attachment&) = default;
};

using Constraint = std::variant<DistanceConstraint, DensityConstraint, Attachment>;

// Throws softgym::Error when the constraint violates its invariants or
// references particles/pickers outside the given counts.
void validate_constraint(const Constraint& c, std::size_t n_particles, std::size_t n_pickers);

}  // namespace softgym
