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
#include <cstdint>
#include <vector>

#include "softgym/vec3.hpp"

namespace softgym {

// Object membership of a particle.
enum class Group : std::uint8_t { kNone = 0, kFluid = 1, kCloth = 2, kRope = 3 };

// Structure-of-arrays particle state: x_i, v_i, w_i and group tag.
struct ParticleSet {
  std::vector<Vec3> positions;
  std::vector<Vec3> velocities;
  std::vector<double> inv_masses;
  std::vector<Group> groups;

  std::size_t size() const { return positions.size(); }
  bool empty() const { return positions.empty(); }

  // Appends one particle and returns its index.
  std::uint32_t add(const Vec3& position, double inv_mass, Group group, const Vec3& velocity = {});

  // Appends every particle of `other`; returns the index offset of the first one.
  std::uint32_t append(const ParticleSet& other);

  // Throws softgym::Error if the arrays disagree in length, a mass is
  // negative, or any component is non-finite.
  void validate() const;

  friend bool operator==(const ParticleSet&, const ParticleSet&) = default;
};

}  // namespace softgym
