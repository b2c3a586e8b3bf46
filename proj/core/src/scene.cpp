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

#include <cmath>
#include <string>
#include <type_traits>

#include "softgym/error.hpp"
#include "softgym/scene.hpp"
#include "softgym/sim_config.hpp"

namespace softgym {

std::uint32_t ParticleSet::add(const Vec3& position, double inv_mass, Group group,
                               const Vec3& velocity) {
  positions.push_back(position);
  velocities.push_back(velocity);
  inv_masses.push_back(inv_mass);
  groups.push_back(group);
  return static_cast<std::uint32_t>(positions.size() - 1);
}

std::uint32_t ParticleSet::append(const ParticleSet& other) {
  const auto base = static_cast<std::uint32_t>(size());
  positions.insert(positions.end(), other.positions.begin(), other.positions.end());
  velocities.insert(velocities.end(), other.velocities.begin(), other.velocities.end());
  inv_masses.insert(inv_masses.end(), other.inv_masses.begin(), other.inv_masses.end());
  groups.insert(groups.end(), other.groups.begin(), other.groups.end());
  return base;
}

void ParticleSet::validate() const {
  const std::size_t n = positions.size();
  if (velocities.size() != n || inv_masses.size() != n || groups.size() != n) {
    throw Error("particle arrays have mismatched lengths");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(inv_masses[i] >= 0.0) || !std::isfinite(inv_masses[i])) {
      throw Error("invalid inverse mass at particle " + std::to_string(i));
    }
    if (!is_finite(positions[i]) || !is_finite(velocities[i])) {
      throw Error("non-finite state");
    }
  }
}

void validate_constraint(const Constraint& c, std::size_t n_particles, std::size_t n_pickers) {
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, DistanceConstraint>) {
          if (v.i == v.j) throw Error("distance constraint joins a particle to itself");
          if (v.i >= n_particles || v.j >= n_particles) {
            throw Error("distance constraint index out of range");
          }
          if (!(v.rest_length > 0.0)) throw Error("distance constraint rest length must be > 0");
          if (!(v.stiffness > 0.0 && v.stiffness <= 1.0)) {
            throw Error("distance constraint stiffness must be in (0, 1]");
          }
        } else if constexpr (std::is_same_v<T, DensityConstraint>) {
          if (!(v.rest_density > 0.0)) throw Error("rest density must be > 0");
          if (!(v.kernel_radius > 0.0)) throw Error("kernel radius must be > 0");
        } else {
          if (v.particle_index >= n_particles || v.picker_index >= n_pickers) {
            throw Error("attachment index out of range");
          }
        }
      },
      c);
}

void SimConfig::validate() const {
  if (!(dt > 0.0)) throw Error("dt must be > 0");
  if (solver_iterations < 1) throw Error("solver_iterations must be >= 1");
  if (!(particle_radius > 0.0)) throw Error("particle_radius must be > 0");
  if (!is_finite(gravity)) throw Error("gravity must be finite");
}

void Scene::add(const Constraint& c) { add_offset(c, 0); }

void Scene::add_offset(const Constraint& c, std::uint32_t base) {
  std::visit(
      [&](auto v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, DistanceConstraint>) {
          v.i += base;
          v.j += base;
          distances.push_back(v);
        } else if constexpr (std::is_same_v<T, DensityConstraint>) {
          densities.push_back(v);
        } else {
          v.particle_index += base;
          attachments.push_back(v);
        }
      },
      c);
}

void Scene::validate() const {
  particles.validate();
  const std::size_t n = particles.size();
  for (const auto& c : distances) validate_constraint(c, n, pickers.size());
  for (const auto& c : densities) validate_constraint(c, n, pickers.size());
  for (const auto& c : attachments) validate_constraint(c, n, pickers.size());
  for (const auto& c : colliders) validate_collider(c);
  for (const auto& p : pickers) {
    if (!(p.radius > 0.0)) throw Error("picker radius must be > 0");
    if (p.attached && *p.attached >= n) throw Error("picker attachment out of range");
  }
}

}  // namespace softgym
