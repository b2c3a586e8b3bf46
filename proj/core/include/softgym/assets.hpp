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

#include <span>
#include <vector>

#include "softgym/colliders.hpp"
#include "softgym/constraints.hpp"
#include "softgym/particles.hpp"

namespace softgym {

// Rows x columns grid; particle (i, j) has index i * length + j and sits at
// origin + (j * spacing, 0, i * spacing).
struct ClothSpec {
  int width = 2;   // rows, along z
  int length = 2;  // columns, along x
  double spacing = 0.0125;
  double mass_per_particle = 1.0;
  double stretch_stiffness = 1.0;
  double bend_stiffness = 0.6;

  void validate() const;
};

struct RopeSpec {
  int n_particles = 41;
  double spacing = 0.025;
  double mass_per_particle = 1.0;
  double stiffness = 1.0;
  double bend_stiffness = 0.8;

  void validate() const;
  double straight_length() const { return (n_particles - 1) * spacing; }
};

// Lattice counts along x (w_w), z (l_w) and y (h_w).
struct FluidSpec {
  int w_w = 1;
  int l_w = 1;
  int h_w = 1;
  double rest_distance = 0.55 * 0.033;
  double kernel_radius = 0.033;
  double mass_per_particle = 1.0;

  void validate() const;
};

// Pose of a cup: (x, y) of the cavity's geometric centre and tilt theta about z.
struct CupPose {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;

  friend bool operator==(const CupPose&, const CupPose&) = default;
};

// Open-top cup; width along x, length along z, height along y (inner sizes).
struct CupSpec {
  double width = 0.3;
  double length = 0.3;
  double height = 0.3;
  double wall_thickness = 0.03;
  CupPose pose{};
  double yaw = 0.0;

  void validate() const;
  // Cavity centre height that puts the outer bottom on the floor.
  double resting_y() const { return wall_thickness + 0.5 * height; }
};

struct BuiltObject {
  ParticleSet particles;
  std::vector<Constraint> constraints;
};

BuiltObject build_cloth(const ClothSpec& spec, const Vec3& origin);
BuiltObject build_rope(const RopeSpec& spec, std::span<const Vec3> polyline);
BuiltObject build_fluid_block(const FluidSpec& spec, const Vec3& origin);

// Bottom, -x, +x, -z, +z walls, in that order.
std::vector<Collider> build_cup(const CupSpec& spec);

// Rewrites the five boxes of a cup built by build_cup for a new pose and sets
// their kinematic velocity from the displacement over `dt`.
void place_cup(std::span<Collider> boxes, const CupSpec& spec, const CupPose& pose, double dt);

// Transforms a world point into the cup cavity frame (origin at the cavity centre).
Vec3 cup_local(const CupSpec& spec, const CupPose& pose, const Vec3& world);

Collider make_floor(double friction = 0.5);

// n points spaced `spacing` apart along +x, centred on `center`.
std::vector<Vec3> straight_polyline(int n, double spacing, const Vec3& center);

}  // namespace softgym
