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

#include <optional>
#include <variant>

#include "softgym/vec3.hpp"

namespace softgym {

// Points p with dot(normal, p) >= offset are free space.
struct HalfSpace {
  Vec3 normal{0.0, 1.0, 0.0};
  double offset = 0.0;

  friend bool operator==(const HalfSpace&, const HalfSpace&) = default;
};

// Oriented box. Orientation is R = Rz(tilt) * Ry(yaw); `velocity` is the
// kinematic velocity used for contact friction.
struct Box {
  Vec3 center{};
  Vec3 half_extents{0.5, 0.5, 0.5};
  double yaw = 0.0;
  double tilt = 0.0;
  Vec3 velocity{};

  Vec3 to_local(const Vec3& world) const;
  Vec3 to_world_direction(const Vec3& local) const;
  Vec3 to_world(const Vec3& local) const { return center + to_world_direction(local); }

  friend bool operator==(const Box&, const Box&) = default;
};

struct Collider {
  std::variant<HalfSpace, Box> shape;
  double friction = 0.5;

  friend bool operator==(const Collider&, const Collider&) = default;
};

// Contact of a sphere (center, radius) with a collider: the point pushed out
// to the surface, the outward normal and the penetration depth.
struct Contact {
  Vec3 resolved;
  Vec3 normal;
  double depth = 0.0;
};

// Returns the contact if the sphere overlaps the collider, otherwise nullopt.
std::optional<Contact> collide_sphere(const Collider& collider, const Vec3& center, double radius);

// Collider with its box rotation precomputed, for many queries per substep.
class PreparedCollider {
 public:
  explicit PreparedCollider(const Collider& collider);

  // Same result as collide_sphere(collider, center, radius).
  std::optional<Contact> collide(const Vec3& center, double radius) const;

  const Collider& collider() const { return collider_; }

 private:
  Vec3 to_local(const Vec3& world) const;
  Vec3 to_world_direction(const Vec3& local) const;
  std::optional<Contact> collide_box(const Vec3& p, double radius) const;

  Collider collider_;
  bool is_box_ = false;
  // Rz(tilt) * Ry(yaw) as cos/sin pairs, and the box's world AABB.
  double cy_ = 1.0, sy_ = 0.0, ct_ = 1.0, st_ = 0.0;
  Vec3 center_{};
  Vec3 reach_{};
};

void validate_collider(const Collider& collider);

}  // namespace softgym
