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

#include <algorithm>
#include <cmath>

#include "softgym/colliders.hpp"
#include "softgym/error.hpp"

namespace softgym {

Vec3 Box::to_local(const Vec3& world) const {
  return rotate_y(rotate_z(world - center, -tilt), -yaw);
}

Vec3 Box::to_world_direction(const Vec3& local) const { return rotate_z(rotate_y(local, yaw), tilt); }

namespace {

std::optional<Contact> collide_half_space(const HalfSpace& h, const Vec3& p, double radius) {
  const double dist = dot(h.normal, p) - h.offset;
  if (dist >= radius) return std::nullopt;
  return Contact{p + h.normal * (radius - dist), h.normal, radius - dist};
}

}  // namespace

std::optional<Contact> collide_sphere(const Collider& collider, const Vec3& center, double radius) {
  return PreparedCollider(collider).collide(center, radius);
}

PreparedCollider::PreparedCollider(const Collider& collider) : collider_(collider) {
  if (const auto* b = std::get_if<Box>(&collider_.shape)) {
    is_box_ = true;
    cy_ = std::cos(b->yaw);
    sy_ = std::sin(b->yaw);
    ct_ = std::cos(b->tilt);
    st_ = std::sin(b->tilt);
    center_ = b->center;
    for (int m = 0; m < 3; ++m) {
      Vec3 axis{};
      axis[m] = b->half_extents[m];
      const Vec3 w = to_world_direction(axis);
      for (int k = 0; k < 3; ++k) reach_[k] += std::abs(w[k]);
    }
  }
}

// Inverse rotation: Ry(-yaw) * Rz(-tilt).
Vec3 PreparedCollider::to_local(const Vec3& world) const {
  const Vec3 d = world - std::get<Box>(collider_.shape).center;
  const Vec3 t{ct_ * d.x + st_ * d.y, -st_ * d.x + ct_ * d.y, d.z};
  return {cy_ * t.x - sy_ * t.z, t.y, sy_ * t.x + cy_ * t.z};
}

Vec3 PreparedCollider::to_world_direction(const Vec3& local) const {
  const Vec3 t{cy_ * local.x + sy_ * local.z, local.y, -sy_ * local.x + cy_ * local.z};
  return {ct_ * t.x - st_ * t.y, st_ * t.x + ct_ * t.y, t.z};
}

std::optional<Contact> PreparedCollider::collide(const Vec3& center, double radius) const {
  if (!is_box_) return collide_half_space(std::get<HalfSpace>(collider_.shape), center, radius);
  if (std::abs(center.x - center_.x) >= reach_.x + radius || std::abs(center.y - center_.y) >= reach_.y + radius ||
      std::abs(center.z - center_.z) >= reach_.z + radius) {
    return std::nullopt;
  }
  return collide_box(center, radius);
}

std::optional<Contact> PreparedCollider::collide_box(const Vec3& p, double radius) const {
  const Box& b = std::get<Box>(collider_.shape);
  const Vec3 local = to_local(p);
  const Vec3& e = b.half_extents;
  if (std::abs(local.x) >= e.x + radius || std::abs(local.y) >= e.y + radius ||
      std::abs(local.z) >= e.z + radius) {
    return std::nullopt;
  }
  const auto world = [&](const Vec3& l) { return b.center + to_world_direction(l); };
  const bool inside = std::abs(local.x) <= e.x && std::abs(local.y) <= e.y && std::abs(local.z) <= e.z;
  if (!inside) {
    const Vec3 closest{std::clamp(local.x, -e.x, e.x), std::clamp(local.y, -e.y, e.y),
                       std::clamp(local.z, -e.z, e.z)};
    const Vec3 d = local - closest;
    const double len = norm(d);
    if (len >= radius) return std::nullopt;
    const Vec3 n_local = d / len;
    return Contact{world(closest + n_local * radius), to_world_direction(n_local), radius - len};
  }
  // Inside: leave through the face of minimum penetration (ties: x, y, z).
  int axis = 0;
  double best = e.x - std::abs(local.x);
  for (int k = 1; k < 3; ++k) {
    const double pen = e[k] - std::abs(local[k]);
    if (pen < best) {
      best = pen;
      axis = k;
    }
  }
  const double sign = local[axis] < 0.0 ? -1.0 : 1.0;
  Vec3 resolved_local = local;
  resolved_local[axis] = sign * (e[axis] + radius);
  Vec3 n_local{};
  n_local[axis] = sign;
  return Contact{world(resolved_local), to_world_direction(n_local), best + radius};
}

void validate_collider(const Collider& collider) {
  if (!(collider.friction >= 0.0 && collider.friction <= 1.0)) {
    throw Error("collider friction must be in [0, 1]");
  }
  if (const auto* h = std::get_if<HalfSpace>(&collider.shape)) {
    if (std::abs(norm(h->normal) - 1.0) > 1e-9) throw Error("half-space normal must be unit length");
  } else {
    const Box& b = std::get<Box>(collider.shape);
    if (!(b.half_extents.x > 0.0 && b.half_extents.y > 0.0 && b.half_extents.z > 0.0)) {
      throw Error("box half extents must be positive");
    }
  }
}

}  // namespace softgym
