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

#include "softgym/assets.hpp"

#include <cmath>

#include "softgym/error.hpp"
#include "softgym/solver.hpp"

namespace softgym {

void ClothSpec::validate() const {
  if (width < 2 || length < 2) throw Error("cloth needs at least 2x2 particles");
  if (!(spacing > 0.0)) throw Error("cloth spacing must be > 0");
  if (!(mass_per_particle > 0.0)) throw Error("cloth particle mass must be > 0");
}

void RopeSpec::validate() const {
  if (n_particles < 2) throw Error("rope needs at least 2 particles");
  if (!(spacing > 0.0)) throw Error("rope spacing must be > 0");
  if (!(mass_per_particle > 0.0)) throw Error("rope particle mass must be > 0");
}

void FluidSpec::validate() const {
  if (w_w < 1 || l_w < 1 || h_w < 1) throw Error("fluid block counts must be >= 1");
  if (!(rest_distance > 0.0) || !(kernel_radius > 0.0)) throw Error("fluid spacing must be > 0");
  if (!(mass_per_particle > 0.0)) throw Error("fluid particle mass must be > 0");
}

void CupSpec::validate() const {
  if (!(width > 0.0 && length > 0.0 && height > 0.0 && wall_thickness > 0.0)) {
    throw Error("cup dimensions must be > 0");
  }
}

BuiltObject build_cloth(const ClothSpec& spec, const Vec3& origin) {
  spec.validate();
  BuiltObject out;
  const int rows = spec.width;
  const int cols = spec.length;
  const double inv_mass = 1.0 / spec.mass_per_particle;
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      out.particles.add(origin + Vec3{j * spec.spacing, 0.0, i * spec.spacing}, inv_mass, Group::kCloth);
    }
  }
  const auto idx = [cols](int i, int j) { return static_cast<std::uint32_t>(i * cols + j); };
  const double diag = spec.spacing * std::sqrt(2.0);
  const auto stretch = [&](int i0, int j0, int i1, int j1, double rest) {
    out.constraints.emplace_back(
        DistanceConstraint{idx(i0, j0), idx(i1, j1), rest, spec.stretch_stiffness, DistanceKind::kStretch});
  };
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      if (j + 1 < cols) stretch(i, j, i, j + 1, spec.spacing);
      if (i + 1 < rows) stretch(i, j, i + 1, j, spec.spacing);
      if (i + 1 < rows && j + 1 < cols) stretch(i, j, i + 1, j + 1, diag);
      if (i + 1 < rows && j >= 1) stretch(i, j, i + 1, j - 1, diag);
    }
  }
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      if (j + 2 < cols) {
        out.constraints.emplace_back(DistanceConstraint{idx(i, j), idx(i, j + 2), 2.0 * spec.spacing,
                                                        spec.bend_stiffness, DistanceKind::kBend});
      }
      if (i + 2 < rows) {
        out.constraints.emplace_back(DistanceConstraint{idx(i, j), idx(i + 2, j), 2.0 * spec.spacing,
                                                        spec.bend_stiffness, DistanceKind::kBend});
      }
    }
  }
  return out;
}

BuiltObject build_rope(const RopeSpec& spec, std::span<const Vec3> polyline) {
  spec.validate();
  if (polyline.size() != static_cast<std::size_t>(spec.n_particles)) {
    throw Error("rope polyline must have one point per particle");
  }
  BuiltObject out;
  const double inv_mass = 1.0 / spec.mass_per_particle;
  for (const Vec3& p : polyline) out.particles.add(p, inv_mass, Group::kRope);
  const auto n = static_cast<std::uint32_t>(spec.n_particles);
  for (std::uint32_t k = 0; k + 1 < n; ++k) {
    out.constraints.emplace_back(DistanceConstraint{k, k + 1, spec.spacing, spec.stiffness, DistanceKind::kStretch});
  }
  for (std::uint32_t k = 0; k + 2 < n; ++k) {
    out.constraints.emplace_back(
        DistanceConstraint{k, k + 2, 2.0 * spec.spacing, spec.bend_stiffness, DistanceKind::kBend});
  }
  return out;
}

BuiltObject build_fluid_block(const FluidSpec& spec, const Vec3& origin) {
  spec.validate();
  BuiltObject out;
  const double s = spec.rest_distance;
  const double inv_mass = 1.0 / spec.mass_per_particle;
  for (int y = 0; y < spec.h_w; ++y) {
    for (int z = 0; z < spec.l_w; ++z) {
      for (int x = 0; x < spec.w_w; ++x) {
        out.particles.add(origin + Vec3{x * s, y * s, z * s}, inv_mass, Group::kFluid);
      }
    }
  }
  DensityConstraint density;
  density.fluid_group = Group::kFluid;
  density.kernel_radius = spec.kernel_radius;
  density.rest_density = lattice_rest_density(s, spec.kernel_radius);
  out.constraints.emplace_back(density);
  return out;
}

namespace {

struct LocalBox {
  Vec3 center;
  Vec3 half;
};

std::vector<LocalBox> cup_local_boxes(const CupSpec& s) {
  const double w = 0.5 * s.width;
  const double l = 0.5 * s.length;
  const double h = 0.5 * s.height;
  const double t = s.wall_thickness;
  return {
      {{0.0, -h - 0.5 * t, 0.0}, {w + t, 0.5 * t, l + t}},
      {{-w - 0.5 * t, 0.0, 0.0}, {0.5 * t, h, l + t}},
      {{w + 0.5 * t, 0.0, 0.0}, {0.5 * t, h, l + t}},
      {{0.0, 0.0, -l - 0.5 * t}, {w, h, 0.5 * t}},
      {{0.0, 0.0, l + 0.5 * t}, {w, h, 0.5 * t}},
  };
}

Vec3 cup_world(const CupSpec& s, const CupPose& pose, const Vec3& local) {
  return Vec3{pose.x, pose.y, 0.0} + rotate_z(rotate_y(local, s.yaw), pose.theta);
}

}  // namespace

std::vector<Collider> build_cup(const CupSpec& spec) {
  spec.validate();
  std::vector<Collider> out;
  for (const LocalBox& b : cup_local_boxes(spec)) {
    Box box;
    box.center = cup_world(spec, spec.pose, b.center);
    box.half_extents = b.half;
    box.yaw = spec.yaw;
    box.tilt = spec.pose.theta;
    out.push_back(Collider{box, 0.5});
  }
  return out;
}

void place_cup(std::span<Collider> boxes, const CupSpec& spec, const CupPose& pose, double dt) {
  const std::vector<LocalBox> local = cup_local_boxes(spec);
  if (boxes.size() != local.size()) throw Error("place_cup expects the five boxes of one cup");
  for (std::size_t k = 0; k < local.size(); ++k) {
    Box& box = std::get<Box>(boxes[k].shape);
    const Vec3 center = cup_world(spec, pose, local[k].center);
    box.velocity = dt > 0.0 ? (center - box.center) / dt : Vec3{};
    box.center = center;
    box.tilt = pose.theta;
    box.yaw = spec.yaw;
  }
}

Vec3 cup_local(const CupSpec& spec, const CupPose& pose, const Vec3& world) {
  return rotate_y(rotate_z(world - Vec3{pose.x, pose.y, 0.0}, -pose.theta), -spec.yaw);
}

Collider make_floor(double friction) { return Collider{HalfSpace{{0.0, 1.0, 0.0}, 0.0}, friction}; }

std::vector<Vec3> straight_polyline(int n, double spacing, const Vec3& center) {
  std::vector<Vec3> pts;
  pts.reserve(static_cast<std::size_t>(n));
  const double half = 0.5 * (n - 1) * spacing;
  for (int k = 0; k < n; ++k) pts.push_back(center + Vec3{k * spacing - half, 0.0, 0.0});
  return pts;
}

}  // namespace softgym
