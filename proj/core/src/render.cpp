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

#include "softgym/render.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include "softgym/error.hpp"

namespace softgym {

namespace {

using Rgb = std::array<std::uint8_t, 3>;

constexpr Rgb kSky{196, 212, 228};
constexpr Rgb kFluid{40, 96, 220};
constexpr Rgb kCloth{236, 150, 184};
constexpr Rgb kRope{232, 200, 48};
constexpr Rgb kOther{120, 120, 120};
constexpr Rgb kPicker{70, 70, 70};
constexpr Rgb kGoal{255, 0, 0};
constexpr Rgb kBox{170, 160, 150};
constexpr double kNear = 0.01;
constexpr double kPickerDrawRadius = 0.015;

struct View {
  Vec3 eye;
  Vec3 forward;
  Vec3 right;
  Vec3 up;
  double focal;
  int size;

  explicit View(const Camera& c)
      : eye(c.eye),
        forward(normalized(c.look_at - c.eye)),
        right(normalized(cross(forward, c.up))),
        up(cross(right, forward)),
        focal(0.5 * c.size / std::tan(0.5 * c.fov_y)),
        size(c.size) {}

  // Screen position (pixels, y down) and view depth.
  Vec3 project(const Vec3& p) const {
    const Vec3 d = p - eye;
    const double z = dot(d, forward);
    return {0.5 * size + focal * dot(d, right) / z, 0.5 * size - focal * dot(d, up) / z, z};
  }
};

struct Target {
  Frame frame;
  std::vector<double> depth;

  void put(int x, int y, double z, const Rgb& c) {
    if (x < 0 || y < 0 || x >= frame.size || y >= frame.size) return;
    const auto k = static_cast<std::size_t>(y * frame.size + x);
    if (z >= depth[k]) return;
    depth[k] = z;
    std::copy(c.begin(), c.end(), frame.pixels.begin() + static_cast<std::ptrdiff_t>(3 * k));
  }
};

std::uint8_t to_byte(double v) { return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L)); }

Rgb scale(const Rgb& c, double f) { return {to_byte(c[0] * f), to_byte(c[1] * f), to_byte(c[2] * f)}; }

void draw_background(Target& t, const View& v) {
  for (int y = 0; y < v.size; ++y) {
    for (int x = 0; x < v.size; ++x) {
      const double sx = (x + 0.5 - 0.5 * v.size) / v.focal;
      const double sy = (0.5 * v.size - (y + 0.5)) / v.focal;
      const Vec3 dir = v.forward + v.right * sx + v.up * sy;
      Rgb c = kSky;
      double depth = std::numeric_limits<double>::infinity();
      if (dir.y < 0.0 && v.eye.y > 0.0) {
        const double s = -v.eye.y / dir.y;
        const Vec3 hit = v.eye + dir * s;
        const double dist = std::hypot(hit.x - v.eye.x, hit.z - v.eye.z);
        const std::uint8_t g = to_byte(175.0 - 60.0 * std::min(1.0, dist / 8.0));
        c = {g, g, g};
        depth = s;  // dot(dir, forward) == 1
      }
      const auto k = static_cast<std::size_t>(y * v.size + x);
      t.depth[k] = depth;
      std::copy(c.begin(), c.end(), t.frame.pixels.begin() + static_cast<std::ptrdiff_t>(3 * k));
    }
  }
}

double edge(double ax, double ay, double bx, double by, double px, double py) {
  return (bx - ax) * (py - ay) - (by - ay) * (px - ax);
}

void draw_triangle(Target& t, const std::array<Vec3, 3>& s, const Rgb& c) {
  const double area = edge(s[0].x, s[0].y, s[1].x, s[1].y, s[2].x, s[2].y);
  if (std::abs(area) < 1e-12) return;
  const int x0 = std::max(0, static_cast<int>(std::floor(std::min({s[0].x, s[1].x, s[2].x}))));
  const int x1 = std::min(t.frame.size - 1, static_cast<int>(std::ceil(std::max({s[0].x, s[1].x, s[2].x}))));
  const int y0 = std::max(0, static_cast<int>(std::floor(std::min({s[0].y, s[1].y, s[2].y}))));
  const int y1 = std::min(t.frame.size - 1, static_cast<int>(std::ceil(std::max({s[0].y, s[1].y, s[2].y}))));
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) {
      const double px = x + 0.5;
      const double py = y + 0.5;
      const double w0 = edge(s[1].x, s[1].y, s[2].x, s[2].y, px, py) / area;
      const double w1 = edge(s[2].x, s[2].y, s[0].x, s[0].y, px, py) / area;
      const double w2 = 1.0 - w0 - w1;
      if (w0 < 0.0 || w1 < 0.0 || w2 < 0.0) continue;
      const double inv_z = w0 / s[0].z + w1 / s[1].z + w2 / s[2].z;
      t.put(x, y, 1.0 / inv_z, c);
    }
  }
}

void draw_box(Target& t, const View& v, const Box& box) {
  static constexpr std::array<std::array<int, 4>, 6> kFaces = {{
      {0, 2, 3, 1},  // -x
      {4, 5, 7, 6},  // +x
      {0, 1, 5, 4},  // -y
      {2, 6, 7, 3},  // +y
      {0, 4, 6, 2},  // -z
      {1, 3, 7, 5},  // +z
  }};
  static const std::array<Vec3, 6> kNormals = {{{-1, 0, 0}, {1, 0, 0}, {0, -1, 0}, {0, 1, 0}, {0, 0, -1}, {0, 0, 1}}};
  std::array<Vec3, 8> world;
  for (int k = 0; k < 8; ++k) {
    const Vec3 local{(k & 4) ? box.half_extents.x : -box.half_extents.x,
                     (k & 2) ? box.half_extents.y : -box.half_extents.y,
                     (k & 1) ? box.half_extents.z : -box.half_extents.z};
    world[static_cast<std::size_t>(k)] = box.to_world(local);
  }
  const Vec3 light = normalized(Vec3{0.3, 1.0, 0.5});
  for (std::size_t f = 0; f < kFaces.size(); ++f) {
    const Vec3 n = box.to_world_direction(kNormals[f]);
    const Vec3 center = box.to_world({kNormals[f].x * box.half_extents.x, kNormals[f].y * box.half_extents.y,
                                      kNormals[f].z * box.half_extents.z});
    if (dot(n, center - v.eye) >= 0.0) continue;
    std::array<Vec3, 4> s;
    bool visible = true;
    for (int k = 0; k < 4; ++k) {
      s[static_cast<std::size_t>(k)] = v.project(world[static_cast<std::size_t>(kFaces[f][static_cast<std::size_t>(k)])]);
      if (s[static_cast<std::size_t>(k)].z < kNear) visible = false;
    }
    if (!visible) continue;
    const Rgb c = scale(kBox, 0.45 + 0.55 * std::max(0.0, dot(n, light)));
    draw_triangle(t, {s[0], s[1], s[2]}, c);
    draw_triangle(t, {s[0], s[2], s[3]}, c);
  }
}

void draw_disc(Target& t, const View& v, const Vec3& p, double radius, const Rgb& c) {
  const Vec3 s = v.project(p);
  if (s.z < kNear) return;
  const double r = std::max(0.5, v.focal * radius / s.z);
  const int x0 = static_cast<int>(std::floor(s.x - r));
  const int x1 = static_cast<int>(std::ceil(s.x + r));
  const int y0 = static_cast<int>(std::floor(s.y - r));
  const int y1 = static_cast<int>(std::ceil(s.y + r));
  for (int y = std::max(0, y0); y <= std::min(t.frame.size - 1, y1); ++y) {
    for (int x = std::max(0, x0); x <= std::min(t.frame.size - 1, x1); ++x) {
      const double dx = x + 0.5 - s.x;
      const double dy = y + 0.5 - s.y;
      if (dx * dx + dy * dy <= r * r) t.put(x, y, s.z, c);
    }
  }
}

Rgb group_color(Group g) {
  switch (g) {
    case Group::kFluid:
      return kFluid;
    case Group::kCloth:
      return kCloth;
    case Group::kRope:
      return kRope;
    default:
      return kOther;
  }
}

void draw_goal_line(Target& t, const View& v, const CupState& cup, double fraction) {
  const CupSpec& s = cup.spec;
  const double y = -0.5 * s.height + fraction * s.height;
  const double half = 0.5 * s.width + s.wall_thickness;
  const double z = 0.5 * s.length + s.wall_thickness;
  const auto world = [&](const Vec3& local) {
    return Vec3{cup.pose.x, cup.pose.y, 0.0} + rotate_z(rotate_y(local, s.yaw), cup.pose.theta);
  };
  const Vec3 a = v.project(world({-half, y, z}));
  const Vec3 b = v.project(world({half, y, z}));
  if (a.z < kNear || b.z < kNear) return;
  const int steps = std::max(1, static_cast<int>(std::ceil(std::max(std::abs(b.x - a.x), std::abs(b.y - a.y)))));
  for (int k = 0; k <= steps; ++k) {
    const double u = static_cast<double>(k) / steps;
    const int x = static_cast<int>(std::floor(a.x + u * (b.x - a.x)));
    const int py = static_cast<int>(std::floor(a.y + u * (b.y - a.y)));
    for (int dy = 0; dy < 2; ++dy) t.put(x, py + dy, -1.0, kGoal);
  }
}

}  // namespace

void Camera::validate() const {
  if (size < 16) throw Error("image size must be >= 16");
  if (eye == look_at) throw Error("camera eye and look_at coincide");
  if (!(fov_y > 0.0 && fov_y < 3.1)) throw Error("camera field of view out of range");
}

Camera default_camera(const TaskState& task, int size) {
  Camera c;
  c.size = size;
  if (is_water_task(task.kind)) {
    const double far_x = task.target_cup ? task.target_cup->pose.x + 0.5 * task.target_cup->spec.width : task.target_x;
    const double mid = 0.5 * far_x;
    const double dist = std::max(1.7, (0.5 * far_x + 0.45) / std::tan(0.5 * c.fov_y));
    c.look_at = {mid, 0.25, 0.0};
    c.eye = {mid, 0.25 + 0.45 * dist, dist};
  } else if (is_rope_task(task.kind)) {
    c.look_at = {0.0, 0.0, 0.0};
    c.eye = {0.0, 1.5, 1.4};
  } else if (task.kind == TaskKind::kDropCloth || task.kind == TaskKind::kDropFoldCloth) {
    c.look_at = {0.0, 0.55, 0.0};
    c.eye = {0.0, 1.6, 3.0};
  } else {
    c.look_at = {0.0, 0.0, 0.0};
    c.eye = {0.0, 2.0, 1.8};
  }
  return c;
}

Frame render_frame(const Scene& scene, const Camera& camera, const TaskState& task, double particle_radius) {
  camera.validate();
  const View v(camera);
  Target t;
  t.frame.size = camera.size;
  t.frame.pixels.assign(static_cast<std::size_t>(3 * camera.size * camera.size), 0);
  t.depth.assign(static_cast<std::size_t>(camera.size * camera.size), std::numeric_limits<double>::infinity());
  draw_background(t, v);
  for (const Collider& c : scene.colliders) {
    if (const Box* b = std::get_if<Box>(&c.shape)) draw_box(t, v, *b);
  }
  const ParticleSet& ps = scene.particles;
  for (std::size_t i = 0; i < ps.size(); ++i) draw_disc(t, v, ps.positions[i], particle_radius, group_color(ps.groups[i]));
  for (const Picker& p : scene.pickers) draw_disc(t, v, p.position, kPickerDrawRadius, kPicker);
  if (task.kind == TaskKind::kPourWaterAmount && task.target_cup) draw_goal_line(t, v, *task.target_cup, task.goal_fraction);
  return std::move(t.frame);
}

void write_image(const Frame& frame, const std::filesystem::path& path) {
  if (frame.pixels.size() != static_cast<std::size_t>(3 * frame.size * frame.size)) throw Error("frame size mismatch");
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error("cannot open " + path.string() + " for writing");
  const std::string header = "P6\n" + std::to_string(frame.size) + " " + std::to_string(frame.size) + "\n255\n";
  f.write(header.data(), static_cast<std::streamsize>(header.size()));
  f.write(reinterpret_cast<const char*>(frame.pixels.data()), static_cast<std::streamsize>(frame.pixels.size()));
  if (!f) throw Error("write failed: " + path.string());
}

Frame read_image(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open " + path.string());
  std::string magic;
  int w = 0;
  int h = 0;
  int maxval = 0;
  f >> magic >> w >> h >> maxval;
  if (magic != "P6" || w != h || w <= 0 || maxval != 255) throw Error("unsupported PPM: " + path.string());
  f.get();
  Frame frame;
  frame.size = w;
  frame.pixels.resize(static_cast<std::size_t>(3 * w * h));
  f.read(reinterpret_cast<char*>(frame.pixels.data()), static_cast<std::streamsize>(frame.pixels.size()));
  if (!f) throw Error("truncated PPM: " + path.string());
  return frame;
}

}  // namespace softgym
