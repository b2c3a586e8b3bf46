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

#include "softgym/variation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>

#include "softgym/cache_io.hpp"
#include "softgym/error.hpp"
#include "softgym/metrics.hpp"

namespace softgym {

std::string encode_params(const ParamMap& params) {
  std::string out;
  char buf[40];
  for (const auto& [key, value] : params) {
    if (key.find_first_of("=\n") != std::string::npos) throw Error("bad parameter name: " + key);
    std::snprintf(buf, sizeof buf, "%.17g", value);
    out += key + "=" + buf + "\n";
  }
  return out;
}

ParamMap decode_params(std::string_view text) {
  ParamMap out;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    if (nl == std::string_view::npos) throw Error("parameter block must end with a newline");
    const std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl + 1);
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) throw Error("parameter line without '='");
    const std::string value(line.substr(eq + 1));
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (end != value.c_str() + value.size() || value.empty()) throw Error("bad parameter value: " + value);
    out[std::string(line.substr(0, eq))] = v;
  }
  return out;
}

double param(const ParamMap& params, const std::string& key) {
  const auto it = params.find(key);
  if (it == params.end()) throw Error("missing variation parameter '" + key + "'");
  return it->second;
}

namespace {

void draw_dims(DrawSource& rng, WaterParams& p) {
  p.w_w = randint(rng, 4, 13);
  p.l_w = randint(rng, 4, 13);
  p.large = rng.uniform01() >= 0.5;
  p.m = std::min(p.w_w, p.l_w);
  p.h_w = p.large ? 4 * p.m : static_cast<int>(std::floor(3.5 * p.m));
  p.volume = p.w_w * p.h_w * p.l_w;
  p.h = static_cast<double>(p.volume) / ((p.w_w + 1) * (p.l_w + 1));
  p.cup_w = p.w_w * kWaterR + 0.1;
  p.cup_l = p.l_w * kWaterR + 0.1;
}

}  // namespace

WaterParams gen_pour_water(DrawSource& rng) {
  WaterParams p;
  draw_dims(rng, p);
  if (p.large) {
    p.cup_h = p.h * kWaterR / 3.0 + 0.001 * uniform(rng, 0.0, 1.0);
  } else {
    p.cup_h = p.h * kWaterR / 2.0 + 0.001 * uniform(rng, -0.5, 0.5);
  }
  p.target_w = p.w_w * kWaterR + 0.07;
  p.target_l = p.l_w * kWaterR + 0.07;
  p.target_h = p.cup_h + uniform(rng, 0.0, 0.1);
  p.distance = uniform(rng, 0.05 * p.m, 0.09 * p.m) + (p.w_w + 4) * kWaterR / 2.0;
  return p;
}

WaterParams gen_transport_water(DrawSource& rng) {
  WaterParams p;
  draw_dims(rng, p);
  p.cup_h = p.large ? p.h * kWaterR / 3.0 + 0.0015 * p.m : p.h * kWaterR / 2.0;
  p.target_offset = uniform(rng, 0.4, 1.2);
  return p;
}

double gen_goal_amount(DrawSource& rng) { return 0.1 + rng.uniform01() * 0.9; }

ClothParams gen_cloth(DrawSource& rng, TaskKind kind) {
  if (!is_cloth_task(kind)) throw Error("gen_cloth needs a cloth task");
  ClothParams p;
  p.rows = randint(rng, 60, 120);
  p.cols = kind == TaskKind::kFoldCloth ? p.rows : randint(rng, 60, 120);
  switch (kind) {
    case TaskKind::kSpreadCloth:
    case TaskKind::kFoldCrumpledCloth:
      p.crumple_index = randint(rng, 0, p.rows * p.cols - 1);
      p.crumple_height = uniform(rng, 0.0, 0.5);
      break;
    case TaskKind::kFoldCloth:
      p.rotation = uniform(rng, 0.0, 2.0 * std::numbers::pi);
      break;
    default:
      p.clearance = uniform(rng, 0.3, 0.6);
      break;
  }
  return p;
}

RopeParams gen_rope(DrawSource& rng, TaskKind kind) {
  if (!is_rope_task(kind)) throw Error("gen_rope needs a rope task");
  RopeParams p;
  for (int k = 0; k < kRopePerturbations; ++k) {
    p.indices.push_back(randint(rng, 0, kRopeParticles - 1));
    p.heights.push_back(uniform(rng, 0.0, 0.5));
  }
  if (kind == TaskKind::kRopeConfiguration) p.letter = randint(rng, 0, static_cast<int>(kGoalLetters.size()) - 1);
  return p;
}

std::vector<Vec3> letter_keypoints(int letter, double length, double y) {
  // Unit-square templates in (x, z), z pointing towards the viewer.
  static const std::vector<std::vector<std::pair<double, double>>> kTemplates = {
      {{1, 0}, {0, 0}, {0, 0.5}, {1, 0.5}, {1, 1}, {0, 1}},  // S
      {{1, 0}, {0, 0}, {0, 1}, {1, 1}},                      // C
      {{0, 0}, {0, 1}, {1, 1}},                              // L
      {{0, 0}, {0, 1}, {1, 1}, {1, 0}},                      // U
  };
  if (letter < 0 || letter >= static_cast<int>(kTemplates.size())) throw Error("unknown goal letter");
  const auto& poly = kTemplates[static_cast<std::size_t>(letter)];
  std::vector<double> cum{0.0};
  for (std::size_t k = 1; k < poly.size(); ++k) {
    cum.push_back(cum.back() + std::hypot(poly[k].first - poly[k - 1].first, poly[k].second - poly[k - 1].second));
  }
  const double total = cum.back();
  const double scale = length / total;
  std::vector<Vec3> pts;
  std::size_t seg = 1;
  for (int k = 0; k < kRopeKeypoints; ++k) {
    const double s = total * k / (kRopeKeypoints - 1);
    while (seg + 1 < poly.size() && cum[seg] < s) ++seg;
    const double t = std::clamp((s - cum[seg - 1]) / (cum[seg] - cum[seg - 1]), 0.0, 1.0);
    const double x = poly[seg - 1].first + t * (poly[seg].first - poly[seg - 1].first);
    const double z = poly[seg - 1].second + t * (poly[seg].second - poly[seg - 1].second);
    pts.push_back({x * scale, y, z * scale});
  }
  Vec3 c{};
  for (const Vec3& p : pts) c += p;
  c = c / static_cast<double>(pts.size());
  for (Vec3& p : pts) p = p - Vec3{c.x, 0.0, c.z};
  return pts;
}

std::uint64_t variation_seed(std::uint64_t master_seed, std::uint32_t index, int attempt) {
  return mix64(master_seed ^ mix64((static_cast<std::uint64_t>(attempt) << 32) | index));
}

namespace {

constexpr double kWall = 0.03;
constexpr double kClothSpacing = 0.0125;
constexpr double kRopeSpacing = 0.025;
constexpr double kLiftSpeed = 0.01;  // metres per substep
constexpr double kPickerLift = 0.03;
constexpr double kDropPickerFloor = 0.12;

int scaled(int n, double k) { return static_cast<int>(std::ceil(n / k - 1e-9)); }

CupSpec cup_spec(double w, double l, double h, double x) {
  CupSpec s;
  s.width = w;
  s.length = l;
  s.height = h;
  s.wall_thickness = kWall;
  s.pose = {x, s.resting_y(), 0.0};
  return s;
}

double target_cup_x(const ParamMap& p) { return 0.5 * param(p, "cup_w") + kWall + param(p, "distance"); }

// Lifts `particle` to height `height` with a temporary picker, releases it and
// lets the scene come to rest.
void lift_and_drop(TaskSim& sim, std::uint32_t particle, double height) {
  Scene& scene = sim.scene;
  const auto picker = static_cast<std::uint32_t>(scene.pickers.size());
  scene.pickers.push_back(Picker{scene.particles.positions[particle], kPickerRadius, particle});
  scene.attachments.push_back(Attachment{picker, particle, {}});
  double y = scene.particles.positions[particle].y;
  while (y < height) {
    y = std::min(height, y + kLiftSpeed);
    scene.pickers[picker].position.y = y;
    sim.solver.step(scene, sim.sim);
  }
  scene.attachments.pop_back();
  scene.pickers.pop_back();
  sim.settle();
}

void settle_and_stop(TaskSim& sim) {
  sim.settle();
  for (Vec3& v : sim.scene.particles.velocities) v = {};
}

Scene water_scene(TaskKind kind, const ParamMap& p, double k, const SimConfig& cfg) {
  Scene scene;
  scene.colliders.push_back(make_floor());
  const CupSpec control = cup_spec(param(p, "cup_w"), param(p, "cup_l"), param(p, "cup_h"), 0.0);
  for (const Collider& c : build_cup(control)) scene.colliders.push_back(c);
  if (kind != TaskKind::kTransportWater) {
    const CupSpec target = cup_spec(param(p, "target_w"), param(p, "target_l"), param(p, "target_h"), target_cup_x(p));
    for (const Collider& c : build_cup(target)) scene.colliders.push_back(c);
  }

  // The water volume is laid out as a rest-density lattice covering the cup floor.
  const double s = cfg.fluid_rest_distance;
  const double rad = cfg.particle_radius;
  const int count = scaled(static_cast<int>(param(p, "w_w")), k) * scaled(static_cast<int>(param(p, "l_w")), k) *
                    scaled(static_cast<int>(param(p, "h_w")), k);
  const int nx = std::max(1, static_cast<int>(std::floor((control.width - 2.0 * rad) / s)) + 1);
  const int nz = std::max(1, static_cast<int>(std::floor((control.length - 2.0 * rad) / s)) + 1);
  const double x0 = -0.5 * (nx - 1) * s;
  const double z0 = -0.5 * (nz - 1) * s;
  for (int n = 0; n < count; ++n) {
    const int layer = n / (nx * nz);
    const int cell = n % (nx * nz);
    const Vec3 pos{x0 + (cell % nx) * s, kWall + rad + layer * s, z0 + (cell / nx) * s};
    scene.particles.add(pos, 1.0, Group::kFluid);
  }
  DensityConstraint density;
  density.kernel_radius = kWaterR * k;
  density.rest_density = lattice_rest_density(s, density.kernel_radius);
  scene.densities.push_back(density);
  return scene;
}

void add_object(Scene& scene, const BuiltObject& obj) {
  const std::uint32_t base = scene.particles.append(obj.particles);
  for (const Constraint& c : obj.constraints) scene.add_offset(c, base);
}

void add_picker_above(Scene& scene, std::size_t particle) {
  scene.pickers.push_back(Picker{scene.particles.positions[particle] + Vec3{0.0, kPickerLift, 0.0}, kPickerRadius, {}});
}

struct ClothDims {
  int rows;
  int cols;
  double spacing;
};

ClothDims cloth_dims(const ParamMap& p, double k) {
  return {scaled(static_cast<int>(param(p, "rows")), k), scaled(static_cast<int>(param(p, "cols")), k),
          kClothSpacing * k};
}

std::vector<Vec3> flat_cloth(const ClothDims& d, double y) {
  std::vector<Vec3> out;
  const double x0 = -0.5 * (d.cols - 1) * d.spacing;
  const double z0 = -0.5 * (d.rows - 1) * d.spacing;
  for (int i = 0; i < d.rows; ++i) {
    for (int j = 0; j < d.cols; ++j) out.push_back({x0 + j * d.spacing, y, z0 + i * d.spacing});
  }
  return out;
}

void generate_scene(TaskSim& sim, TaskKind kind, const ParamMap& p, double k) {
  Scene& scene = sim.scene;
  const SimConfig& cfg = sim.sim;
  if (is_water_task(kind)) {
    scene = water_scene(kind, p, k, cfg);
    settle_and_stop(sim);
    return;
  }
  scene.colliders.push_back(make_floor());
  if (is_rope_task(kind)) {
    RopeSpec spec;
    spec.n_particles = kRopeParticles;
    spec.spacing = kRopeSpacing;
    add_object(scene, build_rope(spec, straight_polyline(spec.n_particles, spec.spacing, {0.0, cfg.particle_radius, 0.0})));
    for (int q = 0; q < kRopePerturbations; ++q) {
      const auto idx = static_cast<std::uint32_t>(param(p, "index_" + std::to_string(q)));
      lift_and_drop(sim, idx, param(p, "height_" + std::to_string(q)));
    }
    add_picker_above(scene, 0);
    add_picker_above(scene, scene.particles.size() - 1);
    settle_and_stop(sim);
    return;
  }

  const ClothDims d = cloth_dims(p, k);
  ClothSpec spec;
  spec.width = d.rows;
  spec.length = d.cols;
  spec.spacing = d.spacing;
  add_object(scene, build_cloth(spec, {}));
  std::vector<Vec3>& pos = scene.particles.positions;
  const auto at = [&](int i, int j) { return static_cast<std::size_t>(i * d.cols + j); };
  if (kind == TaskKind::kDropCloth || kind == TaskKind::kDropFoldCloth) {
    const double top = param(p, "clearance") + (d.rows - 1) * d.spacing;
    const double x0 = -0.5 * (d.cols - 1) * d.spacing;
    const double z0 = -0.5 * (d.rows - 1) * d.spacing;
    for (int i = 0; i < d.rows; ++i) {
      for (int j = 0; j < d.cols; ++j) pos[at(i, j)] = {x0 + j * d.spacing, top - i * d.spacing, z0};
    }
    for (int j : {0, d.cols - 1}) {
      const auto picker = static_cast<std::uint32_t>(scene.pickers.size());
      const auto particle = static_cast<std::uint32_t>(at(0, j));
      scene.pickers.push_back(Picker{pos[particle], kPickerRadius, particle});
      scene.attachments.push_back(Attachment{picker, particle, {}});
    }
    settle_and_stop(sim);
    return;
  }

  pos = flat_cloth(d, cfg.particle_radius);
  if (kind == TaskKind::kFoldCloth) {
    const double angle = param(p, "rotation");
    for (Vec3& x : pos) x = rotate_y(x, angle);
    add_picker_above(scene, at(0, d.cols - 1));
    add_picker_above(scene, at(d.rows - 1, d.cols - 1));
    settle_and_stop(sim);
    return;
  }
  // Crumpled cloths: map the paper-scale particle index onto the scaled grid.
  const int index = static_cast<int>(param(p, "crumple_index"));
  const int full_cols = static_cast<int>(param(p, "cols"));
  const int full_rows = static_cast<int>(param(p, "rows"));
  const int i = (index / full_cols) * d.rows / full_rows;
  const int j = (index % full_cols) * d.cols / full_cols;
  lift_and_drop(sim, static_cast<std::uint32_t>(at(i, j)), param(p, "crumple_height"));
  add_picker_above(scene, at(0, 0));
  add_picker_above(scene, at(d.rows - 1, d.cols - 1));
  settle_and_stop(sim);
}

ParamMap draw_params(TaskKind kind, DrawSource& rng) {
  ParamMap p;
  if (is_water_task(kind)) {
    const WaterParams w = kind == TaskKind::kTransportWater ? gen_transport_water(rng) : gen_pour_water(rng);
    p["w_w"] = w.w_w;
    p["l_w"] = w.l_w;
    p["h_w"] = w.h_w;
    p["large"] = w.large ? 1.0 : 0.0;
    p["m"] = w.m;
    p["volume"] = w.volume;
    p["h"] = w.h;
    p["cup_w"] = w.cup_w;
    p["cup_l"] = w.cup_l;
    p["cup_h"] = w.cup_h;
    if (kind == TaskKind::kTransportWater) {
      p["target_offset"] = w.target_offset;
    } else {
      p["target_w"] = w.target_w;
      p["target_l"] = w.target_l;
      p["target_h"] = w.target_h;
      p["distance"] = w.distance;
    }
    if (kind == TaskKind::kPourWaterAmount) p["goal_fraction"] = gen_goal_amount(rng);
  } else if (is_rope_task(kind)) {
    const RopeParams r = gen_rope(rng, kind);
    for (int q = 0; q < kRopePerturbations; ++q) {
      p["index_" + std::to_string(q)] = r.indices[static_cast<std::size_t>(q)];
      p["height_" + std::to_string(q)] = r.heights[static_cast<std::size_t>(q)];
    }
    if (r.letter >= 0) p["letter"] = r.letter;
  } else {
    const ClothParams c = gen_cloth(rng, kind);
    p["rows"] = c.rows;
    p["cols"] = c.cols;
    if (c.crumple_index >= 0) {
      p["crumple_index"] = c.crumple_index;
      p["crumple_height"] = c.crumple_height;
    }
    if (kind == TaskKind::kFoldCloth) p["rotation"] = c.rotation;
    if (kind == TaskKind::kDropCloth || kind == TaskKind::kDropFoldCloth) p["clearance"] = c.clearance;
  }
  return p;
}

constexpr int kMaxAttempts = 64;

}  // namespace

TaskState make_task_state(TaskKind kind, const ParamMap& p, const Scene& initial) {
  TaskState st;
  st.kind = kind;
  const double k = param(p, "particle_scale");
  if (is_water_task(kind)) {
    CupState control;
    control.spec = cup_spec(param(p, "cup_w"), param(p, "cup_l"), param(p, "cup_h"), 0.0);
    control.pose = control.spec.pose;
    control.first_collider = 1;
    st.control_cup = control;
    if (kind == TaskKind::kTransportWater) {
      st.target_x = param(p, "target_offset");
      st.initial_distance = st.target_x;
      st.cup_limits.y_lo = st.cup_limits.y_hi = control.pose.y;
    } else {
      CupState target;
      target.spec = cup_spec(param(p, "target_w"), param(p, "target_l"), param(p, "target_h"), target_cup_x(p));
      target.pose = target.spec.pose;
      target.first_collider = 6;
      st.target_cup = target;
      st.target_x = target.pose.x;
      st.cup_limits.y_lo = control.pose.y;
      st.cup_limits.y_hi = 2.0;
    }
    if (kind == TaskKind::kPourWaterAmount) st.goal_fraction = param(p, "goal_fraction");
    st.max_particles = static_cast<std::size_t>(scaled(13, k)) * static_cast<std::size_t>(scaled(13, k)) *
                       static_cast<std::size_t>(scaled(52, k));
  } else if (is_rope_task(kind)) {
    st.straight_length = (kRopeParticles - 1) * kRopeSpacing;
    if (kind == TaskKind::kRopeConfiguration) {
      st.goal_keypoints = letter_keypoints(static_cast<int>(param(p, "letter")), st.straight_length,
                                           task_sim_config(kind, k).particle_radius);
    }
    st.max_particles = kRopeParticles;
  } else {
    const ClothDims d = cloth_dims(p, k);
    st.rows = d.rows;
    st.cols = d.cols;
    st.cloth_spacing = d.spacing;
    st.max_particles = static_cast<std::size_t>(scaled(120, k)) * static_cast<std::size_t>(scaled(120, k));
    if (kind == TaskKind::kDropCloth || kind == TaskKind::kDropFoldCloth) {
      st.flat_target = flat_cloth(d, task_sim_config(kind, k).particle_radius);
      st.workspace.picker_floor = kDropPickerFloor;
    }
    if (kind == TaskKind::kDropFoldCloth) {
      st.anchor_center = anchor_centroid(st.flat_target, d.rows, d.cols);
    } else if (kind != TaskKind::kSpreadCloth && kind != TaskKind::kDropCloth) {
      st.anchor_center = anchor_centroid(initial.particles.positions, d.rows, d.cols);
    }
  }
  return st;
}

TaskSim make_task_sim(TaskKind kind, const TaskVariation& variation) {
  TaskSim sim;
  sim.sim = task_sim_config(kind, param(variation.params, "particle_scale"));
  sim.scene = variation.initial_scene;
  sim.task = make_task_state(kind, variation.params, sim.scene);
  if (sim.task.control_cup) {
    const CupState& cup = *sim.task.control_cup;
    place_cup(std::span(sim.scene.colliders).subspan(cup.first_collider, 5), cup.spec, cup.pose, 0.0);
  }
  if (sim.task.target_cup) {
    const CupState& cup = *sim.task.target_cup;
    place_cup(std::span(sim.scene.colliders).subspan(cup.first_collider, 5), cup.spec, cup.pose, 0.0);
  }
  return sim;
}

TaskVariation build_variation(TaskKind kind, std::uint64_t master_seed, std::uint32_t index, double particle_scale) {
  if (index >= kNumVariations) throw Error("variation index must be < 1000");
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    Rng rng(master_seed, (static_cast<std::uint64_t>(attempt) << 32) | index);
    TaskVariation v;
    v.index = index;
    v.seed = variation_seed(master_seed, index, attempt);
    v.params = draw_params(kind, rng);
    v.params["attempt"] = attempt;
    v.params["particle_scale"] = particle_scale;

    TaskSim sim;
    sim.sim = task_sim_config(kind, particle_scale);
    generate_scene(sim, kind, v.params, particle_scale);
    v.initial_scene = quantize_f32(sim.scene);

    const TaskSim posed = make_task_sim(kind, v);
    const PerformanceBounds b = compute_bounds(posed);
    // a rope left straight (residual stretch included) counts as degenerate too
    const auto& rope = posed.scene.particles.positions;
    if (is_rope_task(kind) && distance(rope.front(), rope.back()) >= posed.task.straight_length) continue;
    if (b.upper - b.lower >= kMinBoundGap) return v;
  }
  throw Error("variation " + std::to_string(index) + " stays degenerate after re-draws");
}

}  // namespace softgym
