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

#include "softgym/env.hpp"

#include <algorithm>

#include "softgym/error.hpp"

namespace softgym {

ObservationMode parse_observation_mode(std::string_view name) {
  if (name == "full") return ObservationMode::kFull;
  if (name == "reduced") return ObservationMode::kReduced;
  if (name == "image") return ObservationMode::kImage;
  throw Error("unknown observation mode '" + std::string(name) + "' (valid: full, reduced, image)");
}

std::string_view observation_mode_name(ObservationMode mode) {
  switch (mode) {
    case ObservationMode::kFull:
      return "full";
    case ObservationMode::kReduced:
      return "reduced";
    case ObservationMode::kImage:
      return "image";
  }
  return "?";
}

namespace {

constexpr std::string_view kSnapshotMagic = "SGS1";

}  // namespace

std::string encode_snapshot(const EnvSnapshot& snap) {
  ByteWriter out;
  out.bytes(kSnapshotMagic);
  out.u16(static_cast<std::uint16_t>(snap.kind));
  out.u32(snap.variation);
  out.u32(static_cast<std::uint32_t>(snap.step_count));
  out.u64(snap.rng.seed());
  out.u64(snap.rng.stream());
  out.u64(snap.rng.counter());
  out.f64(snap.bounds.lower);
  out.f64(snap.bounds.upper);
  out.u8(snap.cup_pose ? 1 : 0);
  const CupPose pose = snap.cup_pose.value_or(CupPose{});
  out.f64(pose.x);
  out.f64(pose.y);
  out.f64(pose.theta);
  write_scene(out, snap.scene, Precision::kF64);
  return out.take();
}

EnvSnapshot decode_snapshot(std::string_view blob) {
  ByteReader in(blob);
  if (blob.size() < kSnapshotMagic.size() || in.bytes(kSnapshotMagic.size()) != kSnapshotMagic) {
    throw Error("not an env snapshot (bad magic)");
  }
  EnvSnapshot snap;
  const std::uint16_t kind = in.u16();
  if (kind >= kAllTasks.size()) throw Error("snapshot has unknown task kind");
  snap.kind = static_cast<TaskKind>(kind);
  snap.variation = in.u32();
  snap.step_count = static_cast<int>(in.u32());
  const std::uint64_t seed = in.u64();
  const std::uint64_t stream = in.u64();
  snap.rng = Rng(seed, stream);
  snap.rng.set_counter(in.u64());
  snap.bounds.lower = in.f64();
  snap.bounds.upper = in.f64();
  const bool has_pose = in.u8() != 0;
  CupPose pose;
  pose.x = in.f64();
  pose.y = in.f64();
  pose.theta = in.f64();
  if (has_pose) snap.cup_pose = pose;
  snap.scene = read_scene(in, Precision::kF64);
  if (!in.done()) throw Error("trailing bytes after snapshot");
  return snap;
}

Env::Env(std::shared_ptr<const VariationCache> cache, ObservationMode mode)
    : cache_(std::move(cache)), mode_(mode) {
  if (!cache_) throw Error("env needs a variation cache");
  constants_ = task_constants(cache_->kind);
  horizon_ = constants_.horizon;
  rng_ = Rng(cache_->master_seed, 0);
}

Env Env::make(std::string_view name, ObservationMode mode, const std::filesystem::path& cache_path) {
  const TaskKind kind = parse_task(name);
  if (!std::filesystem::exists(cache_path)) {
    throw Error("variation cache not found: " + cache_path.string() + " (run `softgym gen-cache " + task_slug(kind) +
                " --seed S` first)");
  }
  auto cache = std::make_shared<VariationCache>(load_cache(cache_path));
  if (cache->kind != kind) {
    throw Error("cache " + cache_path.string() + " holds " + std::string(task_name(cache->kind)) + ", not " +
                std::string(task_name(kind)));
  }
  return Env(std::move(cache), mode);
}

std::size_t Env::observation_dim() const {
  switch (mode_) {
    case ObservationMode::kReduced:
      return reduced_state_dim(kind());
    case ObservationMode::kImage:
      return static_cast<std::size_t>(3 * kImageSize * kImageSize);
    case ObservationMode::kFull:
      break;
  }
  if (sim_) return full_state(sim_->scene, sim_->task).size();
  if (cache_->variations.empty()) throw Error("variation cache is empty");
  const TaskSim s = make_task_sim(kind(), cache_->variations.front());
  return full_state(s.scene, s.task).size();
}

void Env::set_horizon(int horizon) {
  if (horizon < 1) throw Error("horizon must be >= 1");
  horizon_ = horizon;
}

void Env::seed(std::uint64_t seed) { rng_ = Rng(seed, 0); }

void Env::load_variation(std::uint32_t index) {
  if (index >= kNumVariations) throw Error("variation index " + std::to_string(index) + " must be < 1000");
  const TaskVariation* v = cache_->find(index);
  if (v == nullptr) {
    throw Error("variation " + std::to_string(index) + " is not in the cache (run `softgym gen-cache " +
                task_slug(kind()) + "` to build it)");
  }
  sim_ = make_task_sim(kind(), *v);
  variation_ = index;
}

Observation Env::reset(std::uint32_t index) {
  load_variation(index);
  bounds_ = compute_bounds(*sim_);
  step_count_ = 0;
  return observe();
}

Observation Env::reset_train() {
  std::vector<std::uint32_t> train;
  for (const TaskVariation& v : cache_->variations) {
    if (v.index < kNumTrainVariations) train.push_back(v.index);
  }
  if (train.empty()) throw Error("cache holds no training variations (indices < 800)");
  std::sort(train.begin(), train.end());
  return reset(train[static_cast<std::size_t>(randint(rng_, 0, static_cast<int>(train.size()) - 1))]);
}

const TaskVariation& Env::variation() const {
  const TaskVariation* v = cache_->find(variation_);
  if (!sim_ || v == nullptr) throw Error("env has not been reset");
  return *v;
}

const TaskSim& Env::sim() const {
  if (!sim_) throw Error("env has not been reset");
  return *sim_;
}

double Env::advance(std::span<const double> a_norm) {
  if (!sim_) throw Error("step called before reset");
  if (done()) throw Error("step called after the episode is done (reset first)");
  if (a_norm.size() != action_dim()) {
    throw Error(std::string(task_name(kind())) + " expects a " + std::to_string(action_dim()) +
                "-dim action, got " + std::to_string(a_norm.size()));
  }
  sim_->act(a_norm);
  ++step_count_;
  return sim_->performance();
}

StepResult Env::step(std::span<const double> a_norm) {
  StepResult r;
  r.reward = advance(a_norm);
  r.done = done();
  r.observation = observe();
  r.info = info();
  return r;
}

Observation Env::observe() const {
  const TaskSim& s = sim();
  Observation obs;
  switch (mode_) {
    case ObservationMode::kFull:
      obs.state = full_state(s.scene, s.task);
      break;
    case ObservationMode::kReduced:
      obs.state = reduced_state(s.scene, s.task);
      break;
    case ObservationMode::kImage:
      obs.image = render();
      break;
  }
  return obs;
}

Frame Env::render(int size) const {
  const TaskSim& s = sim();
  return render_frame(s.scene, default_camera(s.task, size), s.task, s.sim.particle_radius);
}

Info Env::info() const {
  const TaskSim& s = sim();
  Info info;
  const double perf = s.performance();
  info["performance"] = perf;
  info["normalized_performance"] = normalize(perf, bounds_);
  info["step"] = step_count_;
  if (is_water_task(kind())) {
    const WaterTally t = water_tally(s.scene, s.task);
    info["in_control"] = static_cast<double>(t.in_control);
    info["in_target"] = static_cast<double>(t.in_target);
    info["spilled"] = static_cast<double>(t.spilled);
    info["total"] = static_cast<double>(t.total);
  }
  return info;
}

EnvSnapshot Env::snapshot() const {
  const TaskSim& s = sim();
  EnvSnapshot snap;
  snap.kind = kind();
  snap.variation = variation_;
  snap.scene = s.scene;
  if (s.task.control_cup) snap.cup_pose = s.task.control_cup->pose;
  snap.step_count = step_count_;
  snap.rng = rng_;
  snap.bounds = bounds_;
  return snap;
}

void Env::restore(const EnvSnapshot& snap) {
  if (snap.kind != kind()) {
    throw Error("snapshot is for " + std::string(task_name(snap.kind)) + ", env runs " + std::string(task_name(kind())));
  }
  if (!sim_ || snap.variation != variation_) load_variation(snap.variation);
  sim_->scene = snap.scene;
  if (snap.cup_pose) {
    if (!sim_->task.control_cup) throw Error("snapshot has a cup pose but the task has no cup");
    sim_->task.control_cup->pose = *snap.cup_pose;
  }
  step_count_ = snap.step_count;
  rng_ = snap.rng;
  bounds_ = snap.bounds;
}

}  // namespace softgym
