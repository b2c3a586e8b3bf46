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
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "softgym/cache_io.hpp"
#include "softgym/metrics.hpp"
#include "softgym/render.hpp"
#include "softgym/rng.hpp"
#include "softgym/task_sim.hpp"

namespace softgym {

enum class ObservationMode { kFull, kReduced, kImage };

ObservationMode parse_observation_mode(std::string_view name);
std::string_view observation_mode_name(ObservationMode mode);

// `state` is filled in full/reduced mode, `image` in image mode.
struct Observation {
  std::vector<double> state;
  Frame image;

  friend bool operator==(const Observation&, const Observation&) = default;
};

using Info = std::map<std::string, double>;

struct StepResult {
  Observation observation;
  double reward = 0.0;
  bool done = false;
  Info info;
};

// Mutable part of an environment: enough to resume an episode exactly.
struct EnvSnapshot {
  TaskKind kind = TaskKind::kTransportWater;
  std::uint32_t variation = 0;
  Scene scene;
  std::optional<CupPose> cup_pose;
  int step_count = 0;
  Rng rng;
  PerformanceBounds bounds;

  friend bool operator==(const EnvSnapshot&, const EnvSnapshot&) = default;
};

// Cache scene encoding with f64 reals, preceded by the episode counters.
std::string encode_snapshot(const EnvSnapshot& snap);
EnvSnapshot decode_snapshot(std::string_view blob);

class Env {
 public:
  explicit Env(std::shared_ptr<const VariationCache> cache, ObservationMode mode = ObservationMode::kReduced);

  // Accepts "PourWater", "pour_water" or "softgym/PourWater"; errors on a
  // missing cache with a hint to run gen-cache.
  static Env make(std::string_view name, ObservationMode mode, const std::filesystem::path& cache_path);

  TaskKind kind() const { return cache_->kind; }
  const TaskConstants& constants() const { return constants_; }
  std::size_t action_dim() const { return constants_.action_space.dim(); }
  std::size_t observation_dim() const;
  ObservationMode mode() const { return mode_; }
  const VariationCache& cache() const { return *cache_; }

  int horizon() const { return horizon_; }
  void set_horizon(int horizon);

  void seed(std::uint64_t seed);
  Observation reset(std::uint32_t index);
  // Resets to a uniformly drawn cached training variation (index < 800).
  Observation reset_train();

  StepResult step(std::span<const double> a_norm);
  // Step without building an observation; returns the reward.
  double advance(std::span<const double> a_norm);

  bool ready() const { return sim_.has_value(); }
  bool done() const { return ready() && step_count_ >= horizon_; }
  int step_count() const { return step_count_; }
  std::uint32_t variation_index() const { return variation_; }
  const TaskVariation& variation() const;
  const TaskSim& sim() const;
  const PerformanceBounds& bounds() const { return bounds_; }
  double performance() const { return sim().performance(); }
  double normalized_performance() const { return normalize(performance(), bounds_); }

  Observation observe() const;
  Frame render(int size = kImageSize) const;
  Info info() const;

  EnvSnapshot snapshot() const;
  void restore(const EnvSnapshot& snap);
  std::string snapshot_blob() const { return encode_snapshot(snapshot()); }
  void restore_blob(std::string_view blob) { restore(decode_snapshot(blob)); }

 private:
  void load_variation(std::uint32_t index);

  std::shared_ptr<const VariationCache> cache_;
  ObservationMode mode_;
  TaskConstants constants_;
  int horizon_;
  Rng rng_;
  std::optional<TaskSim> sim_;
  std::uint32_t variation_ = 0;
  int step_count_ = 0;
  PerformanceBounds bounds_;
};

}  // namespace softgym
