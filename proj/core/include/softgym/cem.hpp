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
#include <optional>
#include <span>
#include <vector>

#include "softgym/env.hpp"
#include "softgym/policy.hpp"
#include "softgym/rng.hpp"

namespace softgym {

struct CemConfig {
  int planning_horizon = 15;
  int iterations = 10;
  long budget = 2100;  // env steps per decision
  double elite_fraction = 0.1;
  double discount = 0.99;
  double init_std = 0.5;
  double std_floor = 0.01;

  // floor(budget / H / iterations)
  int candidates() const;
  // ceil(elite_fraction * candidates)
  int elites() const;
  void validate() const;
};

// Diagonal Gaussian over H x k normalized action sequences (row-major by step).
struct ActionDistribution {
  int horizon = 0;
  int dim = 0;
  std::vector<double> mean;
  std::vector<double> std;

  static ActionDistribution initial(int horizon, int dim, double std);
};

// Sample mean and (population) standard deviation of the elites, with the
// standard deviation floored at `std_floor`.
ActionDistribution fit_elites(const std::vector<std::vector<double>>& elites, int horizon, int dim, double std_floor);

// Something that scores action sequences from a fixed start state without
// side effects.
class PlanningModel {
 public:
  virtual ~PlanningModel() = default;
  virtual std::size_t action_dim() const = 0;
  // Sum over steps t of discount^t * s_{t+1}; `sequence` holds `steps` actions.
  virtual double rollout(std::span<const double> sequence, int steps, double discount) = 0;
};

// Restores `snap`, steps `env` through the sequence and restores again.
double rollout_return(Env& env, const EnvSnapshot& snap, std::span<const double> sequence, double discount);

// Plans from the env's current state.
class EnvModel final : public PlanningModel {
 public:
  explicit EnvModel(Env& env) : env_(env), start_(env.snapshot()) {}
  std::size_t action_dim() const override { return env_.action_dim(); }
  double rollout(std::span<const double> sequence, int steps, double discount) override;

 private:
  Env& env_;
  EnvSnapshot start_;
};

struct PlanResult {
  std::vector<double> sequence;  // horizon x dim, best sampled sequence
  double score = 0.0;
  int horizon = 0;
  // Best score seen after each iteration.
  std::vector<double> best_per_iteration;
};

// `horizon` overrides cfg.planning_horizon (MPC truncates it near the episode
// end); `warm_mean` seeds the first iteration's mean.
PlanResult cem_plan(PlanningModel& model, const CemConfig& cfg, Rng& rng, int horizon = 0,
                    const std::vector<double>* warm_mean = nullptr);

// MPC: replans every step, warm-started from the previous plan shifted by one.
class CemPolicy final : public Policy {
 public:
  explicit CemPolicy(const CemConfig& cfg) : cfg_(cfg) { cfg_.validate(); }
  std::string name() const override { return "cem"; }
  void begin_episode(const Env& env, std::uint64_t seed) override;
  std::vector<double> act(Env& env) override;

 private:
  CemConfig cfg_;
  Rng rng_;
  std::vector<double> previous_;
};

EpisodeRecord mpc_episode(Env& env, std::uint32_t index, const CemConfig& cfg, std::uint64_t seed,
                          const FrameHook& hook = {});

}  // namespace softgym
