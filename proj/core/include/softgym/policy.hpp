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
#include <functional>
#include <string>
#include <vector>

#include "softgym/env.hpp"
#include "softgym/metrics.hpp"

namespace softgym {

class Policy {
 public:
  virtual ~Policy() = default;
  virtual std::string name() const = 0;
  // Called after reset with the episode's policy seed.
  virtual void begin_episode(const Env& /*env*/, std::uint64_t /*seed*/) {}
  virtual std::vector<double> act(Env& env) = 0;
};

// Normalized zero action (no motion; pickers keep the default pick channel).
class ZeroPolicy final : public Policy {
 public:
  std::string name() const override { return "zero"; }
  std::vector<double> act(Env& env) override;
};

// Uniform actions in [-1, 1].
class RandomPolicy final : public Policy {
 public:
  std::string name() const override { return "random"; }
  void begin_episode(const Env& env, std::uint64_t seed) override;
  std::vector<double> act(Env& env) override;

 private:
  Rng rng_;
};

// Per-episode policy seed derived from the run seed and variation index.
std::uint64_t episode_seed(std::uint64_t policy_seed, std::uint32_t index);

// Called after reset (step 0) and after each step with the env state.
using FrameHook = std::function<void(const Env&, int step)>;

EpisodeRecord run_episode(Env& env, Policy& policy, std::uint32_t index, std::uint64_t policy_seed,
                          const FrameHook& hook = {});

EvalReport evaluate(Env& env, Policy& policy, const std::vector<std::uint32_t>& indices, std::uint64_t policy_seed,
                    const FrameHook& hook = {});

}  // namespace softgym
