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

#include "softgym/policy.hpp"

#include "softgym/error.hpp"

namespace softgym {

std::vector<double> ZeroPolicy::act(Env& env) { return std::vector<double>(env.action_dim(), 0.0); }

void RandomPolicy::begin_episode(const Env&, std::uint64_t seed) { rng_ = Rng(seed, 1); }

std::vector<double> RandomPolicy::act(Env& env) {
  std::vector<double> a(env.action_dim());
  for (double& x : a) x = uniform(rng_, -1.0, 1.0);
  return a;
}

std::uint64_t episode_seed(std::uint64_t policy_seed, std::uint32_t index) {
  return mix64(policy_seed ^ mix64(0x9e37ULL + index));
}

EpisodeRecord run_episode(Env& env, Policy& policy, std::uint32_t index, std::uint64_t policy_seed,
                          const FrameHook& hook) {
  env.reset(index);
  EpisodeRecord rec;
  rec.index = index;
  rec.seed = env.variation().seed;
  policy.begin_episode(env, episode_seed(policy_seed, index));
  if (hook) hook(env, 0);
  while (!env.done()) {
    std::vector<double> a = policy.act(env);
    if (a.size() != env.action_dim()) {
      throw Error("policy '" + policy.name() + "' produced a " + std::to_string(a.size()) + "-dim action for " +
                  std::string(task_name(env.kind())) + ", which expects " + std::to_string(env.action_dim()));
    }
    EpisodeStep st;
    st.s = env.advance(a);
    st.s_hat = normalize(st.s, env.bounds());
    st.action = std::move(a);
    rec.steps.push_back(std::move(st));
    if (hook) hook(env, env.step_count());
  }
  rec.final_s = rec.steps.empty() ? env.performance() : rec.steps.back().s;
  rec.final_s_hat = normalize(rec.final_s, env.bounds());
  return rec;
}

EvalReport evaluate(Env& env, Policy& policy, const std::vector<std::uint32_t>& indices, std::uint64_t policy_seed,
                    const FrameHook& hook) {
  std::vector<EpisodeRecord> episodes;
  for (std::uint32_t index : indices) episodes.push_back(run_episode(env, policy, index, policy_seed, hook));
  return make_report(std::move(episodes));
}

}  // namespace softgym
