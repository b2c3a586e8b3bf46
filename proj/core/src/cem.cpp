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

#include "softgym/cem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "softgym/error.hpp"

namespace softgym {

int CemConfig::candidates() const {
  if (planning_horizon < 1 || iterations < 1) return 0;
  return static_cast<int>(budget / planning_horizon / iterations);
}

int CemConfig::elites() const { return static_cast<int>(std::ceil(elite_fraction * candidates() - 1e-12)); }

void CemConfig::validate() const {
  if (planning_horizon < 1) throw Error("CEM planning horizon must be >= 1");
  if (iterations < 1) throw Error("CEM iterations must be >= 1");
  if (!(elite_fraction > 0.0 && elite_fraction <= 1.0)) throw Error("CEM elite fraction must be in (0, 1]");
  if (!(discount > 0.0 && discount <= 1.0)) throw Error("CEM discount must be in (0, 1]");
  if (!(init_std >= 0.0) || !(std_floor >= 0.0)) throw Error("CEM standard deviations must be >= 0");
  if (elites() < 2 || candidates() < elites()) {
    throw Error("CEM budget " + std::to_string(budget) + " gives " + std::to_string(candidates()) +
                " candidates per iteration; need at least 2 elites");
  }
}

ActionDistribution ActionDistribution::initial(int horizon, int dim, double std) {
  ActionDistribution d;
  d.horizon = horizon;
  d.dim = dim;
  d.mean.assign(static_cast<std::size_t>(horizon * dim), 0.0);
  d.std.assign(d.mean.size(), std);
  return d;
}

ActionDistribution fit_elites(const std::vector<std::vector<double>>& elites, int horizon, int dim, double std_floor) {
  if (elites.empty()) throw Error("fit_elites needs at least one elite");
  ActionDistribution d = ActionDistribution::initial(horizon, dim, 0.0);
  const double n = static_cast<double>(elites.size());
  for (const auto& e : elites) {
    if (e.size() != d.mean.size()) throw Error("elite sequence has the wrong shape");
    for (std::size_t k = 0; k < e.size(); ++k) d.mean[k] += e[k];
  }
  for (double& m : d.mean) m /= n;
  for (const auto& e : elites) {
    for (std::size_t k = 0; k < e.size(); ++k) d.std[k] += (e[k] - d.mean[k]) * (e[k] - d.mean[k]);
  }
  for (double& s : d.std) s = std::max(std::sqrt(s / n), std_floor);
  return d;
}

double rollout_return(Env& env, const EnvSnapshot& snap, std::span<const double> sequence, double discount) {
  const std::size_t dim = env.action_dim();
  if (sequence.size() % dim != 0) throw Error("action sequence length is not a multiple of the action dimension");
  env.restore(snap);
  double total = 0.0;
  double w = 1.0;
  for (std::size_t t = 0; t * dim < sequence.size(); ++t) {
    total += w * env.advance(sequence.subspan(t * dim, dim));
    w *= discount;
  }
  env.restore(snap);
  return total;
}

double EnvModel::rollout(std::span<const double> sequence, int steps, double discount) {
  return rollout_return(env_, start_, sequence.first(static_cast<std::size_t>(steps) * env_.action_dim()), discount);
}

PlanResult cem_plan(PlanningModel& model, const CemConfig& cfg, Rng& rng, int horizon,
                    const std::vector<double>* warm_mean) {
  cfg.validate();
  const int h = horizon > 0 ? horizon : cfg.planning_horizon;
  const int dim = static_cast<int>(model.action_dim());
  const auto len = static_cast<std::size_t>(h * dim);
  ActionDistribution dist = ActionDistribution::initial(h, dim, cfg.init_std);
  if (warm_mean != nullptr) {
    for (std::size_t k = 0; k < std::min(len, warm_mean->size()); ++k) dist.mean[k] = (*warm_mean)[k];
  }
  const int n = cfg.candidates();
  const int n_elite = cfg.elites();

  PlanResult best;
  best.horizon = h;
  best.score = -std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> cands(static_cast<std::size_t>(n), std::vector<double>(len));
  std::vector<double> scores(static_cast<std::size_t>(n));
  std::vector<int> order(static_cast<std::size_t>(n));
  for (int it = 0; it < cfg.iterations; ++it) {
    for (int c = 0; c < n; ++c) {
      auto& seq = cands[static_cast<std::size_t>(c)];
      for (std::size_t k = 0; k < len; ++k) seq[k] = std::clamp(dist.mean[k] + dist.std[k] * rng.normal(), -1.0, 1.0);
      const double s = model.rollout(seq, h, cfg.discount);
      scores[static_cast<std::size_t>(c)] = std::isnan(s) ? -std::numeric_limits<double>::infinity() : s;
    }
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      const double sa = scores[static_cast<std::size_t>(a)];
      const double sb = scores[static_cast<std::size_t>(b)];
      return sa != sb ? sa > sb : a < b;
    });
    const auto top = static_cast<std::size_t>(order.front());
    if (best.sequence.empty() || scores[top] > best.score) {
      best.score = scores[top];
      best.sequence = cands[top];
    }
    best.best_per_iteration.push_back(best.score);
    std::vector<std::vector<double>> elites;
    for (int e = 0; e < n_elite; ++e) elites.push_back(cands[static_cast<std::size_t>(order[static_cast<std::size_t>(e)])]);
    dist = fit_elites(elites, h, dim, cfg.std_floor);
  }
  return best;
}

void CemPolicy::begin_episode(const Env&, std::uint64_t seed) {
  rng_ = Rng(seed, 2);
  previous_.clear();
}

std::vector<double> CemPolicy::act(Env& env) {
  const int dim = static_cast<int>(env.action_dim());
  const int h = std::min(cfg_.planning_horizon, env.horizon() - env.step_count());
  std::vector<double> warm;
  if (!previous_.empty()) {
    warm.assign(static_cast<std::size_t>(h * dim), 0.0);
    for (std::size_t k = static_cast<std::size_t>(dim); k < previous_.size() && k - dim < warm.size(); ++k) {
      warm[k - static_cast<std::size_t>(dim)] = previous_[k];
    }
  }
  EnvModel model(env);
  const PlanResult plan = cem_plan(model, cfg_, rng_, h, warm.empty() ? nullptr : &warm);
  previous_ = plan.sequence;
  return {plan.sequence.begin(), plan.sequence.begin() + dim};
}

EpisodeRecord mpc_episode(Env& env, std::uint32_t index, const CemConfig& cfg, std::uint64_t seed,
                          const FrameHook& hook) {
  CemPolicy policy(cfg);
  return run_episode(env, policy, index, seed, hook);
}

}  // namespace softgym
