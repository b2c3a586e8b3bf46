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

#include "softgym/task_sim.hpp"

#include <algorithm>
#include <cmath>

#include "softgym/error.hpp"

namespace softgym {

SimConfig task_sim_config(TaskKind kind, double particle_scale) {
  if (!(particle_scale >= 1.0) || !std::isfinite(particle_scale)) throw Error("particle scale must be >= 1");
  SimConfig cfg;
  if (is_water_task(kind)) {
    cfg.solver_iterations = 4;
    cfg.fluid_rest_distance = 0.55 * 0.033 * particle_scale;
    cfg.particle_radius = 0.5 * cfg.fluid_rest_distance;
    cfg.self_collision = false;
  } else if (is_rope_task(kind)) {
    cfg.particle_radius = 0.01;
  } else {
    cfg.particle_radius = 0.4 * 0.0125 * particle_scale;
  }
  return cfg;
}

double max_speed(const ParticleSet& ps) {
  double best = 0.0;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (ps.inv_masses[i] > 0.0) best = std::max(best, norm2(ps.velocities[i]));
  }
  return std::sqrt(best);
}

void TaskSim::substep(std::span<const double> raw) {
  const ActionSpaceSpec& space = task_constants(task.kind).action_space;
  if (raw.size() != space.dim()) throw Error("raw action has the wrong dimension");
  if (space.kind == ActionKind::kPickers) {
    const std::vector<PickerAction> acts = split_picker_action(raw);
    for (std::size_t k = 0; k < acts.size(); ++k) {
      apply_picker(scene, k, acts[k], task.workspace, grab_range(), sim.particle_radius);
    }
  } else {
    CupState& cup = *task.control_cup;
    cup.pose = apply_cup(cup.pose, raw, space.kind, task.cup_limits);
    place_cup(std::span(scene.colliders).subspan(cup.first_collider, 5), cup.spec, cup.pose, sim.dt);
  }
  solver.step(scene, sim);
}

void TaskSim::act(std::span<const double> a_norm) {
  const TaskConstants tc = task_constants(task.kind);
  const std::vector<double> raw = denormalize(tc.action_space, a_norm);
  for (int r = 0; r < tc.action_repetition; ++r) substep(raw);
}

int TaskSim::settle(double speed, int max_substeps) {
  int n = 0;
  while (n < max_substeps) {
    solver.step(scene, sim);
    ++n;
    if (max_speed(scene.particles) < speed) break;
  }
  return n;
}

}  // namespace softgym
