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

#include <span>

#include "softgym/sim_config.hpp"
#include "softgym/solver.hpp"
#include "softgym/tasks.hpp"

namespace softgym {

// Simulator settings for a task at the given particle scale (1 = paper scale).
SimConfig task_sim_config(TaskKind kind, double particle_scale);

// A scene plus its task bookkeeping, advanced by normalized actions.
struct TaskSim {
  Scene scene;
  TaskState task;
  SimConfig sim;
  Solver solver;

  // One environment step: a_norm is denormalized once and the raw action is
  // applied on each of the task's action-repetition substeps.
  void act(std::span<const double> a_norm);
  // One substep with a raw (denormalized) action.
  void substep(std::span<const double> raw);
  // Substeps with no actuation until the max particle speed drops below
  // `speed`, at most `max_substeps`. Returns the number of substeps run.
  int settle(double speed = 0.01, int max_substeps = 1000);

  double grab_range() const { return kPickerRadius + sim.particle_radius; }
  double performance() const { return softgym::performance(scene, task); }
};

double max_speed(const ParticleSet& ps);

}  // namespace softgym
