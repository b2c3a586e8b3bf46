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

#include "softgym/vec3.hpp"

namespace softgym {

struct SimConfig {
  double dt = 0.01;
  Vec3 gravity{0.0, -9.8, 0.0};
  int solver_iterations = 40;
  // Collision radius; self-collision keeps same-object pairs 2*radius apart.
  double particle_radius = 0.01;
  double fluid_rest_distance = 0.55 * 0.033;
  bool self_collision = true;

  void validate() const;
};

}  // namespace softgym
