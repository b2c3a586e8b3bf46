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
#include <vector>

#include "softgym/neighbor_search.hpp"
#include "softgym/scene.hpp"
#include "softgym/sim_config.hpp"

namespace softgym {

// x̂_i = x_i + dt (v_i + dt g) for dynamic particles; static ones stay put.
std::vector<Vec3> predict_positions(const ParticleSet& ps, const SimConfig& cfg);

struct DistanceCorrection {
  Vec3 delta_i{};
  Vec3 delta_j{};
  bool degenerate = false;
};

// Standard PBD distance projection with stiffness applied once.
DistanceCorrection project_distance(const DistanceConstraint& c, const Vec3& pi, const Vec3& pj,
                                    double wi, double wj);

// Poly6 density kernel and spiky kernel gradient (w.r.t. the first argument of r = x_i - x_j).
double poly6(double r2, double h);
Vec3 spiky_gradient(const Vec3& r, double h);

// Density of a particle at the centre of an infinite cubic lattice with
// pitch `spacing`, measured with poly6 (unit kernel mass).
double lattice_rest_density(double spacing, double kernel_radius);

// Poly6 number density of every particle (unit mass, self included).
std::vector<double> measure_density(std::span<const Vec3> positions, double kernel_radius);

// One PBF correction pass: per-particle position deltas for the particles in
// `positions` given neighbour lists built with radius = kernel_radius.
std::vector<Vec3> project_density(std::span<const Vec3> positions, const NeighborLists& neighbors,
                                  const DensityConstraint& c);

// Pushes dynamic particles out of colliders (to radius from the surface) and
// separates same-object cloth/rope pairs closer than 2*radius.
void resolve_collisions(std::span<Vec3> predicted, const ParticleSet& ps,
                        std::span<const Collider> colliders, const SimConfig& cfg);

// Stateful stepper that keeps scratch buffers between substeps. Copying a
// Solver is cheap and never shares state.
class Solver {
 public:
  void step(Scene& scene, const SimConfig& cfg);

 private:
  using Pair = IndexPair;

  void build_fluid_pairs(const Scene& scene, double radius);
  void build_self_pairs(const Scene& scene, const SimConfig& cfg);
  void project_fluid(const DensityConstraint& c);
  void project_self_collisions(double min_distance);
  void project_colliders(const SimConfig& cfg);
  void apply_attachments(const Scene& scene);
  void apply_friction(Scene& scene, const SimConfig& cfg);
  void apply_viscosity(Scene& scene, const DensityConstraint& c);

  std::vector<PreparedCollider> colliders_;
  std::vector<Vec3> predicted_;
  std::vector<Vec3> unconstrained_;
  std::vector<double> weights_;
  // Fluid bookkeeping.
  std::vector<std::uint32_t> fluid_ids_;
  std::vector<Vec3> fluid_positions_;
  std::vector<Pair> fluid_pairs_;
  std::vector<Vec3> pair_gradients_;
  std::vector<double> density_;
  std::vector<Vec3> grad_sum_;
  std::vector<double> grad_sq_;
  std::vector<double> lambda_;
  std::vector<Vec3> fluid_delta_;
  double fluid_rest_density_ = 0.0;
  // Self-collision bookkeeping.
  std::vector<std::uint32_t> solid_ids_;
  std::vector<Vec3> solid_positions_;
  std::vector<Pair> self_pairs_;
  std::vector<Pair> scratch_pairs_;
  PairGrid grid_;
};

// One substep on `scene` (convenience wrapper around Solver).
void solve_step(Scene& scene, const SimConfig& cfg);

}  // namespace softgym
