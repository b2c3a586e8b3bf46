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

#include <algorithm>
#include <cmath>
#include <numbers>

#include "softgym/error.hpp"
#include "softgym/solver.hpp"

namespace softgym {

namespace {

constexpr double kDegenerateLength = 1e-9;

struct PairIndex {
  std::uint32_t a;
  std::uint32_t b;
};

// Scratch state for one position-based-fluids correction pass.
struct PbfScratch {
  std::vector<Vec3> pair_gradients;
  std::vector<double> density;
  std::vector<Vec3> grad_sum;
  std::vector<double> grad_sq;
  std::vector<double> lambda;
};

template <typename PairT>
void pbf_pass(std::span<const Vec3> pos, std::span<const PairT> pairs, const DensityConstraint& c,
              double rest_density, PbfScratch& s, std::vector<Vec3>& delta) {
  const std::size_t n = pos.size();
  const double h = c.kernel_radius;
  const double h2 = h * h;
  const double h6 = h2 * h2 * h2;
  const double poly_coef = 315.0 / (64.0 * std::numbers::pi * h6 * h2 * h);
  const double w0 = poly_coef * h6;
  const double grad_coef = -45.0 / (std::numbers::pi * h6);
  s.density.assign(n, w0);
  s.grad_sum.assign(n, Vec3{});
  s.grad_sq.assign(n, 0.0);
  s.pair_gradients.resize(pairs.size());
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto a = pairs[p].i;
    const auto b = pairs[p].j;
    const Vec3 d = pos[a] - pos[b];
    const double r2 = norm2(d);
    if (r2 >= h2) {
      s.pair_gradients[p] = Vec3{};
      continue;
    }
    const double q2 = h2 - r2;
    const double w = poly_coef * q2 * q2 * q2;
    s.density[a] += w;
    s.density[b] += w;
    const double r = std::sqrt(r2);
    Vec3 g{};
    if (r > 1e-12) {
      const double q = h - r;
      g = d * (grad_coef * q * q / r);
    }
    s.pair_gradients[p] = g;
    s.grad_sum[a] += g;
    s.grad_sum[b] -= g;
    const double g2 = norm2(g);
    s.grad_sq[a] += g2;
    s.grad_sq[b] += g2;
  }
  const double inv_rest = 1.0 / rest_density;
  s.lambda.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double constraint = std::max(s.density[k] * inv_rest - 1.0, 0.0);
    const double denom = (norm2(s.grad_sum[k]) + s.grad_sq[k]) * inv_rest * inv_rest + c.relaxation;
    s.lambda[k] = -constraint / denom;
  }
  delta.assign(n, Vec3{});
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto a = pairs[p].i;
    const auto b = pairs[p].j;
    const Vec3 corr = s.pair_gradients[p] * ((s.lambda[a] + s.lambda[b]) * inv_rest);
    delta[a] += corr;
    delta[b] -= corr;
  }
}

std::vector<IndexPair> pairs_from_lists(const NeighborLists& lists) {
  std::vector<IndexPair> pairs;
  for (std::size_t i = 0; i < lists.size(); ++i) {
    for (std::uint32_t j : lists.of(i)) {
      if (j > i) pairs.push_back({static_cast<std::uint32_t>(i), j});
    }
  }
  return pairs;
}

void check_finite(const ParticleSet& ps) {
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (!is_finite(ps.positions[i]) || !is_finite(ps.velocities[i]) || !std::isfinite(ps.inv_masses[i])) {
      throw Error("non-finite state");
    }
  }
}

bool is_solid(Group g) { return g == Group::kCloth || g == Group::kRope; }

void separate_pair(Vec3& pa, Vec3& pb, double wa, double wb, double min_distance) {
  const double wsum = wa + wb;
  if (wsum <= 0.0) return;
  const Vec3 d = pa - pb;
  const double len2 = norm2(d);
  if (len2 >= min_distance * min_distance) return;
  const double len = std::sqrt(len2);
  const Vec3 n = len > 1e-12 ? d / len : Vec3{1.0, 0.0, 0.0};
  const double corr = min_distance - len;
  pa += n * (corr * wa / wsum);
  pb -= n * (corr * wb / wsum);
}

// Iteration-count independent stiffness (Müller et al. PBD).
class StiffnessCache {
 public:
  explicit StiffnessCache(int iterations) : iterations_(iterations) {}
  double operator()(double k) {
    if (k != last_k_) {
      last_k_ = k;
      last_eff_ = k >= 1.0 ? 1.0 : 1.0 - std::pow(1.0 - k, 1.0 / iterations_);
    }
    return last_eff_;
  }

 private:
  int iterations_;
  double last_k_ = -1.0;
  double last_eff_ = 0.0;
};

}  // namespace

std::vector<Vec3> predict_positions(const ParticleSet& ps, const SimConfig& cfg) {
  check_finite(ps);
  std::vector<Vec3> out(ps.size());
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (ps.inv_masses[i] > 0.0) {
      out[i] = ps.positions[i] + (ps.velocities[i] + cfg.gravity * cfg.dt) * cfg.dt;
    } else {
      out[i] = ps.positions[i];
    }
  }
  return out;
}

DistanceCorrection project_distance(const DistanceConstraint& c, const Vec3& pi, const Vec3& pj, double wi,
                                    double wj) {
  DistanceCorrection out;
  const double wsum = wi + wj;
  const Vec3 d = pi - pj;
  const double len = norm(d);
  if (len < kDegenerateLength) {
    out.degenerate = true;
    return out;
  }
  if (wsum <= 0.0) return out;
  const Vec3 n = d / len;
  const double s = c.stiffness * (len - c.rest_length) / wsum;
  out.delta_i = n * (-wi * s);
  out.delta_j = n * (wj * s);
  return out;
}

double poly6(double r2, double h) {
  const double h2 = h * h;
  if (r2 >= h2) return 0.0;
  const double q = h2 - r2;
  return 315.0 / (64.0 * std::numbers::pi * h2 * h2 * h2 * h2 * h) * q * q * q;
}

Vec3 spiky_gradient(const Vec3& r, double h) {
  const double len = norm(r);
  if (len >= h || len <= 1e-12) return {};
  const double q = h - len;
  const double h2 = h * h;
  return r * (-45.0 / (std::numbers::pi * h2 * h2 * h2) * q * q / len);
}

double lattice_rest_density(double spacing, double kernel_radius) {
  const int reach = static_cast<int>(std::ceil(kernel_radius / spacing));
  double rho = 0.0;
  for (int x = -reach; x <= reach; ++x) {
    for (int y = -reach; y <= reach; ++y) {
      for (int z = -reach; z <= reach; ++z) {
        const double r2 = spacing * spacing * static_cast<double>(x * x + y * y + z * z);
        rho += poly6(r2, kernel_radius);
      }
    }
  }
  return rho;
}

std::vector<double> measure_density(std::span<const Vec3> positions, double kernel_radius) {
  std::vector<double> rho(positions.size(), 0.0);
  const NeighborLists lists = neighbor_search(positions, kernel_radius);
  for (std::size_t i = 0; i < positions.size(); ++i) {
    rho[i] = poly6(0.0, kernel_radius);
    for (std::uint32_t j : lists.of(i)) rho[i] += poly6(norm2(positions[i] - positions[j]), kernel_radius);
  }
  return rho;
}

std::vector<Vec3> project_density(std::span<const Vec3> positions, const NeighborLists& neighbors,
                                  const DensityConstraint& c) {
  const std::vector<IndexPair> pairs = pairs_from_lists(neighbors);
  PbfScratch scratch;
  std::vector<Vec3> delta;
  pbf_pass<IndexPair>(positions, pairs, c, c.rest_density, scratch, delta);
  return delta;
}

void resolve_collisions(std::span<Vec3> predicted, const ParticleSet& ps, std::span<const Collider> colliders,
                        const SimConfig& cfg) {
  const double r = cfg.particle_radius;
  if (cfg.self_collision) {
    std::vector<std::uint32_t> ids;
    std::vector<Vec3> pos;
    for (std::uint32_t i = 0; i < ps.size(); ++i) {
      if (is_solid(ps.groups[i])) {
        ids.push_back(i);
        pos.push_back(predicted[i]);
      }
    }
    const NeighborLists lists = neighbor_search(pos, 2.0 * r);
    for (const IndexPair& p : pairs_from_lists(lists)) {
      const std::uint32_t a = ids[p.i];
      const std::uint32_t b = ids[p.j];
      if (ps.groups[a] != ps.groups[b]) continue;
      separate_pair(predicted[a], predicted[b], ps.inv_masses[a], ps.inv_masses[b], 2.0 * r);
    }
  }
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    if (ps.inv_masses[i] <= 0.0) continue;
    for (const Collider& c : colliders) {
      if (auto contact = collide_sphere(c, predicted[i], r)) predicted[i] = contact->resolved;
    }
  }
}

void Solver::build_fluid_pairs(const Scene& scene, double radius) {
  const DensityConstraint& c = scene.densities.front();
  fluid_ids_.clear();
  fluid_positions_.clear();
  for (std::uint32_t i = 0; i < scene.particles.size(); ++i) {
    if (scene.particles.groups[i] == c.fluid_group && weights_[i] > 0.0) {
      fluid_ids_.push_back(i);
      fluid_positions_.push_back(predicted_[i]);
    }
  }
  neighbor_pairs(fluid_positions_, radius, fluid_pairs_, grid_);
}

void Solver::build_self_pairs(const Scene& scene, const SimConfig& cfg) {
  solid_ids_.clear();
  solid_positions_.clear();
  for (std::uint32_t i = 0; i < scene.particles.size(); ++i) {
    if (is_solid(scene.particles.groups[i])) {
      solid_ids_.push_back(i);
      solid_positions_.push_back(predicted_[i]);
    }
  }
  self_pairs_.clear();
  if (solid_ids_.empty()) return;
  // Margin covers motion during the iterations of this substep.
  neighbor_pairs(solid_positions_, 3.0 * cfg.particle_radius, scratch_pairs_, grid_);
  for (const Pair& p : scratch_pairs_) {
    const std::uint32_t a = solid_ids_[p.i];
    const std::uint32_t b = solid_ids_[p.j];
    if (scene.particles.groups[a] != scene.particles.groups[b]) continue;
    if (weights_[a] + weights_[b] <= 0.0) continue;
    self_pairs_.push_back({a, b});
  }
}

void Solver::project_fluid(const DensityConstraint& c) {
  for (std::size_t k = 0; k < fluid_ids_.size(); ++k) fluid_positions_[k] = predicted_[fluid_ids_[k]];
  PbfScratch scratch{std::move(pair_gradients_), std::move(density_), std::move(grad_sum_),
                     std::move(grad_sq_), std::move(lambda_)};
  pbf_pass<Pair>(fluid_positions_, fluid_pairs_, c, c.rest_density, scratch, fluid_delta_);
  pair_gradients_ = std::move(scratch.pair_gradients);
  density_ = std::move(scratch.density);
  grad_sum_ = std::move(scratch.grad_sum);
  grad_sq_ = std::move(scratch.grad_sq);
  lambda_ = std::move(scratch.lambda);
  for (std::size_t k = 0; k < fluid_ids_.size(); ++k) predicted_[fluid_ids_[k]] += fluid_delta_[k];
}

void Solver::project_self_collisions(double min_distance) {
  for (const Pair& p : self_pairs_) {
    separate_pair(predicted_[p.i], predicted_[p.j], weights_[p.i], weights_[p.j], min_distance);
  }
}

void Solver::project_colliders(const SimConfig& cfg) {
  const double r = cfg.particle_radius;
  for (std::size_t i = 0; i < predicted_.size(); ++i) {
    if (weights_[i] <= 0.0) continue;
    for (const PreparedCollider& c : colliders_) {
      if (auto contact = c.collide(predicted_[i], r)) predicted_[i] = contact->resolved;
    }
  }
}

void Solver::apply_attachments(const Scene& scene) {
  for (const Attachment& a : scene.attachments) {
    predicted_[a.particle_index] = scene.pickers[a.picker_index].position + a.offset;
  }
}

void Solver::apply_friction(Scene& scene, const SimConfig& cfg) {
  const double r = cfg.particle_radius * (1.0 + 1e-6);
  auto& ps = scene.particles;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (weights_[i] <= 0.0) continue;
    for (const PreparedCollider& pc : colliders_) {
      const Collider& c = pc.collider();
      if (c.friction <= 0.0) continue;
      auto contact = pc.collide(ps.positions[i], r);
      if (!contact) continue;
      Vec3 collider_velocity{};
      if (const auto* b = std::get_if<Box>(&c.shape)) collider_velocity = b->velocity;
      const Vec3 rel = ps.velocities[i] - collider_velocity;
      const Vec3 tangential = rel - contact->normal * dot(rel, contact->normal);
      ps.velocities[i] -= tangential * c.friction;
    }
  }
}

void Solver::apply_viscosity(Scene& scene, const DensityConstraint& c) {
  if (c.viscosity <= 0.0 || fluid_ids_.empty()) return;
  auto& ps = scene.particles;
  std::vector<Vec3>& dv = fluid_delta_;
  dv.assign(fluid_ids_.size(), Vec3{});
  const double h = c.kernel_radius;
  for (const Pair& p : fluid_pairs_) {
    const std::uint32_t a = fluid_ids_[p.i];
    const std::uint32_t b = fluid_ids_[p.j];
    const double w = poly6(norm2(ps.positions[a] - ps.positions[b]), h);
    if (w <= 0.0) continue;
    const Vec3 diff = ps.velocities[b] - ps.velocities[a];
    dv[p.i] += diff * (w / density_[p.j]);
    dv[p.j] -= diff * (w / density_[p.i]);
  }
  for (std::size_t k = 0; k < fluid_ids_.size(); ++k) ps.velocities[fluid_ids_[k]] += dv[k] * c.viscosity;
}

void Solver::step(Scene& scene, const SimConfig& cfg) {
  cfg.validate();
  auto& ps = scene.particles;
  check_finite(ps);
  const std::size_t n = ps.size();

  weights_.assign(ps.inv_masses.begin(), ps.inv_masses.end());
  for (const Attachment& a : scene.attachments) weights_[a.particle_index] = 0.0;

  predicted_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (ps.inv_masses[i] > 0.0) {
      predicted_[i] = ps.positions[i] + (ps.velocities[i] + cfg.gravity * cfg.dt) * cfg.dt;
    } else {
      predicted_[i] = ps.positions[i];
    }
  }

  unconstrained_ = predicted_;

  colliders_.clear();
  for (const Collider& c : scene.colliders) colliders_.emplace_back(c);

  const bool has_fluid = !scene.densities.empty();
  if (has_fluid) build_fluid_pairs(scene, scene.densities.front().kernel_radius);
  if (cfg.self_collision) {
    build_self_pairs(scene, cfg);
  } else {
    self_pairs_.clear();
  }

  StiffnessCache stiffness(cfg.solver_iterations);
  const double min_separation = 2.0 * cfg.particle_radius;
  for (int it = 0; it < cfg.solver_iterations; ++it) {
    apply_attachments(scene);
    for (const DistanceConstraint& c : scene.distances) {
      const double wi = weights_[c.i];
      const double wj = weights_[c.j];
      const double wsum = wi + wj;
      if (wsum <= 0.0) continue;
      Vec3& pi = predicted_[c.i];
      Vec3& pj = predicted_[c.j];
      const Vec3 d = pi - pj;
      const double len = norm(d);
      if (len < kDegenerateLength) continue;
      const double s = stiffness(c.stiffness) * (len - c.rest_length) / (wsum * len);
      pi -= d * (wi * s);
      pj += d * (wj * s);
    }
    if (has_fluid) project_fluid(scene.densities.front());
    project_self_collisions(min_separation);
    project_colliders(cfg);
  }
  apply_attachments(scene);

  // Particles no constraint touched keep the exact ballistic velocity.
  const double inv_dt = 1.0 / cfg.dt;
  for (std::size_t i = 0; i < n; ++i) {
    if (ps.inv_masses[i] > 0.0 && predicted_[i] == unconstrained_[i]) {
      ps.velocities[i] += cfg.gravity * cfg.dt;
    } else {
      ps.velocities[i] = (predicted_[i] - ps.positions[i]) * inv_dt;
    }
  }
  ps.positions.swap(predicted_);
  apply_friction(scene, cfg);
  if (has_fluid) apply_viscosity(scene, scene.densities.front());
}

void solve_step(Scene& scene, const SimConfig& cfg) {
  Solver solver;
  solver.step(scene, cfg);
}

}  // namespace softgym
