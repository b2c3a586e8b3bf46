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

// Acceptance run: one PASS/FAIL line per criterion.
//
//   acceptance [--work-dir DIR] [--only N]...

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <deque>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <memory>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "softgym/actuation.hpp"
#include "softgym/assets.hpp"
#include "softgym/assignment.hpp"
#include "softgym/cem.hpp"
#include "softgym/env.hpp"
#include "softgym/policy.hpp"
#include "softgym/render.hpp"
#include "softgym/solver.hpp"
#include "softgym/task_sim.hpp"
#include "softgym/variation.hpp"

namespace fs = std::filesystem;
using namespace softgym;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double desk_scale(TaskKind kind) {
  if (is_water_task(kind)) return 3.0;
  if (is_cloth_task(kind)) return 4.0;
  return 1.0;
}

std::shared_ptr<const VariationCache> make_cache(TaskKind kind, const std::vector<std::uint32_t>& indices,
                                                 double scale) {
  auto c = std::make_shared<VariationCache>();
  c->kind = kind;
  c->master_seed = 0;
  for (std::uint32_t i : indices) c->variations.push_back(build_variation(kind, 0, i, scale));
  return c;
}

std::vector<std::uint32_t> range(std::uint32_t a, std::uint32_t b) {
  std::vector<std::uint32_t> v;
  for (std::uint32_t i = a; i <= b; ++i) v.push_back(i);
  return v;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

// 1. Random-policy rollout of each task twice, reports and frames compared byte for byte.
Outcome determinism(const fs::path& work) {
  Outcome o{true, {}};
  double slowest = 0.0;
  for (TaskKind kind : kAllTasks) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto cache = make_cache(kind, {800}, desk_scale(kind));
    std::string reports[2];
    for (int run = 0; run < 2; ++run) {
      const fs::path dir = work / "determinism" / task_slug(kind) / std::to_string(run);
      fs::remove_all(dir);
      fs::create_directories(dir);
      Env env(cache);
      RandomPolicy policy;
      int frame = 0;
      const FrameHook hook = [&](const Env& e, int) {
        char name[32];
        std::snprintf(name, sizeof name, "frame_%05d.ppm", frame++);
        write_image(e.render(), dir / name);
      };
      const EvalReport r = evaluate(env, policy, {800}, 7, hook);
      std::ofstream(dir / "report.txt", std::ios::binary) << format_report(r, {{"task", task_slug(kind)}}, true);
      reports[run] = slurp(dir / "report.txt");
    }
    bool same = reports[0] == reports[1];
    const fs::path base = work / "determinism" / task_slug(kind);
    int frames = 0;
    for (const auto& entry : fs::directory_iterator(base / "0")) {
      if (entry.path().extension() != ".ppm") continue;
      ++frames;
      same = same && slurp(entry.path()) == slurp(base / "1" / entry.path().filename());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    slowest = std::max(slowest, secs);
    if (!same || frames == 0 || secs > 60.0) {
      o.pass = false;
      o.detail += std::string(task_name(kind)) + (same ? " too slow " : " differs ");
    }
  }
  if (o.pass) o.detail = "10 tasks identical, slowest task " + fmt("%.1f s", slowest);
  return o;
}

// 2. Pinned chain stretch and exact ballistic update.
Outcome pbd_correctness() {
  Scene chain;
  const double rest = 0.05;
  for (int i = 0; i < 10; ++i) chain.particles.add({0, 1.0 - i * rest, 0}, i == 0 ? 0.0 : 1.0, Group::kNone);
  for (std::uint32_t i = 0; i + 1 < 10; ++i) chain.add(DistanceConstraint{i, i + 1, rest, 1.0});
  // start sideways so the chain has to swing down
  for (int i = 0; i < 10; ++i) chain.particles.positions[static_cast<std::size_t>(i)] = {i * rest, 1.0, 0};
  SimConfig cfg;
  cfg.solver_iterations = 20;
  cfg.self_collision = false;
  Solver solver;
  for (int step = 0; step < 2000; ++step) solver.step(chain, cfg);
  double worst = 0.0;
  for (const auto& c : chain.distances) {
    worst = std::max(worst, std::abs(distance(chain.particles.positions[c.i], chain.particles.positions[c.j]) - rest) / rest);
  }

  Scene ball;
  ball.particles.add({0.0, 5.0, 0.0}, 1.0, Group::kNone, {0.3, 1.0, -0.2});
  bool exact = true;
  Vec3 x = ball.particles.positions[0], v = ball.particles.velocities[0];
  for (int step = 0; step < 100; ++step) {
    v = v + cfg.gravity * cfg.dt;
    x = x + v * cfg.dt;
    solver.step(ball, cfg);
    exact = exact && ball.particles.positions[0] == x && ball.particles.velocities[0] == v;
  }
  return {worst <= 0.02 && exact, "max stretch " + fmt("%.4f", 100 * worst) + "%, ballistic " + (exact ? "exact" : "differs")};
}

// 3. Settled 6x6x6 block in a tight rigid cup.
Outcome incompressibility() {
  const SimConfig cfg = task_sim_config(TaskKind::kTransportWater, 1.0);
  const double pitch = cfg.fluid_rest_distance;
  Scene s;
  CupSpec cup{6 * pitch, 6 * pitch, 0.3, 0.03};
  cup.pose = {0.0, cup.resting_y(), 0.0};
  s.colliders = build_cup(cup);
  s.colliders.push_back(make_floor());
  const double floor_y = cup.pose.y - 0.5 * cup.height;
  FluidSpec spec{6, 6, 6};
  spec.rest_distance = pitch;
  const BuiltObject block = build_fluid_block(spec, {-2.5 * pitch, floor_y + 0.5 * pitch, -2.5 * pitch});
  s.particles = block.particles;
  double kernel = 0.0, rest = 0.0;
  for (const auto& c : block.constraints) {
    if (const auto* d = std::get_if<DensityConstraint>(&c)) {
      kernel = d->kernel_radius;
      rest = d->rest_density;
    }
    s.add(c);
  }
  Solver solver;
  for (int step = 0; step < 400; ++step) solver.step(s, cfg);
  const auto& pos = s.particles.positions;
  const std::vector<double> rho = measure_density(pos, kernel);
  double top = -1e9;
  for (const Vec3& p : pos) top = std::max(top, p.y + 0.5 * pitch);
  const double half = 0.5 * cup.width;
  int interior = 0, good = 0;
  for (std::size_t i = 0; i < pos.size(); ++i) {
    const Vec3& p = pos[i];
    if (std::abs(p.x) + kernel > half || std::abs(p.z) + kernel > half) continue;
    if (p.y - kernel < floor_y || p.y + kernel > top) continue;
    ++interior;
    good += std::abs(rho[i] / rest - 1.0) <= 0.05;
  }
  const bool pass = interior > 0 && good >= 0.95 * interior;
  return {pass, std::to_string(good) + "/" + std::to_string(interior) + " interior particles within 5% of rest density"};
}

// 4. Tally partition at every step of 10 random PourWater episodes.
Outcome conservation() {
  const auto cache = make_cache(TaskKind::kPourWater, range(800, 809), desk_scale(TaskKind::kPourWater));
  Env env(cache);
  RandomPolicy policy;
  long checks = 0, bad = 0;
  const FrameHook hook = [&](const Env& e, int) {
    const Info info = e.info();
    ++checks;
    const double parts = info.at("in_control") + info.at("in_target") + info.at("spilled");
    if (parts != info.at("total") || info.at("total") != static_cast<double>(e.sim().scene.particles.size())) ++bad;
  };
  evaluate(env, policy, range(800, 809), 3, hook);
  return {bad == 0 && checks == 10 * 101, std::to_string(checks) + " steps checked, " + std::to_string(bad) + " violations"};
}

// 5. Hungarian against brute force.
Outcome bipartite() {
  std::mt19937 gen(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int bad = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(trial % 7);
    CostMatrix cost{n, {}};
    for (std::size_t k = 0; k < n * n; ++k) cost.values.push_back(u(gen));
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    double best = std::numeric_limits<double>::infinity();
    do {
      double c = 0.0;
      for (std::size_t r = 0; r < n; ++r) c += cost.values[r * n + perm[r]];
      best = std::min(best, c);
    } while (std::next_permutation(perm.begin(), perm.end()));
    bad += assignment_cost(cost, solve_assignment(cost)) != best;
  }
  return {bad == 0, std::to_string(200 - bad) + "/200 instances exact"};
}

// 6. Bound normalization and first-step zero for every task.
Outcome normalization() {
  int variations = 0, bad = 0, zero_checked = 0;
  const std::vector<std::uint32_t> idx{0, 1, 800, 801, 999};
  for (TaskKind kind : kAllTasks) {
    const auto cache = make_cache(kind, idx, desk_scale(kind));
    Env env(cache);
    for (std::uint32_t i : idx) {
      env.reset(i);
      const PerformanceBounds b = env.bounds();
      ++variations;
      bad += normalize(b.lower, b) != 0.0 || normalize(b.upper, b) != 1.0;
      if (kind == TaskKind::kStraightenRope) continue;  // lower bound is -L, not the first step
      ZeroPolicy zero;
      const StepResult r = env.step(zero.act(env));
      ++zero_checked;
      bad += r.info.at("normalized_performance") != 0.0;
    }
  }
  return {bad == 0, std::to_string(variations) + " variations, " + std::to_string(zero_checked) +
                        " zero-action first steps, " + std::to_string(bad) + " mismatches"};
}

class FixedDraws final : public DrawSource {
 public:
  explicit FixedDraws(std::vector<double> d) : draws_(d.begin(), d.end()) {}
  double uniform01() override {
    if (draws_.empty()) return 0.0;
    const double u = draws_.front();
    draws_.pop_front();
    return u;
  }

 private:
  std::deque<double> draws_;
};

double pick(int v, int lo, int hi) { return (v - lo + 0.5) / (hi - lo + 1); }

// 7. Water generators under injected draws.
Outcome variation_formulas() {
  constexpr double r = 0.033;
  int bad = 0;
  const auto near = [&](double a, double b) { bad += !(std::abs(a - b) <= 1e-12); };
  for (int w = 4; w <= 13; ++w) {
    for (int l = 4; l <= 13; l += 3) {
      for (double size : {0.2, 0.8}) {
        const double jitter = 0.3, dist = 0.7, dh = 0.6;
        FixedDraws d({pick(w, 4, 13), pick(l, 4, 13), size, jitter, dh, dist});
        const WaterParams p = gen_pour_water(d);
        const bool large = size >= 0.5;
        const int m = std::min(w, l);
        const int hw = static_cast<int>(std::floor((large ? 4.0 : 3.5) * m));
        const double h = static_cast<double>(w * l * hw) / ((w + 1) * (l + 1));
        near(p.cup_w, w * r + 0.1);
        near(p.cup_l, l * r + 0.1);
        near(p.target_w, w * r + 0.07);
        near(p.target_l, l * r + 0.07);
        const double hcc = large ? h * r / 3 + 0.001 * jitter : h * r / 2 + 0.001 * (jitter - 0.5);
        near(p.cup_h, hcc);
        near(p.target_h, hcc + 0.1 * dh);
        near(p.distance, (0.05 + dist * 0.04) * m + (w + 4) * r / 2);
        bad += p.volume != w * l * hw;

        FixedDraws t({pick(w, 4, 13), pick(l, 4, 13), size, dist});
        const WaterParams q = gen_transport_water(t);
        near(q.cup_h, large ? h * r / 3 + 0.0015 * m : h * r / 2);
        near(q.target_offset, 0.4 + 0.8 * dist);
      }
    }
  }
  return {bad == 0, std::to_string(bad) + " mismatches over 160 draw sets"};
}

// 8. Action-space endpoints.
Outcome action_ranges() {
  int bad = 0;
  const auto expect = [&](const ActionSpaceSpec& s, const std::vector<double>& a, const std::vector<double>& want) {
    bad += denormalize(s, a) != want;
  };
  expect(ActionSpaceSpec::cup_1d(), {1.0}, {0.011});
  expect(ActionSpaceSpec::cup_1d(), {-1.0}, {-0.011});
  expect(ActionSpaceSpec::cup_3d(), {1.0, 1.0, 1.0}, {0.01, 0.01, 0.015});
  expect(ActionSpaceSpec::cup_3d(), {-1.0, -1.0, -1.0}, {-0.01, -0.01, -0.015});
  expect(ActionSpaceSpec::pickers(2), std::vector(8, 1.0), {0.01, 0.01, 0.01, 1.0, 0.01, 0.01, 0.01, 1.0});
  expect(ActionSpaceSpec::pickers(2), std::vector(8, -1.0), {-0.01, -0.01, -0.01, 0.0, -0.01, -0.01, -0.01, 0.0});
  return {bad == 0, std::to_string(6 - bad) + "/6 endpoint sets exact"};
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// 9. CEM-MPC at desk scale.
Outcome cem_oracle() {
  struct Run {
    TaskKind kind;
    int horizon;
    double threshold;
  };
  Outcome o{true, {}};
  for (const Run& run : {Run{TaskKind::kTransportWater, 7, 0.7}, Run{TaskKind::kStraightenRope, 15, 0.5}}) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto idx = range(800, 804);
    Env env(make_cache(run.kind, idx, desk_scale(run.kind)));
    CemConfig cfg;
    cfg.planning_horizon = run.horizon;
    cfg.budget = 2100;
    cfg.iterations = 10;
    std::vector<double> finals;
    std::string each;
    for (std::uint32_t i : idx) {
      finals.push_back(mpc_episode(env, i, cfg, episode_seed(0, i)).final_s_hat);
      each += fmt(" %.3f", finals.back());
    }
    const double m = median(finals);
    const double mins = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / 60.0;
    const bool ok = m >= run.threshold && mins <= 30.0;
    o.pass = o.pass && ok;
    o.detail += std::string(o.detail.empty() ? "" : "; ") + std::string(task_name(run.kind)) + " median " +
                fmt("%.3f", m) + " [" + each.substr(1) + "] in " + fmt("%.1f min", mins);
  }
  return o;
}

// 10. One-step quadratic recovered by CEM.
Outcome cem_toy() {
  class Quadratic final : public PlanningModel {
   public:
    std::size_t action_dim() const override { return 1; }
    double rollout(std::span<const double> seq, int, double) override {
      const double raw = denormalize(ActionSpaceSpec::cup_1d(), seq.first(1))[0];
      return -(raw - 0.007) * (raw - 0.007);
    }
  } q;
  CemConfig cfg;
  cfg.planning_horizon = 1;
  cfg.budget = 2100;
  Rng rng(0, 2);
  const PlanResult plan = cem_plan(q, cfg, rng);
  const double raw = denormalize(ActionSpaceSpec::cup_1d(), std::span(plan.sequence))[0];
  return {std::abs(raw - 0.007) <= 0.001, "argmax " + fmt("%.6f", raw)};
}

// 11. Frame shape, determinism and the goal line.
Outcome renderer(const fs::path& work) {
  const auto cache = make_cache(TaskKind::kPourWaterAmount, {800}, desk_scale(TaskKind::kPourWaterAmount));
  Env env(cache, ObservationMode::kImage);
  const Frame a = env.reset(800).image;
  const Frame b = env.render();
  int red = 0;
  for (std::size_t k = 0; k < a.pixels.size(); k += 3) red += a.pixels[k] == 255 && a.pixels[k + 1] == 0 && a.pixels[k + 2] == 0;
  fs::create_directories(work / "render");
  write_image(a, work / "render" / "a.ppm");
  write_image(b, work / "render" / "b.ppm");
  const bool files = slurp(work / "render" / "a.ppm") == slurp(work / "render" / "b.ppm") &&
                     fs::file_size(work / "render" / "a.ppm") == 15u + 3u * 128 * 128;
  const bool pass = a.size == 128 && a.pixels.size() == 3u * 128 * 128 && a == b && files && red >= 32;
  return {pass, std::to_string(red) + " pure-red pixels, frames " + (a == b && files ? "identical" : "differ")};
}

}  // namespace

int main(int argc, char** argv) {
  fs::path work = fs::temp_directory_path() / "softgym_acceptance";
  std::set<int> only;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--work-dir") == 0 && i + 1 < argc) {
      work = argv[++i];
    } else if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
      only.insert(std::atoi(argv[++i]));
    } else {
      std::fprintf(stderr, "usage: acceptance [--work-dir DIR] [--only N]...\n");
      return 2;
    }
  }
  fs::create_directories(work);

  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"determinism", [&] { return determinism(work); }},
      {"pbd correctness", pbd_correctness},
      {"fluid incompressibility", incompressibility},
      {"water conservation", conservation},
      {"bipartite reward oracle", bipartite},
      {"normalization", normalization},
      {"variation formulas", variation_formulas},
      {"action ranges", action_ranges},
      {"cem oracle", cem_oracle},
      {"cem toy optimum", cem_toy},
      {"renderer", [&] { return renderer(work); }},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const int id = static_cast<int>(k) + 1;
    if (!only.empty() && !only.count(id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failed += !o.pass;
    std::printf("criterion %2d %s: %s (%s, %.1f s)\n", id, criteria[k].first, o.pass ? "PASS" : "FAIL", o.detail.c_str(),
                secs);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
