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

// softgym: cache generation, rollouts, evaluation and CEM planning.

#include <chrono>
#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "softgym/cache_io.hpp"
#include "softgym/cem.hpp"
#include "softgym/env.hpp"
#include "softgym/error.hpp"
#include "softgym/policy.hpp"
#include "softgym/variation.hpp"

namespace fs = std::filesystem;
using namespace softgym;

namespace {

using Header = std::vector<std::pair<std::string, std::string>>;

struct Range {
  std::uint32_t first = 0;
  std::uint32_t last = 0;
};

// "a..b" (inclusive) or a single index.
Range parse_range(const std::string& text) {
  Range r;
  const std::size_t dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      r.first = r.last = static_cast<std::uint32_t>(std::stoul(text));
    } else {
      r.first = static_cast<std::uint32_t>(std::stoul(text.substr(0, dots)));
      r.last = static_cast<std::uint32_t>(std::stoul(text.substr(dots + 2)));
    }
  } catch (const std::exception&) {
    throw Error("bad variation range '" + text + "' (expected a..b)");
  }
  if (r.first > r.last || r.last >= kNumVariations) throw Error("variation range must satisfy a <= b < 1000");
  return r;
}

std::vector<std::uint32_t> indices(const Range& r) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = r.first; i <= r.last; ++i) out.push_back(i);
  return out;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary | std::ios::trunc);
  if (!f) throw Error("cannot open " + out + " for writing");
  f << text;
}

struct CacheOpts {
  std::string cache;
  std::string cache_dir = "softgym_cache";
  std::uint64_t cache_seed = 0;

  fs::path path(TaskKind kind) const {
    return cache.empty() ? default_cache_path(cache_dir, kind, cache_seed) : fs::path(cache);
  }
  void add(CLI::App* app) {
    app->add_option("--cache", cache, "Variation cache file (overrides --cache-dir/--cache-seed)");
    app->add_option("--cache-dir", cache_dir, "Directory holding <task>_seed<S>.sgv caches")->capture_default_str();
    app->add_option("--cache-seed", cache_seed, "Master seed of the cache to use")->capture_default_str();
  }
  void describe(Header& h, TaskKind kind) const {
    h.emplace_back("cache", path(kind).string());
    h.emplace_back("cache_seed", std::to_string(cache_seed));
  }
};

struct CemOpts {
  int horizon = 0;
  long budget = 2100;
  int iters = 10;
  double elite = 0.1;
  double discount = 0.99;

  void add(CLI::App* app) {
    app->add_option("--horizon", horizon, "CEM planning horizon (default: task table value)");
    app->add_option("--budget", budget, "Env steps per decision")->capture_default_str();
    app->add_option("--iters", iters, "CEM iterations")->capture_default_str();
    app->add_option("--elite", elite, "Elite fraction")->capture_default_str();
    app->add_option("--discount", discount, "Discount factor")->capture_default_str();
  }
  CemConfig config(TaskKind kind) const {
    CemConfig c;
    c.planning_horizon = horizon > 0 ? horizon : task_constants(kind).planning_horizon;
    c.budget = budget;
    c.iterations = iters;
    c.elite_fraction = elite;
    c.discount = discount;
    c.validate();
    return c;
  }
  void describe(Header& h, const CemConfig& c) const {
    h.emplace_back("horizon", std::to_string(c.planning_horizon));
    h.emplace_back("budget", std::to_string(c.budget));
    h.emplace_back("iters", std::to_string(c.iterations));
    h.emplace_back("elite", fmt(c.elite_fraction));
    h.emplace_back("discount", fmt(c.discount));
    h.emplace_back("candidates", std::to_string(c.candidates()));
    h.emplace_back("elites", std::to_string(c.elites()));
  }
};

std::unique_ptr<Policy> make_policy(const std::string& name, const CemConfig* cem) {
  if (name == "zero") return std::make_unique<ZeroPolicy>();
  if (name == "random") return std::make_unique<RandomPolicy>();
  if (name == "cem") return std::make_unique<CemPolicy>(*cem);
  throw Error("unknown policy '" + name + "' (valid: zero, random, cem)");
}

FrameHook frame_writer(const std::string& dir, int& counter) {
  if (dir.empty()) return {};
  fs::create_directories(dir);
  return [&counter, dir](const Env& env, int) {
    char name[32];
    std::snprintf(name, sizeof name, "frame_%05d.ppm", counter++);
    write_image(env.render(), fs::path(dir) / name);
  };
}

int cmd_gen_cache(const std::string& task, std::uint64_t seed, double scale, const std::string& range,
                  const std::string& out, const std::string& dir) {
  const TaskKind kind = parse_task(task);
  const Range r = parse_range(range);
  VariationCache cache;
  cache.kind = kind;
  cache.master_seed = seed;
  for (std::uint32_t i = r.first; i <= r.last; ++i) {
    try {
      cache.variations.push_back(build_variation(kind, seed, i, scale));
    } catch (const std::exception& e) {
      throw Error("variation " + std::to_string(i) + ": " + e.what());
    }
  }
  const fs::path path = out.empty() ? default_cache_path(dir, kind, seed) : fs::path(out);
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  save_cache(path, cache);
  std::cout << "# softgym gen-cache\n# task: " << task_name(kind) << "\n# seed: " << seed
            << "\n# particle_scale: " << fmt(scale) << "\n# variations: " << r.first << ".." << r.last
            << "\n# out: " << path.string() << "\nwrote " << cache.variations.size() << " variations\n";
  return 0;
}

int cmd_inspect(const std::string& file) {
  const VariationCache cache = load_cache(file);
  std::cout << "# softgym inspect-cache\n# file: " << file << "\n# task: " << task_name(cache.kind)
            << "\n# master_seed: " << cache.master_seed << "\n# count: " << cache.variations.size() << "\n";
  for (const TaskVariation& v : cache.variations) {
    std::printf("variation %" PRIu32 " seed %" PRIu64 " particles %zu colliders %zu pickers %zu\n", v.index, v.seed,
                v.initial_scene.particles.size(), v.initial_scene.colliders.size(), v.initial_scene.pickers.size());
    for (const auto& [key, value] : v.params) std::printf("  %s=%s\n", key.c_str(), fmt(value).c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"softgym: deterministic CPU soft-body manipulation benchmark"};
  app.require_subcommand(1);

  std::string task;
  std::uint64_t seed = 0;
  double scale = 1.0;
  std::string range;
  std::string out;
  std::string dir = "softgym_cache";
  std::string policy_name = "zero";
  std::string render_dir;
  std::string mode = "reduced";
  CacheOpts cache_opts;
  CemOpts cem_opts;

  auto* gen = app.add_subcommand("gen-cache", "Generate the variation cache of a task");
  gen->add_option("task", task, "Task name, e.g. pour_water")->required();
  gen->add_option("--seed", seed, "Master seed")->capture_default_str();
  gen->add_option("--particle-scale", scale, "Divide particle counts per axis by this factor")->capture_default_str();
  std::string gen_range = "0..999";
  gen->add_option("--variations", gen_range, "Inclusive index range a..b")->capture_default_str();
  gen->add_option("--out", out, "Output file (default: <cache-dir>/<task>_seed<S>.sgv)");
  gen->add_option("--cache-dir", dir, "Output directory")->capture_default_str();

  auto* rollout = app.add_subcommand("rollout", "Run a policy and write a per-step episode report");
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Run a policy over variations and write a summary report");
  auto* cem = app.add_subcommand("cem", "Run CEM-MPC episodes");
  for (auto* sub : {rollout, evaluate_cmd, cem}) {
    sub->add_option("task", task, "Task name")->required();
    sub->add_option("--seed", seed, "Policy seed")->capture_default_str();
    sub->add_option("--variations", range, "Inclusive index range a..b");
    sub->add_option("--out", out, "Report file (default: stdout)");
    sub->add_option("--render", render_dir, "Write frame_%05d.ppm frames to this directory");
    sub->add_option("--mode", mode, "Observation mode: full, reduced, image")->capture_default_str();
    cache_opts.add(sub);
    cem_opts.add(sub);
  }
  for (auto* sub : {rollout, evaluate_cmd}) {
    sub->add_option("--policy", policy_name, "zero, random or cem")->capture_default_str();
  }

  std::string inspect_file;
  auto* inspect = app.add_subcommand("inspect-cache", "Print the contents of a cache file");
  inspect->add_option("file", inspect_file, "Cache file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_gen_cache(task, seed, scale, gen_range, out, dir);
    if (inspect->parsed()) return cmd_inspect(inspect_file);

    CLI::App* sub = rollout->parsed() ? rollout : (evaluate_cmd->parsed() ? evaluate_cmd : cem);
    const std::string command = sub->get_name();
    if (command == "cem") policy_name = "cem";
    const TaskKind kind = parse_task(task);
    if (range.empty()) range = command == "cem" ? "800..809" : "800..999";
    const std::vector<std::uint32_t> idx = indices(parse_range(range));

    Env env = Env::make(task_name(kind), parse_observation_mode(mode), cache_opts.path(kind));
    const CemConfig cem_cfg = policy_name == "cem" ? cem_opts.config(kind) : CemConfig{};
    std::unique_ptr<Policy> policy = make_policy(policy_name, &cem_cfg);

    Header header;
    header.emplace_back("command", command);
    header.emplace_back("task", std::string(task_name(kind)));
    header.emplace_back("policy", policy_name);
    header.emplace_back("seed", std::to_string(seed));
    header.emplace_back("variations", range);
    header.emplace_back("mode", mode);
    header.emplace_back("horizon_steps", std::to_string(env.horizon()));
    header.emplace_back("action_repetition", std::to_string(env.constants().action_repetition));
    cache_opts.describe(header, kind);
    header.emplace_back("particle_scale", fmt(param(env.cache().variations.front().params, "particle_scale")));
    if (policy_name == "cem") cem_opts.describe(header, cem_cfg);
    header.emplace_back("render", render_dir.empty() ? "-" : render_dir);

    int frame = 0;
    const EvalReport report = evaluate(env, *policy, idx, seed, frame_writer(render_dir, frame));
    emit(format_report(report, header, command == "rollout"), out);
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "softgym: " << e.what() << "\n";
    return 1;
  }
}
