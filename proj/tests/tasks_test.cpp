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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "softgym/assets.hpp"
#include "softgym/assignment.hpp"
#include "softgym/error.hpp"
#include "softgym/tasks.hpp"

namespace softgym {
namespace {

std::vector<Vec3> flat_grid(int rows, int cols, double s, const Vec3& origin = {}) {
  std::vector<Vec3> out;
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) out.push_back(origin + Vec3{j * s, 0.0, i * s});
  }
  return out;
}

// Point-in-cavity test written with explicit rotation matrices.
bool in_cavity(const CupSpec& spec, const CupPose& pose, const Vec3& p) {
  const double dx = p.x - pose.x, dy = p.y - pose.y, dz = p.z;
  const double c = std::cos(pose.theta), s = std::sin(pose.theta);
  const double tx = c * dx + s * dy, ty = -s * dx + c * dy, tz = dz;
  const double cy = std::cos(spec.yaw), sy = std::sin(spec.yaw);
  const double lx = cy * tx - sy * tz, lz = sy * tx + cy * tz;
  return std::abs(lx) <= spec.width / 2 && std::abs(ty) <= spec.height / 2 && std::abs(lz) <= spec.length / 2;
}

// Covered area by testing 1 mm cells against every particle's disc.
double fine_coverage(const std::vector<Vec3>& pts, double radius) {
  const double cell = 0.001;
  double lo_x = 1e9, hi_x = -1e9, lo_z = 1e9, hi_z = -1e9;
  for (const Vec3& p : pts) {
    lo_x = std::min(lo_x, p.x - radius);
    hi_x = std::max(hi_x, p.x + radius);
    lo_z = std::min(lo_z, p.z - radius);
    hi_z = std::max(hi_z, p.z + radius);
  }
  std::size_t hit = 0;
  for (double z = lo_z + cell / 2; z < hi_z; z += cell) {
    for (double x = lo_x + cell / 2; x < hi_x; x += cell) {
      for (const Vec3& p : pts) {
        if ((x - p.x) * (x - p.x) + (z - p.z) * (z - p.z) <= radius * radius) {
          ++hit;
          break;
        }
      }
    }
  }
  return static_cast<double>(hit) * cell * cell;
}

TEST(TaskNames, ParseAllSpellings) {
  for (TaskKind k : kAllTasks) {
    EXPECT_EQ(parse_task(task_name(k)), k);
    EXPECT_EQ(parse_task(task_slug(k)), k);
    EXPECT_EQ(parse_task("softgym/" + std::string(task_name(k))), k);
  }
  EXPECT_EQ(task_slug(TaskKind::kTransportWater), "transport_water");
  EXPECT_THROW(parse_task("Bogus"), Error);
}

TEST(TaskConstants, AppendixTable) {
  EXPECT_EQ(task_constants(TaskKind::kTransportWater).horizon, 75);
  EXPECT_EQ(task_constants(TaskKind::kTransportWater).action_repetition, 8);
  EXPECT_EQ(task_constants(TaskKind::kTransportWater).planning_horizon, 7);
  EXPECT_EQ(task_constants(TaskKind::kPourWater).horizon, 100);
  EXPECT_EQ(task_constants(TaskKind::kPourWater).planning_horizon, 40);
  EXPECT_EQ(task_constants(TaskKind::kStraightenRope).horizon, 75);
  EXPECT_EQ(task_constants(TaskKind::kSpreadCloth).horizon, 100);
  EXPECT_EQ(task_constants(TaskKind::kFoldCloth).planning_horizon, 30);
  EXPECT_EQ(task_constants(TaskKind::kDropCloth).horizon, 15);
  EXPECT_EQ(task_constants(TaskKind::kDropCloth).action_repetition, 32);
}

TEST(ClassifyWater, AllInControl) {
  CupState cup{CupSpec{0.3, 0.3, 0.3, 0.03}, {0.0, 0.18, 0.0}, 0};
  const std::vector<Vec3> pts(12, Vec3{0.01, 0.1, -0.02});
  EXPECT_EQ(classify_water(pts, &cup, nullptr), (WaterTally{12, 0, 0, 12}));
}

TEST(ClassifyWater, BelowFloorOutsideIsSpilled) {
  CupState a{CupSpec{0.3, 0.3, 0.3, 0.03}, {0.0, 0.18, 0.0}, 0};
  CupState b{CupSpec{0.3, 0.3, 0.3, 0.03}, {1.0, 0.18, 0.0}, 5};
  const std::vector<Vec3> pts{{0.5, -0.01, 0.0}};
  EXPECT_EQ(classify_water(pts, &a, &b), (WaterTally{0, 0, 1, 1}));
}

TEST(ClassifyWater, MatchesRotatedBoxOracle) {
  std::mt19937 gen(5);
  std::uniform_real_distribution<double> u(-0.4, 0.4);
  CupState a{CupSpec{0.3, 0.2, 0.25, 0.03}, {0.0, 0.2, 0.7}, 0};
  a.spec.yaw = 0.3;
  CupState b{CupSpec{0.25, 0.3, 0.2, 0.03}, {0.2, 0.15, 0.0}, 5};
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Vec3> pts;
    for (int i = 0; i < 20; ++i) pts.push_back({u(gen), 0.2 + u(gen), u(gen)});
    WaterTally want{0, 0, 0, pts.size()};
    for (const Vec3& p : pts) {
      if (in_cavity(a.spec, a.pose, p)) {
        ++want.in_control;
      } else if (in_cavity(b.spec, b.pose, p)) {
        ++want.in_target;
      } else {
        ++want.spilled;
      }
    }
    EXPECT_EQ(classify_water(pts, &a, &b), want);
  }
}

TEST(RewardTransport, Examples) {
  EXPECT_EQ(reward_transport({10, 0, 0, 10}, 0.7, 0.7), 0.0);
  EXPECT_DOUBLE_EQ(reward_transport({10, 0, 0, 10}, 0.2, 0.7), -0.5);
  EXPECT_DOUBLE_EQ(reward_transport({5, 0, 5, 10}, 0.7, 0.7, 4.0), -2.0);
}

TEST(RewardPour, Examples) {
  EXPECT_EQ(reward_pour({0, 64, 0, 64}), 1.0);
  EXPECT_EQ(reward_pour({64, 0, 0, 64}), 0.0);
  EXPECT_EQ(reward_pour({40, 16, 8, 64}), 0.25);
}

TEST(RewardPourAmount, Examples) {
  EXPECT_EQ(reward_pour_amount({50, 50, 0, 100}, 0.5), 0.0);
  EXPECT_EQ(reward_pour_amount({100, 0, 0, 100}, 0.5), -0.5);
  EXPECT_NEAR(reward_pour_amount({20, 80, 0, 100}, 0.55), -0.25, 1e-15);
}

TEST(RewardStraighten, Examples) {
  const auto straight = straight_polyline(41, 0.025, {});
  EXPECT_NEAR(reward_straighten(straight, 1.0), 0.0, 1e-12);
  std::vector<Vec3> folded(41, Vec3{0.1, 0.0, 0.3});
  EXPECT_EQ(reward_straighten(folded, 1.0), -1.0);
  std::mt19937 gen(3);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  std::vector<Vec3> rnd;
  for (int i = 0; i < 41; ++i) rnd.push_back({u(gen), u(gen), u(gen)});
  const double d = std::sqrt(std::pow(rnd[0].x - rnd[40].x, 2) + std::pow(rnd[0].y - rnd[40].y, 2) +
                             std::pow(rnd[0].z - rnd[40].z, 2));
  EXPECT_NEAR(reward_straighten(rnd, 1.0), -std::abs(d - 1.0), 1e-15);
}

TEST(RewardSpread, StackedParticlesCoverOneDisc) {
  const double s = 0.05;
  const std::vector<Vec3> stacked(30, Vec3{0.123, 0.2, -0.377});
  const double area = reward_spread(stacked, s);
  // Cells whose centres fall in the disc: error bounded by perimeter x half cell diagonal.
  EXPECT_NEAR(area, M_PI * s * s, 2 * M_PI * s * kCoverageCell * std::sqrt(0.5));
  EXPECT_NEAR(area, fine_coverage({stacked.front()}, s), 2 * M_PI * s * kCoverageCell * std::sqrt(0.5));
}

TEST(RewardSpread, FlatClothMatchesFineGrid) {
  for (auto [rows, cols, s] : {std::tuple{15, 20, 0.05}, std::tuple{30, 22, 0.025}}) {
    const auto cloth = flat_grid(rows, cols, s, {-0.4, 0.0, -0.3});
    const double oracle = fine_coverage(cloth, s);
    EXPECT_NEAR(reward_spread(cloth, s) / oracle, 1.0, 0.05);
    // Interior rectangle plus a margin of at most one spacing all round.
    EXPECT_GT(oracle, (rows - 1) * (cols - 1) * s * s);
    EXPECT_LT(oracle, (rows + 1) * (cols + 1) * s * s);
  }
}

TEST(RewardSpread, EmptyIsZero) { EXPECT_EQ(reward_spread({}, 0.0125), 0.0); }

TEST(RewardFold, PerfectFoldIsZero) {
  const int rows = 4, cols = 6;
  auto cloth = flat_grid(rows, cols, 0.1);
  const Vec3 anchor = anchor_centroid(cloth, rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = cols / 2; j < cols; ++j) cloth[i * cols + j] = cloth[i * cols + (cols - 1 - j)];
  }
  EXPECT_EQ(reward_fold(cloth, rows, cols, anchor), 0.0);
}

TEST(RewardFold, FlatClothClosedForm) {
  const int rows = 3, cols = 7;
  const double s = 0.05;
  const auto cloth = flat_grid(rows, cols, s);
  // Pair j with cols-1-j: distance (cols-1-2j) s; middle column pairs with itself.
  double per_row = 0.0;
  for (int j = 0; j < (cols + 1) / 2; ++j) per_row += (cols - 1 - 2 * j) * s;
  const double expected = -per_row / ((cols + 1) / 2);
  EXPECT_NEAR(reward_fold(cloth, rows, cols, anchor_centroid(cloth, rows, cols)), expected, 1e-15);
}

TEST(RewardFold, TranslatedFoldPaysDisplacement) {
  const int rows = 4, cols = 4;
  auto cloth = flat_grid(rows, cols, 0.1);
  const Vec3 anchor = anchor_centroid(cloth, rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 2; j < 4; ++j) cloth[i * cols + j] = cloth[i * cols + 3 - j];
  }
  for (Vec3& p : cloth) p += Vec3{0.1, 0.0, 0.0};
  EXPECT_NEAR(reward_fold(cloth, rows, cols, anchor, 1.0), -0.1, 1e-15);
}

TEST(RewardDrop, Examples) {
  const auto target = flat_grid(5, 5, 0.05);
  EXPECT_EQ(reward_drop(target, target), 0.0);
  auto lifted = target;
  for (Vec3& p : lifted) p.y += 0.3;
  EXPECT_NEAR(reward_drop(lifted, target), -0.3, 1e-15);
  std::mt19937 gen(11);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<Vec3> rnd;
  double sum = 0.0;
  for (const Vec3& t : target) {
    rnd.push_back({u(gen), u(gen), u(gen)});
    sum += std::sqrt(std::pow(rnd.back().x - t.x, 2) + std::pow(rnd.back().y - t.y, 2) +
                     std::pow(rnd.back().z - t.z, 2));
  }
  EXPECT_NEAR(reward_drop(rnd, target), -sum / target.size(), 1e-15);
}

TEST(RewardDrop, DecreasesWithTranslation) {
  const auto target = flat_grid(4, 4, 0.05);
  double prev = 0.0;
  for (int k = 1; k <= 5; ++k) {
    auto moved = target;
    for (Vec3& p : moved) p += Vec3{0.01 * k, 0.02 * k, 0.0};
    const double r = reward_drop(moved, target);
    EXPECT_LT(r, prev);
    prev = r;
  }
}

TEST(Assignment, HungarianEqualsBruteForce) {
  std::mt19937 gen(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 7;
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
    EXPECT_EQ(assignment_cost(cost, solve_assignment(cost)), best) << "trial " << trial;
  }
}

TEST(RewardRopeConfig, IdenticalAndSwapped) {
  std::vector<Vec3> goal{{0, 0, 0}, {1, 0, 0}, {0, 0, 1}, {0.5, 0.1, 0.5}};
  EXPECT_EQ(reward_rope_config(goal, goal), 0.0);
  auto swapped = goal;
  std::swap(swapped[0], swapped[2]);
  EXPECT_EQ(reward_rope_config(swapped, goal), 0.0);
  EXPECT_THROW(reward_rope_config(std::vector<Vec3>(3), goal), Error);
}

TEST(RewardRopeConfig, PermutationInvariant) {
  std::mt19937 gen(8);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<Vec3> pts, goal;
  for (int i = 0; i < 10; ++i) {
    pts.push_back({u(gen), 0, u(gen)});
    goal.push_back({u(gen), 0, u(gen)});
  }
  const double base = reward_rope_config(pts, goal);
  EXPECT_LT(base, 0.0);
  std::shuffle(pts.begin(), pts.end(), gen);
  EXPECT_NEAR(reward_rope_config(pts, goal), base, 1e-12);
}

TEST(RopeKeypoints, EvenlySpacedIndices) {
  EXPECT_EQ(rope_keypoint_indices(41), (std::vector<std::size_t>{0, 4, 9, 13, 18, 22, 27, 31, 36, 40}));
}

TEST(ReducedState, Dimensions) {
  EXPECT_EQ(reduced_state_dim(TaskKind::kTransportWater), 7u);
  EXPECT_EQ(reduced_state_dim(TaskKind::kStraightenRope), 36u);
  EXPECT_EQ(reduced_state_dim(TaskKind::kSpreadCloth), 18u);
  EXPECT_EQ(reduced_state_dim(TaskKind::kDropFoldCloth), 18u);
}

TEST(ReducedState, ClothCornersThenPickers) {
  Scene s;
  const auto obj = build_cloth(ClothSpec{3, 4, 0.1}, {});
  s.particles = obj.particles;
  s.pickers = {Picker{{1, 2, 3}, kPickerRadius, {}}, Picker{{4, 5, 6}, kPickerRadius, {}}};
  TaskState t;
  t.kind = TaskKind::kSpreadCloth;
  t.rows = 3;
  t.cols = 4;
  const auto r = reduced_state(s, t);
  ASSERT_EQ(r.size(), 18u);
  EXPECT_DOUBLE_EQ(r[3], 0.3);  // corner (0, cols-1)
  EXPECT_DOUBLE_EQ(r[8], 0.2);  // corner (rows-1, 0) z
  EXPECT_EQ(std::vector<double>(r.begin() + 12, r.end()), (std::vector<double>{1, 2, 3, 4, 5, 6}));
}

TEST(FullState, PaddingAndPickerFields) {
  Scene s;
  s.particles.add({1, 2, 3}, 1.0, Group::kCloth);
  s.particles.add({4, 5, 6}, 1.0, Group::kCloth);
  s.pickers = {Picker{{7, 8, 9}, kPickerRadius, {}}, Picker{{10, 11, 12}, kPickerRadius, {}}};
  s.pickers[1].attached = 0;
  TaskState t;
  t.kind = TaskKind::kSpreadCloth;
  t.max_particles = 5;
  const auto f = full_state(s, t);
  ASSERT_EQ(f.size(), 3u * 5 + 8);
  EXPECT_EQ(std::vector<double>(f.begin(), f.begin() + 6), (std::vector<double>{1, 2, 3, 4, 5, 6}));
  for (int k = 6; k < 15; ++k) EXPECT_EQ(f[k], 0.0);
  EXPECT_EQ(std::vector<double>(f.begin() + 15, f.end()), (std::vector<double>{7, 8, 9, 0, 10, 11, 12, 1}));
}

}  // namespace
}  // namespace softgym
