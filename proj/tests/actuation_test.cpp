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

#include <vector>

#include "softgym/actuation.hpp"
#include "softgym/error.hpp"
#include "softgym/solver.hpp"
#include "softgym/tasks.hpp"

namespace softgym {
namespace {

TEST(Denormalize, TransportWaterRange) {
  const auto spec = ActionSpaceSpec::cup_1d();
  EXPECT_EQ(denormalize(spec, std::vector{1.0})[0], 0.011);
  EXPECT_EQ(denormalize(spec, std::vector{-1.0})[0], -0.011);
  EXPECT_EQ(denormalize(spec, std::vector{0.0})[0], 0.0);
}

TEST(Denormalize, PourWaterRange) {
  const auto spec = ActionSpaceSpec::cup_3d();
  EXPECT_EQ(denormalize(spec, std::vector{1.0, 1.0, 1.0}), (std::vector{0.01, 0.01, 0.015}));
  EXPECT_EQ(denormalize(spec, std::vector{-1.0, -1.0, -1.0}), (std::vector{-0.01, -0.01, -0.015}));
}

TEST(Denormalize, PickerChannels) {
  const auto spec = ActionSpaceSpec::pickers(2);
  ASSERT_EQ(spec.dim(), 8u);
  const auto lo = denormalize(spec, std::vector(8, -1.0));
  const auto hi = denormalize(spec, std::vector(8, 1.0));
  EXPECT_EQ(lo, (std::vector{-0.01, -0.01, -0.01, 0.0, -0.01, -0.01, -0.01, 0.0}));
  EXPECT_EQ(hi, (std::vector{0.01, 0.01, 0.01, 1.0, 0.01, 0.01, 0.01, 1.0}));
}

TEST(Denormalize, ClampsAndIsMonotone) {
  const auto spec = ActionSpaceSpec::cup_1d();
  EXPECT_EQ(denormalize(spec, std::vector{7.0})[0], 0.011);
  EXPECT_EQ(denormalize(spec, std::vector{-3.0})[0], -0.011);
  double prev = -1.0;
  for (double a = -1.0; a <= 1.0; a += 0.01) {
    const double r = denormalize(spec, std::vector{a})[0];
    EXPECT_GE(r, prev);
    prev = r;
  }
}

TEST(Denormalize, WrongDimensionThrows) {
  EXPECT_THROW(denormalize(ActionSpaceSpec::cup_3d(), std::vector{0.0}), Error);
}

Scene cloth_pair() {
  Scene s;
  s.particles.add({0, 0.01, 0}, 1.0, Group::kCloth);
  s.particles.add({0.5, 0.01, 0}, 1.0, Group::kCloth);
  s.pickers.push_back(Picker{{0.03, 0.01, 0}, kPickerRadius, {}});
  return s;
}

TEST(ApplyPicker, AttachesWithinRange) {
  Scene s = cloth_pair();
  apply_picker(s, 0, {{}, 0.6}, Workspace{}, kPickerRadius + 0.01, 0.01);
  ASSERT_TRUE(s.pickers[0].attached.has_value());
  EXPECT_EQ(*s.pickers[0].attached, 0u);
  ASSERT_EQ(s.attachments.size(), 1u);
  EXPECT_EQ(s.attachments[0].offset, (Vec3{-0.03, 0, 0}));
}

TEST(ApplyPicker, ReleasesBelowThreshold) {
  Scene s = cloth_pair();
  apply_picker(s, 0, {{}, 0.6}, Workspace{}, 0.06, 0.01);
  const Vec3 before = s.particles.positions[0];
  apply_picker(s, 0, {{}, 0.49}, Workspace{}, 0.06, 0.01);
  EXPECT_FALSE(s.pickers[0].attached.has_value());
  EXPECT_TRUE(s.attachments.empty());
  EXPECT_EQ(s.particles.positions[0], before);
}

TEST(ApplyPicker, NothingInReach) {
  Scene s = cloth_pair();
  s.pickers[0].position = {0, 0.6, 0};  // 10 x grab range away
  apply_picker(s, 0, {{}, 0.9}, Workspace{}, 0.06, 0.01);
  EXPECT_FALSE(s.pickers[0].attached.has_value());
  EXPECT_TRUE(s.attachments.empty());
}

TEST(ApplyPicker, IgnoresFluid) {
  Scene s;
  s.particles.add({0, 0.01, 0}, 1.0, Group::kFluid);
  s.pickers.push_back(Picker{{0, 0.02, 0}, kPickerRadius, {}});
  apply_picker(s, 0, {{}, 1.0}, Workspace{}, 0.06, 0.01);
  EXPECT_FALSE(s.pickers[0].attached.has_value());
}

TEST(ApplyPicker, FloorThresholdHolds) {
  Scene s = cloth_pair();
  s.pickers[0].position = {0, 0.2, 0};
  Workspace ws;
  ws.picker_floor = 0.12;
  for (int i = 0; i < 20; ++i) {
    apply_picker(s, 0, {{0, -0.01, 0}, 0.0}, ws, 0.06, 0.01);
    EXPECT_GE(s.pickers[0].position.y, 0.12);
  }
  EXPECT_EQ(s.pickers[0].position.y, 0.12);
}

TEST(ApplyPicker, WorkspaceClamp) {
  Scene s = cloth_pair();
  s.pickers[0].position = {1.495, 0.5, -1.495};
  apply_picker(s, 0, {{0.01, 0, -0.01}, 0.0}, Workspace{}, 0.06, 0.01);
  EXPECT_EQ(s.pickers[0].position.x, 1.5);
  EXPECT_EQ(s.pickers[0].position.z, -1.5);
}

TEST(ApplyPicker, AttachedParticleTracksPickerThroughSolve) {
  Scene s = cloth_pair();
  SimConfig cfg;
  apply_picker(s, 0, {{}, 1.0}, Workspace{}, 0.06, 0.01);
  for (int i = 0; i < 30; ++i) {
    apply_picker(s, 0, {{0.002, 0.01, 0}, 1.0}, Workspace{}, 0.06, 0.01);
    solve_step(s, cfg);
    EXPECT_NEAR(distance(s.particles.positions[0], s.pickers[0].position + s.attachments[0].offset), 0.0, 1e-9);
  }
}

TEST(SplitPickerAction, Layout) {
  const auto parts = split_picker_action(std::vector{1.0, 2.0, 3.0, 0.7, 4.0, 5.0, 6.0, 0.1});
  ASSERT_EQ(parts.size(), 2u);
  EXPECT_EQ(parts[1].delta, (Vec3{4, 5, 6}));
  EXPECT_EQ(parts[0].pick, 0.7);
}

TEST(ApplyCup, OneDimensionalIncrement) {
  const CupPose p = apply_cup({0.3, 0.1, 0.0}, std::vector{0.011}, ActionKind::kCup1D, CupLimits{});
  EXPECT_DOUBLE_EQ(p.x, 0.311);
  EXPECT_EQ(p.y, 0.1);
  EXPECT_EQ(p.theta, 0.0);
}

TEST(ApplyCup, RotationAccumulates) {
  CupPose p;
  for (int i = 0; i < 105; ++i) p = apply_cup(p, std::vector{0.0, 0.0, 0.015}, ActionKind::kCup3D, CupLimits{});
  EXPECT_NEAR(p.theta, 1.575, 1e-12);
}

TEST(ApplyCup, ZeroActionKeepsPose) {
  const CupPose start{0.2, 0.3, 0.4};
  EXPECT_EQ(apply_cup(start, std::vector{0.0, 0.0, 0.0}, ActionKind::kCup3D, CupLimits{}), start);
  EXPECT_EQ(apply_cup(start, std::vector{0.0}, ActionKind::kCup1D, CupLimits{}), start);
}

TEST(ApplyCup, ClampsToLimits) {
  CupLimits lim;
  lim.y_lo = lim.y_hi = 0.25;
  const CupPose p = apply_cup({0.0, 0.25, 0.0}, std::vector{0.0, 0.01, 0.0}, ActionKind::kCup3D, lim);
  EXPECT_EQ(p.y, 0.25);
}

TEST(TaskConstants, ActionShapes) {
  EXPECT_EQ(task_constants(TaskKind::kTransportWater).action_space.dim(), 1u);
  EXPECT_EQ(task_constants(TaskKind::kPourWater).action_space.dim(), 3u);
  EXPECT_EQ(task_constants(TaskKind::kPourWaterAmount).action_space.dim(), 3u);
  EXPECT_EQ(task_constants(TaskKind::kStraightenRope).action_space.dim(), 8u);
  EXPECT_EQ(task_constants(TaskKind::kSpreadCloth).action_space.dim(), 8u);
  EXPECT_EQ(task_constants(TaskKind::kDropCloth).action_space.dim(), 8u);
}

}  // namespace
}  // namespace softgym
