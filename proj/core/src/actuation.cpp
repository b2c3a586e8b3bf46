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

#include "softgym/actuation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "softgym/error.hpp"

namespace softgym {

void ActionSpaceSpec::validate() const {
  if (low.size() != high.size() || low.empty()) throw Error("action bounds must be non-empty and paired");
  for (std::size_t k = 0; k < low.size(); ++k) {
    if (!std::isfinite(low[k]) || !std::isfinite(high[k]) || !(low[k] < high[k])) {
      throw Error("action bounds must be finite with low < high");
    }
  }
  if (kind == ActionKind::kPickers && low.size() != static_cast<std::size_t>(4 * n_pickers)) {
    throw Error("picker action space must have 4n dimensions");
  }
}

ActionSpaceSpec ActionSpaceSpec::cup_1d() { return {ActionKind::kCup1D, 0, {-0.011}, {0.011}}; }

ActionSpaceSpec ActionSpaceSpec::cup_3d() {
  return {ActionKind::kCup3D, 0, {-0.01, -0.01, -0.015}, {0.01, 0.01, 0.015}};
}

ActionSpaceSpec ActionSpaceSpec::pickers(int n) {
  ActionSpaceSpec spec{ActionKind::kPickers, n, {}, {}};
  for (int k = 0; k < n; ++k) {
    spec.low.insert(spec.low.end(), {-0.01, -0.01, -0.01, 0.0});
    spec.high.insert(spec.high.end(), {0.01, 0.01, 0.01, 1.0});
  }
  return spec;
}

std::vector<double> denormalize(const ActionSpaceSpec& spec, std::span<const double> a_norm) {
  if (a_norm.size() != spec.dim()) {
    throw Error("action has dimension " + std::to_string(a_norm.size()) + ", expected " +
                std::to_string(spec.dim()));
  }
  std::vector<double> raw(a_norm.size());
  for (std::size_t k = 0; k < raw.size(); ++k) {
    const double a = std::isnan(a_norm[k]) ? 0.0 : std::clamp(a_norm[k], -1.0, 1.0);
    if (a == -1.0) {
      raw[k] = spec.low[k];
    } else if (a == 1.0) {
      raw[k] = spec.high[k];
    } else {
      raw[k] = spec.low[k] + (a + 1.0) * 0.5 * (spec.high[k] - spec.low[k]);
    }
  }
  return raw;
}

std::vector<PickerAction> split_picker_action(std::span<const double> raw) {
  if (raw.size() % 4 != 0) throw Error("picker action length must be a multiple of 4");
  std::vector<PickerAction> out(raw.size() / 4);
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k].delta = {raw[4 * k], raw[4 * k + 1], raw[4 * k + 2]};
    out[k].pick = raw[4 * k + 3];
  }
  return out;
}

namespace {

void release(Scene& scene, std::size_t index) {
  auto& atts = scene.attachments;
  atts.erase(std::remove_if(atts.begin(), atts.end(),
                            [&](const Attachment& a) { return a.picker_index == index; }),
             atts.end());
  scene.pickers[index].attached.reset();
}

bool is_attached_anywhere(const Scene& scene, std::uint32_t particle) {
  return std::any_of(scene.attachments.begin(), scene.attachments.end(),
                     [&](const Attachment& a) { return a.particle_index == particle; });
}

}  // namespace

void apply_picker(Scene& scene, std::size_t index, const PickerAction& action, const Workspace& ws,
                  double grab_range, double particle_radius) {
  if (index >= scene.pickers.size()) throw Error("picker index out of range");
  Picker& picker = scene.pickers[index];

  Vec3 p = picker.position + action.delta;
  p.x = std::clamp(p.x, ws.lo.x, ws.hi.x);
  p.y = std::clamp(p.y, std::max(ws.lo.y, ws.picker_floor), ws.hi.y);
  p.z = std::clamp(p.z, ws.lo.z, ws.hi.z);
  if (picker.attached) {
    for (const Attachment& a : scene.attachments) {
      if (a.picker_index == index) p.y = std::max(p.y, particle_radius - a.offset.y);
    }
  }
  picker.position = p;

  if (action.pick < kPickThreshold) {
    if (picker.attached) release(scene, index);
    return;
  }
  if (picker.attached) return;

  const auto& ps = scene.particles;
  double best = std::numeric_limits<double>::infinity();
  std::uint32_t best_index = 0;
  for (std::uint32_t i = 0; i < ps.size(); ++i) {
    if (ps.groups[i] != Group::kCloth && ps.groups[i] != Group::kRope) continue;
    if (ps.inv_masses[i] <= 0.0) continue;
    const double d = distance(ps.positions[i], picker.position);
    if (d < best && !is_attached_anywhere(scene, i)) {
      best = d;
      best_index = i;
    }
  }
  if (best > grab_range) return;
  scene.attachments.push_back(Attachment{static_cast<std::uint32_t>(index), best_index,
                                         ps.positions[best_index] - picker.position});
  picker.attached = best_index;
}

CupPose apply_cup(const CupPose& pose, std::span<const double> raw, ActionKind kind, const CupLimits& limits) {
  CupPose next = pose;
  if (kind == ActionKind::kCup1D) {
    if (raw.size() != 1) throw Error("Cup1D action must have 1 dimension");
    next.x += raw[0];
  } else if (kind == ActionKind::kCup3D) {
    if (raw.size() != 3) throw Error("Cup3D action must have 3 dimensions");
    next.x += raw[0];
    next.y += raw[1];
    next.theta += raw[2];
  } else {
    throw Error("apply_cup needs a cup action space");
  }
  next.x = std::clamp(next.x, limits.x_lo, limits.x_hi);
  next.y = std::clamp(next.y, limits.y_lo, limits.y_hi);
  next.theta = std::clamp(next.theta, limits.theta_lo, limits.theta_hi);
  return next;
}

}  // namespace softgym
