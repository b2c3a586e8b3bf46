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

#include <cstdint>
#include <filesystem>
#include <vector>

#include "softgym/scene.hpp"
#include "softgym/tasks.hpp"

namespace softgym {

inline constexpr int kImageSize = 128;

struct Camera {
  Vec3 eye{0.0, 1.0, 2.0};
  Vec3 look_at{};
  Vec3 up{0.0, 1.0, 0.0};
  double fov_y = 0.8726646259971648;  // 50 degrees
  int size = kImageSize;

  void validate() const;
};

// d x d RGB, row-major, top row first.
struct Frame {
  int size = 0;
  std::vector<std::uint8_t> pixels;

  friend bool operator==(const Frame&, const Frame&) = default;
};

// Oblique view framing the task's objects; water cameras follow the cup layout.
Camera default_camera(const TaskState& task, int size = kImageSize);

// Point sprites for particles, flat-shaded boxes, gray floor gradient. The
// PourWaterAmount goal line is drawn last as a 2-pixel pure red segment.
Frame render_frame(const Scene& scene, const Camera& camera, const TaskState& task, double particle_radius);

// Binary PPM (P6, maxval 255).
void write_image(const Frame& frame, const std::filesystem::path& path);
Frame read_image(const std::filesystem::path& path);

}  // namespace softgym
