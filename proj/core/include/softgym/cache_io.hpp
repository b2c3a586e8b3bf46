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
#include <string>
#include <string_view>
#include <vector>

#include "softgym/scene.hpp"
#include "softgym/tasks.hpp"
#include "softgym/variation.hpp"

namespace softgym {

// Little-endian byte sink/source shared by the cache file and env snapshots.
class ByteWriter {
 public:
  void u8(std::uint8_t v) { buf_.push_back(static_cast<char>(v)); }
  void u16(std::uint16_t v);
  void u32(std::uint32_t v);
  void u64(std::uint64_t v);
  void f32(float v);
  void f64(double v);
  void bytes(std::string_view s) { buf_.append(s); }

  const std::string& str() const { return buf_; }
  std::string take() { return std::move(buf_); }

 private:
  std::string buf_;
};

class ByteReader {
 public:
  explicit ByteReader(std::string_view data) : data_(data) {}

  std::uint8_t u8();
  std::uint16_t u16();
  std::uint32_t u32();
  std::uint64_t u64();
  float f32();
  double f64();
  std::string_view bytes(std::size_t n);

  bool done() const { return pos_ == data_.size(); }
  std::size_t position() const { return pos_; }

 private:
  std::uint64_t uint(int n);
  std::string_view data_;
  std::size_t pos_ = 0;
};

enum class Precision { kF32, kF64 };

// Particle count, positions, velocities, inverse masses, groups, then
// constraint, collider and picker records; reals in the given precision.
void write_scene(ByteWriter& out, const Scene& scene, Precision precision);
Scene read_scene(ByteReader& in, Precision precision);

// Round-trips the scene through the f32 encoding.
Scene quantize_f32(const Scene& scene);

inline constexpr std::string_view kCacheMagic = "SGV1";

struct VariationCache {
  TaskKind kind = TaskKind::kTransportWater;
  std::uint64_t master_seed = 0;
  std::vector<TaskVariation> variations;

  // Variation with the given index, or nullptr.
  const TaskVariation* find(std::uint32_t index) const;
};

std::string encode_cache(const VariationCache& cache);
VariationCache decode_cache(std::string_view bytes);

void save_cache(const std::filesystem::path& path, const VariationCache& cache);
VariationCache load_cache(const std::filesystem::path& path);

// Default cache location: <dir>/<slug>_seed<S>.sgv
std::filesystem::path default_cache_path(const std::filesystem::path& dir, TaskKind kind, std::uint64_t seed);

}  // namespace softgym
