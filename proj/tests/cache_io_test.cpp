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

#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "softgym/assets.hpp"
#include "softgym/cache_io.hpp"
#include "softgym/error.hpp"
#include "softgym/variation.hpp"

namespace softgym {
namespace {

std::string le(std::uint64_t v, int n) {
  std::string s;
  for (int k = 0; k < n; ++k) s.push_back(static_cast<char>((v >> (8 * k)) & 0xff));
  return s;
}

std::string f32(double v) {
  const float f = static_cast<float>(v);
  std::uint32_t bits;
  std::memcpy(&bits, &f, 4);
  return le(bits, 4);
}

VariationCache small_cache() {
  VariationCache c;
  c.kind = TaskKind::kStraightenRope;
  c.master_seed = 5;
  for (std::uint32_t i : {3u, 801u}) c.variations.push_back(build_variation(c.kind, c.master_seed, i, 1.0));
  return c;
}

TEST(ByteIo, LittleEndianRoundTrip) {
  ByteWriter w;
  w.u16(0x0102);
  w.u32(0x03040506);
  w.u64(0x0708090a0b0c0d0eULL);
  w.f32(1.5f);
  w.f64(-2.25);
  EXPECT_EQ(w.str().substr(0, 14), le(0x0102, 2) + le(0x03040506, 4) + le(0x0708090a0b0c0d0eULL, 8));
  ByteReader r(w.str());
  EXPECT_EQ(r.u16(), 0x0102);
  EXPECT_EQ(r.u32(), 0x03040506u);
  EXPECT_EQ(r.u64(), 0x0708090a0b0c0d0eULL);
  EXPECT_EQ(r.f32(), 1.5f);
  EXPECT_EQ(r.f64(), -2.25);
  EXPECT_TRUE(r.done());
  EXPECT_THROW(r.u8(), Error);
}

TEST(SceneRecord, HandBuiltBytes) {
  Scene s;
  s.particles.add({1, 2, 3}, 0.5, Group::kRope, {0.25, 0, -1});
  s.colliders.push_back(make_floor(0.5));
  s.pickers.push_back(Picker{{0, 1, 0}, kPickerRadius, {}});
  ByteWriter w;
  write_scene(w, s, Precision::kF32);
  std::string want = le(1, 4);
  for (double v : {1.0, 2.0, 3.0, 0.25, 0.0, -1.0, 0.5}) want += f32(v);
  want += le(3, 1);   // rope group
  want += le(0, 4);   // no constraints
  want += le(1, 4);   // one collider
  want += le(0, 1);   // half space
  for (double v : {0.5, 0.0, 1.0, 0.0, 0.0}) want += f32(v);
  want += le(1, 4);   // one picker
  for (double v : {0.0, 1.0, 0.0, kPickerRadius}) want += f32(v);
  want += le(0, 1) + le(0, 4);
  EXPECT_EQ(w.str(), want);
}

TEST(SceneRecord, RoundTripsEveryRecordType) {
  Scene s;
  const auto cloth = build_cloth(ClothSpec{3, 3, 0.1}, {0, 0.5, 0});
  s.particles = cloth.particles;
  for (const auto& c : cloth.constraints) s.add(c);
  const auto fluid = build_fluid_block(FluidSpec{2, 2, 2}, {1, 1, 1});
  const std::uint32_t base = s.particles.append(fluid.particles);
  for (const auto& c : fluid.constraints) s.add_offset(c, base);
  s.colliders = build_cup(CupSpec{});
  s.colliders.push_back(make_floor());
  s.pickers.push_back(Picker{{0, 0.55, 0}, kPickerRadius, {}});
  s.pickers[0].attached = 0;
  s.add(Attachment{0, 0, {0, -0.05, 0}});
  ByteWriter w;
  write_scene(w, s, Precision::kF64);
  ByteReader r(w.str());
  EXPECT_EQ(read_scene(r, Precision::kF64), s);
  EXPECT_TRUE(r.done());
  const Scene q = quantize_f32(s);
  EXPECT_EQ(quantize_f32(q), q);
  EXPECT_EQ(q.particles.positions[1].x, static_cast<double>(static_cast<float>(0.1)));
}

TEST(Cache, HeaderLayout) {
  VariationCache c;
  c.kind = TaskKind::kPourWater;
  c.master_seed = 0x1122334455667788ULL;
  const std::string bytes = encode_cache(c);
  EXPECT_EQ(bytes, std::string("SGV1") + le(1, 2) + le(0x1122334455667788ULL, 8) + le(0, 4));
}

TEST(Cache, RoundTrip) {
  const VariationCache c = small_cache();
  const VariationCache d = decode_cache(encode_cache(c));
  EXPECT_EQ(d.kind, c.kind);
  EXPECT_EQ(d.master_seed, c.master_seed);
  ASSERT_EQ(d.variations.size(), 2u);
  for (std::size_t k = 0; k < 2; ++k) {
    EXPECT_EQ(d.variations[k].index, c.variations[k].index);
    EXPECT_EQ(d.variations[k].seed, c.variations[k].seed);
    EXPECT_EQ(d.variations[k].params, c.variations[k].params);
    EXPECT_EQ(d.variations[k].initial_scene, c.variations[k].initial_scene);
  }
  EXPECT_EQ(encode_cache(d), encode_cache(c));
  ASSERT_NE(d.find(801), nullptr);
  EXPECT_EQ(d.find(800), nullptr);
}

TEST(Cache, RegeneratedBytesIdentical) { EXPECT_EQ(encode_cache(small_cache()), encode_cache(small_cache())); }

TEST(Cache, RejectsCorruptInput) {
  const std::string good = encode_cache(small_cache());
  EXPECT_THROW(decode_cache("XXXX" + good.substr(4)), Error);
  EXPECT_THROW(decode_cache(good.substr(0, good.size() - 3)), Error);
  EXPECT_THROW(decode_cache(good + "x"), Error);
  std::string bad_kind = good;
  bad_kind[4] = 42;
  EXPECT_THROW(decode_cache(bad_kind), Error);
}

TEST(Cache, SaveLoadFile) {
  const auto dir = std::filesystem::temp_directory_path() / "softgym_cache_io_test";
  std::filesystem::create_directories(dir);
  const VariationCache c = small_cache();
  const auto path = default_cache_path(dir, c.kind, c.master_seed);
  EXPECT_EQ(path.filename(), "straighten_rope_seed5.sgv");
  save_cache(path, c);
  std::ifstream f(path, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  EXPECT_EQ(ss.str(), encode_cache(c));
  EXPECT_EQ(encode_cache(load_cache(path)), encode_cache(c));
  EXPECT_THROW(load_cache(dir / "missing.sgv"), Error);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace softgym
