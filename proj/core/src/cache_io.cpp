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

#include "softgym/cache_io.hpp"

#include <bit>
#include <fstream>
#include <iterator>
#include <limits>
#include <sstream>

#include "softgym/error.hpp"

namespace softgym {

namespace {

enum RecordType : std::uint8_t { kDistance = 0, kDensity = 1, kAttachment = 2 };
enum ShapeType : std::uint8_t { kHalfSpace = 0, kBox = 1 };

std::uint32_t checked_u32(std::size_t n, const char* what) {
  if (n > std::numeric_limits<std::uint32_t>::max()) throw Error(std::string(what) + " count overflows u32");
  return static_cast<std::uint32_t>(n);
}

struct RealWriter {
  ByteWriter& out;
  Precision precision;

  void real(double v) {
    if (precision == Precision::kF32) {
      out.f32(static_cast<float>(v));
    } else {
      out.f64(v);
    }
  }
  void vec(const Vec3& v) {
    real(v.x);
    real(v.y);
    real(v.z);
  }
};

struct RealReader {
  ByteReader& in;
  Precision precision;

  double real() { return precision == Precision::kF32 ? static_cast<double>(in.f32()) : in.f64(); }
  Vec3 vec() {
    const double x = real();
    const double y = real();
    const double z = real();
    return {x, y, z};
  }
};

}  // namespace

void ByteWriter::u16(std::uint16_t v) {
  for (int k = 0; k < 2; ++k) u8(static_cast<std::uint8_t>(v >> (8 * k)));
}

void ByteWriter::u32(std::uint32_t v) {
  for (int k = 0; k < 4; ++k) u8(static_cast<std::uint8_t>(v >> (8 * k)));
}

void ByteWriter::u64(std::uint64_t v) {
  for (int k = 0; k < 8; ++k) u8(static_cast<std::uint8_t>(v >> (8 * k)));
}

void ByteWriter::f32(float v) { u32(std::bit_cast<std::uint32_t>(v)); }
void ByteWriter::f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }

std::uint64_t ByteReader::uint(int n) {
  if (data_.size() - pos_ < static_cast<std::size_t>(n)) throw Error("unexpected end of data");
  std::uint64_t v = 0;
  for (int k = 0; k < n; ++k) {
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(data_[pos_ + k])) << (8 * k);
  }
  pos_ += static_cast<std::size_t>(n);
  return v;
}

std::uint8_t ByteReader::u8() { return static_cast<std::uint8_t>(uint(1)); }
std::uint16_t ByteReader::u16() { return static_cast<std::uint16_t>(uint(2)); }
std::uint32_t ByteReader::u32() { return static_cast<std::uint32_t>(uint(4)); }
std::uint64_t ByteReader::u64() { return uint(8); }
float ByteReader::f32() { return std::bit_cast<float>(u32()); }
double ByteReader::f64() { return std::bit_cast<double>(u64()); }

std::string_view ByteReader::bytes(std::size_t n) {
  if (data_.size() - pos_ < n) throw Error("unexpected end of data");
  const std::string_view out = data_.substr(pos_, n);
  pos_ += n;
  return out;
}

void write_scene(ByteWriter& out, const Scene& scene, Precision precision) {
  RealWriter w{out, precision};
  const ParticleSet& ps = scene.particles;
  out.u32(checked_u32(ps.size(), "particle"));
  for (const Vec3& p : ps.positions) w.vec(p);
  for (const Vec3& v : ps.velocities) w.vec(v);
  for (double m : ps.inv_masses) w.real(m);
  for (Group g : ps.groups) out.u8(static_cast<std::uint8_t>(g));

  out.u32(checked_u32(scene.distances.size() + scene.densities.size() + scene.attachments.size(), "constraint"));
  for (const DistanceConstraint& c : scene.distances) {
    out.u8(kDistance);
    out.u32(c.i);
    out.u32(c.j);
    w.real(c.rest_length);
    w.real(c.stiffness);
    out.u8(static_cast<std::uint8_t>(c.kind));
  }
  for (const DensityConstraint& c : scene.densities) {
    out.u8(kDensity);
    out.u8(static_cast<std::uint8_t>(c.fluid_group));
    w.real(c.rest_density);
    w.real(c.kernel_radius);
    w.real(c.relaxation);
    w.real(c.viscosity);
  }
  for (const Attachment& a : scene.attachments) {
    out.u8(kAttachment);
    out.u32(a.picker_index);
    out.u32(a.particle_index);
    w.vec(a.offset);
  }

  out.u32(checked_u32(scene.colliders.size(), "collider"));
  for (const Collider& c : scene.colliders) {
    if (const auto* h = std::get_if<HalfSpace>(&c.shape)) {
      out.u8(kHalfSpace);
      w.real(c.friction);
      w.vec(h->normal);
      w.real(h->offset);
    } else {
      const Box& b = std::get<Box>(c.shape);
      out.u8(kBox);
      w.real(c.friction);
      w.vec(b.center);
      w.vec(b.half_extents);
      w.real(b.yaw);
      w.real(b.tilt);
      w.vec(b.velocity);
    }
  }

  out.u32(checked_u32(scene.pickers.size(), "picker"));
  for (const Picker& p : scene.pickers) {
    w.vec(p.position);
    w.real(p.radius);
    out.u8(p.attached ? 1 : 0);
    out.u32(p.attached.value_or(0));
  }
}

Scene read_scene(ByteReader& in, Precision precision) {
  RealReader r{in, precision};
  Scene scene;
  ParticleSet& ps = scene.particles;
  const std::uint32_t n = in.u32();
  ps.positions.resize(n);
  ps.velocities.resize(n);
  ps.inv_masses.resize(n);
  ps.groups.resize(n);
  for (auto& p : ps.positions) p = r.vec();
  for (auto& v : ps.velocities) v = r.vec();
  for (auto& m : ps.inv_masses) m = r.real();
  for (auto& g : ps.groups) {
    const std::uint8_t tag = in.u8();
    if (tag > static_cast<std::uint8_t>(Group::kRope)) throw Error("bad particle group tag");
    g = static_cast<Group>(tag);
  }

  const std::uint32_t n_constraints = in.u32();
  for (std::uint32_t k = 0; k < n_constraints; ++k) {
    const std::uint8_t type = in.u8();
    if (type == kDistance) {
      DistanceConstraint c;
      c.i = in.u32();
      c.j = in.u32();
      c.rest_length = r.real();
      c.stiffness = r.real();
      const std::uint8_t kind = in.u8();
      if (kind > 1) throw Error("bad distance constraint kind");
      c.kind = static_cast<DistanceKind>(kind);
      scene.distances.push_back(c);
    } else if (type == kDensity) {
      DensityConstraint c;
      c.fluid_group = static_cast<Group>(in.u8());
      c.rest_density = r.real();
      c.kernel_radius = r.real();
      c.relaxation = r.real();
      c.viscosity = r.real();
      scene.densities.push_back(c);
    } else if (type == kAttachment) {
      Attachment a;
      a.picker_index = in.u32();
      a.particle_index = in.u32();
      a.offset = r.vec();
      scene.attachments.push_back(a);
    } else {
      throw Error("bad constraint record type");
    }
  }

  const std::uint32_t n_colliders = in.u32();
  for (std::uint32_t k = 0; k < n_colliders; ++k) {
    const std::uint8_t type = in.u8();
    Collider c;
    c.friction = r.real();
    if (type == kHalfSpace) {
      HalfSpace h;
      h.normal = r.vec();
      h.offset = r.real();
      c.shape = h;
    } else if (type == kBox) {
      Box b;
      b.center = r.vec();
      b.half_extents = r.vec();
      b.yaw = r.real();
      b.tilt = r.real();
      b.velocity = r.vec();
      c.shape = b;
    } else {
      throw Error("bad collider record type");
    }
    scene.colliders.push_back(c);
  }

  const std::uint32_t n_pickers = in.u32();
  for (std::uint32_t k = 0; k < n_pickers; ++k) {
    Picker p;
    p.position = r.vec();
    p.radius = r.real();
    const bool attached = in.u8() != 0;
    const std::uint32_t index = in.u32();
    if (attached) p.attached = index;
    scene.pickers.push_back(p);
  }
  scene.validate();
  return scene;
}

Scene quantize_f32(const Scene& scene) {
  ByteWriter out;
  write_scene(out, scene, Precision::kF32);
  ByteReader in(out.str());
  return read_scene(in, Precision::kF32);
}

const TaskVariation* VariationCache::find(std::uint32_t index) const {
  for (const TaskVariation& v : variations) {
    if (v.index == index) return &v;
  }
  return nullptr;
}

std::string encode_cache(const VariationCache& cache) {
  ByteWriter out;
  out.bytes(kCacheMagic);
  out.u16(static_cast<std::uint16_t>(cache.kind));
  out.u64(cache.master_seed);
  out.u32(checked_u32(cache.variations.size(), "variation"));
  for (const TaskVariation& v : cache.variations) {
    out.u32(v.index);
    const std::string params = encode_params(v.params);
    out.u32(checked_u32(params.size(), "params byte"));
    out.bytes(params);
    write_scene(out, v.initial_scene, Precision::kF32);
  }
  return out.take();
}

VariationCache decode_cache(std::string_view bytes) {
  ByteReader in(bytes);
  if (bytes.size() < kCacheMagic.size() || in.bytes(kCacheMagic.size()) != kCacheMagic) {
    throw Error("not a variation cache (bad magic)");
  }
  VariationCache cache;
  const std::uint16_t kind = in.u16();
  if (kind >= kAllTasks.size()) throw Error("cache has unknown task kind " + std::to_string(kind));
  cache.kind = static_cast<TaskKind>(kind);
  cache.master_seed = in.u64();
  const std::uint32_t count = in.u32();
  for (std::uint32_t k = 0; k < count; ++k) {
    TaskVariation v;
    v.index = in.u32();
    if (v.index >= kNumVariations) throw Error("cache record has index >= 1000");
    const std::uint32_t len = in.u32();
    v.params = decode_params(in.bytes(len));
    v.initial_scene = read_scene(in, Precision::kF32);
    const auto attempt = static_cast<int>(param(v.params, "attempt"));
    v.seed = variation_seed(cache.master_seed, v.index, attempt);
    cache.variations.push_back(std::move(v));
  }
  if (!in.done()) throw Error("trailing bytes after cache records");
  return cache;
}

void save_cache(const std::filesystem::path& path, const VariationCache& cache) {
  const std::string bytes = encode_cache(cache);
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error("cannot open " + path.string() + " for writing");
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw Error("write failed: " + path.string());
}

VariationCache load_cache(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open variation cache " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return decode_cache(ss.str());
}

std::filesystem::path default_cache_path(const std::filesystem::path& dir, TaskKind kind, std::uint64_t seed) {
  return dir / (task_slug(kind) + "_seed" + std::to_string(seed) + ".sgv");
}

}  // namespace softgym
