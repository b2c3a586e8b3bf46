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

namespace softgym {

// Source of uniform draws in [0, 1]. Generators take this interface so tests
// can inject fixed draws.
class DrawSource {
 public:
  virtual ~DrawSource() = default;
  virtual double uniform01() = 0;
};

// lo + u (hi - lo).
double uniform(DrawSource& src, double lo, double hi);
// Integer in [lo, hi], both ends inclusive.
int randint(DrawSource& src, int lo, int hi);

// Counter-based generator: draw k of (seed, stream) is a pure function of
// (seed, stream, k), so streams can be split per variation and replayed on
// any platform.
class Rng final : public DrawSource {
 public:
  Rng() = default;
  Rng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64();
  double uniform01() override;
  // Standard normal via Box-Muller (one draw per call, two uniforms consumed).
  double normal();

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }
  std::uint64_t counter() const { return counter_; }
  void set_counter(std::uint64_t c) { counter_ = c; }

  friend bool operator==(const Rng& a, const Rng& b) {
    return a.seed_ == b.seed_ && a.stream_ == b.stream_ && a.key_ == b.key_ && a.counter_ == b.counter_;
  }

 private:
  std::uint64_t seed_ = 0;
  std::uint64_t stream_ = 0;
  std::uint64_t key_ = 0;
  std::uint64_t counter_ = 0;
};

// SplitMix64 finaliser.
std::uint64_t mix64(std::uint64_t x);

}  // namespace softgym
