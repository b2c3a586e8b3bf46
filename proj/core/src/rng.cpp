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

#include "softgym/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace softgym {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double uniform(DrawSource& src, double lo, double hi) { return lo + src.uniform01() * (hi - lo); }

int randint(DrawSource& src, int lo, int hi) {
  const double u = src.uniform01();
  const int span = hi - lo + 1;
  const int k = static_cast<int>(std::floor(u * span));
  return lo + std::clamp(k, 0, span - 1);
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream), key_(mix64(seed ^ mix64(stream ^ 0x5851f42d4c957f2dULL))) {}

std::uint64_t Rng::next_u64() {
  const std::uint64_t out = mix64(key_ + counter_ * 0x9e3779b97f4a7c15ULL);
  ++counter_;
  return out;
}

double Rng::uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double Rng::normal() {
  const double u1 = 1.0 - uniform01();  // (0, 1]
  const double u2 = uniform01();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace softgym
