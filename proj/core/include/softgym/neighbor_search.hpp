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
#include <span>
#include <vector>

#include "softgym/vec3.hpp"

namespace softgym {

// Compressed per-particle neighbour lists. Neighbours of particle i are
// indices[offsets[i] .. offsets[i+1]), ascending, excluding i itself.
struct NeighborLists {
  std::vector<std::uint32_t> offsets;
  std::vector<std::uint32_t> indices;

  std::size_t size() const { return offsets.empty() ? 0 : offsets.size() - 1; }
  std::span<const std::uint32_t> of(std::size_t i) const {
    return {indices.data() + offsets[i], indices.data() + offsets[i + 1]};
  }
};

// All j != i with |x_i - x_j| <= radius, found with a uniform grid of cell
// size `radius`. Symmetric and deterministic.
NeighborLists neighbor_search(std::span<const Vec3> positions, double radius);

// Same contract, written into `out` to reuse its storage.
void neighbor_search(std::span<const Vec3> positions, double radius, NeighborLists& out);

struct IndexPair {
  std::uint32_t i;
  std::uint32_t j;

  friend bool operator==(const IndexPair&, const IndexPair&) = default;
};

// Reusable storage for neighbor_pairs.
struct PairGrid {
  std::vector<std::uint32_t> cell_of;
  std::vector<std::uint32_t> cell_start;
  std::vector<std::uint32_t> sorted;
  NeighborLists fallback;
};

// Every unordered pair with |x_i - x_j| <= radius, once, as (i < j). Pair
// order is deterministic but unspecified.
void neighbor_pairs(std::span<const Vec3> positions, double radius, std::vector<IndexPair>& out, PairGrid& grid);

}  // namespace softgym
