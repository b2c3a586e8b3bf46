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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>

#include "softgym/error.hpp"
#include "softgym/neighbor_search.hpp"

namespace softgym {

namespace {

constexpr std::int64_t kCellBias = 1 << 20;

std::uint64_t cell_key(std::int64_t cx, std::int64_t cy, std::int64_t cz) {
  return (static_cast<std::uint64_t>(cx + kCellBias) << 42) |
         (static_cast<std::uint64_t>(cy + kCellBias) << 21) |
         static_cast<std::uint64_t>(cz + kCellBias);
}

std::int64_t cell_coord(double v, double inv_cell) {
  return static_cast<std::int64_t>(std::floor(v * inv_cell));
}

}  // namespace

void neighbor_search(std::span<const Vec3> positions, double radius, NeighborLists& out) {
  if (!(radius > 0.0)) throw Error("neighbor search radius must be > 0");
  const std::size_t n = positions.size();
  out.offsets.assign(n + 1, 0);
  out.indices.clear();
  if (n == 0) return;

  const double inv_cell = 1.0 / radius;
  std::vector<std::pair<std::uint64_t, std::uint32_t>> cells(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3& p = positions[i];
    cells[i] = {cell_key(cell_coord(p.x, inv_cell), cell_coord(p.y, inv_cell), cell_coord(p.z, inv_cell)),
                static_cast<std::uint32_t>(i)};
  }
  std::sort(cells.begin(), cells.end());

  const double r2 = radius * radius;
  std::vector<std::uint32_t> found;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3& p = positions[i];
    const std::int64_t cx = cell_coord(p.x, inv_cell);
    const std::int64_t cy = cell_coord(p.y, inv_cell);
    const std::int64_t cz = cell_coord(p.z, inv_cell);
    found.clear();
    for (std::int64_t dx = -1; dx <= 1; ++dx) {
      for (std::int64_t dy = -1; dy <= 1; ++dy) {
        // The three z-cells of a column have consecutive keys.
        const std::uint64_t lo = cell_key(cx + dx, cy + dy, cz - 1);
        const std::uint64_t hi = cell_key(cx + dx, cy + dy, cz + 1);
        auto it = std::lower_bound(cells.begin(), cells.end(), std::make_pair(lo, std::uint32_t{0}));
        for (; it != cells.end() && it->first <= hi; ++it) {
          const std::uint32_t j = it->second;
          if (j == i) continue;
          if (norm2(positions[j] - p) <= r2) found.push_back(j);
        }
      }
    }
    std::sort(found.begin(), found.end());
    out.indices.insert(out.indices.end(), found.begin(), found.end());
    out.offsets[i + 1] = static_cast<std::uint32_t>(out.indices.size());
  }
}

NeighborLists neighbor_search(std::span<const Vec3> positions, double radius) {
  NeighborLists out;
  neighbor_search(positions, radius, out);
  return out;
}

void neighbor_pairs(std::span<const Vec3> positions, double radius, std::vector<IndexPair>& out, PairGrid& grid) {
  if (!(radius > 0.0)) throw Error("neighbor search radius must be > 0");
  out.clear();
  const std::size_t n = positions.size();
  if (n < 2) return;

  Vec3 lo = positions[0];
  Vec3 hi = positions[0];
  for (const Vec3& p : positions) {
    for (int k = 0; k < 3; ++k) {
      lo[k] = std::min(lo[k], p[k]);
      hi[k] = std::max(hi[k], p[k]);
    }
  }
  const double inv_cell = 1.0 / radius;
  std::int64_t dims[3];
  std::int64_t total = 1;
  for (int k = 0; k < 3; ++k) {
    dims[k] = static_cast<std::int64_t>(std::floor((hi[k] - lo[k]) * inv_cell)) + 1;
    total *= dims[k];
    if (total > (std::int64_t{1} << 22)) break;
  }
  if (total > (std::int64_t{1} << 22) || total > static_cast<std::int64_t>(64 * n + 4096)) {
    // Sparse cloud: fall back to the sorted-key search.
    neighbor_search(positions, radius, grid.fallback);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::uint32_t j : grid.fallback.of(i)) {
        if (j > i) out.push_back({static_cast<std::uint32_t>(i), j});
      }
    }
    return;
  }

  // Counting sort of particles by cell (stable, so ascending within a cell).
  const auto cells = static_cast<std::size_t>(total);
  grid.cell_of.resize(n);
  grid.cell_start.assign(cells + 1, 0);
  std::int64_t coord[3];
  for (std::size_t i = 0; i < n; ++i) {
    for (int k = 0; k < 3; ++k) {
      coord[k] = std::min(dims[k] - 1, static_cast<std::int64_t>(std::floor((positions[i][k] - lo[k]) * inv_cell)));
    }
    const auto c = static_cast<std::uint32_t>((coord[0] * dims[1] + coord[1]) * dims[2] + coord[2]);
    grid.cell_of[i] = c;
    ++grid.cell_start[c + 1];
  }
  for (std::size_t c = 0; c < cells; ++c) grid.cell_start[c + 1] += grid.cell_start[c];
  grid.sorted.resize(n);
  {
    std::vector<std::uint32_t>& fill = grid.fallback.offsets;  // borrowed as a cursor array
    fill.assign(grid.cell_start.begin(), grid.cell_start.end() - 1);
    for (std::size_t i = 0; i < n; ++i) grid.sorted[fill[grid.cell_of[i]]++] = static_cast<std::uint32_t>(i);
  }

  const double r2 = radius * radius;
  const auto emit = [&](std::uint32_t a, std::uint32_t b) {
    if (norm2(positions[a] - positions[b]) <= r2) out.push_back(a < b ? IndexPair{a, b} : IndexPair{b, a});
  };
  // Half stencil: the cell itself plus the 13 neighbours that come after it.
  static constexpr int kForward[13][3] = {{0, 0, 1},  {0, 1, -1}, {0, 1, 0},  {0, 1, 1},  {1, -1, -1},
                                          {1, -1, 0}, {1, -1, 1}, {1, 0, -1}, {1, 0, 0},  {1, 0, 1},
                                          {1, 1, -1}, {1, 1, 0},  {1, 1, 1}};
  for (std::int64_t x = 0; x < dims[0]; ++x) {
    for (std::int64_t y = 0; y < dims[1]; ++y) {
      for (std::int64_t z = 0; z < dims[2]; ++z) {
        const std::size_t c = static_cast<std::size_t>((x * dims[1] + y) * dims[2] + z);
        const std::uint32_t b0 = grid.cell_start[c];
        const std::uint32_t b1 = grid.cell_start[c + 1];
        if (b0 == b1) continue;
        for (std::uint32_t u = b0; u < b1; ++u) {
          for (std::uint32_t v = u + 1; v < b1; ++v) emit(grid.sorted[u], grid.sorted[v]);
        }
        for (const auto& d : kForward) {
          const std::int64_t nx = x + d[0];
          const std::int64_t ny = y + d[1];
          const std::int64_t nz = z + d[2];
          if (nx >= dims[0] || ny < 0 || ny >= dims[1] || nz < 0 || nz >= dims[2]) continue;
          const std::size_t nc = static_cast<std::size_t>((nx * dims[1] + ny) * dims[2] + nz);
          const std::uint32_t e0 = grid.cell_start[nc];
          const std::uint32_t e1 = grid.cell_start[nc + 1];
          for (std::uint32_t u = b0; u < b1; ++u) {
            for (std::uint32_t v = e0; v < e1; ++v) emit(grid.sorted[u], grid.sorted[v]);
          }
        }
      }
    }
  }
}

}  // namespace softgym
