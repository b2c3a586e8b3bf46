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

#include <cstddef>
#include <span>
#include <vector>

#include "softgym/vec3.hpp"

namespace softgym {

// Square cost matrix in row-major order.
struct CostMatrix {
  std::size_t n = 0;
  std::vector<double> values;

  double operator()(std::size_t row, std::size_t col) const { return values[row * n + col]; }
};

// Optimal assignment (Hungarian method, O(n^3)). Returns col[row].
std::vector<std::size_t> solve_assignment(const CostMatrix& cost);

// Sum of cost(row, col[row]) accumulated in row order.
double assignment_cost(const CostMatrix& cost, std::span<const std::size_t> col_of_row);

// Pairwise Euclidean distances between two equal-sized point sets.
CostMatrix distance_matrix(std::span<const Vec3> a, std::span<const Vec3> b);

}  // namespace softgym
