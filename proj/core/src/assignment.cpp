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

#include "softgym/assignment.hpp"

#include <algorithm>
#include <limits>

#include "softgym/error.hpp"

namespace softgym {

// Shortest augmenting path formulation with row/column potentials; 1-based
// internal indices with column 0 as the virtual source.
std::vector<std::size_t> solve_assignment(const CostMatrix& cost) {
  const std::size_t n = cost.n;
  if (cost.values.size() != n * n) throw Error("cost matrix must be square");
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0);
  std::vector<double> v(n + 1, 0.0);
  std::vector<std::size_t> match(n + 1, 0);  // match[col] = row
  std::vector<std::size_t> way(n + 1, 0);
  std::vector<double> minv(n + 1);
  std::vector<char> used(n + 1);
  for (std::size_t row = 1; row <= n; ++row) {
    match[0] = row;
    std::size_t col0 = 0;
    std::fill(minv.begin(), minv.end(), kInf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[col0] = 1;
      const std::size_t row0 = match[col0];
      double delta = kInf;
      std::size_t col1 = 0;
      for (std::size_t col = 1; col <= n; ++col) {
        if (used[col]) continue;
        const double reduced = cost(row0 - 1, col - 1) - u[row0] - v[col];
        if (reduced < minv[col]) {
          minv[col] = reduced;
          way[col] = col0;
        }
        if (minv[col] < delta) {
          delta = minv[col];
          col1 = col;
        }
      }
      for (std::size_t col = 0; col <= n; ++col) {
        if (used[col]) {
          u[match[col]] += delta;
          v[col] -= delta;
        } else {
          minv[col] -= delta;
        }
      }
      col0 = col1;
    } while (match[col0] != 0);
    do {
      const std::size_t col1 = way[col0];
      match[col0] = match[col1];
      col0 = col1;
    } while (col0 != 0);
  }
  std::vector<std::size_t> col_of_row(n);
  for (std::size_t col = 1; col <= n; ++col) col_of_row[match[col] - 1] = col - 1;
  return col_of_row;
}

double assignment_cost(const CostMatrix& cost, std::span<const std::size_t> col_of_row) {
  double total = 0.0;
  for (std::size_t row = 0; row < col_of_row.size(); ++row) total += cost(row, col_of_row[row]);
  return total;
}

CostMatrix distance_matrix(std::span<const Vec3> a, std::span<const Vec3> b) {
  if (a.size() != b.size()) throw Error("point sets must have equal sizes");
  CostMatrix m{a.size(), std::vector<double>(a.size() * a.size())};
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) m.values[i * m.n + j] = distance(a[i], b[j]);
  }
  return m;
}

}  // namespace softgym
