// Copyright 2026 The triphot Authors
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

#include <algorithm>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

namespace triphot {

template <typename Scalar = double>
struct SimplexResult {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> x;
  Scalar value = 0;
  long evaluations = 0;
  bool converged = false;
};

/// Derivative-free minimization with the Nelder-Mead simplex (standard
/// coefficients 1, 2, 1/2, 1/2). Stops once the largest distance from the
/// best vertex to any other vertex drops below `tolerance`, or after
/// `max_evaluations` calls.
template <typename Scalar, typename F>
SimplexResult<Scalar> nelder_mead(
    F&& f, const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& start,
    Scalar initial_step, Scalar tolerance, long max_evaluations = 20000) {
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  const Eigen::Index dim = start.size();
  const auto n_vertices = static_cast<std::size_t>(dim + 1);

  std::vector<Vec> vertex(n_vertices, start);
  std::vector<Scalar> value(n_vertices);
  for (Eigen::Index k = 0; k < dim; ++k) {
    vertex[static_cast<std::size_t>(k + 1)](k) += initial_step;
  }

  SimplexResult<Scalar> result;
  auto eval = [&](const Vec& x) {
    ++result.evaluations;
    return static_cast<Scalar>(f(x));
  };
  for (std::size_t v = 0; v < n_vertices; ++v) value[v] = eval(vertex[v]);

  std::vector<std::size_t> order(n_vertices);
  auto sort_vertices = [&] {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return value[a] < value[b];
    });
  };
  auto diameter = [&] {
    Scalar d = 0;
    for (std::size_t v = 1; v < n_vertices; ++v) {
      d = std::max(d, (vertex[order[v]] - vertex[order[0]]).norm());
    }
    return d;
  };

  sort_vertices();
  while (result.evaluations < max_evaluations) {
    if (diameter() < tolerance) {
      result.converged = true;
      break;
    }
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second_worst = order[n_vertices - 2];

    Vec centroid = Vec::Zero(dim);
    for (std::size_t v = 0; v + 1 < n_vertices; ++v) centroid += vertex[order[v]];
    centroid /= static_cast<Scalar>(dim);

    const Vec reflected = centroid + (centroid - vertex[worst]);
    const Scalar f_reflected = eval(reflected);
    if (f_reflected < value[best]) {
      const Vec expanded = centroid + Scalar(2) * (centroid - vertex[worst]);
      const Scalar f_expanded = eval(expanded);
      if (f_expanded < f_reflected) {
        vertex[worst] = expanded;
        value[worst] = f_expanded;
      } else {
        vertex[worst] = reflected;
        value[worst] = f_reflected;
      }
    } else if (f_reflected < value[second_worst]) {
      vertex[worst] = reflected;
      value[worst] = f_reflected;
    } else {
      const bool outside = f_reflected < value[worst];
      const Vec contracted =
          outside ? Vec(centroid + Scalar(0.5) * (reflected - centroid))
                  : Vec(centroid + Scalar(0.5) * (vertex[worst] - centroid));
      const Scalar f_contracted = eval(contracted);
      if (f_contracted < (outside ? f_reflected : value[worst])) {
        vertex[worst] = contracted;
        value[worst] = f_contracted;
      } else {
        for (std::size_t v = 0; v < n_vertices; ++v) {
          if (v == best) continue;
          vertex[v] = vertex[best] + Scalar(0.5) * (vertex[v] - vertex[best]);
          value[v] = eval(vertex[v]);
        }
      }
    }
    sort_vertices();
  }

  result.x = vertex[order.front()];
  result.value = value[order.front()];
  return result;
}

}  // namespace triphot
