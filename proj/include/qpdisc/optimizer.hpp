// Copyright 2026 The qpdisc developers
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
#include <cstdint>
#include <functional>
#include <vector>

#include "qpdisc/matkernel.hpp"
#include "qpdisc/random.hpp"

namespace qpdisc {

/// Budget for the derivative-free searches. Identical configs (including
/// the seed) give bit-identical results.
struct OptimizerConfig {
  int restarts = 20;
  int max_iterations = 2000;
  std::uint64_t seed = 12345;
  double convergence_tol = 1e-10;
};

struct MinimizeResult {
  Eigen::VectorXd x;
  double value = 0.0;
};

/// Plain Nelder-Mead on R^n. Stops when the simplex function spread falls
/// below ftol (relative to the best value) or the evaluation budget runs out.
inline MinimizeResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                                  const Eigen::VectorXd& x0, double step, int max_iter,
                                  double ftol) {
  const int n = static_cast<int>(x0.size());
  struct Vertex {
    Eigen::VectorXd x;
    double fx;
  };
  std::vector<Vertex> simplex;
  simplex.reserve(n + 1);
  simplex.push_back({x0, f(x0)});
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd xi = x0;
    xi(i) += step;
    simplex.push_back({xi, f(xi)});
  }

  const double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;
  auto by_value = [](const Vertex& a, const Vertex& b) { return a.fx < b.fx; };

  for (int iter = 0; iter < max_iter; ++iter) {
    std::sort(simplex.begin(), simplex.end(), by_value);
    const double spread = simplex.back().fx - simplex.front().fx;
    if (spread <= ftol * (std::abs(simplex.front().fx) + ftol)) break;

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i) centroid += simplex[i].x;
    centroid /= n;

    const Vertex& worst = simplex.back();
    Eigen::VectorXd xr = centroid + alpha * (centroid - worst.x);
    const double fr = f(xr);

    if (fr < simplex.front().fx) {
      Eigen::VectorXd xe = centroid + gamma * (xr - centroid);
      const double fe = f(xe);
      simplex.back() = fe < fr ? Vertex{xe, fe} : Vertex{xr, fr};
    } else if (fr < simplex[n - 1].fx) {
      simplex.back() = {xr, fr};
    } else {
      const bool outside = fr < worst.fx;
      Eigen::VectorXd xc =
          outside ? (centroid + rho * (xr - centroid)).eval() : (centroid + rho * (worst.x - centroid)).eval();
      const double fc = f(xc);
      if (fc < (outside ? fr : worst.fx)) {
        simplex.back() = {xc, fc};
      } else {
        for (int i = 1; i <= n; ++i) {
          simplex[i].x = simplex[0].x + sigma * (simplex[i].x - simplex[0].x);
          simplex[i].fx = f(simplex[i].x);
        }
      }
    }
  }
  std::sort(simplex.begin(), simplex.end(), by_value);
  return {simplex.front().x, simplex.front().fx};
}

/// Multi-restart Nelder-Mead. Restart r draws its start from the substream
/// (seed, r); restart 0 uses the caller's canonical start. The best point is
/// polished with two small-step descents.
inline MinimizeResult multistart_minimize(const std::function<double(const Eigen::VectorXd&)>& f,
                                          const Eigen::VectorXd& canonical_start,
                                          const OptimizerConfig& cfg) {
  const int n = static_cast<int>(canonical_start.size());
  MinimizeResult best{canonical_start, f(canonical_start)};
  for (int r = 0; r < std::max(1, cfg.restarts); ++r) {
    Eigen::VectorXd x0(n);
    if (r == 0) {
      x0 = canonical_start;
    } else {
      Rng rng(substream_seed(cfg.seed, static_cast<std::uint64_t>(r)));
      for (int i = 0; i < n; ++i) x0(i) = gaussian(rng);
    }
    const MinimizeResult res =
        nelder_mead(f, x0, 0.5, cfg.max_iterations, cfg.convergence_tol);
    if (res.value < best.value) best = res;
  }
  for (const double step : {1e-3, 1e-6}) {
    const MinimizeResult res =
        nelder_mead(f, best.x, step, cfg.max_iterations, cfg.convergence_tol);
    if (res.value < best.value) best = res;
  }
  return best;
}

}  // namespace qpdisc
