// Copyright 2026 The sprint-swap Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

namespace sprint {

struct SimplexOptions {
  std::size_t max_evaluations = 400;
  double x_tol = 1e-7;   // simplex diameter, in the caller's coordinates
  double f_tol = 1e-12;  // spread of objective values across vertices
};

struct SimplexResult {
  std::vector<double> x;
  double value = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
};

/// Box-constrained Nelder-Mead minimisation. Trial points are clamped into
/// [lower, upper]; the initial simplex is x0 plus step along each axis,
/// reflected inward when it would leave the box.
template <class F>
SimplexResult nelder_mead(F&& f, std::vector<double> x0, const std::vector<double>& step,
                          const std::vector<double>& lower, const std::vector<double>& upper,
                          const SimplexOptions& opt = {}) {
  const std::size_t n = x0.size();
  SimplexResult out;
  auto clamp = [&](std::vector<double>& x) {
    for (std::size_t i = 0; i < n; ++i) x[i] = std::clamp(x[i], lower[i], upper[i]);
  };
  auto eval = [&](const std::vector<double>& x) {
    ++out.evaluations;
    const double v = f(x);
    return std::isnan(v) ? HUGE_VAL : v;
  };

  clamp(x0);
  if (n == 0) {
    out.x = x0;
    out.value = eval(x0);
    out.converged = true;
    return out;
  }

  std::vector<std::vector<double>> pts(n + 1, x0);
  for (std::size_t i = 0; i < n; ++i) {
    double s = step[i];
    if (x0[i] + s > upper[i]) s = -s;
    pts[i + 1][i] = x0[i] + s;
    clamp(pts[i + 1]);
  }
  std::vector<double> val(n + 1);
  for (std::size_t i = 0; i <= n; ++i) val[i] = eval(pts[i]);

  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n), xr(n), xe(n), xc(n);
  auto combine = [&](std::vector<double>& dst, double t, const std::vector<double>& away) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = centroid[i] + t * (away[i] - centroid[i]);
    clamp(dst);
  };

  while (true) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return val[a] < val[b]; });
    const std::size_t best = order.front(), worst = order.back(), second = order[n - 1];

    double diameter = 0.0;
    for (std::size_t k = 0; k <= n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        diameter = std::max(diameter, std::abs(pts[k][i] - pts[best][i]));
    if (diameter <= opt.x_tol && val[worst] - val[best] <= opt.f_tol) {
      out.converged = true;
      break;
    }
    if (out.evaluations >= opt.max_evaluations) break;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t k = 0; k <= n; ++k) {
      if (k == worst) continue;
      for (std::size_t i = 0; i < n; ++i) centroid[i] += pts[k][i] / static_cast<double>(n);
    }

    combine(xr, -1.0, pts[worst]);
    const double fr = eval(xr);
    if (fr < val[best]) {
      combine(xe, -2.0, pts[worst]);
      const double fe = eval(xe);
      if (fe < fr) {
        pts[worst] = xe, val[worst] = fe;
      } else {
        pts[worst] = xr, val[worst] = fr;
      }
      continue;
    }
    if (fr < val[second]) {
      pts[worst] = xr, val[worst] = fr;
      continue;
    }
    const bool outside = fr < val[worst];
    combine(xc, outside ? -0.5 : 0.5, pts[worst]);
    const double fc = eval(xc);
    if (fc < (outside ? fr : val[worst])) {
      pts[worst] = xc, val[worst] = fc;
      continue;
    }
    for (std::size_t k = 0; k <= n; ++k) {
      if (k == best) continue;
      for (std::size_t i = 0; i < n; ++i) pts[k][i] = pts[best][i] + 0.5 * (pts[k][i] - pts[best][i]);
      val[k] = eval(pts[k]);
    }
  }

  const auto best = static_cast<std::size_t>(std::min_element(val.begin(), val.end()) - val.begin());
  out.x = pts[best];
  out.value = val[best];
  return out;
}

}  // namespace sprint
