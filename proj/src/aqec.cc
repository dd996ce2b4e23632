// Copyright 2026 The xbin Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "xbin/aqec.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace xbin {

Complex KLReport::entry(int i, int j, int k, int l) const {
  auto it = entries.find({i, j, k, l});
  return it == entries.end() ? Complex{} : it->second;
}

KLReport kl_matrix(const LogicalBasis& basis, DampingParam gamma,
                   std::optional<int> max_weight) {
  const CodeSpec& spec = basis.spec();
  KLReport report{spec, gamma.value(), max_weight.value_or(spec.w), {}, 0, 0, 0, {}};
  report.patterns = enumerate_loss_patterns(spec.num_modes(), report.max_weight);

  const int labels = basis.size();
  const int np = static_cast<int>(report.patterns.size());
  // damaged[k][i] = A_k |i>
  std::vector<std::vector<PureState>> damaged(np);
  for (int k = 0; k < np; ++k) {
    for (int i = 0; i < labels; ++i) {
      damaged[k].push_back(apply_loss(report.patterns[k], gamma, basis.codeword(i)));
    }
  }

  for (int k = 0; k < np; ++k) {
    for (int l = 0; l < np; ++l) {
      for (int i = 0; i < labels; ++i) {
        for (int j = 0; j < labels; ++j) {
          const Complex v = inner(damaged[k][i], damaged[l][j]);
          if (std::abs(v) >= kPruneThreshold) report.entries[{i, j, k, l}] = v;
          if (i != j) {
            report.offdiag_max = std::max(report.offdiag_max, std::abs(v));
          } else if (k != l) {
            report.cross_max = std::max(report.cross_max, std::abs(v));
          }
        }
      }
    }
  }

  for (int k = 0; k < np; ++k) {
    const Complex ref = report.entry(0, 0, k, k);
    for (int i = 1; i < labels; ++i) {
      report.diag_deviation =
          std::max(report.diag_deviation, std::abs(report.entry(i, i, k, k) - ref));
    }
  }
  return report;
}

double diagonal_deviation(const LogicalBasis& basis, DampingParam gamma,
                          const LossPattern& pattern) {
  const double ref = apply_loss(pattern, gamma, basis.codeword(0)).norm_squared();
  double dev = 0.0;
  for (int i = 1; i < basis.size(); ++i) {
    const double v = apply_loss(pattern, gamma, basis.codeword(i)).norm_squared();
    dev = std::max(dev, std::abs(v - ref));
  }
  return dev;
}

double diagonal_deviation(const LogicalBasis& basis, DampingParam gamma) {
  double dev = 0.0;
  for (const LossPattern& k : enumerate_loss_patterns(basis.spec().num_modes(), basis.spec().w)) {
    dev = std::max(dev, diagonal_deviation(basis, gamma, k));
  }
  return dev;
}

ScalingFit fit_log_log(std::vector<double> grid, std::vector<double> residuals) {
  if (grid.size() != residuals.size()) {
    throw std::invalid_argument("fit_log_log: grid and residuals differ in length");
  }
  ScalingFit fit;
  fit.gamma_grid = std::move(grid);
  fit.residuals = std::move(residuals);

  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < fit.gamma_grid.size(); ++i) {
    if (fit.residuals[i] < kFitFloor) continue;
    xs.push_back(std::log(fit.gamma_grid[i]));
    ys.push_back(std::log(fit.residuals[i]));
  }
  fit.used_points = static_cast<int>(xs.size());
  if (xs.size() < 2) {
    fit.message = "fewer than two residuals above the fit floor";
    return fit;
  }
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0.0) {
    fit.message = "degenerate grid";
    return fit;
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.ok = true;
  return fit;
}

void check_gamma_grid(const std::vector<double>& grid) {
  if (grid.size() < 5) throw std::invalid_argument("gamma grid needs at least 5 points");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0 && grid[i] <= 0.05)) {
      throw std::invalid_argument("gamma grid values must lie in (0, 0.05]");
    }
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw std::invalid_argument("gamma grid must be strictly increasing");
    }
  }
}

ScalingFit fit_residual_scaling(const LogicalBasis& basis,
                                const std::vector<double>& gamma_grid) {
  check_gamma_grid(gamma_grid);
  std::vector<double> residuals;
  for (double g : gamma_grid) residuals.push_back(diagonal_deviation(basis, DampingParam(g)));
  return fit_log_log(gamma_grid, std::move(residuals));
}

std::vector<double> log_spaced_grid(double lo, double hi, int n) {
  if (n < 2 || !(lo > 0.0) || !(hi > lo)) {
    throw std::invalid_argument("log_spaced_grid: need n >= 2 and 0 < lo < hi");
  }
  std::vector<double> grid;
  const double a = std::log(lo), b = std::log(hi);
  for (int i = 0; i < n; ++i) grid.push_back(std::exp(a + (b - a) * i / (n - 1)));
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

double analytic_alpha(int occupation, int losses, DampingParam gamma) {
  if (losses > occupation) return 0.0;
  const double g = gamma.value();
  return binomial(occupation, losses) * std::pow(1.0 - g, occupation - losses) *
         std::pow(g, losses);
}

double analytic_diagonal(const PureState& codeword, const LossPattern& pattern,
                         DampingParam gamma) {
  double s = 0.0;
  for (const auto& [n, amp] : codeword.amplitudes()) {
    double prod = 1.0;
    for (int j = 0; j < pattern.num_modes(); ++j) prod *= analytic_alpha(n[j], pattern[j], gamma);
    s += std::norm(amp) * prod;
  }
  return s;
}

}  // namespace xbin
