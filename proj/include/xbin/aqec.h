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

#ifndef XBIN_AQEC_H_
#define XBIN_AQEC_H_

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "xbin/channels.h"
#include "xbin/codes.h"

namespace xbin {

/// Deviations below this are treated as exact zeros in log-log fits.
inline constexpr double kFitFloor = 1e-14;

/// Knill-Laflamme matrix <i| A_k^dag A_l |j> over a set of loss patterns.
struct KLReport {
  CodeSpec spec;
  double gamma = 0.0;
  int max_weight = 0;
  std::vector<LossPattern> patterns;

  /// max |<i|A_k^dag A_l|j>| over i != j.
  double offdiag_max = 0.0;
  /// max over k != l, i == j.
  double cross_max = 0.0;
  /// max_k max_i |<i|A_k^dag A_k|i> - <0|A_k^dag A_k|0>|.
  double diag_deviation = 0.0;

  /// Nonzero entries keyed by (i, j, k, l); k and l index `patterns`.
  std::map<std::tuple<int, int, int, int>, Complex> entries;

  Complex entry(int i, int j, int k, int l) const;
};

/// `max_weight` defaults to w.
KLReport kl_matrix(const LogicalBasis& basis, DampingParam gamma,
                   std::optional<int> max_weight = std::nullopt);

/// Largest diagonal deviation over correctable patterns (weight <= w).
double diagonal_deviation(const LogicalBasis& basis, DampingParam gamma);

/// Diagonal deviation for one pattern, maximized over labels.
double diagonal_deviation(const LogicalBasis& basis, DampingParam gamma,
                          const LossPattern& pattern);

struct ScalingFit {
  std::vector<double> gamma_grid;
  std::vector<double> residuals;
  double slope = 0.0;
  double intercept = 0.0;
  int used_points = 0;
  bool ok = false;
  std::string message;
};

/// Least-squares fit of log(residual) against log(gamma); points with
/// residual below kFitFloor are skipped. Fewer than two usable points leave
/// `ok` false.
ScalingFit fit_log_log(std::vector<double> grid, std::vector<double> residuals);

/// Throws std::invalid_argument unless the grid is strictly increasing,
/// inside (0, 0.05], and has at least five points.
void check_gamma_grid(const std::vector<double>& grid);

ScalingFit fit_residual_scaling(const LogicalBasis& basis,
                                const std::vector<double>& gamma_grid);

/// n log-spaced points from lo to hi inclusive.
std::vector<double> log_spaced_grid(double lo, double hi, int n);

/// C(n, k) (1-gamma)^(n-k) gamma^k; zero when k > n.
double analytic_alpha(int occupation, int losses, DampingParam gamma);

/// Product of analytic_alpha over modes, averaged over the codeword
/// components: the closed form of <i|A_k^dag A_k|i>.
double analytic_diagonal(const PureState& codeword, const LossPattern& pattern,
                         DampingParam gamma);

}  // namespace xbin

#endif  // XBIN_AQEC_H_
