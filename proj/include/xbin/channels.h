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

#ifndef XBIN_CHANNELS_H_
#define XBIN_CHANNELS_H_

#include <compare>
#include <optional>
#include <vector>

#include "xbin/fock.h"

namespace xbin {

/// Amplitude-damping probability, 0 <= gamma < 1.
class DampingParam {
 public:
  explicit DampingParam(double gamma);
  double value() const { return gamma_; }

 private:
  double gamma_;
};

/// Per-mode excitation-loss counts.
class LossPattern {
 public:
  explicit LossPattern(std::vector<int> counts);
  static LossPattern none(int num_modes);

  const std::vector<int>& counts() const { return counts_; }
  int num_modes() const { return static_cast<int>(counts_.size()); }
  int operator[](int mode) const { return counts_.at(mode); }
  int weight() const;

  auto operator<=>(const LossPattern&) const = default;

 private:
  std::vector<int> counts_;
};

std::string to_string(const LossPattern& pattern);

/// Collective-coherent evolution time (hbar = 1).
struct CCParams {
  double delta_t = 0.0;
};

/// Exact C(n, k) as a double. Integer arithmetic is exact for any n the
/// layouts can hold; only the final conversion rounds.
double binomial(int n, int k);

/// <k-ell| A_ell |k> = sqrt(C(k, ell) (1-gamma)^(k-ell) gamma^ell).
double kraus_element(int k, int ell, DampingParam gamma);

LinearMap single_mode_kraus(int ell, DampingParam gamma, int cutoff);

/// Tensor product of single-mode Kraus operators, one per mode.
LinearMap multi_mode_kraus(const LossPattern& pattern, DampingParam gamma,
                           const ModeLayout& layout);

/// Applies the multi-mode Kraus operator directly to a sparse state without
/// materializing the full operator.
PureState apply_loss(const LossPattern& pattern, DampingParam gamma,
                     const PureState& s);

/// Every pattern of total weight <= max_weight, lexicographic.
std::vector<LossPattern> enumerate_loss_patterns(int num_modes, int max_weight);

/// gamma = 1 - exp(-delta_t / t1).
DampingParam damping_from_lifetime(double delta_t, double t1);

/// Diagonal exp(-i dt sum_j n_j); the per-mode zero-point phase is dropped.
LinearMap cc_unitary(CCParams params, const ModeLayout& layout);
PureState apply_cc(CCParams params, const PureState& s);

/// Branches A_a U_cc |s> for every a with wt(a) <= max_weight, labelled by
/// the loss pattern, in lexicographic order. U_cc is the identity when
/// `cc` is empty.
BranchEnsemble apply_ad_channel(const PureState& s, DampingParam gamma,
                                int max_weight,
                                std::optional<CCParams> cc = std::nullopt);

}  // namespace xbin

#endif  // XBIN_CHANNELS_H_
