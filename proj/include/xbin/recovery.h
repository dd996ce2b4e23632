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

#ifndef XBIN_RECOVERY_H_
#define XBIN_RECOVERY_H_

#include <vector>

#include <Eigen/Dense>

#include "xbin/channels.h"
#include "xbin/codes.h"

namespace xbin {

/// Kraus operators of an effective channel on the code space, each a
/// 2^K x 2^K matrix in the codeword basis, plus the probability the
/// physical channel truncation left out.
struct LogicalChannel {
  int dimension = 0;
  std::vector<Eigen::MatrixXcd> kraus;
  double tail_probability = 0.0;
};

/// F_e = sum_B |Tr(B)|^2 / d^2 over the logical Kraus operators.
double entanglement_fidelity(const LogicalChannel& channel);

/// 1 - F_e plus the truncation tail, counted as a worst case.
double reported_infidelity(const LogicalChannel& channel);

/// Matrix <i|op|j> of a physical operator given by its action on codewords.
Eigen::MatrixXcd code_block(const LogicalBasis& basis,
                            const std::vector<PureState>& images);

/// Uncorrected AD channel restricted to the code space: blocks <i|A_a|j>
/// for wt(a) <= max_weight.
LogicalChannel bare_channel(const LogicalBasis& basis, DampingParam gamma, int max_weight);

/// Near-optimal recovery R_b = P A_b^dag M^{-1/2}, wt(b) <= w, with
/// M = sum_b A_b P A_b^dag.
///
/// M is handled through the Gram matrix G of the vectors v_(b,i) = A_b|i>:
/// for a damaged vector u, <i|R_b|u> = (G^{-1/2} V^dag u)_(b,i) with G^{-1/2}
/// taken on the support of G.
class TransposeRecovery {
 public:
  /// Throws std::runtime_error when the retained spectrum of G is too
  /// ill-conditioned to invert reliably.
  TransposeRecovery(const LogicalBasis& basis, DampingParam gamma);

  const std::vector<LossPattern>& patterns() const { return patterns_; }
  double condition_number() const { return condition_; }
  int rank() const { return rank_; }

  /// Coefficients <i|R_b|u> for every (b, i), flattened as b * 2^K + i.
  Eigen::VectorXcd recover(const PureState& damaged) const;

  /// Recovery composed with every AD branch wt(a) <= channel_max_weight.
  /// Each pair (a, b) contributes one logical Kraus operator.
  LogicalChannel compose(DampingParam gamma, int channel_max_weight) const;

  /// sum_(b,i) |<i|R_b|u>|^2, i.e. <u| sum_b R_b^dag R_b |u>.
  double recovered_norm_squared(const PureState& damaged) const;

 private:
  LogicalBasis basis_;
  std::vector<LossPattern> patterns_;
  std::vector<PureState> vectors_;  // v_(b,i), flattened b * 2^K + i
  Eigen::MatrixXcd g_inv_sqrt_;
  double condition_ = 1.0;
  int rank_ = 0;
};

/// Syndrome measurement followed by conditional re-excitation, one logical
/// Kraus operator per AD branch. Branches whose syndrome does not decode to
/// a correctable pattern are left uncorrected.
LogicalChannel naive_recovery_channel(const LogicalBasis& basis, DampingParam gamma,
                                      int channel_max_weight);

}  // namespace xbin

#endif  // XBIN_RECOVERY_H_
