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

#include "xbin/recovery.h"

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "xbin/syndrome.h"

namespace xbin {

namespace {

// Eigenvalues of G below this fraction of the largest are outside the support.
constexpr double kSupportCutoff = 1e-14;
constexpr double kMaxCondition = 1e13;

// Total probability of a channel acting on the maximally mixed code state.
double tail_for(const LogicalBasis& basis, DampingParam gamma, int max_weight) {
  double kept = 0.0;
  for (const PureState& c : basis.codewords()) {
    kept += apply_ad_channel(c, gamma, max_weight).total_probability();
  }
  return std::max(0.0, 1.0 - kept / basis.size());
}

}  // namespace

double entanglement_fidelity(const LogicalChannel& channel) {
  const double d = channel.dimension;
  double f = 0.0;
  for (const auto& k : channel.kraus) f += std::norm(k.trace());
  return f / (d * d);
}

double reported_infidelity(const LogicalChannel& channel) {
  return 1.0 - entanglement_fidelity(channel) + channel.tail_probability;
}

Eigen::MatrixXcd code_block(const LogicalBasis& basis, const std::vector<PureState>& images) {
  const int d = basis.size();
  Eigen::MatrixXcd m(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) m(i, j) = inner(basis.codeword(i), images.at(j));
  }
  return m;
}

LogicalChannel bare_channel(const LogicalBasis& basis, DampingParam gamma, int max_weight) {
  LogicalChannel ch{basis.size(), {}, tail_for(basis, gamma, max_weight)};
  for (const LossPattern& a : enumerate_loss_patterns(basis.spec().num_modes(), max_weight)) {
    std::vector<PureState> images;
    for (const PureState& c : basis.codewords()) images.push_back(apply_loss(a, gamma, c));
    ch.kraus.push_back(code_block(basis, images));
  }
  return ch;
}

// ---------------------------------------------------------------------------
// TransposeRecovery

TransposeRecovery::TransposeRecovery(const LogicalBasis& basis, DampingParam gamma)
    : basis_(basis),
      patterns_(enumerate_loss_patterns(basis.spec().num_modes(), basis.spec().w)) {
  for (const LossPattern& b : patterns_) {
    for (const PureState& c : basis.codewords()) vectors_.push_back(apply_loss(b, gamma, c));
  }
  const int n = static_cast<int>(vectors_.size());
  Eigen::MatrixXcd g(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = r; c < n; ++c) {
      g(r, c) = inner(vectors_[r], vectors_[c]);
      g(c, r) = std::conj(g(r, c));
    }
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(g);
  if (eig.info() != Eigen::Success) {
    throw std::runtime_error("transpose recovery: eigendecomposition failed");
  }
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  const double top = lambda.maxCoeff();
  if (!(top > 0.0)) throw std::runtime_error("transpose recovery: M vanishes");

  Eigen::VectorXd inv_sqrt = Eigen::VectorXd::Zero(n);
  double smallest = top;
  for (int i = 0; i < n; ++i) {
    if (lambda(i) > kSupportCutoff * top) {
      inv_sqrt(i) = 1.0 / std::sqrt(lambda(i));
      smallest = std::min(smallest, lambda(i));
      ++rank_;
    }
  }
  condition_ = top / smallest;
  if (condition_ > kMaxCondition) {
    throw std::runtime_error("transpose recovery: M is numerically singular on its support "
                             "(condition number " + std::to_string(condition_) + ")");
  }
  g_inv_sqrt_ = eig.eigenvectors() * inv_sqrt.asDiagonal() * eig.eigenvectors().adjoint();
}

Eigen::VectorXcd TransposeRecovery::recover(const PureState& damaged) const {
  const int n = static_cast<int>(vectors_.size());
  Eigen::VectorXcd overlaps(n);
  for (int r = 0; r < n; ++r) overlaps(r) = inner(vectors_[r], damaged);
  return g_inv_sqrt_ * overlaps;
}

double TransposeRecovery::recovered_norm_squared(const PureState& damaged) const {
  return recover(damaged).squaredNorm();
}

LogicalChannel TransposeRecovery::compose(DampingParam gamma, int channel_max_weight) const {
  const LogicalBasis& basis = basis_;
  const int d = basis.size();
  const int nb = static_cast<int>(patterns_.size());
  LogicalChannel ch{d, {}, tail_for(basis, gamma, channel_max_weight)};
  for (const LossPattern& a :
       enumerate_loss_patterns(basis.spec().num_modes(), channel_max_weight)) {
    // columns[j] = coefficients of R_b A_a |j> over (b, i)
    std::vector<Eigen::VectorXcd> columns;
    for (const PureState& c : basis.codewords()) columns.push_back(recover(apply_loss(a, gamma, c)));
    for (int b = 0; b < nb; ++b) {
      Eigen::MatrixXcd k(d, d);
      for (int j = 0; j < d; ++j) k.col(j) = columns[j].segment(b * d, d);
      if (k.norm() > 0.0) ch.kraus.push_back(std::move(k));
    }
  }
  return ch;
}

// ---------------------------------------------------------------------------
// Naive recovery

LogicalChannel naive_recovery_channel(const LogicalBasis& basis, DampingParam gamma,
                                      int channel_max_weight) {
  const CodeSpec& spec = basis.spec();
  LogicalChannel ch{basis.size(), {}, tail_for(basis, gamma, channel_max_weight)};
  for (const LossPattern& a : enumerate_loss_patterns(spec.num_modes(), channel_max_weight)) {
    std::vector<PureState> damaged;
    PureState probe(spec.layout());
    for (const PureState& c : basis.codewords()) {
      damaged.push_back(apply_loss(a, gamma, c));
      probe = probe + damaged.back();
    }
    if (probe.empty()) continue;

    // Every component of A_a|i> shares the same residues, so the syndrome of
    // this branch does not depend on the encoded state.
    SyndromeRecord record = extract_syndrome(probe, spec);
    decode_record(record, spec);

    std::vector<PureState> images;
    for (const PureState& s : damaged) {
      images.push_back(record.decoded ? shift_up(s, *record.decoded) : s);
    }
    ch.kraus.push_back(code_block(basis, images));
  }
  return ch;
}

}  // namespace xbin
