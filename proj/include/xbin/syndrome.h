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

#ifndef XBIN_SYNDROME_H_
#define XBIN_SYNDROME_H_

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "xbin/channels.h"
#include "xbin/codes.h"

namespace xbin {

/// Syndrome observables of the extended binomial code.
///
/// Outcome order: w-1 chain observables (n_i - n_{i+1})^2 mod (w+1), the
/// bridge observable (n_{w-1} - sum of data modes)^2 mod (w+1), then one
/// readout n_j mod (w+1) per mode.
struct SyndromeObservables {
  CodeSpec spec;
  std::vector<IntegerObservable> chain;
  IntegerObservable bridge;
  std::vector<IntegerObservable> mode_readouts;

  /// Throws std::invalid_argument for families other than ext-bin.
  static SyndromeObservables make(const CodeSpec& spec);

  std::vector<IntegerObservable> all() const;
  int size() const { return static_cast<int>(chain.size() + 1 + mode_readouts.size()); }
};

/// Outcomes predicted for a state A_a|i>: chain_i = (a_{i+1}-a_i)^2,
/// bridge = (sum_data a - a_{w-1})^2, readout_j = -a_j, all mod (w+1).
std::vector<int> expected_outcomes(const CodeSpec& spec, const LossPattern& pattern);

struct SyndromeRecord {
  std::vector<int> outcomes;
  /// Product of the sequential outcome probabilities.
  double probability = 1.0;
  /// Every measurement in the sequence had a single outcome.
  bool deterministic = true;
  std::optional<LossPattern> decoded;
  bool ambiguous = false;
  PureState post_state;
};

/// Every outcome sequence with its probability and post-measurement state,
/// obtained by measuring the observables one after another.
std::vector<SyndromeRecord> syndrome_branches(const PureState& s, const CodeSpec& spec);

/// Measures the full syndrome. A non-deterministic sequence is sampled with
/// `rng` when given and otherwise raises std::runtime_error.
SyndromeRecord extract_syndrome(const PureState& s, const CodeSpec& spec,
                                std::mt19937_64* rng = nullptr);

enum class DecodeStatus {
  kOk,
  /// Consistent syndrome but the implied pattern has weight > w.
  kAmbiguous,
  /// Chain or bridge outcomes disagree with the mode readouts.
  kInconsistent,
};

struct DecodeResult {
  DecodeStatus status = DecodeStatus::kOk;
  std::optional<LossPattern> pattern;
};

/// Inverts the mode readouts, a_j = (w+1 - r_j) mod (w+1), and checks the
/// chain and bridge outcomes against them.
DecodeResult decode_lookup(const std::vector<int>& outcomes, const CodeSpec& spec);

/// Fills `decoded` and `ambiguous` on a record from extract_syndrome.
void decode_record(SyndromeRecord& record, const CodeSpec& spec);

/// Shifts each mode up by the decoded loss, |n_j> -> |n_j + a_j>, and
/// renormalizes. Throws std::out_of_range if a shift leaves the layout.
PureState recover_naive(const SyndromeRecord& record, const CodeSpec& spec);

/// Outcome of running the full syndrome cycle on A_a|i> for one pattern and
/// one codeword label.
struct SyndromeCheck {
  LossPattern pattern;
  int label;
  std::vector<int> outcomes;
  std::optional<LossPattern> decoded;
  bool deterministic;
  double probability;
  /// Outcomes equal expected_outcomes(pattern) and the decoder returns it.
  bool match;
};

/// Every pattern of weight <= w applied to every codeword. The damping
/// strength only scales amplitudes; supports and hence syndromes do not
/// depend on it.
std::vector<SyndromeCheck> exhaustive_syndrome_check(const CodeSpec& spec,
                                                     double gamma = 0.1);

/// Unnormalized shift |n> -> |n + a>; components pushed past the cutoff
/// raise std::out_of_range.
PureState shift_up(const PureState& s, const LossPattern& pattern);

}  // namespace xbin

#endif  // XBIN_SYNDROME_H_
