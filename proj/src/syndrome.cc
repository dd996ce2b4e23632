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

#include "xbin/syndrome.h"

#include <cmath>
#include <stdexcept>

namespace xbin {

namespace {

int positive_mod(long long v, int m) {
  long long r = v % m;
  return static_cast<int>(r < 0 ? r + m : r);
}

}  // namespace

SyndromeObservables SyndromeObservables::make(const CodeSpec& spec) {
  if (spec.family != CodeFamily::kExtendedBinomial) {
    throw std::invalid_argument("syndrome observables are defined for ext-bin codes only");
  }
  const int w = spec.w, n = spec.num_modes(), m = w + 1;
  SyndromeObservables obs{spec, {}, {}, {}};
  for (int i = 0; i + 1 < w; ++i) {
    std::vector<int> c(n, 0);
    c[i] = 1;
    c[i + 1] = -1;
    obs.chain.push_back({c, m, true});
  }
  std::vector<int> bridge(n, 0);
  bridge[w - 1] = 1;
  for (int j = w; j < n; ++j) bridge[j] = -1;
  obs.bridge = {bridge, m, true};
  for (int j = 0; j < n; ++j) {
    std::vector<int> c(n, 0);
    c[j] = 1;
    obs.mode_readouts.push_back({c, m, false});
  }
  return obs;
}

std::vector<IntegerObservable> SyndromeObservables::all() const {
  std::vector<IntegerObservable> out = chain;
  out.push_back(bridge);
  out.insert(out.end(), mode_readouts.begin(), mode_readouts.end());
  return out;
}

std::vector<int> expected_outcomes(const CodeSpec& spec, const LossPattern& pattern) {
  const int w = spec.w, m = w + 1, n = spec.num_modes();
  if (pattern.num_modes() != n) {
    throw std::invalid_argument("expected_outcomes: pattern length must equal mode count");
  }
  std::vector<int> out;
  for (int i = 0; i + 1 < w; ++i) {
    const long long d = pattern[i + 1] - pattern[i];
    out.push_back(positive_mod(d * d, m));
  }
  long long data = 0;
  for (int j = w; j < n; ++j) data += pattern[j];
  const long long d = data - pattern[w - 1];
  out.push_back(positive_mod(d * d, m));
  for (int j = 0; j < n; ++j) out.push_back(positive_mod(-pattern[j], m));
  return out;
}

std::vector<SyndromeRecord> syndrome_branches(const PureState& s, const CodeSpec& spec) {
  if (s.empty()) throw std::invalid_argument("extract_syndrome: empty state");
  if (!(s.layout() == spec.layout())) {
    throw std::invalid_argument("extract_syndrome: state is not on the code layout");
  }
  const auto observables = SyndromeObservables::make(spec).all();

  std::vector<SyndromeRecord> frontier;
  frontier.push_back({{}, 1.0, true, std::nullopt, false, s.normalized()});
  for (const IntegerObservable& o : observables) {
    std::vector<SyndromeRecord> next;
    for (const SyndromeRecord& r : frontier) {
      auto outcomes = measure_integer_observable(r.post_state, o);
      const bool single = outcomes.size() == 1;
      for (MeasurementOutcome& mo : outcomes) {
        SyndromeRecord child = r;
        child.outcomes.push_back(mo.outcome);
        child.probability *= mo.probability;
        child.deterministic = r.deterministic && single;
        child.post_state = std::move(mo.post_state);
        next.push_back(std::move(child));
      }
    }
    frontier = std::move(next);
  }
  return frontier;
}

SyndromeRecord extract_syndrome(const PureState& s, const CodeSpec& spec,
                                std::mt19937_64* rng) {
  std::vector<SyndromeRecord> branches = syndrome_branches(s, spec);
  if (branches.size() == 1) return std::move(branches.front());
  if (rng == nullptr) {
    throw std::runtime_error("syndrome is not deterministic for this state");
  }
  std::vector<double> weights;
  for (const auto& b : branches) weights.push_back(b.probability);
  std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
  return std::move(branches[pick(*rng)]);
}

DecodeResult decode_lookup(const std::vector<int>& outcomes, const CodeSpec& spec) {
  if (spec.family != CodeFamily::kExtendedBinomial) {
    throw std::invalid_argument("decode_lookup: ext-bin codes only");
  }
  const int w = spec.w, m = w + 1, n = spec.num_modes();
  const std::size_t expected = static_cast<std::size_t>((w - 1) + 1 + n);
  if (outcomes.size() != expected) {
    throw std::invalid_argument("decode_lookup: expected " + std::to_string(expected) +
                                " outcomes");
  }
  for (int r : outcomes) {
    if (r < 0 || r >= m) return {DecodeStatus::kInconsistent, std::nullopt};
  }

  std::vector<int> a(n);
  const std::size_t readout_offset = static_cast<std::size_t>(w);
  for (int j = 0; j < n; ++j) a[j] = positive_mod(m - outcomes[readout_offset + j], m);
  LossPattern pattern(a);

  if (expected_outcomes(spec, pattern) != outcomes) {
    return {DecodeStatus::kInconsistent, std::nullopt};
  }
  if (pattern.weight() > w) return {DecodeStatus::kAmbiguous, pattern};
  return {DecodeStatus::kOk, pattern};
}

void decode_record(SyndromeRecord& record, const CodeSpec& spec) {
  DecodeResult r = decode_lookup(record.outcomes, spec);
  record.ambiguous = r.status != DecodeStatus::kOk;
  record.decoded = r.status == DecodeStatus::kOk ? r.pattern : std::nullopt;
}

PureState shift_up(const PureState& s, const LossPattern& pattern) {
  const ModeLayout& layout = s.layout();
  if (pattern.num_modes() != layout.num_modes()) {
    throw std::invalid_argument("shift_up: pattern length must equal mode count");
  }
  PureState::Amplitudes amps;
  for (const auto& [n, amp] : s.amplitudes()) {
    Occupation out = n;
    for (int j = 0; j < layout.num_modes(); ++j) {
      out[j] += pattern[j];
      if (out[j] > layout.cutoff(j)) {
        throw std::out_of_range("shift_up: occupation exceeds cutoff on mode " +
                                std::to_string(j));
      }
    }
    amps[out] += amp;
  }
  return PureState(layout, std::move(amps));
}

std::vector<SyndromeCheck> exhaustive_syndrome_check(const CodeSpec& spec, double gamma) {
  const LogicalBasis basis = build_basis(spec);
  const DampingParam g(gamma);
  std::vector<SyndromeCheck> out;
  for (const LossPattern& a : enumerate_loss_patterns(spec.num_modes(), spec.w)) {
    const std::vector<int> expected = expected_outcomes(spec, a);
    for (int i = 0; i < basis.size(); ++i) {
      const PureState damaged = apply_loss(a, g, basis.codeword(i));
      if (damaged.empty()) continue;
      const std::vector<SyndromeRecord> branches = syndrome_branches(damaged, spec);
      const SyndromeRecord& r = branches.front();
      const bool deterministic =
          branches.size() == 1 && r.deterministic && std::abs(r.probability - 1.0) <= kTolerance;
      const DecodeResult d = decode_lookup(r.outcomes, spec);
      const bool match = deterministic && r.outcomes == expected &&
                         d.status == DecodeStatus::kOk && d.pattern == a;
      out.push_back({a, i, r.outcomes, d.pattern, deterministic, r.probability, match});
    }
  }
  return out;
}

PureState recover_naive(const SyndromeRecord& record, const CodeSpec& spec) {
  if (!record.decoded) throw std::invalid_argument("recover_naive: no decoded pattern");
  if (!(record.post_state.layout() == spec.layout())) {
    throw std::invalid_argument("recover_naive: state is not on the code layout");
  }
  return shift_up(record.post_state, *record.decoded).normalized();
}

}  // namespace xbin
