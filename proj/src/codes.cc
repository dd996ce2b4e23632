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

#include "xbin/codes.h"

#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>

#include "xbin/channels.h"

namespace xbin {

namespace {

void check_label(const LogicalLabel& label, int k) {
  if (static_cast<int>(label.size()) != k) {
    throw std::invalid_argument("label length " + std::to_string(label.size()) +
                                " does not match K = " + std::to_string(k));
  }
  for (int b : label) {
    if (b != 0 && b != 1) throw std::invalid_argument("label entries must be 0 or 1");
  }
}

void check_wk(int w, int k) {
  if (w < 1) throw std::invalid_argument("w must be >= 1");
  if (k < 1) throw std::invalid_argument("K must be >= 1");
}

// A block encodes one inner bit: |0> or |w+1> on a single mode, w+1 copies
// of a qubit, or a complementary mode pair.
using BlockEncoder = std::function<PureState(int bit)>;

// (|0_block> + sign |1_block>) / sqrt(2)
PureState block_superposition(const BlockEncoder& block, double sign) {
  return (block(0) + block(1).scaled(sign)).scaled(M_SQRT1_2);
}

// Pipeline shared by the qubit, extended and CE families:
//   |+-i> = |+->^{(x) w} (x) (|i> +- |i'>)/sqrt(2)
//   |i>   = (|+i> + |-i>)/sqrt(2)
PureState pipeline_codeword(int w, const LogicalLabel& label, const BlockEncoder& block) {
  std::vector<PureState> data, data_flip;
  for (int b : label) {
    data.push_back(block(b));
    data_flip.push_back(block(1 - b));
  }
  const PureState inner_i = tensor(std::span<const PureState>(data));
  const PureState inner_flip = tensor(std::span<const PureState>(data_flip));

  auto branch = [&](double sign) {
    std::vector<PureState> factors(w, block_superposition(block, sign));
    factors.push_back((inner_i + inner_flip.scaled(sign)).scaled(M_SQRT1_2));
    return tensor(std::span<const PureState>(factors));
  };
  return (branch(+1.0) + branch(-1.0)).scaled(M_SQRT1_2).normalized();
}

}  // namespace

std::string_view family_name(CodeFamily family) {
  switch (family) {
    case CodeFamily::kOneModeBinomial: return "one-bin";
    case CodeFamily::kTwoModeBinomial: return "two-bin";
    case CodeFamily::kQubitShorAd: return "qubit-ad";
    case CodeFamily::kExtendedBinomial: return "ext-bin";
    case CodeFamily::kCeExtendedBinomial: return "ce-ext-bin";
  }
  return "?";
}

std::optional<CodeFamily> parse_family(std::string_view name) {
  for (CodeFamily f : all_families()) {
    if (family_name(f) == name) return f;
  }
  return std::nullopt;
}

std::vector<CodeFamily> all_families() {
  return {CodeFamily::kOneModeBinomial, CodeFamily::kTwoModeBinomial,
          CodeFamily::kQubitShorAd, CodeFamily::kExtendedBinomial,
          CodeFamily::kCeExtendedBinomial};
}

LogicalLabel label_from_index(int index, int k) {
  LogicalLabel label(k);
  for (int l = 0; l < k; ++l) label[l] = (index >> (k - 1 - l)) & 1;
  return label;
}

int label_index(const LogicalLabel& label) {
  int index = 0;
  for (int b : label) index = 2 * index + b;
  return index;
}

std::string label_string(const LogicalLabel& label) {
  std::string s;
  for (int b : label) s.push_back(b ? '1' : '0');
  return s;
}

LogicalLabel parse_label(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty label");
  LogicalLabel label;
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("label must be a string of 0 and 1");
    }
    label.push_back(c - '0');
  }
  return label;
}

// ---------------------------------------------------------------------------
// CodeSpec

CodeSpec CodeSpec::make(CodeFamily family, int w, int k) {
  check_wk(w, k);
  return CodeSpec{family, w, k};
}

int CodeSpec::num_modes() const {
  switch (family) {
    case CodeFamily::kOneModeBinomial: return k;
    case CodeFamily::kTwoModeBinomial: return 2 * k;
    case CodeFamily::kQubitShorAd: return (w + 1) * (w + k);
    case CodeFamily::kExtendedBinomial: return w + k;
    case CodeFamily::kCeExtendedBinomial: return 2 * (w + k);
  }
  return 0;
}

int CodeSpec::max_occupation() const {
  switch (family) {
    case CodeFamily::kOneModeBinomial:
    case CodeFamily::kTwoModeBinomial: return (w + 1) * (w + 1);
    case CodeFamily::kQubitShorAd: return 1;
    case CodeFamily::kExtendedBinomial:
    case CodeFamily::kCeExtendedBinomial: return w + 1;
  }
  return 0;
}

ModeLayout CodeSpec::layout() const {
  return ModeLayout::uniform(num_modes(), max_occupation());
}

std::string describe(const CodeSpec& spec) {
  return std::string(family_name(spec.family)) + "(w=" + std::to_string(spec.w) +
         ",K=" + std::to_string(spec.k) + ")";
}

// ---------------------------------------------------------------------------
// LogicalBasis

LogicalBasis::LogicalBasis(CodeSpec spec, std::vector<PureState> codewords)
    : spec_(spec), codewords_(std::move(codewords)) {
  if (static_cast<int>(codewords_.size()) != spec_.num_labels()) {
    throw std::invalid_argument("LogicalBasis: expected 2^K codewords");
  }
  const ModeLayout layout = spec_.layout();
  for (const PureState& c : codewords_) {
    if (!(c.layout() == layout)) throw std::invalid_argument("LogicalBasis: layout mismatch");
  }
}

const PureState& LogicalBasis::codeword(const LogicalLabel& label) const {
  check_label(label, spec_.k);
  return codewords_.at(label_index(label));
}

PureState LogicalBasis::encode(std::span<const Complex> coefficients) const {
  if (static_cast<int>(coefficients.size()) != size()) {
    throw std::invalid_argument("encode: need one coefficient per codeword");
  }
  PureState s(spec_.layout());
  for (int i = 0; i < size(); ++i) s = s + codewords_[i].scaled(coefficients[i]);
  return s.normalized();
}

LogicalBasis build_basis(const CodeSpec& spec) {
  std::vector<PureState> words;
  for (int i = 0; i < spec.num_labels(); ++i) {
    words.push_back(build_codeword(spec, label_from_index(i, spec.k)));
  }
  return LogicalBasis(spec, std::move(words));
}

PureState build_codeword(const CodeSpec& spec, const LogicalLabel& label) {
  check_wk(spec.w, spec.k);
  check_label(label, spec.k);
  switch (spec.family) {
    case CodeFamily::kOneModeBinomial:
    case CodeFamily::kTwoModeBinomial: {
      const auto variant = spec.family == CodeFamily::kOneModeBinomial
                               ? BinomialVariant::kOneMode
                               : BinomialVariant::kTwoMode;
      std::vector<PureState> blocks;
      for (int b : label) blocks.push_back(binomial_codeword(spec.w, b, variant));
      return tensor(std::span<const PureState>(blocks));
    }
    case CodeFamily::kQubitShorAd:
      return qubit_shor_codeword(spec.w, spec.k, label);
    case CodeFamily::kExtendedBinomial:
      return extended_binomial_codeword(spec.w, spec.k, label);
    case CodeFamily::kCeExtendedBinomial:
      return ce_extended_binomial_codeword(spec.w, spec.k, label);
  }
  throw std::invalid_argument("unknown code family");
}

// ---------------------------------------------------------------------------
// Constructors

PureState binomial_codeword(int w, int label, BinomialVariant variant) {
  if (w < 1) throw std::invalid_argument("w must be >= 1");
  if (label != 0 && label != 1) throw std::invalid_argument("label must be 0 or 1");
  const int spacing = w + 1;
  const int cutoff = spacing * spacing;
  const bool two_mode = variant == BinomialVariant::kTwoMode;
  PureState::Amplitudes amps;
  for (int n = label; n <= w + 1; n += 2) {
    const double c = std::sqrt(binomial(w + 1, n) / std::ldexp(1.0, w));
    if (two_mode) {
      amps[{n * spacing, (w + 1 - n) * spacing}] = c;
    } else {
      amps[{n * spacing}] = c;
    }
  }
  const ModeLayout layout = ModeLayout::uniform(two_mode ? 2 : 1, cutoff);
  return PureState(layout, std::move(amps)).normalized();
}

PureState qubit_shor_codeword(int w, int k, const LogicalLabel& label) {
  check_wk(w, k);
  check_label(label, k);
  const ModeLayout block_layout = ModeLayout::uniform(w + 1, 1);
  return pipeline_codeword(w, label, [&](int bit) {
    return PureState::basis(block_layout, Occupation(w + 1, bit));
  });
}

PureState extended_binomial_codeword(int w, int k, const LogicalLabel& label) {
  check_wk(w, k);
  check_label(label, k);
  const ModeLayout block_layout({w + 1});
  return pipeline_codeword(w, label, [&](int bit) {
    return PureState::basis(block_layout, {bit * (w + 1)});
  });
}

PureState extended_binomial_number_basis(int w, int k, const LogicalLabel& label) {
  check_wk(w, k);
  check_label(label, k);
  const int spacing = w + 1;
  PureState::Amplitudes amps;
  const double amp = 1.0 / std::sqrt(std::ldexp(1.0, w));
  for (unsigned a = 0; a < (1u << w); ++a) {
    Occupation n;
    int parity = 0;
    for (int j = 0; j < w; ++j) {
      const int bit = (a >> (w - 1 - j)) & 1;
      parity ^= bit;
      n.push_back(bit * spacing);
    }
    for (int b : label) n.push_back((parity ? 1 - b : b) * spacing);
    amps[n] = amp;
  }
  return PureState(ModeLayout::uniform(w + k, spacing), std::move(amps));
}

PureState ce_extended_binomial_codeword(int w, int k, const LogicalLabel& label) {
  check_wk(w, k);
  check_label(label, k);
  const ModeLayout block_layout = ModeLayout::uniform(2, w + 1);
  return pipeline_codeword(w, label, [&](int bit) {
    return PureState::basis(block_layout, {bit * (w + 1), (1 - bit) * (w + 1)});
  });
}

PureState merge_modes_to_single(const PureState& s) {
  if (s.empty()) throw std::invalid_argument("merge: empty state");
  struct Bucket {
    double weight = 0.0;
    Complex coherent{};
  };
  std::map<int, Bucket> buckets;
  for (const auto& [n, amp] : s.amplitudes()) {
    for (int x : n) {
      if (x != 0 && x != 1) {
        throw std::invalid_argument("merge: every mode must hold 0 or 1 excitations");
      }
    }
    Bucket& b = buckets[std::accumulate(n.begin(), n.end(), 0)];
    b.weight += std::norm(amp);
    b.coherent += amp;
  }
  PureState::Amplitudes amps;
  for (const auto& [total, b] : buckets) {
    const double mag = std::sqrt(b.weight);
    const Complex phase =
        std::abs(b.coherent) > 0.0 ? b.coherent / std::abs(b.coherent) : Complex(1.0);
    amps[{total}] = mag * phase;
  }
  return PureState(ModeLayout({s.layout().num_modes()}), std::move(amps)).normalized();
}

MeanExcitationReport mean_excitation(const LogicalBasis& basis) {
  MeanExcitationReport report;
  for (const PureState& c : basis.codewords()) {
    report.per_label.push_back(total_number_expectation(c));
  }
  const CodeSpec& spec = basis.spec();
  if (spec.family == CodeFamily::kExtendedBinomial) {
    report.closed_form = 0.5 * (spec.w + 1) * (spec.w + spec.k);
  }
  return report;
}

}  // namespace xbin
