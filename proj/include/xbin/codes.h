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

#ifndef XBIN_CODES_H_
#define XBIN_CODES_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "xbin/fock.h"

namespace xbin {

enum class CodeFamily {
  kOneModeBinomial,
  kTwoModeBinomial,
  kQubitShorAd,
  kExtendedBinomial,
  kCeExtendedBinomial,
};

/// Command-line name: one-bin, two-bin, qubit-ad, ext-bin, ce-ext-bin.
std::string_view family_name(CodeFamily family);
std::optional<CodeFamily> parse_family(std::string_view name);
std::vector<CodeFamily> all_families();

/// Logical bit string i_0 i_1 ... i_{K-1}, each entry 0 or 1.
using LogicalLabel = std::vector<int>;

/// Labels are indexed so that index order equals string order: "00" = 0,
/// "01" = 1, "10" = 2, "11" = 3.
LogicalLabel label_from_index(int index, int k);
int label_index(const LogicalLabel& label);
std::string label_string(const LogicalLabel& label);
/// Throws std::invalid_argument unless `text` is a string of 0/1.
LogicalLabel parse_label(std::string_view text);

/// Code family plus the correctable AD weight w and logical qubit count K.
///
/// The one- and two-mode binomial families carry a single logical qubit per
/// code block; K > 1 means K independent blocks side by side.
struct CodeSpec {
  CodeFamily family;
  int w;
  int k;

  /// Validates w >= 1 and k >= 1.
  static CodeSpec make(CodeFamily family, int w, int k);

  int num_modes() const;
  int num_labels() const { return 1 << k; }
  /// Largest occupation any codeword component can reach on one mode.
  int max_occupation() const;
  ModeLayout layout() const;
};

std::string describe(const CodeSpec& spec);

/// All 2^K codewords of a code, indexed by label_index.
class LogicalBasis {
 public:
  LogicalBasis(CodeSpec spec, std::vector<PureState> codewords);

  const CodeSpec& spec() const { return spec_; }
  const std::vector<PureState>& codewords() const { return codewords_; }
  const PureState& codeword(int index) const { return codewords_.at(index); }
  const PureState& codeword(const LogicalLabel& label) const;
  int size() const { return static_cast<int>(codewords_.size()); }

  /// sum_i c_i |i>, normalized.
  PureState encode(std::span<const Complex> coefficients) const;

 private:
  CodeSpec spec_;
  std::vector<PureState> codewords_;
};

LogicalBasis build_basis(const CodeSpec& spec);
PureState build_codeword(const CodeSpec& spec, const LogicalLabel& label);

enum class BinomialVariant { kOneMode, kTwoMode };

/// Single-block binomial codeword for logical value 0 or 1.
PureState binomial_codeword(int w, int label, BinomialVariant variant);

PureState qubit_shor_codeword(int w, int k, const LogicalLabel& label);

/// Built by the inner-repetition / outer-parity pipeline from single-mode
/// blocks |0> and |w+1>.
PureState extended_binomial_codeword(int w, int k, const LogicalLabel& label);

/// Direct expansion in the number basis: buffer strings of even parity pair
/// with the data string i, odd parity with its complement.
PureState extended_binomial_number_basis(int w, int k, const LogicalLabel& label);

/// Each mode of the extended binomial code paired with its complement,
/// (|0>, |w+1>) -> (|0>|w+1>, |w+1>|0>).
PureState ce_extended_binomial_codeword(int w, int k, const LogicalLabel& label);

/// Collapses occupation-1 modes onto one oscillator holding the total
/// excitation. Components landing on the same |N> combine in quadrature
/// (magnitude sqrt(sum |a|^2), phase of the coherent sum); the result is
/// normalized.
PureState merge_modes_to_single(const PureState& s);

struct MeanExcitationReport {
  std::vector<double> per_label;
  /// (w+1)(w+K)/2 for the extended binomial family.
  std::optional<double> closed_form;
};

MeanExcitationReport mean_excitation(const LogicalBasis& basis);

}  // namespace xbin

#endif  // XBIN_CODES_H_
