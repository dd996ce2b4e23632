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

#ifndef XBIN_REPORTS_H_
#define XBIN_REPORTS_H_

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "xbin/aqec.h"
#include "xbin/codes.h"
#include "xbin/fock.h"
#include "xbin/syndrome.h"

namespace xbin {

using Json = nlohmann::ordered_json;

/// Largest correctable weight that fits a dispersive excitation budget n_c:
/// one-mode binomial codes need <n> ~ (w+1)^2/2 <= n_c, extended binomial
/// codes spread 2 n_c over modes.
struct BudgetReport {
  double n_c;
  int w_one_mode;
  int w_extended;
};

/// Throws std::invalid_argument for n_c <= 0.
BudgetReport dispersive_budget(double n_c);

Json to_json(Complex z);
Json to_json(const PureState& s);  // [{occupation, re, im}, ...]
Json to_json(const BudgetReport& b);
Json to_json(const ScalingFit& fit);
Json codeword_json(const CodeSpec& spec, const LogicalLabel& label, const PureState& s);

/// Inverse of to_json(PureState); throws on malformed input.
PureState state_from_json(const Json& components, const ModeLayout& layout);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// Shortest round-trip decimal form of a double.
std::string format_double(double v);
/// `digits` significant digits; hides last-bit noise in tabulated values.
std::string format_rounded(double v, int digits = 12);

enum class ReportFormat { kJson, kCsv };

/// Envelope {command, params, results, tolerances, pass}.
Json make_envelope(const std::string& command, Json params, Json results,
                   Json tolerances, bool pass);

void write_json(std::ostream& os, const Json& j);
void write_csv(std::ostream& os, const CsvTable& table);

/// Writes to `path`, or to `fallback` when `path` is empty. Throws
/// std::runtime_error when the file cannot be written.
void emit_report(const std::string& text, const std::string& path, std::ostream& fallback);

struct Table1Row {
  CodeFamily family;
  int w;
  int k;
  LogicalLabel label;
  double mean_excitation;
  double expected;
};

/// Mean excitation of every codeword for the one-mode binomial, qubit AD and
/// extended binomial families with w <= max_w and K <= max_k. `expected` is
/// the closed form: K (w+1)^2 / 2 for binomial blocks, (w+1)(w+K)/2 else.
std::vector<Table1Row> table1_rows(int max_w, int max_k);

CsvTable table1_csv(const std::vector<Table1Row>& rows);

}  // namespace xbin

#endif  // XBIN_REPORTS_H_
