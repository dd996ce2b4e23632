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

#include "xbin/reports.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace xbin {

BudgetReport dispersive_budget(double n_c) {
  if (!(n_c > 0.0) || !std::isfinite(n_c)) {
    throw std::invalid_argument("critical excitation number must be positive");
  }
  const int w_one = static_cast<int>(std::floor(std::sqrt(2.0 * n_c))) - 1;
  const int w_ext = static_cast<int>(std::floor(2.0 * n_c)) - 1;
  return {n_c, w_one, w_ext};
}

Json to_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Json to_json(const PureState& s) {
  Json arr = Json::array();
  for (const auto& [n, amp] : s.amplitudes()) {
    arr.push_back(Json{{"occupation", n}, {"re", amp.real()}, {"im", amp.imag()}});
  }
  return arr;
}

Json to_json(const BudgetReport& b) {
  return Json{{"n_c", b.n_c}, {"w_one_mode", b.w_one_mode}, {"w_extended", b.w_extended}};
}

Json to_json(const ScalingFit& fit) {
  return Json{{"gamma_grid", fit.gamma_grid}, {"residuals", fit.residuals},
              {"slope", fit.slope},           {"intercept", fit.intercept},
              {"used_points", fit.used_points}, {"ok", fit.ok},
              {"message", fit.message}};
}

Json codeword_json(const CodeSpec& spec, const LogicalLabel& label, const PureState& s) {
  return Json{{"family", family_name(spec.family)},
              {"w", spec.w},
              {"k", spec.k},
              {"label", label_string(label)},
              {"components", to_json(s)}};
}

PureState state_from_json(const Json& components, const ModeLayout& layout) {
  if (!components.is_array()) throw std::invalid_argument("state JSON must be an array");
  PureState::Amplitudes amps;
  for (const Json& c : components) {
    Occupation n = c.at("occupation").get<Occupation>();
    amps[n] += Complex(c.at("re").get<double>(), c.at("im").get<double>());
  }
  return PureState(layout, std::move(amps));
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string format_rounded(double v, int digits) {
  std::ostringstream os;
  os << std::setprecision(digits) << v;
  return os.str();
}

Json make_envelope(const std::string& command, Json params, Json results,
                   Json tolerances, bool pass) {
  return Json{{"command", command},
              {"params", std::move(params)},
              {"results", std::move(results)},
              {"tolerances", std::move(tolerances)},
              {"pass", pass}};
}

void write_json(std::ostream& os, const Json& j) { os << j.dump(2) << '\n'; }

void write_csv(std::ostream& os, const CsvTable& table) {
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) os << ',';
      os << cells[i];
    }
    os << '\n';
  };
  line(table.header);
  for (const auto& r : table.rows) line(r);
}

void emit_report(const std::string& text, const std::string& path, std::ostream& fallback) {
  if (path.empty()) {
    fallback << text;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << text;
  out.flush();
  if (!out) throw std::runtime_error("failed writing " + path);
}

std::vector<Table1Row> table1_rows(int max_w, int max_k) {
  std::vector<Table1Row> rows;
  const CodeFamily families[] = {CodeFamily::kOneModeBinomial, CodeFamily::kQubitShorAd,
                                 CodeFamily::kExtendedBinomial};
  for (int w = 1; w <= max_w; ++w) {
    for (int k = 1; k <= max_k; ++k) {
      for (CodeFamily f : families) {
        const CodeSpec spec = CodeSpec::make(f, w, k);
        const LogicalBasis basis = build_basis(spec);
        const MeanExcitationReport mean = mean_excitation(basis);
        const double expected = f == CodeFamily::kOneModeBinomial
                                    ? 0.5 * k * (w + 1) * (w + 1)
                                    : 0.5 * (w + 1) * (w + k);
        for (int i = 0; i < basis.size(); ++i) {
          rows.push_back({f, w, k, label_from_index(i, k), mean.per_label[i], expected});
        }
      }
    }
  }
  return rows;
}

CsvTable table1_csv(const std::vector<Table1Row>& rows) {
  CsvTable t{{"family", "w", "k", "label", "mean_excitation"}, {}};
  for (const Table1Row& r : rows) {
    t.rows.push_back({std::string(family_name(r.family)), std::to_string(r.w),
                      std::to_string(r.k), label_string(r.label),
                      format_rounded(r.mean_excitation)});
  }
  return t;
}

}  // namespace xbin
