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

#ifndef XBIN_CLI_H_
#define XBIN_CLI_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "xbin/codes.h"
#include "xbin/reports.h"

namespace xbin {

inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// Environment variable holding the worker count for parallel sweeps.
inline constexpr const char* kWorkersEnv = "XBIN_WORKERS";

struct GammaGrid {
  double lo = 1e-3;
  double hi = 1e-2;
  int n = 8;
};

/// Parses "lo:hi:n".
GammaGrid parse_gamma_grid(const std::string& text);

struct RunConfig {
  std::string command;
  CodeFamily family = CodeFamily::kExtendedBinomial;
  int w = 1;
  int k = 1;
  double gamma = 1e-2;
  GammaGrid gamma_grid;
  std::vector<double> dt;
  std::optional<std::string> label;
  std::optional<std::vector<int>> pattern;
  std::string recovery = "both";  // naive, transpose or both
  std::uint64_t seed = 1;
  ReportFormat format = ReportFormat::kJson;
  std::string out;
  // command specific
  int max_w = 1;
  int max_k = 2;
  double n_c = 82.0;
  std::optional<Complex> alpha;
  std::optional<Complex> beta;
  bool sampled = false;
  int random_dt = 100;
};

/// Throws std::invalid_argument when a parameter is outside the range the
/// command supports.
void validate(const RunConfig& config);

/// Runs one subcommand. Returns kExitPass or kExitCheckFailed; the report is
/// written to config.out or `out`.
int dispatch(const RunConfig& config, std::ostream& out);

/// Full command line entry point, args excluding the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace xbin

#endif  // XBIN_CLI_H_
