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

#ifndef XBIN_LOGICAL_H_
#define XBIN_LOGICAL_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "xbin/codes.h"

namespace xbin {

/// Swap |0> <-> |w+1> on one mode, identity on every other occupation.
LinearMap x_hat(const ModeLayout& layout, int mode, int w);

/// exp(i pi n / (w+1)) on each listed mode.
LinearMap z_hat(const ModeLayout& layout, const std::vector<int>& modes, int w);

enum class LogicalKind { kX, kZ, kXAll, kZAll };

struct LogicalOperator {
  LogicalKind kind;
  std::optional<int> ell;
  LinearMap map;
};

/// Logical Paulis of an extended binomial code:
///   X_l = X^_{w+l},  Z_l = Z^ on buffer modes and mode w+l,
///   X_all = X^_0,    Z_all = prod_l Z_l.
/// `ell` is required for kX and kZ.
LogicalOperator build_logical_operator(LogicalKind kind, std::optional<int> ell,
                                       const CodeSpec& spec);

struct AlgebraCheck {
  std::string name;
  double error;
  bool pass;
};

struct LogicalAlgebraReport {
  CodeSpec spec;
  std::vector<AlgebraCheck> checks;
  bool pass = true;
};

/// Exhaustive checks on the code space within kTolerance: squares,
/// anticommutation, commutation across qubits, action tables, X_all against
/// prod X_l, Y^2 = I, unitarity of H, and unitarity of every X/Z operator on
/// the full truncated space.
LogicalAlgebraReport verify_logical_algebra(const CodeSpec& spec);

enum class OutcomeSelection { kEnumerateAll, kSampled };

struct ProtocolTrace {
  Complex alpha;
  Complex beta;
  /// Z (x) Zbar outcome, then physical X outcome; each +1 or -1.
  int parity_outcome = 1;
  int x_outcome = 1;
  double probability = 0.0;
  /// Joint state after the parity measurement (physical mode first).
  PureState after_parity;
  PureState final_state;
  double fidelity_to_target = 0.0;
};

/// Teleportation-style encoding of alpha|0> + beta|1> into a K = 1 code:
/// prepare |+bar>, measure Z (x) Zbar, correct with Xbar, measure X on the
/// physical qubit, correct with Zbar. Enumerates all four outcome branches
/// or samples one with `seed`.
std::vector<ProtocolTrace> run_encoding_protocol(Complex alpha, Complex beta,
                                                 const CodeSpec& spec,
                                                 OutcomeSelection selection,
                                                 std::uint64_t seed = 0);

}  // namespace xbin

#endif  // XBIN_LOGICAL_H_
