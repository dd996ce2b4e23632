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

#include "xbin/logical.h"

#include <bit>
#include <cmath>
#include <functional>
#include <random>
#include <set>
#include <stdexcept>

namespace xbin {

namespace {

constexpr Complex kI(0.0, 1.0);

void require_ext_bin(const CodeSpec& spec) {
  if (spec.family != CodeFamily::kExtendedBinomial) {
    throw std::invalid_argument("logical operators are defined for ext-bin codes only");
  }
}

// Largest distance between op applied to each codeword and the expected image.
double worst_case(const LogicalBasis& basis,
                  const std::function<PureState(const PureState&)>& op,
                  const std::function<PureState(int)>& expected) {
  double e = 0.0;
  for (int i = 0; i < basis.size(); ++i) {
    e = std::max(e, distance(op(basis.codeword(i)), expected(i)));
  }
  return e;
}

// Modes on which some matrix element changes the occupation.
std::set<int> moved_modes(const LinearMap& m) {
  std::set<int> modes;
  for (const auto& [in, col] : m.columns()) {
    for (const auto& [out, v] : col) {
      for (std::size_t j = 0; j < in.size(); ++j) {
        if (in[j] != out[j]) modes.insert(static_cast<int>(j));
      }
    }
  }
  return modes;
}

}  // namespace

LinearMap x_hat(const ModeLayout& layout, int mode, int w) {
  if (mode < 0 || mode >= layout.num_modes()) throw std::invalid_argument("x_hat: bad mode");
  if (layout.cutoff(mode) < w + 1) throw std::invalid_argument("x_hat: cutoff below w+1");
  LinearMap::Columns cols;
  for (const Occupation& n : layout.basis()) {
    Occupation out = n;
    if (n[mode] == 0) {
      out[mode] = w + 1;
    } else if (n[mode] == w + 1) {
      out[mode] = 0;
    }
    cols[n][out] = 1.0;
  }
  return LinearMap(layout, layout, std::move(cols));
}

LinearMap z_hat(const ModeLayout& layout, const std::vector<int>& modes, int w) {
  for (int j : modes) {
    if (j < 0 || j >= layout.num_modes()) throw std::invalid_argument("z_hat: bad mode");
  }
  return LinearMap::diagonal(layout, [&](const Occupation& n) {
    int total = 0;
    for (int j : modes) total += n[j];
    return std::polar(1.0, M_PI * total / (w + 1));
  });
}

LogicalOperator build_logical_operator(LogicalKind kind, std::optional<int> ell,
                                       const CodeSpec& spec) {
  require_ext_bin(spec);
  const int w = spec.w, k = spec.k;
  const ModeLayout layout = spec.layout();
  const bool per_qubit = kind == LogicalKind::kX || kind == LogicalKind::kZ;
  if (per_qubit && (!ell || *ell < 0 || *ell >= k)) {
    throw std::invalid_argument("logical qubit index out of range");
  }

  auto z_bar = [&](int l) {
    std::vector<int> modes;
    for (int j = 0; j < w; ++j) modes.push_back(j);
    modes.push_back(w + l);
    return z_hat(layout, modes, w);
  };

  switch (kind) {
    case LogicalKind::kX:
      return {kind, ell, x_hat(layout, w + *ell, w)};
    case LogicalKind::kZ:
      return {kind, ell, z_bar(*ell)};
    case LogicalKind::kXAll:
      return {kind, std::nullopt, x_hat(layout, 0, w)};
    case LogicalKind::kZAll: {
      LinearMap m = z_bar(0);
      for (int l = 1; l < k; ++l) m = z_bar(l).after(m);
      return {kind, std::nullopt, std::move(m)};
    }
  }
  throw std::invalid_argument("unknown logical operator kind");
}

LogicalAlgebraReport verify_logical_algebra(const CodeSpec& spec) {
  require_ext_bin(spec);
  const LogicalBasis basis = build_basis(spec);
  const int k = spec.k;
  const ModeLayout layout = spec.layout();
  const LinearMap id = LinearMap::identity(layout);

  LogicalAlgebraReport report{spec, {}, true};
  auto record = [&](std::string name, double error) {
    const bool ok = error <= kTolerance;
    report.checks.push_back({std::move(name), error, ok});
    report.pass = report.pass && ok;
  };
  auto word = [&](int index) { return basis.codeword(index); };
  auto flip = [&](int index, int l) { return index ^ (1 << (k - 1 - l)); };
  auto bit = [&](int index, int l) { return (index >> (k - 1 - l)) & 1; };

  std::vector<LinearMap> xs, zs;
  for (int l = 0; l < k; ++l) {
    xs.push_back(build_logical_operator(LogicalKind::kX, l, spec).map);
    zs.push_back(build_logical_operator(LogicalKind::kZ, l, spec).map);
  }
  const LinearMap x_all = build_logical_operator(LogicalKind::kXAll, std::nullopt, spec).map;
  const LinearMap z_all = build_logical_operator(LogicalKind::kZAll, std::nullopt, spec).map;

  auto unitarity = [&](const LinearMap& u) {
    return max_abs_difference(u.adjoint().after(u), id);
  };

  for (int l = 0; l < k; ++l) {
    const std::string tag = "[" + std::to_string(l) + "]";
    const LinearMap& x = xs[l];
    const LinearMap& z = zs[l];
    record("X" + tag + " unitary", unitarity(x));
    record("Z" + tag + " unitary", unitarity(z));
    record("X" + tag + " hermitian", max_abs_difference(x, x.adjoint()));
    record("X" + tag + " action",
           worst_case(basis, [&](const PureState& s) { return x.apply(s); },
                      [&](int i) { return word(flip(i, l)); }));
    record("Z" + tag + " action",
           worst_case(basis, [&](const PureState& s) { return z.apply(s); },
                      [&](int i) { return word(i).scaled(bit(i, l) ? -1.0 : 1.0); }));
    record("X" + tag + "^2 = I",
           worst_case(basis, [&](const PureState& s) { return x.apply(x.apply(s)); }, word));
    record("Z" + tag + "^2 = I",
           worst_case(basis, [&](const PureState& s) { return z.apply(z.apply(s)); }, word));
    record("{X" + tag + ",Z" + tag + "} = 0",
           worst_case(basis,
                      [&](const PureState& s) { return x.apply(z.apply(s)) + z.apply(x.apply(s)); },
                      [&](int) { return PureState(layout); }));
    auto y = [&](const PureState& s) { return z.apply(x.apply(s)).scaled(-kI); };
    record("Y" + tag + "^2 = I",
           worst_case(basis, [&](const PureState& s) { return y(y(s)); }, word));
    // H^dag H on the code space; X and Z are Hermitian there.
    auto h = [&](const PureState& s) { return (x.apply(s) + z.apply(s)).scaled(M_SQRT1_2); };
    record("H" + tag + " unitary on code space",
           worst_case(basis, [&](const PureState& s) { return h(h(s)); }, word));
    for (int m = 0; m < k; ++m) {
      if (m == l) continue;
      record("[X" + tag + ",Z[" + std::to_string(m) + "]] = 0",
             worst_case(basis,
                        [&](const PureState& s) {
                          return x.apply(zs[m].apply(s)) - zs[m].apply(x.apply(s));
                        },
                        [&](int) { return PureState(layout); }));
    }
  }

  record("X_all unitary", unitarity(x_all));
  record("Z_all unitary", unitarity(z_all));
  record("X_all = prod X_l on code space",
         worst_case(basis, [&](const PureState& s) { return x_all.apply(s); },
                    [&](int i) {
                      PureState t = word(i);
                      for (const LinearMap& x : xs) t = x.apply(t);
                      return t;
                    }));
  record("X_all action",
         worst_case(basis, [&](const PureState& s) { return x_all.apply(s); },
                    [&](int i) { return word(i ^ ((1 << k) - 1)); }));
  record("Z_all action",
         worst_case(basis, [&](const PureState& s) { return z_all.apply(s); },
                    [&](int i) { return word(i).scaled(std::popcount(unsigned(i)) % 2 ? -1.0 : 1.0); }));
  const std::set<int> local = moved_modes(x_all);
  record("X_all acts on a single mode", local == std::set<int>{0} ? 0.0 : 1.0);
  return report;
}

// ---------------------------------------------------------------------------
// Encoding protocol

namespace {

// (I + sign * op) / 2 applied to s.
PureState project(const LinearMap& op, const PureState& s, int sign) {
  return (s + op.apply(s).scaled(static_cast<double>(sign))).scaled(0.5);
}

}  // namespace

std::vector<ProtocolTrace> run_encoding_protocol(Complex alpha, Complex beta,
                                                 const CodeSpec& spec,
                                                 OutcomeSelection selection,
                                                 std::uint64_t seed) {
  require_ext_bin(spec);
  if (spec.k != 1) {
    throw std::invalid_argument("encoding protocol supports single-qubit codes (K = 1) only");
  }
  if (std::abs(std::norm(alpha) + std::norm(beta) - 1.0) > kTolerance) {
    throw std::invalid_argument("|alpha|^2 + |beta|^2 must equal 1");
  }

  const LogicalBasis basis = build_basis(spec);
  const ModeLayout qubit({1});
  const ModeLayout code = spec.layout();
  const PureState& zero = basis.codeword(0);
  const PureState& one = basis.codeword(1);

  const LinearMap z_bar = build_logical_operator(LogicalKind::kZ, 0, spec).map;
  const LinearMap x_bar = build_logical_operator(LogicalKind::kX, 0, spec).map;
  const LinearMap z_phys =
      LinearMap::diagonal(qubit, [](const Occupation& n) { return n[0] ? -1.0 : 1.0; });
  const LinearMap x_phys = x_hat(qubit, 0, 0);
  const LinearMap parity = kron(z_phys, z_bar);
  const LinearMap x_on_phys = kron(x_phys, LinearMap::identity(code));
  const LinearMap x_bar_joint = kron(LinearMap::identity(qubit), x_bar);

  PureState::Amplitudes psi_amps{{{0}, alpha}, {{1}, beta}};
  const PureState psi(qubit, psi_amps);
  const PureState plus_bar = (zero + one).scaled(M_SQRT1_2);
  const PureState joint = tensor(psi, plus_bar);
  const PureState target = (zero.scaled(alpha) + one.scaled(beta));

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto choose = [&](const std::vector<std::pair<int, double>>& options) {
    double u = unit(rng), acc = 0.0;
    for (const auto& [sign, p] : options) {
      acc += p;
      if (u < acc) return sign;
    }
    return options.back().first;
  };

  std::vector<ProtocolTrace> traces;
  std::vector<int> parity_signs{+1, -1};
  if (selection == OutcomeSelection::kSampled) {
    std::vector<std::pair<int, double>> opts;
    for (int s : parity_signs) opts.emplace_back(s, project(parity, joint, s).norm_squared());
    parity_signs = {choose(opts)};
  }

  for (int ps : parity_signs) {
    const PureState measured = project(parity, joint, ps);
    const double p_parity = measured.norm_squared();
    if (p_parity < kPruneThreshold) continue;
    PureState after_parity = measured.normalized();
    const PureState corrected = ps == 1 ? after_parity : x_bar_joint.apply(after_parity);

    std::vector<int> x_signs{+1, -1};
    if (selection == OutcomeSelection::kSampled) {
      std::vector<std::pair<int, double>> opts;
      for (int s : x_signs) opts.emplace_back(s, project(x_on_phys, corrected, s).norm_squared());
      x_signs = {choose(opts)};
    }
    for (int xs : x_signs) {
      const PureState measured_x = project(x_on_phys, corrected, xs);
      const double p_x = measured_x.norm_squared();
      if (p_x < kPruneThreshold) continue;
      // Discard the physical qubit by contracting with <+| or <-|.
      PureState::Amplitudes reduced;
      for (const auto& [n, amp] : measured_x.amplitudes()) {
        const double sign = (n[0] == 1 && xs == -1) ? -1.0 : 1.0;
        reduced[Occupation(n.begin() + 1, n.end())] += sign * amp * M_SQRT1_2;
      }
      PureState logical = PureState(code, std::move(reduced)).normalized();
      if (xs == -1) logical = z_bar.apply(logical);

      const double fidelity = std::min(1.0, std::norm(inner(target, logical)));
      traces.push_back({alpha, beta, ps, xs, p_parity * p_x, after_parity, logical, fidelity});
    }
  }
  return traces;
}

}  // namespace xbin
