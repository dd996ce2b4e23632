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

#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <stdexcept>

#include <gtest/gtest.h>

namespace xbin {
namespace {

CodeSpec ext(int w, int k) { return CodeSpec::make(CodeFamily::kExtendedBinomial, w, k); }

std::pair<Complex, Complex> random_qubit(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Complex a(n(rng), n(rng)), b(n(rng), n(rng));
  const double norm = std::sqrt(std::norm(a) + std::norm(b));
  return {a / norm, b / norm};
}

TEST(Operators, XHatSwapsVacuumAndTopLevel) {
  const ModeLayout layout({3, 3});
  const LinearMap x = x_hat(layout, 1, 2);
  EXPECT_EQ(x.entry({0, 3}, {0, 0}), Complex(1.0));
  EXPECT_EQ(x.entry({0, 0}, {0, 3}), Complex(1.0));
  EXPECT_EQ(x.entry({2, 1}, {2, 1}), Complex(1.0));
  EXPECT_EQ(x.entry({0, 0}, {0, 0}), Complex(0.0));
  EXPECT_LT(max_abs_difference(x.after(x), LinearMap::identity(layout)), kTolerance);
  EXPECT_THROW(x_hat(layout, 2, 2), std::invalid_argument);
  EXPECT_THROW(x_hat(ModeLayout({2}), 0, 2), std::invalid_argument);
}

TEST(Operators, ZHatIsNumberPhase) {
  const ModeLayout layout({3, 3});
  const LinearMap z = z_hat(layout, {0, 1}, 2);
  for (const Occupation& n : layout.basis()) {
    const Complex expected = std::polar(1.0, std::numbers::pi * (n[0] + n[1]) / 3.0);
    EXPECT_NEAR(std::abs(z.entry(n, n) - expected), 0.0, kTolerance);
  }
  // e^{i pi n/(w+1)} is -1 on |w+1> and +1 on vacuum.
  const LinearMap z1 = z_hat(ModeLayout({3}), {0}, 2);
  EXPECT_NEAR(std::abs(z1.entry({3}, {3}) + 1.0), 0.0, kTolerance);
  EXPECT_NEAR(std::abs(z1.entry({0}, {0}) - 1.0), 0.0, kTolerance);
}

TEST(Operators, OnlyExtendedBinomialCodes) {
  EXPECT_THROW(build_logical_operator(LogicalKind::kX, 0,
                                      CodeSpec::make(CodeFamily::kOneModeBinomial, 1, 1)),
               std::invalid_argument);
  EXPECT_THROW(build_logical_operator(LogicalKind::kX, 2, ext(1, 2)), std::invalid_argument);
  EXPECT_THROW(build_logical_operator(LogicalKind::kZ, std::nullopt, ext(1, 2)),
               std::invalid_argument);
}

TEST(Algebra, AllChecksPassOverTestRange) {
  for (int w = 1; w <= 3; ++w) {
    for (int k = 1; k <= 3; ++k) {
      const LogicalAlgebraReport r = verify_logical_algebra(ext(w, k));
      EXPECT_TRUE(r.pass) << w << " " << k;
      for (const AlgebraCheck& c : r.checks) {
        EXPECT_TRUE(c.pass) << w << k << " " << c.name << " error " << c.error;
      }
      // 10 per qubit, K(K-1) cross commutators, 6 global
      EXPECT_EQ(r.checks.size(), static_cast<std::size_t>(10 * k + k * (k - 1) + 6));
    }
  }
}

TEST(Algebra, GlobalFlipMatchesProductOfFlips) {
  const CodeSpec spec = ext(2, 3);
  const LogicalBasis basis = build_basis(spec);
  const LinearMap x_all = build_logical_operator(LogicalKind::kXAll, std::nullopt, spec).map;
  for (int i = 0; i < basis.size(); ++i) {
    PureState t = basis.codeword(i);
    for (int l = 0; l < spec.k; ++l) t = build_logical_operator(LogicalKind::kX, l, spec).map.apply(t);
    EXPECT_LT(distance(x_all.apply(basis.codeword(i)), t), kTolerance);
    EXPECT_LT(distance(t, basis.codeword(i ^ 7)), kTolerance);
  }
}

TEST(Encoding, AllBranchesSucceedWithQuarterProbability) {
  std::mt19937_64 rng(2026);
  for (int w = 1; w <= 3; ++w) {
    for (int trial = 0; trial < 5; ++trial) {
      const auto [alpha, beta] = random_qubit(rng);
      const auto traces =
          run_encoding_protocol(alpha, beta, ext(w, 1), OutcomeSelection::kEnumerateAll);
      ASSERT_EQ(traces.size(), 4u);
      double total = 0.0;
      for (const ProtocolTrace& t : traces) {
        EXPECT_NEAR(t.probability, 0.25, kTolerance);
        EXPECT_NEAR(t.fidelity_to_target, 1.0, kTolerance);
        EXPECT_NEAR(t.final_state.norm(), 1.0, kTolerance);
        total += t.probability;
      }
      EXPECT_NEAR(total, 1.0, kTolerance);
    }
  }
}

TEST(Encoding, BasisInputsAreEncodedExactly) {
  const CodeSpec spec = ext(1, 1);
  const LogicalBasis basis = build_basis(spec);
  for (int i = 0; i < 2; ++i) {
    const Complex a = i == 0 ? 1.0 : 0.0, b = i == 0 ? 0.0 : 1.0;
    for (const ProtocolTrace& t :
         run_encoding_protocol(a, b, spec, OutcomeSelection::kEnumerateAll)) {
      EXPECT_TRUE(equal_up_to_phase(t.final_state, basis.codeword(i)));
      EXPECT_EQ(t.after_parity.layout().num_modes(), spec.num_modes() + 1);
    }
  }
}

TEST(Encoding, SampledModeIsSeedDeterministic) {
  const CodeSpec spec = ext(2, 1);
  const Complex a(0.6, 0.0), b(0.0, 0.8);
  const auto t1 = run_encoding_protocol(a, b, spec, OutcomeSelection::kSampled, 5);
  const auto t2 = run_encoding_protocol(a, b, spec, OutcomeSelection::kSampled, 5);
  ASSERT_EQ(t1.size(), 1u);
  ASSERT_EQ(t2.size(), 1u);
  EXPECT_EQ(t1[0].parity_outcome, t2[0].parity_outcome);
  EXPECT_EQ(t1[0].x_outcome, t2[0].x_outcome);
  EXPECT_NEAR(t1[0].fidelity_to_target, 1.0, kTolerance);
  std::set<std::pair<int, int>> seen;
  for (std::uint64_t seed = 0; seed < 64; ++seed) {
    const auto t = run_encoding_protocol(a, b, spec, OutcomeSelection::kSampled, seed);
    seen.insert({t[0].parity_outcome, t[0].x_outcome});
  }
  EXPECT_EQ(seen.size(), 4u);
}

TEST(Encoding, RejectsInvalidInput) {
  EXPECT_THROW(run_encoding_protocol(1.0, 0.0, ext(1, 2), OutcomeSelection::kEnumerateAll),
               std::invalid_argument);
  EXPECT_THROW(run_encoding_protocol(1.0, 1.0, ext(1, 1), OutcomeSelection::kEnumerateAll),
               std::invalid_argument);
  EXPECT_THROW(run_encoding_protocol(1.0, 0.0, CodeSpec::make(CodeFamily::kQubitShorAd, 1, 1),
                                     OutcomeSelection::kEnumerateAll),
               std::invalid_argument);
}

}  // namespace
}  // namespace xbin
