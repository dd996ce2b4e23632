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
#include <map>
#include <random>
#include <stdexcept>

#include <gtest/gtest.h>

namespace xbin {
namespace {

CodeSpec ext(int w, int k) { return CodeSpec::make(CodeFamily::kExtendedBinomial, w, k); }

TEST(Observables, CountsAndShape) {
  for (int w = 1; w <= 3; ++w) {
    for (int k = 1; k <= 3; ++k) {
      const SyndromeObservables o = SyndromeObservables::make(ext(w, k));
      EXPECT_EQ(static_cast<int>(o.chain.size()) + 1, w);
      EXPECT_EQ(static_cast<int>(o.mode_readouts.size()), w + k);
      EXPECT_EQ(o.size(), 2 * w + k);
      for (const auto& obs : o.all()) EXPECT_EQ(obs.modulus, w + 1);
    }
  }
  EXPECT_THROW(SyndromeObservables::make(CodeSpec::make(CodeFamily::kQubitShorAd, 1, 1)),
               std::invalid_argument);
}

TEST(Extract, SingleLossOnBufferMode) {
  const CodeSpec spec = ext(1, 1);
  const PureState s = PureState::basis(spec.layout(), {1, 2});
  const SyndromeRecord r = extract_syndrome(s, spec);
  EXPECT_TRUE(r.deterministic);
  EXPECT_NEAR(r.probability, 1.0, kTolerance);
  // bridge, then readouts of modes 0 and 1
  EXPECT_EQ(r.outcomes, (std::vector<int>{1, 1, 0}));
  const DecodeResult d = decode_lookup(r.outcomes, spec);
  EXPECT_EQ(d.status, DecodeStatus::kOk);
  EXPECT_EQ(d.pattern, LossPattern({1, 0}));
}

TEST(Extract, UndamagedCodewordsGiveAllZeroOutcomes) {
  for (int w = 1; w <= 3; ++w) {
    for (int k = 1; k <= 2; ++k) {
      const CodeSpec spec = ext(w, k);
      const LogicalBasis basis = build_basis(spec);
      for (const PureState& c : basis.codewords()) {
        const SyndromeRecord r = extract_syndrome(c, spec);
        for (int o : r.outcomes) EXPECT_EQ(o, 0);
        const DecodeResult d = decode_lookup(r.outcomes, spec);
        EXPECT_EQ(d.status, DecodeStatus::kOk);
        EXPECT_EQ(d.pattern, LossPattern::none(spec.num_modes()));
      }
    }
  }
}

TEST(Extract, SquaredObservablesConflateResiduesButReadoutsSeparate) {
  const CodeSpec spec = ext(2, 1);
  const auto a2 = expected_outcomes(spec, LossPattern({2, 0, 0}));
  const auto a1 = expected_outcomes(spec, LossPattern({1, 0, 0}));
  // chain, bridge
  EXPECT_EQ(std::vector<int>(a2.begin(), a2.begin() + 2), (std::vector<int>{1, 0}));
  EXPECT_EQ(std::vector<int>(a1.begin(), a1.begin() + 2), (std::vector<int>{1, 0}));
  EXPECT_EQ(std::vector<int>(a2.begin() + 2, a2.end()), (std::vector<int>{1, 0, 0}));
  EXPECT_EQ(std::vector<int>(a1.begin() + 2, a1.end()), (std::vector<int>{2, 0, 0}));
}

TEST(Extract, NonDeterministicStateNeedsGenerator) {
  const CodeSpec spec = ext(1, 1);
  const double r = 1.0 / std::sqrt(2.0);
  const PureState mixed(spec.layout(), {{{0, 0}, r}, {{1, 2}, r}});
  EXPECT_THROW(extract_syndrome(mixed, spec), std::runtime_error);
  const auto branches = syndrome_branches(mixed, spec);
  ASSERT_EQ(branches.size(), 2u);
  double total = 0.0;
  for (const auto& b : branches) {
    EXPECT_FALSE(b.deterministic);
    total += b.probability;
  }
  EXPECT_NEAR(total, 1.0, kTolerance);
  std::mt19937_64 rng(1);
  std::map<std::vector<int>, int> seen;
  for (int i = 0; i < 200; ++i) ++seen[extract_syndrome(mixed, spec, &rng).outcomes];
  EXPECT_EQ(seen.size(), 2u);
  std::mt19937_64 rng_a(9), rng_b(9);
  EXPECT_EQ(extract_syndrome(mixed, spec, &rng_a).outcomes,
            extract_syndrome(mixed, spec, &rng_b).outcomes);
}

TEST(Extract, RejectsEmptyAndForeignStates) {
  const CodeSpec spec = ext(1, 1);
  EXPECT_THROW(extract_syndrome(PureState(spec.layout()), spec), std::invalid_argument);
  const PureState other = PureState::basis(ModeLayout::uniform(3, 2), {0, 0, 0});
  EXPECT_THROW(extract_syndrome(other, spec), std::invalid_argument);
}

TEST(Decode, ExhaustiveDeterminismAndCorrectness) {
  for (int w = 1; w <= 3; ++w) {
    for (int k = 1; k <= 3; ++k) {
      const CodeSpec spec = ext(w, k);
      const auto checks = exhaustive_syndrome_check(spec);
      const auto patterns = enumerate_loss_patterns(spec.num_modes(), w);
      EXPECT_GE(checks.size(), patterns.size());
      for (const SyndromeCheck& c : checks) {
        EXPECT_TRUE(c.deterministic) << w << k << " " << to_string(c.pattern);
        EXPECT_NEAR(c.probability, 1.0, kTolerance);
        EXPECT_TRUE(c.match) << w << k << " " << to_string(c.pattern);
      }
    }
  }
}

TEST(Decode, OutcomeTuplesAreInjectiveOverCorrectablePatterns) {
  for (int w = 1; w <= 3; ++w) {
    for (int k = 1; k <= 3; ++k) {
      const CodeSpec spec = ext(w, k);
      std::map<std::vector<int>, LossPattern> seen;
      for (const LossPattern& p : enumerate_loss_patterns(spec.num_modes(), w)) {
        const auto [it, inserted] = seen.emplace(expected_outcomes(spec, p), p);
        EXPECT_TRUE(inserted) << to_string(p) << " collides with " << to_string(it->second);
      }
    }
  }
}

TEST(Decode, ChainAndBridgeFollowFromReadouts) {
  const CodeSpec spec = ext(3, 2);
  for (const LossPattern& p : enumerate_loss_patterns(spec.num_modes(), 3)) {
    const auto out = expected_outcomes(spec, p);
    for (int i = 0; i + 1 < spec.w; ++i) {
      const int d = p[i + 1] - p[i];
      EXPECT_EQ(out[i], (d * d) % (spec.w + 1));
    }
  }
}

TEST(Decode, FlagsInconsistentAndHeavyPatterns) {
  const CodeSpec spec = ext(1, 1);
  // bridge says 0 but readouts imply a single loss
  EXPECT_EQ(decode_lookup({0, 1, 0}, spec).status, DecodeStatus::kInconsistent);
  EXPECT_EQ(decode_lookup({0, 5, 0}, spec).status, DecodeStatus::kInconsistent);
  EXPECT_THROW(decode_lookup({0, 0}, spec), std::invalid_argument);
  // both modes lost one: consistent but weight 2 > w
  const auto heavy = expected_outcomes(spec, LossPattern({1, 1}));
  const DecodeResult d = decode_lookup(heavy, spec);
  EXPECT_EQ(d.status, DecodeStatus::kAmbiguous);
  SyndromeRecord r{heavy, 1.0, true, std::nullopt, false, PureState::basis(spec.layout(), {0, 0})};
  decode_record(r, spec);
  EXPECT_TRUE(r.ambiguous);
  EXPECT_FALSE(r.decoded.has_value());
}

TEST(Recover, ShiftUpRestoresCodeOccupations) {
  const CodeSpec spec = ext(1, 1);
  SyndromeRecord r = extract_syndrome(PureState::basis(spec.layout(), {1, 2}), spec);
  decode_record(r, spec);
  const PureState rec = recover_naive(r, spec);
  EXPECT_LT(distance(rec, PureState::basis(spec.layout(), {2, 2})), kTolerance);
  EXPECT_THROW(shift_up(PureState::basis(spec.layout(), {2, 2}), LossPattern({1, 0})),
               std::out_of_range);
}

TEST(Recover, UndamagedCodewordIsUnchanged) {
  const CodeSpec spec = ext(2, 2);
  const LogicalBasis basis = build_basis(spec);
  for (const PureState& c : basis.codewords()) {
    SyndromeRecord r = extract_syndrome(c, spec);
    decode_record(r, spec);
    EXPECT_LT(distance(recover_naive(r, spec), c), kTolerance);
  }
}

TEST(Recover, EveryCorrectableBranchReturnsToCodeOccupations) {
  for (int w = 1; w <= 3; ++w) {
    const CodeSpec spec = ext(w, 2);
    const LogicalBasis basis = build_basis(spec);
    for (const LossPattern& p : enumerate_loss_patterns(spec.num_modes(), w)) {
      for (const PureState& c : basis.codewords()) {
        const PureState damaged = apply_loss(p, DampingParam(0.05), c);
        if (damaged.empty()) continue;
        SyndromeRecord r = extract_syndrome(damaged, spec);
        decode_record(r, spec);
        ASSERT_TRUE(r.decoded.has_value());
        const PureState recovered = recover_naive(r, spec);
        for (const auto& [n, a] : recovered.amplitudes()) {
          for (int x : n) EXPECT_EQ(x % (w + 1), 0);
        }
      }
    }
  }
}

TEST(Recover, NoLossBranchEnvelopeDistortionIsSecondOrder) {
  const CodeSpec spec = ext(1, 1);
  const LogicalBasis basis = build_basis(spec);
  for (double gamma : {1e-3, 1e-2}) {
    // The no-loss branch keeps both components with the (1-gamma)^(n/2)
    // envelope; conditional re-excitation does not undo it.
    const PureState damaged = apply_loss(LossPattern({0, 0}), DampingParam(gamma),
                                         basis.codeword(0));
    SyndromeRecord r = extract_syndrome(damaged, spec);
    decode_record(r, spec);
    const double overlap = std::abs(inner(basis.codeword(0), recover_naive(r, spec)));
    const double a = 1.0, b = std::pow(1 - gamma, 2);
    EXPECT_NEAR(overlap, (a + b) / std::sqrt(2.0 * (a * a + b * b)), 1e-14);
    EXPECT_LT(1.0 - overlap, gamma * gamma);
  }
}

TEST(Recover, SingleLossBranchKeepsOnlyOneComponent) {
  // A single loss annihilates the vacuum component, so re-excitation returns
  // one Fock state with overlap 1/sqrt2 for every gamma. This is the source
  // of the first-order infidelity of the naive recovery.
  const CodeSpec spec = ext(1, 1);
  const LogicalBasis basis = build_basis(spec);
  for (const LossPattern& p : {LossPattern({1, 0}), LossPattern({0, 1})}) {
    for (int i = 0; i < 2; ++i) {
      const PureState damaged = apply_loss(p, DampingParam(0.01), basis.codeword(i));
      SyndromeRecord r = extract_syndrome(damaged, spec);
      decode_record(r, spec);
      const PureState rec = recover_naive(r, spec);
      EXPECT_EQ(rec.size(), 1u);
      EXPECT_NEAR(std::abs(inner(basis.codeword(i), rec)), 1.0 / std::sqrt(2.0), 1e-14);
    }
  }
}

}  // namespace
}  // namespace xbin
