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

#include "xbin/channels.h"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

namespace xbin {

DampingParam::DampingParam(double gamma) : gamma_(gamma) {
  if (!(gamma >= 0.0 && gamma < 1.0)) {
    throw std::invalid_argument("damping parameter must lie in [0, 1)");
  }
}

LossPattern::LossPattern(std::vector<int> counts) : counts_(std::move(counts)) {
  for (int c : counts_) {
    if (c < 0) throw std::invalid_argument("loss counts must be nonnegative");
  }
}

LossPattern LossPattern::none(int num_modes) {
  return LossPattern(std::vector<int>(num_modes, 0));
}

int LossPattern::weight() const {
  return std::accumulate(counts_.begin(), counts_.end(), 0);
}

std::string to_string(const LossPattern& pattern) {
  return to_string(pattern.counts());
}

double binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0.0;
  boost::multiprecision::cpp_int c = 1;
  k = std::min(k, n - k);
  for (int i = 1; i <= k; ++i) {
    c *= n - k + i;
    c /= i;
  }
  return c.convert_to<double>();
}

double kraus_element(int k, int ell, DampingParam gamma) {
  if (ell > k) return 0.0;
  const double g = gamma.value();
  // std::pow(0, 0) == 1 covers the gamma == 0, ell == 0 case.
  return std::sqrt(binomial(k, ell) * std::pow(1.0 - g, k - ell) * std::pow(g, ell));
}

LinearMap single_mode_kraus(int ell, DampingParam gamma, int cutoff) {
  if (ell < 0 || ell > cutoff) {
    throw std::invalid_argument("single_mode_kraus: loss count exceeds cutoff");
  }
  ModeLayout layout({cutoff});
  LinearMap::Columns cols;
  for (int k = ell; k <= cutoff; ++k) {
    double v = kraus_element(k, ell, gamma);
    if (v == 0.0) continue;
    cols[{k}][{k - ell}] = v;
  }
  return LinearMap(layout, layout, std::move(cols));
}

LinearMap multi_mode_kraus(const LossPattern& pattern, DampingParam gamma,
                           const ModeLayout& layout) {
  if (pattern.num_modes() != layout.num_modes()) {
    throw std::invalid_argument("multi_mode_kraus: pattern length must equal mode count");
  }
  LinearMap m = single_mode_kraus(pattern[0], gamma, layout.cutoff(0));
  for (int j = 1; j < layout.num_modes(); ++j) {
    m = kron(m, single_mode_kraus(pattern[j], gamma, layout.cutoff(j)));
  }
  return m;
}

PureState apply_loss(const LossPattern& pattern, DampingParam gamma,
                     const PureState& s) {
  const int modes = s.layout().num_modes();
  if (pattern.num_modes() != modes) {
    throw std::invalid_argument("apply_loss: pattern length must equal mode count");
  }
  PureState::Amplitudes amps;
  for (const auto& [n, amp] : s.amplitudes()) {
    double factor = 1.0;
    Occupation out = n;
    for (int j = 0; j < modes; ++j) {
      if (n[j] < pattern[j]) {
        factor = 0.0;
        break;
      }
      factor *= kraus_element(n[j], pattern[j], gamma);
      out[j] -= pattern[j];
    }
    if (factor != 0.0) amps[out] += factor * amp;
  }
  return PureState(s.layout(), std::move(amps));
}

std::vector<LossPattern> enumerate_loss_patterns(int num_modes, int max_weight) {
  if (num_modes < 1) throw std::invalid_argument("need at least one mode");
  std::vector<LossPattern> out;
  if (max_weight < 0) return out;
  std::vector<int> a(num_modes, 0);
  // Odometer over [0, max_weight]^N skipping overweight prefixes.
  while (true) {
    out.emplace_back(a);
    int j = num_modes - 1;
    while (j >= 0) {
      ++a[j];
      if (std::accumulate(a.begin(), a.begin() + j + 1, 0) <= max_weight) break;
      a[j] = 0;
      --j;
    }
    if (j < 0) break;
  }
  return out;
}

DampingParam damping_from_lifetime(double delta_t, double t1) {
  if (!(t1 > 0.0)) throw std::invalid_argument("T1 must be positive");
  if (delta_t < 0.0) throw std::invalid_argument("duration must be nonnegative");
  return DampingParam(-std::expm1(-delta_t / t1));
}

LinearMap cc_unitary(CCParams params, const ModeLayout& layout) {
  return LinearMap::diagonal(layout, [&](const Occupation& n) {
    const int total = std::accumulate(n.begin(), n.end(), 0);
    return std::polar(1.0, -params.delta_t * total);
  });
}

PureState apply_cc(CCParams params, const PureState& s) {
  PureState::Amplitudes amps = s.amplitudes();
  for (auto& [n, amp] : amps) {
    amp *= std::polar(1.0, -params.delta_t * std::accumulate(n.begin(), n.end(), 0));
  }
  return PureState(s.layout(), std::move(amps));
}

BranchEnsemble apply_ad_channel(const PureState& s, DampingParam gamma,
                                int max_weight, std::optional<CCParams> cc) {
  const PureState evolved = cc ? apply_cc(*cc, s) : s;
  BranchEnsemble ensemble;
  for (const LossPattern& a : enumerate_loss_patterns(s.layout().num_modes(), max_weight)) {
    PureState damaged = apply_loss(a, gamma, evolved);
    if (damaged.empty()) continue;
    ensemble.branches.push_back({a.counts(), std::move(damaged)});
  }
  return ensemble;
}

}  // namespace xbin
