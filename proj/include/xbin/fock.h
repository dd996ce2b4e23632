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

#ifndef XBIN_FOCK_H_
#define XBIN_FOCK_H_

#include <complex>
#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace xbin {

using Complex = std::complex<double>;

/// Occupation numbers of every mode, one entry per mode.
using Occupation = std::vector<int>;

/// Amplitudes with magnitude below this are dropped from canonical states.
inline constexpr double kPruneThreshold = 1e-15;
/// Default equality tolerance for states and operators.
inline constexpr double kTolerance = 1e-12;

/// Number of modes and the inclusive per-mode occupation bound.
class ModeLayout {
 public:
  explicit ModeLayout(std::vector<int> cutoffs);
  static ModeLayout uniform(int num_modes, int cutoff);

  int num_modes() const { return static_cast<int>(cutoffs_.size()); }
  int cutoff(int mode) const { return cutoffs_.at(mode); }
  const std::vector<int>& cutoffs() const { return cutoffs_; }

  bool contains(const Occupation& occupation) const;
  void check(const Occupation& occupation) const;

  /// Layout of `this` followed by `other`.
  ModeLayout concat(const ModeLayout& other) const;

  std::size_t dimension() const;

  /// All occupation vectors of the truncated space, in lexicographic order.
  std::vector<Occupation> basis() const;

  bool operator==(const ModeLayout&) const = default;

 private:
  std::vector<int> cutoffs_;
};

std::string to_string(const ModeLayout& layout);
std::string to_string(const Occupation& occupation);

/// Sparse pure state over a truncated multi-mode Fock space.
///
/// Amplitudes are kept in canonical form: keys are ordered lexicographically
/// and entries with magnitude below kPruneThreshold are removed. A state is a
/// value; every transformation returns a new state.
class PureState {
 public:
  using Amplitudes = std::map<Occupation, Complex>;

  explicit PureState(ModeLayout layout);
  PureState(ModeLayout layout, Amplitudes amplitudes);

  static PureState basis(ModeLayout layout, Occupation occupation);

  const ModeLayout& layout() const { return layout_; }
  const Amplitudes& amplitudes() const { return amplitudes_; }
  Complex amplitude(const Occupation& occupation) const;

  bool empty() const { return amplitudes_.empty(); }
  std::size_t size() const { return amplitudes_.size(); }

  double norm_squared() const;
  double norm() const;

  /// Throws std::domain_error for the zero state.
  PureState normalized() const;
  PureState scaled(Complex factor) const;

  /// Applies `f` to every occupation vector; colliding images are summed.
  PureState relabeled(const ModeLayout& layout,
                      const std::function<Occupation(const Occupation&)>& f) const;

  friend PureState operator+(const PureState& a, const PureState& b);
  friend PureState operator-(const PureState& a, const PureState& b);

 private:
  void canonicalize();

  ModeLayout layout_;
  Amplitudes amplitudes_;
};

/// Tensor product; the layout of `b` follows the layout of `a`.
PureState tensor(const PureState& a, const PureState& b);
PureState tensor(std::span<const PureState> factors);

/// <a|b>, conjugate-linear in `a`. Throws std::invalid_argument on layout
/// mismatch.
Complex inner(const PureState& a, const PureState& b);

/// ||a - b||.
double distance(const PureState& a, const PureState& b);

/// True when the states agree up to a global phase within `tol`.
bool equal_up_to_phase(const PureState& a, const PureState& b,
                       double tol = kTolerance);

/// Sum over components of |amp|^2 times total occupation. Input must be
/// normalized within 1e-9.
double total_number_expectation(const PureState& s);

/// Sparse linear map between two layouts, stored column by column.
class LinearMap {
 public:
  using Column = std::map<Occupation, Complex>;
  using Columns = std::map<Occupation, Column>;

  LinearMap(ModeLayout in_layout, ModeLayout out_layout);
  LinearMap(ModeLayout in_layout, ModeLayout out_layout, Columns columns);

  static LinearMap identity(const ModeLayout& layout);
  static LinearMap diagonal(const ModeLayout& layout,
                            const std::function<Complex(const Occupation&)>& f);
  static LinearMap zero(const ModeLayout& in_layout, const ModeLayout& out_layout);

  const ModeLayout& in_layout() const { return in_layout_; }
  const ModeLayout& out_layout() const { return out_layout_; }
  const Columns& columns() const { return columns_; }

  Complex entry(const Occupation& out, const Occupation& in) const;
  std::size_t nonzeros() const;

  PureState apply(const PureState& s) const;
  LinearMap adjoint() const;

  /// (*this) after `first`, i.e. this * first.
  LinearMap after(const LinearMap& first) const;

  LinearMap scaled(Complex factor) const;

  friend LinearMap operator+(const LinearMap& a, const LinearMap& b);
  friend LinearMap operator-(const LinearMap& a, const LinearMap& b);

 private:
  void prune();

  ModeLayout in_layout_;
  ModeLayout out_layout_;
  Columns columns_;
};

/// Kronecker product of maps on disjoint mode ranges.
LinearMap kron(const LinearMap& a, const LinearMap& b);

/// Largest |entry| of a - b.
double max_abs_difference(const LinearMap& a, const LinearMap& b);

/// Integer functional f(n) = (sum_j c_j n_j) mod m, optionally squared
/// before the reduction. The result is always in [0, m).
struct IntegerObservable {
  std::vector<int> coeffs;
  int modulus = 2;
  bool squared = false;

  int evaluate(const Occupation& occupation) const;
};

struct MeasurementOutcome {
  int outcome;
  double probability;
  PureState post_state;  // normalized
};

/// Projective measurement of a diagonal integer observable. Outcomes are
/// returned in increasing order. The input need not be normalized;
/// probabilities are relative to its norm.
std::vector<MeasurementOutcome> measure_integer_observable(
    const PureState& s, const IntegerObservable& observable);

std::vector<MeasurementOutcome> measure_integer_observable(
    const PureState& s, std::span<const int> coeffs, int modulus, bool squared);

/// Unnormalized Kraus branch tagged with an integer label (e.g. a loss
/// pattern). Its probability is its norm squared.
struct Branch {
  std::vector<int> label;
  PureState state;

  double probability() const { return state.norm_squared(); }
};

struct BranchEnsemble {
  std::vector<Branch> branches;

  double total_probability() const;
  /// 1 - total, clamped at zero.
  double tail_probability() const;
};

}  // namespace xbin

#endif  // XBIN_FOCK_H_
