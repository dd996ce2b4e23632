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

#include "xbin/fock.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace xbin {

namespace {

int positive_mod(long long value, int modulus) {
  long long r = value % modulus;
  return static_cast<int>(r < 0 ? r + modulus : r);
}

void require_same_layout(const ModeLayout& a, const ModeLayout& b,
                         const char* what) {
  if (!(a == b)) {
    throw std::invalid_argument(std::string(what) + ": layout mismatch " +
                                to_string(a) + " vs " + to_string(b));
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// ModeLayout

ModeLayout::ModeLayout(std::vector<int> cutoffs) : cutoffs_(std::move(cutoffs)) {
  if (cutoffs_.empty()) {
    throw std::invalid_argument("ModeLayout: at least one mode is required");
  }
  for (int c : cutoffs_) {
    if (c < 1) {
      throw std::invalid_argument("ModeLayout: every cutoff must be >= 1");
    }
  }
}

ModeLayout ModeLayout::uniform(int num_modes, int cutoff) {
  if (num_modes < 1) {
    throw std::invalid_argument("ModeLayout: at least one mode is required");
  }
  return ModeLayout(std::vector<int>(num_modes, cutoff));
}

bool ModeLayout::contains(const Occupation& occupation) const {
  if (occupation.size() != cutoffs_.size()) return false;
  for (std::size_t j = 0; j < cutoffs_.size(); ++j) {
    if (occupation[j] < 0 || occupation[j] > cutoffs_[j]) return false;
  }
  return true;
}

void ModeLayout::check(const Occupation& occupation) const {
  if (!contains(occupation)) {
    throw std::invalid_argument("occupation " + to_string(occupation) +
                                " is not valid for layout " + to_string(*this));
  }
}

ModeLayout ModeLayout::concat(const ModeLayout& other) const {
  std::vector<int> c = cutoffs_;
  c.insert(c.end(), other.cutoffs_.begin(), other.cutoffs_.end());
  return ModeLayout(std::move(c));
}

std::size_t ModeLayout::dimension() const {
  std::size_t d = 1;
  for (int c : cutoffs_) d *= static_cast<std::size_t>(c + 1);
  return d;
}

std::vector<Occupation> ModeLayout::basis() const {
  std::vector<Occupation> out;
  out.reserve(dimension());
  Occupation n(cutoffs_.size(), 0);
  while (true) {
    out.push_back(n);
    int j = static_cast<int>(n.size()) - 1;
    while (j >= 0 && n[j] == cutoffs_[j]) {
      n[j] = 0;
      --j;
    }
    if (j < 0) break;
    ++n[j];
  }
  return out;
}

std::string to_string(const ModeLayout& layout) {
  return "cutoffs" + to_string(layout.cutoffs());
}

std::string to_string(const Occupation& occupation) {
  std::ostringstream os;
  os << '(';
  for (std::size_t j = 0; j < occupation.size(); ++j) {
    if (j) os << ',';
    os << occupation[j];
  }
  os << ')';
  return os.str();
}

// ---------------------------------------------------------------------------
// PureState

PureState::PureState(ModeLayout layout) : layout_(std::move(layout)) {}

PureState::PureState(ModeLayout layout, Amplitudes amplitudes)
    : layout_(std::move(layout)), amplitudes_(std::move(amplitudes)) {
  for (const auto& [n, amp] : amplitudes_) {
    layout_.check(n);
    if (!std::isfinite(amp.real()) || !std::isfinite(amp.imag())) {
      throw std::invalid_argument("PureState: non-finite amplitude");
    }
  }
  canonicalize();
}

PureState PureState::basis(ModeLayout layout, Occupation occupation) {
  Amplitudes amps;
  amps.emplace(std::move(occupation), Complex(1.0, 0.0));
  return PureState(std::move(layout), std::move(amps));
}

void PureState::canonicalize() {
  std::erase_if(amplitudes_,
                [](const auto& kv) { return std::abs(kv.second) < kPruneThreshold; });
}

Complex PureState::amplitude(const Occupation& occupation) const {
  auto it = amplitudes_.find(occupation);
  return it == amplitudes_.end() ? Complex{} : it->second;
}

double PureState::norm_squared() const {
  double s = 0.0;
  for (const auto& [n, amp] : amplitudes_) s += std::norm(amp);
  return s;
}

double PureState::norm() const { return std::sqrt(norm_squared()); }

PureState PureState::normalized() const {
  double nrm = norm();
  if (nrm == 0.0) throw std::domain_error("cannot normalize the zero state");
  return scaled(1.0 / nrm);
}

PureState PureState::scaled(Complex factor) const {
  Amplitudes amps = amplitudes_;
  for (auto& [n, amp] : amps) amp *= factor;
  PureState out(layout_);
  out.amplitudes_ = std::move(amps);
  out.canonicalize();
  return out;
}

PureState PureState::relabeled(
    const ModeLayout& layout,
    const std::function<Occupation(const Occupation&)>& f) const {
  Amplitudes amps;
  for (const auto& [n, amp] : amplitudes_) amps[f(n)] += amp;
  return PureState(layout, std::move(amps));
}

PureState operator+(const PureState& a, const PureState& b) {
  require_same_layout(a.layout_, b.layout_, "PureState +");
  PureState::Amplitudes amps = a.amplitudes_;
  for (const auto& [n, amp] : b.amplitudes_) amps[n] += amp;
  PureState out(a.layout_);
  out.amplitudes_ = std::move(amps);
  out.canonicalize();
  return out;
}

PureState operator-(const PureState& a, const PureState& b) {
  return a + b.scaled(-1.0);
}

PureState tensor(const PureState& a, const PureState& b) {
  PureState::Amplitudes amps;
  for (const auto& [na, xa] : a.amplitudes()) {
    for (const auto& [nb, xb] : b.amplitudes()) {
      Occupation n = na;
      n.insert(n.end(), nb.begin(), nb.end());
      amps.emplace(std::move(n), xa * xb);
    }
  }
  return PureState(a.layout().concat(b.layout()), std::move(amps));
}

PureState tensor(std::span<const PureState> factors) {
  if (factors.empty()) throw std::invalid_argument("tensor: no factors");
  PureState out = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) out = tensor(out, factors[i]);
  return out;
}

Complex inner(const PureState& a, const PureState& b) {
  require_same_layout(a.layout(), b.layout(), "inner");
  Complex s{};
  // Walk the smaller support; iteration is in lexicographic key order.
  const bool a_small = a.size() <= b.size();
  const auto& small = a_small ? a.amplitudes() : b.amplitudes();
  const auto& large = a_small ? b.amplitudes() : a.amplitudes();
  for (const auto& [n, x] : small) {
    auto it = large.find(n);
    if (it == large.end()) continue;
    s += a_small ? std::conj(x) * it->second : std::conj(it->second) * x;
  }
  return s;
}

double distance(const PureState& a, const PureState& b) { return (a - b).norm(); }

bool equal_up_to_phase(const PureState& a, const PureState& b, double tol) {
  Complex ov = inner(a, b);
  if (std::abs(ov) == 0.0) return a.norm() <= tol && b.norm() <= tol;
  return distance(a.scaled(ov / std::abs(ov)), b) <= tol;
}

double total_number_expectation(const PureState& s) {
  if (std::abs(s.norm_squared() - 1.0) > 1e-9) {
    throw std::invalid_argument("total_number_expectation: state is not normalized");
  }
  double e = 0.0;
  for (const auto& [n, amp] : s.amplitudes()) {
    e += std::norm(amp) * std::accumulate(n.begin(), n.end(), 0);
  }
  return e;
}

// ---------------------------------------------------------------------------
// LinearMap

LinearMap::LinearMap(ModeLayout in_layout, ModeLayout out_layout)
    : in_layout_(std::move(in_layout)), out_layout_(std::move(out_layout)) {}

LinearMap::LinearMap(ModeLayout in_layout, ModeLayout out_layout, Columns columns)
    : in_layout_(std::move(in_layout)),
      out_layout_(std::move(out_layout)),
      columns_(std::move(columns)) {
  for (const auto& [in, col] : columns_) {
    in_layout_.check(in);
    for (const auto& [out, v] : col) out_layout_.check(out);
  }
  prune();
}

LinearMap LinearMap::identity(const ModeLayout& layout) {
  return diagonal(layout, [](const Occupation&) { return Complex(1.0, 0.0); });
}

LinearMap LinearMap::diagonal(const ModeLayout& layout,
                              const std::function<Complex(const Occupation&)>& f) {
  Columns cols;
  for (Occupation& n : layout.basis()) {
    Complex v = f(n);
    if (std::abs(v) < kPruneThreshold) continue;
    Column c;
    c.emplace(n, v);
    cols.emplace(std::move(n), std::move(c));
  }
  LinearMap m(layout, layout);
  m.columns_ = std::move(cols);
  return m;
}

LinearMap LinearMap::zero(const ModeLayout& in_layout, const ModeLayout& out_layout) {
  return LinearMap(in_layout, out_layout);
}

void LinearMap::prune() {
  for (auto it = columns_.begin(); it != columns_.end();) {
    std::erase_if(it->second, [](const auto& kv) {
      return std::abs(kv.second) < kPruneThreshold;
    });
    it = it->second.empty() ? columns_.erase(it) : std::next(it);
  }
}

Complex LinearMap::entry(const Occupation& out, const Occupation& in) const {
  auto col = columns_.find(in);
  if (col == columns_.end()) return {};
  auto it = col->second.find(out);
  return it == col->second.end() ? Complex{} : it->second;
}

std::size_t LinearMap::nonzeros() const {
  std::size_t n = 0;
  for (const auto& [in, col] : columns_) n += col.size();
  return n;
}

PureState LinearMap::apply(const PureState& s) const {
  require_same_layout(s.layout(), in_layout_, "LinearMap::apply");
  PureState::Amplitudes amps;
  for (const auto& [n, x] : s.amplitudes()) {
    auto col = columns_.find(n);
    if (col == columns_.end()) continue;
    for (const auto& [out, v] : col->second) amps[out] += v * x;
  }
  return PureState(out_layout_, std::move(amps));
}

LinearMap LinearMap::adjoint() const {
  Columns cols;
  for (const auto& [in, col] : columns_) {
    for (const auto& [out, v] : col) cols[out][in] = std::conj(v);
  }
  LinearMap m(out_layout_, in_layout_);
  m.columns_ = std::move(cols);
  return m;
}

LinearMap LinearMap::after(const LinearMap& first) const {
  require_same_layout(first.out_layout_, in_layout_, "LinearMap::after");
  Columns cols;
  for (const auto& [in, mid_col] : first.columns_) {
    Column out_col;
    for (const auto& [mid, u] : mid_col) {
      auto col = columns_.find(mid);
      if (col == columns_.end()) continue;
      for (const auto& [out, v] : col->second) out_col[out] += v * u;
    }
    if (!out_col.empty()) cols.emplace(in, std::move(out_col));
  }
  LinearMap m(first.in_layout_, out_layout_);
  m.columns_ = std::move(cols);
  m.prune();
  return m;
}

LinearMap LinearMap::scaled(Complex factor) const {
  LinearMap m = *this;
  for (auto& [in, col] : m.columns_) {
    for (auto& [out, v] : col) v *= factor;
  }
  m.prune();
  return m;
}

LinearMap operator+(const LinearMap& a, const LinearMap& b) {
  require_same_layout(a.in_layout_, b.in_layout_, "LinearMap +");
  require_same_layout(a.out_layout_, b.out_layout_, "LinearMap +");
  LinearMap m = a;
  for (const auto& [in, col] : b.columns_) {
    for (const auto& [out, v] : col) m.columns_[in][out] += v;
  }
  m.prune();
  return m;
}

LinearMap operator-(const LinearMap& a, const LinearMap& b) {
  return a + b.scaled(-1.0);
}

LinearMap kron(const LinearMap& a, const LinearMap& b) {
  LinearMap::Columns cols;
  for (const auto& [in_a, col_a] : a.columns()) {
    for (const auto& [in_b, col_b] : b.columns()) {
      Occupation in = in_a;
      in.insert(in.end(), in_b.begin(), in_b.end());
      LinearMap::Column col;
      for (const auto& [out_a, va] : col_a) {
        for (const auto& [out_b, vb] : col_b) {
          Occupation out = out_a;
          out.insert(out.end(), out_b.begin(), out_b.end());
          col.emplace(std::move(out), va * vb);
        }
      }
      cols.emplace(std::move(in), std::move(col));
    }
  }
  return LinearMap(a.in_layout().concat(b.in_layout()),
                   a.out_layout().concat(b.out_layout()), std::move(cols));
}

double max_abs_difference(const LinearMap& a, const LinearMap& b) {
  LinearMap d = a - b;
  double m = 0.0;
  for (const auto& [in, col] : d.columns()) {
    for (const auto& [out, v] : col) m = std::max(m, std::abs(v));
  }
  return m;
}

// ---------------------------------------------------------------------------
// Measurement

int IntegerObservable::evaluate(const Occupation& occupation) const {
  long long s = 0;
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    s += static_cast<long long>(coeffs[j]) * occupation[j];
  }
  if (squared) s *= s;
  return positive_mod(s, modulus);
}

std::vector<MeasurementOutcome> measure_integer_observable(
    const PureState& s, const IntegerObservable& observable) {
  if (s.empty()) throw std::invalid_argument("measure: empty state");
  if (static_cast<int>(observable.coeffs.size()) != s.layout().num_modes()) {
    throw std::invalid_argument("measure: coefficient count must equal mode count");
  }
  if (observable.modulus < 2) throw std::invalid_argument("measure: modulus must be >= 2");

  std::map<int, PureState::Amplitudes> parts;
  for (const auto& [n, amp] : s.amplitudes()) parts[observable.evaluate(n)].emplace(n, amp);

  const double total = s.norm_squared();
  std::vector<MeasurementOutcome> out;
  for (auto& [value, amps] : parts) {
    PureState projected(s.layout(), std::move(amps));
    double p = projected.norm_squared();
    out.push_back({value, p / total, projected.normalized()});
  }
  return out;
}

std::vector<MeasurementOutcome> measure_integer_observable(
    const PureState& s, std::span<const int> coeffs, int modulus, bool squared) {
  return measure_integer_observable(
      s, IntegerObservable{{coeffs.begin(), coeffs.end()}, modulus, squared});
}

double BranchEnsemble::total_probability() const {
  double s = 0.0;
  for (const auto& b : branches) s += b.probability();
  return s;
}

double BranchEnsemble::tail_probability() const {
  return std::max(0.0, 1.0 - total_probability());
}

}  // namespace xbin
