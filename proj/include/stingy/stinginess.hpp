// Copyright 2026 The Stingy Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <thread>
#include <variant>
#include <vector>

#include "stingy/channels.hpp"
#include "stingy/metrics.hpp"
#include "stingy/qregister.hpp"
#include "stingy/random.hpp"

namespace stingy {

// ---------------------------------------------------------------------------
// Classical comb

/// Exact non-negative fraction in lowest terms.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const { return double(num) / double(den); }
  friend bool operator==(const Rational&, const Rational&) = default;
};

/// A comb with `teeth` teeth of which `broken` have broken off.
class ClassicalComb {
 public:
  ClassicalComb(std::int64_t teeth, std::int64_t broken) : teeth_(teeth), broken_(broken) {
    if (teeth < 1) throw Error(ErrorCode::BadParams, "a comb needs at least one tooth, got " + std::to_string(teeth));
    if (broken < 0 || broken > teeth)
      throw Error(ErrorCode::BadParams,
                  "broken count " + std::to_string(broken) + " outside [0, " + std::to_string(teeth) + "]");
  }

  std::int64_t teeth() const { return teeth_; }
  std::int64_t broken() const { return broken_; }

 private:
  std::int64_t teeth_;
  std::int64_t broken_;
};

/// Classical stinginess: the fraction of teeth lost before the comb is replaced.
inline Rational s_classical(const ClassicalComb& comb) {
  const std::int64_t g = std::gcd(comb.broken(), comb.teeth());
  return {comb.broken() / g, comb.teeth() / g};
}

// ---------------------------------------------------------------------------
// Quantum measure

/// Value of the quantum measure: finite, or the infinite value assigned when
/// every qubit is lost. Infinite compares above every finite threshold.
template <typename Real = double>
class StinginessValue {
 public:
  static StinginessValue finite(Real v) { return StinginessValue(v); }
  static StinginessValue infinite() { return StinginessValue(); }

  bool is_infinite() const { return !value_.has_value(); }
  bool is_finite() const { return value_.has_value(); }
  Real value() const {
    if (!value_) throw Error(ErrorCode::BadParams, "value of an infinite stinginess");
    return *value_;
  }

  /// value <= threshold; never true for Infinite.
  bool within(Real threshold) const { return value_.has_value() && *value_ <= threshold; }

  friend bool operator==(const StinginessValue&, const StinginessValue&) = default;

 private:
  StinginessValue() = default;
  explicit StinginessValue(Real v) : value_(v) {}
  std::optional<Real> value_;
};

/// Loss scenario and reduced basis element that attain the minimum.
template <typename Real = double>
struct MeasureWitness {
  StinginessValue<Real> value = StinginessValue<Real>::infinite();
  /// Empty for the infinite value.
  std::optional<QubitSubset> minimizing_subset;
  /// Bits of the kept qubits, first kept qubit most significant.
  std::uint64_t minimizing_kept_bits = 0;
  /// Distance between the reduced state and the reduced basis element.
  Real distance = std::numeric_limits<Real>::quiet_NaN();
};

struct SearchOptions {
  /// Worker threads for the (subset, kept bits) scan. Results do not depend on it.
  int threads = 1;
};

/// Candidates within this much of the running minimum count as ties and
/// keep the earlier (lexicographically smaller) witness.
template <typename Real>
inline constexpr Real kTieTolerance = Real(1e-12);

namespace detail {

inline void check_loss(int m, int n) {
  if (m < 0 || m > n)
    throw Error(ErrorCode::BadLossCount, "lost count " + std::to_string(m) + " outside [0, " + std::to_string(n) + "]");
}

template <typename Real>
void check_basis(const DensityMatrix<Real>& rho, const ProductBasis<Real>& basis) {
  if (basis.qubits() != rho.qubits())
    throw Error(ErrorCode::BasisMismatch, "basis is over " + std::to_string(basis.qubits()) + " qubits, state has " +
                                              std::to_string(rho.qubits()));
}

template <typename Real>
Real combine(int m, int n, Real d) {
  return (Real(m) / Real(n) + d) / Real(2);
}

template <typename Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
  const std::size_t workers = std::min<std::size_t>(std::max(threads, 1), std::max<std::size_t>(count, 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += workers) fn(i);
    });
}

}  // namespace detail

/// Quantum stinginess of rho after losing m qubits: half of m/n plus the
/// minimum distance between tr_m rho and tr_m |psi_i><psi_i|, minimized over
/// every m-subset and every preferred basis element. Infinite when m == n.
///
/// Tracing a product basis element leaves the product state on the kept
/// qubits, so only 2^(n-m) distinct targets per subset are scanned. Ties
/// resolve to the smallest lost subset, then the smallest kept bits.
template <typename Real>
MeasureWitness<Real> s_quantum(const DensityMatrix<Real>& rho, int m, const ProductBasis<Real>& basis,
                               DistanceMeasure measure = DistanceMeasure::Trace, SearchOptions opts = {}) {
  const int n = rho.qubits();
  detail::check_basis(rho, basis);
  detail::check_loss(m, n);
  if (m == n) return {};

  const auto subsets = subsets_of_size(n, m);
  const std::size_t targets = std::size_t{1} << (n - m);
  std::vector<Real> dist(subsets.size() * targets);
  detail::parallel_for(subsets.size(), opts.threads, [&](std::size_t s) {
    const auto reduced = partial_trace(rho, subsets[s]);
    for (std::size_t b = 0; b < targets; ++b)
      dist[s * targets + b] = distance(measure, reduced, reduced_basis_state(basis, subsets[s], b));
  });

  std::size_t best = 0;
  for (std::size_t k = 1; k < dist.size(); ++k)
    if (dist[k] < dist[best] - kTieTolerance<Real>) best = k;

  MeasureWitness<Real> w;
  w.distance = dist[best];
  w.value = StinginessValue<Real>::finite(detail::combine(m, n, w.distance));
  w.minimizing_subset = subsets[best / targets];
  w.minimizing_kept_bits = best % targets;
  return w;
}

/// Register cap for the brute-force reference.
inline constexpr int kBruteForceMaxQubits = 6;

/// Reference evaluation of the quantum measure: every full basis index i and
/// every subset, each target built as partial_trace of |psi_i><psi_i|.
template <typename Real>
StinginessValue<Real> s_quantum_bruteforce(const DensityMatrix<Real>& rho, int m, const ProductBasis<Real>& basis,
                                           DistanceMeasure measure = DistanceMeasure::Trace) {
  const int n = rho.qubits();
  if (n > kBruteForceMaxQubits)
    throw Error(ErrorCode::RegisterTooLarge, "brute force is limited to " + std::to_string(kBruteForceMaxQubits) +
                                                 " qubits, got " + std::to_string(n));
  detail::check_basis(rho, basis);
  detail::check_loss(m, n);
  if (m == n) return StinginessValue<Real>::infinite();

  Real best = std::numeric_limits<Real>::infinity();
  for (const auto& subset : subsets_of_size(n, m)) {
    const auto reduced = partial_trace(rho, subset);
    for (std::uint64_t i = 0; i < (std::uint64_t{1} << n); ++i) {
      const auto target = partial_trace(pure_to_density(basis_state(basis, i)), subset);
      best = std::min(best, distance(measure, reduced, target));
    }
  }
  return StinginessValue<Real>::finite(detail::combine(m, n, best));
}

// ---------------------------------------------------------------------------
// Free states

/// Loss count, threshold, basis and distance that define one free set.
template <typename Real = double>
struct FreeSetSpec {
  int m = 0;
  Real threshold = 0;
  ProductBasis<Real> basis;
  DistanceMeasure distance = DistanceMeasure::Trace;
};

template <typename Real>
FreeSetSpec<Real> make_free_set_spec(int m, Real threshold, ProductBasis<Real> basis,
                                     DistanceMeasure measure = DistanceMeasure::Trace) {
  detail::check_loss(m, basis.qubits());
  if (!(threshold >= 0) || !std::isfinite(threshold))
    throw Error(ErrorCode::BadThreshold, "threshold must be finite and non-negative, got " + detail::fmt_real(double(threshold)));
  return FreeSetSpec<Real>{m, threshold, std::move(basis), measure};
}

template <typename Real = double>
struct Membership {
  bool free = false;
  MeasureWitness<Real> witness;
};

/// Free iff the measure is finite and does not exceed the threshold.
template <typename Real>
Membership<Real> is_free(const DensityMatrix<Real>& rho, const FreeSetSpec<Real>& spec, SearchOptions opts = {}) {
  auto w = s_quantum(rho, spec.m, spec.basis, spec.distance, opts);
  const bool free = w.value.within(spec.threshold);
  return {free, std::move(w)};
}

/// Reset iff the value is strictly above the threshold (Infinite always resets).
template <typename Real>
bool reset_decision(const StinginessValue<Real>& value, Real threshold) {
  if (!(threshold >= 0)) throw Error(ErrorCode::BadThreshold, "threshold must be non-negative");
  return !value.within(threshold);
}

// ---------------------------------------------------------------------------
// Free-operation falsifier

struct SamplerConfig {
  int max_samples = 500;
  std::uint64_t seed = 0;
  double basis_fraction = 0.2;
  double ginibre_fraction = 0.4;
  double blend_fraction = 0.4;
};

template <typename Real = double>
struct ViolationFound {
  DensityMatrix<Real> input_state;
  DensityMatrix<Real> output_state;
  StinginessValue<Real> input_value;
  StinginessValue<Real> output_value;
  /// 1-based index of the draw that produced the witness.
  int draw = 0;
};

struct NoViolationFound {
  /// Free inputs that were pushed through the channel.
  int samples_tested = 0;
  int samples_drawn = 0;
};

struct NoFreeSamplesFound {
  int samples_drawn = 0;
};

template <typename Real = double>
using FalsifierVerdict = std::variant<ViolationFound<Real>, NoViolationFound, NoFreeSamplesFound>;

namespace detail {

/// Draws candidate inputs: preferred basis elements, Ginibre states, and
/// basis elements blended with Ginibre noise at weight u^2, u uniform.
template <typename Real>
class FreeSetSampler {
 public:
  FreeSetSampler(const ProductBasis<Real>& basis, const SamplerConfig& cfg) : basis_(basis), cfg_(cfg), rng_(cfg.seed) {
    const double fr[] = {cfg.basis_fraction, cfg.ginibre_fraction, cfg.blend_fraction};
    for (double f : fr)
      if (!(f >= 0)) throw Error(ErrorCode::BadParams, "sampler fractions must be non-negative");
    if (std::abs(fr[0] + fr[1] + fr[2] - 1.0) > 1e-9) throw Error(ErrorCode::BadParams, "sampler fractions must sum to 1");
    if (cfg.max_samples < 1) throw Error(ErrorCode::BadParams, "sampler needs at least one sample");
  }

  DensityMatrix<Real> next() {
    const int n = basis_.qubits();
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<std::uint64_t> index(0, (std::uint64_t{1} << n) - 1);
    const double u = unit(rng_);
    if (u < cfg_.basis_fraction) return pure_to_density(basis_state(basis_, index(rng_)));
    if (u < cfg_.basis_fraction + cfg_.ginibre_fraction) return ginibre_density<Real>(n, rng_);
    const auto corner = pure_to_density(basis_state(basis_, index(rng_)));
    const auto noise = ginibre_density<Real>(n, rng_);
    const double t = unit(rng_);
    const Real w = Real(t * t);
    return DensityMatrix<Real>(Trusted{}, n, (1 - w) * corner.matrix() + w * noise.matrix());
  }

 private:
  const ProductBasis<Real>& basis_;
  SamplerConfig cfg_;
  std::mt19937_64 rng_;
};

}  // namespace detail

/// Searches for a free input that the channel maps outside the free set.
/// Only drawn states that are free count toward samples_tested. A verdict of
/// NoViolationFound is evidence, not proof, of closure.
template <typename Real>
FalsifierVerdict<Real> falsify_free_operation(const QuantumChannel<Real>& channel, const FreeSetSpec<Real>& spec,
                                              const SamplerConfig& sampler = {}, SearchOptions opts = {}) {
  if (channel.qubits() != spec.basis.qubits())
    throw Error(ErrorCode::ChannelMismatch, "channel acts on " + std::to_string(channel.qubits()) +
                                                " qubits, free set is over " + std::to_string(spec.basis.qubits()));
  detail::FreeSetSampler<Real> draws(spec.basis, sampler);
  int tested = 0;
  for (int s = 1; s <= sampler.max_samples; ++s) {
    auto input = draws.next();
    auto in = is_free(input, spec, opts);
    if (!in.free) continue;
    ++tested;
    auto output = apply_channel(channel, input);
    auto out = is_free(output, spec, opts);
    if (!out.free)
      return ViolationFound<Real>{std::move(input), std::move(output), in.witness.value, out.witness.value, s};
  }
  if (tested == 0) return NoFreeSamplesFound{sampler.max_samples};
  return NoViolationFound{tested, sampler.max_samples};
}

}  // namespace stingy
