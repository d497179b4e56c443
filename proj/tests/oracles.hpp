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

// Independent reference computations used only by the tests. None of these
// call into the routines they check.

#include <Eigen/Dense>

#include <algorithm>
#include <complex>
#include <cstdint>
#include <vector>

namespace stingy::oracle {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

/// out(a, b) = psi_a * conj(psi_b), entry by entry.
inline Mat outer(const Vec& psi) {
  Mat out(psi.size(), psi.size());
  for (Eigen::Index a = 0; a < psi.size(); ++a)
    for (Eigen::Index b = 0; b < psi.size(); ++b) out(a, b) = psi(a) * std::conj(psi(b));
  return out;
}

/// Bit of qubit q (qubit 0 most significant) in an n-qubit index.
inline int bit(std::uint64_t idx, int n, int q) { return int((idx >> (n - 1 - q)) & 1u); }

/// Naive partial trace: visit every (i, j) pair of the full matrix, keep the
/// pairs whose lost bits agree, and accumulate into the reduced entry named
/// by their kept bits.
inline Mat partial_trace(const Mat& rho, int n, const std::vector<int>& lost) {
  std::vector<int> kept;
  for (int q = 0; q < n; ++q) {
    bool is_lost = false;
    for (int l : lost) is_lost |= (l == q);
    if (!is_lost) kept.push_back(q);
  }
  auto reduced_index = [&](std::uint64_t i) {
    std::uint64_t r = 0;
    for (int q : kept) r = 2 * r + bit(i, n, q);
    return Eigen::Index(r);
  };
  const Eigen::Index d = rho.rows();
  const Eigen::Index dk = Eigen::Index(1) << kept.size();
  Mat out = Mat::Zero(dk, dk);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) {
      bool agree = true;
      for (int l : lost) agree &= bit(i, n, l) == bit(j, n, l);
      if (agree) out(reduced_index(i), reduced_index(j)) += rho(i, j);
    }
  return out;
}

/// Half the sum of |eigenvalue| of the Hermitian difference, via a fresh
/// complex eigensolver (no Hermitian assumption).
inline double trace_distance(const Mat& a, const Mat& b) {
  Eigen::ComplexEigenSolver<Mat> es(a - b);
  return es.eigenvalues().cwiseAbs().sum() / 2;
}

/// Trace distance between a state and a pure projector |phi><phi| for the
/// case rho = I/d: eigenvalues are 1/d - 1 (once) and 1/d (d-1 times).
inline double mixed_to_pure(int dim) { return 1.0 - 1.0 / dim; }

/// Closed form of the depolarizing map.
inline Mat depolarize(const Mat& rho, double p) {
  const Eigen::Index d = rho.rows();
  return (1 - p) * rho + p * Mat::Identity(d, d) / double(d);
}

/// Full basis element i of a product basis given as per-qubit column pairs,
/// built by explicit Kronecker products (qubit 0 leftmost).
inline Vec product_element(const std::vector<Eigen::Matrix2cd>& local, std::uint64_t i) {
  const int n = int(local.size());
  Vec v = Vec::Ones(1);
  for (int q = 0; q < n; ++q) {
    const Eigen::Vector2cd u = local[q].col(bit(i, n, q));
    Vec next(v.size() * 2);
    for (Eigen::Index a = 0; a < v.size(); ++a)
      for (int t = 0; t < 2; ++t) next(2 * a + t) = v(a) * u(t);
    v = next;
  }
  return v;
}

/// Every lost subset of size m, by enumerating all bitmasks.
inline std::vector<std::vector<int>> all_subsets(int n, int m) {
  std::vector<std::vector<int>> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<int> s;
    for (int q = 0; q < n; ++q)
      if (mask & (std::uint64_t{1} << q)) s.push_back(q);
    if (int(s.size()) == m) out.push_back(s);
  }
  return out;
}

/// Minimum trace distance between tr_m rho and tr_m |psi_i><psi_i| over all
/// subsets and all 2^n basis indices (m < n).
inline double min_distance(const Mat& rho, int n, int m, const std::vector<Eigen::Matrix2cd>& local) {
  double best = 1e300;
  for (const auto& lost : all_subsets(n, m)) {
    const Mat reduced = partial_trace(rho, n, lost);
    for (std::uint64_t i = 0; i < (std::uint64_t{1} << n); ++i) {
      const Mat target = partial_trace(outer(product_element(local, i)), n, lost);
      best = std::min(best, trace_distance(reduced, target));
    }
  }
  return best;
}

inline double sq_value(const Mat& rho, int n, int m, const std::vector<Eigen::Matrix2cd>& local) {
  return 0.5 * (double(m) / n + min_distance(rho, n, m, local));
}

inline std::vector<Eigen::Matrix2cd> computational_local(int n) {
  return std::vector<Eigen::Matrix2cd>(n, Eigen::Matrix2cd::Identity());
}

inline double max_abs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace stingy::oracle
