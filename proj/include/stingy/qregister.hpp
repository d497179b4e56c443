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

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "stingy/errors.hpp"

namespace stingy {

template <typename Real>
using Complex = std::complex<Real>;
template <typename Real>
using CMatrix = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using CVector = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, 1>;
template <typename Real>
using Qubit = Eigen::Matrix<Complex<Real>, 2, 1>;

/// Largest register accepted by the validating constructors unless the caller
/// passes its own cap. 4^12 complex entries is about 256 MiB in double.
inline constexpr int kDefaultMaxQubits = 12;

/// Validation tolerances for states, bases and subsets.
template <typename Real>
struct Tolerance {
  static constexpr Real hermitian = Real(1e-9);
  static constexpr Real trace = Real(1e-9);
  static constexpr Real psd_floor = Real(-1e-9);
  static constexpr Real norm = Real(1e-12);
  static constexpr Real orthonormal = Real(1e-12);
};

namespace detail {

struct Trusted {};

inline std::string fmt_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

inline void check_register(int n, int max_qubits) {
  if (n < 1) throw Error(ErrorCode::DimensionMismatch, "qubit count must be positive, got " + std::to_string(n));
  if (n > max_qubits)
    throw Error(ErrorCode::RegisterTooLarge,
                std::to_string(n) + " qubits exceeds the cap of " + std::to_string(max_qubits));
}

inline constexpr Eigen::Index dim_of(int n) { return Eigen::Index{1} << n; }

/// Bit of the computational index that carries qubit q; qubit 0 is the MSB.
inline constexpr std::uint64_t qubit_mask(int n, int q) { return std::uint64_t{1} << (n - 1 - q); }

template <typename Real>
Real max_hermitian_defect(const CMatrix<Real>& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace detail

/// Dense 2^n x 2^n density operator. Hermitian, unit trace and PSD within
/// Tolerance<Real>; immutable once built.
template <typename Real = double>
class DensityMatrix {
 public:
  using Scalar = Complex<Real>;
  using Matrix = CMatrix<Real>;

  DensityMatrix(detail::Trusted, int n, Matrix m) : n_(n), mat_(std::move(m)) {}

  int qubits() const { return n_; }
  Eigen::Index dim() const { return mat_.rows(); }
  const Matrix& matrix() const { return mat_; }
  Scalar operator()(Eigen::Index i, Eigen::Index j) const { return mat_(i, j); }

 private:
  int n_;
  Matrix mat_;
};

/// Validates `m` as an n-qubit density operator.
template <typename Real>
DensityMatrix<Real> make_density(CMatrix<Real> m, int n, int max_qubits = kDefaultMaxQubits) {
  using Tol = Tolerance<Real>;
  detail::check_register(n, max_qubits);
  const Eigen::Index d = detail::dim_of(n);
  if (m.rows() != d || m.cols() != d)
    throw Error(ErrorCode::DimensionMismatch, "expected " + std::to_string(d) + "x" + std::to_string(d) +
                                                  " matrix, got " + std::to_string(m.rows()) + "x" +
                                                  std::to_string(m.cols()));
  const Real herm = detail::max_hermitian_defect<Real>(m);
  if (!(herm <= Tol::hermitian))
    throw Error(ErrorCode::NotHermitian, "max |rho - rho^dagger| entry is " + detail::fmt_real(double(herm)));
  const Complex<Real> tr = m.trace();
  if (!(std::abs(tr - Real(1)) <= Tol::trace))
    throw Error(ErrorCode::BadTrace, "trace deviates from 1 by " + detail::fmt_real(double(std::abs(tr - Real(1)))));
  const CMatrix<Real> h = (m + m.adjoint()) / Real(2);
  Eigen::SelfAdjointEigenSolver<CMatrix<Real>> es(h, Eigen::EigenvaluesOnly);
  const Real lo = es.eigenvalues().minCoeff();
  if (!(lo >= Tol::psd_floor))
    throw Error(ErrorCode::NotPSD, "smallest eigenvalue is " + detail::fmt_real(double(lo)));
  return DensityMatrix<Real>(detail::Trusted{}, n, std::move(m));
}

/// Normalized n-qubit state vector.
template <typename Real = double>
class PureState {
 public:
  using Vector = CVector<Real>;

  PureState(detail::Trusted, int n, Vector v) : n_(n), amp_(std::move(v)) {}

  int qubits() const { return n_; }
  Eigen::Index dim() const { return amp_.size(); }
  const Vector& amplitudes() const { return amp_; }

 private:
  int n_;
  Vector amp_;
};

template <typename Real>
PureState<Real> make_pure(CVector<Real> v, int n, int max_qubits = kDefaultMaxQubits) {
  detail::check_register(n, max_qubits);
  if (v.size() != detail::dim_of(n))
    throw Error(ErrorCode::DimensionMismatch, "expected " + std::to_string(detail::dim_of(n)) +
                                                  " amplitudes, got " + std::to_string(v.size()));
  const Real dev = std::abs(v.squaredNorm() - Real(1));
  if (!(dev <= Tolerance<Real>::norm))
    throw Error(ErrorCode::NotNormalized, "squared norm deviates from 1 by " + detail::fmt_real(double(dev)));
  return PureState<Real>(detail::Trusted{}, n, std::move(v));
}

template <typename Real>
DensityMatrix<Real> pure_to_density(const PureState<Real>& psi) {
  const auto& a = psi.amplitudes();
  return DensityMatrix<Real>(detail::Trusted{}, psi.qubits(), a * a.adjoint());
}

/// Set of qubits discarded from an n-qubit register, stored sorted.
class QubitSubset {
 public:
  QubitSubset(int n, std::vector<int> lost) : n_(n), lost_(std::move(lost)) {
    std::sort(lost_.begin(), lost_.end());
    for (int q : lost_)
      if (q < 0 || q >= n_)
        throw Error(ErrorCode::IndexOutOfRange, "qubit " + std::to_string(q) + " outside [0, " + std::to_string(n_) + ")");
    if (std::adjacent_find(lost_.begin(), lost_.end()) != lost_.end())
      throw Error(ErrorCode::BadParams, "lost qubit indices must be distinct");
    for (int q = 0, j = 0; q < n_; ++q) {
      if (j < int(lost_.size()) && lost_[j] == q)
        ++j;
      else
        kept_.push_back(q);
    }
  }

  int register_size() const { return n_; }
  int lost_count() const { return int(lost_.size()); }
  int kept_count() const { return int(kept_.size()); }
  const std::vector<int>& lost() const { return lost_; }
  /// Complement of lost(), ascending.
  const std::vector<int>& kept() const { return kept_; }

  friend bool operator==(const QubitSubset&, const QubitSubset&) = default;

 private:
  int n_;
  std::vector<int> lost_;
  std::vector<int> kept_;
};

/// All size-m subsets of {0..n-1}, in lexicographic order of their sorted index lists.
inline std::vector<QubitSubset> subsets_of_size(int n, int m) {
  std::vector<QubitSubset> out;
  if (m < 0 || m > n) return out;
  std::vector<int> idx(m);
  for (int i = 0; i < m; ++i) idx[i] = i;
  while (true) {
    out.emplace_back(n, idx);
    int i = m - 1;
    while (i >= 0 && idx[i] == n - m + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < m; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

/// Reduced state on the kept qubits of `subset`, kept qubits in ascending
/// original order.
template <typename Real>
DensityMatrix<Real> partial_trace(const DensityMatrix<Real>& rho, const QubitSubset& subset) {
  const int n = rho.qubits();
  if (subset.register_size() != n)
    throw Error(ErrorCode::SubsetMismatch, "subset is over " + std::to_string(subset.register_size()) +
                                               " qubits, state has " + std::to_string(n));
  if (subset.lost_count() == n)
    throw Error(ErrorCode::FullTrace, "cannot trace out all " + std::to_string(n) + " qubits");
  if (subset.lost_count() == 0) return rho;

  // Offsets of every reduced index inside the full computational index.
  auto offsets = [n](const std::vector<int>& qubits) {
    const int k = int(qubits.size());
    std::vector<std::uint64_t> off(std::size_t{1} << k, 0);
    for (std::uint64_t r = 0; r < off.size(); ++r)
      for (int j = 0; j < k; ++j)
        if (r & (std::uint64_t{1} << (k - 1 - j))) off[r] |= detail::qubit_mask(n, qubits[j]);
    return off;
  };
  const auto kept_off = offsets(subset.kept());
  const auto lost_off = offsets(subset.lost());

  const auto dk = Eigen::Index(kept_off.size());
  const auto& full = rho.matrix();
  CMatrix<Real> out = CMatrix<Real>::Zero(dk, dk);
  for (Eigen::Index b = 0; b < dk; ++b)
    for (Eigen::Index a = 0; a < dk; ++a) {
      Complex<Real> acc{0};
      for (auto l : lost_off) acc += full(Eigen::Index(kept_off[a] | l), Eigen::Index(kept_off[b] | l));
      out(a, b) = acc;
    }
  return DensityMatrix<Real>(detail::Trusted{}, subset.kept_count(), std::move(out));
}

/// The preferred product basis: one ordered orthonormal pair per qubit.
/// Element i is the tensor product selecting local vector bit_q(i) on qubit q,
/// with qubit 0 the most significant bit of i.
template <typename Real = double>
class ProductBasis {
 public:
  using LocalPair = std::array<Qubit<Real>, 2>;

  ProductBasis(detail::Trusted, std::vector<LocalPair> local) : local_(std::move(local)) {}

  int qubits() const { return int(local_.size()); }
  const std::vector<LocalPair>& local_bases() const { return local_; }
  const Qubit<Real>& local(int qubit, int bit) const { return local_[qubit][bit]; }

 private:
  std::vector<LocalPair> local_;
};

template <typename Real>
ProductBasis<Real> make_product_basis(std::vector<typename ProductBasis<Real>::LocalPair> local,
                                      int max_qubits = kDefaultMaxQubits) {
  detail::check_register(int(local.size()), max_qubits);
  const Real tol = Tolerance<Real>::orthonormal;
  for (std::size_t q = 0; q < local.size(); ++q) {
    const auto& [a, b] = local[q];
    const Real dev = std::max({std::abs(a.squaredNorm() - Real(1)), std::abs(b.squaredNorm() - Real(1)),
                               std::abs(a.dot(b))});
    if (!(dev <= tol))
      throw Error(ErrorCode::NotOrthonormal,
                  "local basis of qubit " + std::to_string(q) + " deviates by " + detail::fmt_real(double(dev)));
  }
  return ProductBasis<Real>(detail::Trusted{}, std::move(local));
}

template <typename Real = double>
ProductBasis<Real> computational_basis(int n) {
  detail::check_register(n, 63);
  typename ProductBasis<Real>::LocalPair pair{Qubit<Real>(1, 0), Qubit<Real>(0, 1)};
  return ProductBasis<Real>(detail::Trusted{}, std::vector(std::size_t(n), pair));
}

template <typename Real = double>
ProductBasis<Real> hadamard_basis(int n) {
  detail::check_register(n, 63);
  const Real s = Real(1) / std::sqrt(Real(2));
  typename ProductBasis<Real>::LocalPair pair{Qubit<Real>(s, s), Qubit<Real>(s, -s)};
  return ProductBasis<Real>(detail::Trusted{}, std::vector(std::size_t(n), pair));
}

namespace detail {

/// Tensor product of local vectors for `qubits`, choosing bit j of `bits`
/// (MSB first) for the j-th listed qubit.
template <typename Real>
CVector<Real> product_vector(const ProductBasis<Real>& basis, std::span<const int> qubits, std::uint64_t bits) {
  const int k = int(qubits.size());
  CVector<Real> v(1);
  v(0) = Complex<Real>(1);
  for (int j = 0; j < k; ++j) {
    const int bit = int((bits >> (k - 1 - j)) & 1u);
    const auto& u = basis.local(qubits[j], bit);
    CVector<Real> next(v.size() * 2);
    for (Eigen::Index a = 0; a < v.size(); ++a) {
      next(2 * a) = v(a) * u(0);
      next(2 * a + 1) = v(a) * u(1);
    }
    v = std::move(next);
  }
  return v;
}

}  // namespace detail

template <typename Real>
PureState<Real> basis_state(const ProductBasis<Real>& basis, std::uint64_t i) {
  const int n = basis.qubits();
  if (n < 64 && i >= (std::uint64_t{1} << n))
    throw Error(ErrorCode::IndexOutOfRange, "basis index " + std::to_string(i) + " out of range for " +
                                                std::to_string(n) + " qubits");
  std::vector<int> all(n);
  for (int q = 0; q < n; ++q) all[q] = q;
  return PureState<Real>(detail::Trusted{}, n, detail::product_vector<Real>(basis, all, i));
}

/// Partial trace of a product basis state over `subset`: the product pure
/// state on the kept qubits selected by `kept_bits` (first kept qubit is the MSB).
/// Equal to partial_trace(pure_to_density(basis_state(i)), subset) for every i
/// whose kept-qubit bits spell `kept_bits`.
template <typename Real>
PureState<Real> reduced_basis_vector(const ProductBasis<Real>& basis, const QubitSubset& subset,
                                     std::uint64_t kept_bits) {
  if (subset.register_size() != basis.qubits())
    throw Error(ErrorCode::SubsetMismatch, "subset is over " + std::to_string(subset.register_size()) +
                                               " qubits, basis has " + std::to_string(basis.qubits()));
  if (subset.kept_count() == 0)
    throw Error(ErrorCode::FullTrace, "no kept qubits");
  if (kept_bits >= (std::uint64_t{1} << subset.kept_count()))
    throw Error(ErrorCode::IndexOutOfRange, "kept bits " + std::to_string(kept_bits) + " out of range for " +
                                                std::to_string(subset.kept_count()) + " kept qubits");
  return PureState<Real>(detail::Trusted{}, subset.kept_count(),
                         detail::product_vector<Real>(basis, subset.kept(), kept_bits));
}

template <typename Real>
DensityMatrix<Real> reduced_basis_state(const ProductBasis<Real>& basis, const QubitSubset& subset,
                                        std::uint64_t kept_bits) {
  return pure_to_density(reduced_basis_vector(basis, subset, kept_bits));
}

/// Kept-qubit bits of full computational index i, packed MSB first.
inline std::uint64_t kept_bits_of(const QubitSubset& subset, std::uint64_t i) {
  const int n = subset.register_size();
  std::uint64_t out = 0;
  for (int q : subset.kept()) out = (out << 1) | ((i & detail::qubit_mask(n, q)) ? 1u : 0u);
  return out;
}

template <typename Derived1, typename Derived2>
auto kron(const Eigen::MatrixBase<Derived1>& a, const Eigen::MatrixBase<Derived2>& b) {
  using Scalar = typename Derived1::Scalar;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// rho (x) sigma, rho's qubits first.
template <typename Real>
DensityMatrix<Real> tensor(const DensityMatrix<Real>& rho, const DensityMatrix<Real>& sigma) {
  return DensityMatrix<Real>(detail::Trusted{}, rho.qubits() + sigma.qubits(), kron(rho.matrix(), sigma.matrix()));
}

/// U rho U^dagger for a unitary U of matching dimension.
template <typename Real>
DensityMatrix<Real> conjugate(const DensityMatrix<Real>& rho, const CMatrix<Real>& u) {
  if (u.rows() != rho.dim() || u.cols() != rho.dim())
    throw Error(ErrorCode::DimensionMismatch, "unitary has wrong dimension");
  return DensityMatrix<Real>(detail::Trusted{}, rho.qubits(), u * rho.matrix() * u.adjoint());
}

/// Relabels wires: qubit q of the input becomes qubit perm[q] of the output.
template <typename Real>
DensityMatrix<Real> permute_qubits(const DensityMatrix<Real>& rho, std::span<const int> perm) {
  const int n = rho.qubits();
  if (int(perm.size()) != n) throw Error(ErrorCode::DimensionMismatch, "permutation has wrong length");
  std::vector<int> seen(n, 0);
  for (int p : perm) {
    if (p < 0 || p >= n || seen[p]++) throw Error(ErrorCode::BadParams, "not a permutation");
  }
  const Eigen::Index d = rho.dim();
  std::vector<Eigen::Index> map(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    std::uint64_t j = 0;
    for (int q = 0; q < n; ++q)
      if (std::uint64_t(i) & detail::qubit_mask(n, q)) j |= detail::qubit_mask(n, perm[q]);
    map[i] = Eigen::Index(j);
  }
  CMatrix<Real> out(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index k = 0; k < d; ++k) out(map[i], map[k]) = rho(i, k);
  return DensityMatrix<Real>(detail::Trusted{}, n, std::move(out));
}

}  // namespace stingy
