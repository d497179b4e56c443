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

#include <random>

#include "stingy/qregister.hpp"

namespace stingy {

/// Complex matrix with i.i.d. standard complex Gaussian entries.
template <typename Real = double, typename Rng>
CMatrix<Real> ginibre_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<Real> normal(0, 1);
  CMatrix<Real> g(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) {
      const Real re = normal(rng);
      const Real im = normal(rng);
      g(i, j) = Complex<Real>(re, im);
    }
  return g;
}

/// G G^dagger / tr(G G^dagger) with square Ginibre G: Hilbert-Schmidt distributed.
template <typename Real = double, typename Rng>
DensityMatrix<Real> ginibre_density(int n, Rng& rng) {
  detail::check_register(n, kDefaultMaxQubits);
  const Eigen::Index d = detail::dim_of(n);
  const CMatrix<Real> g = ginibre_matrix<Real>(d, d, rng);
  CMatrix<Real> rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = (rho + rho.adjoint()).eval() / Real(2);
  return DensityMatrix<Real>(detail::Trusted{}, n, std::move(rho));
}

/// Haar-random unitary via QR of a Ginibre matrix with the phase fix on R's diagonal.
template <typename Real = double, typename Rng>
CMatrix<Real> haar_unitary(Eigen::Index d, Rng& rng) {
  const CMatrix<Real> g = ginibre_matrix<Real>(d, d, rng);
  Eigen::HouseholderQR<CMatrix<Real>> qr(g);
  CMatrix<Real> q = qr.householderQ();
  const CMatrix<Real> r = qr.matrixQR().template triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < d; ++j) {
    const Complex<Real> rjj = r(j, j);
    const Real mag = std::abs(rjj);
    if (mag > 0) q.col(j) *= rjj / mag;
  }
  return q;
}

template <typename Real = double, typename Rng>
PureState<Real> haar_pure(int n, Rng& rng) {
  detail::check_register(n, kDefaultMaxQubits);
  CVector<Real> v = ginibre_matrix<Real>(detail::dim_of(n), 1, rng);
  v.normalize();
  return PureState<Real>(detail::Trusted{}, n, std::move(v));
}

/// Product basis whose local pairs are the columns of independent Haar 2x2 unitaries.
template <typename Real = double, typename Rng>
ProductBasis<Real> haar_product_basis(int n, Rng& rng) {
  detail::check_register(n, kDefaultMaxQubits);
  std::vector<typename ProductBasis<Real>::LocalPair> local;
  local.reserve(n);
  for (int q = 0; q < n; ++q) {
    const CMatrix<Real> u = haar_unitary<Real>(2, rng);
    local.push_back({Qubit<Real>(u.col(0)), Qubit<Real>(u.col(1))});
  }
  return ProductBasis<Real>(detail::Trusted{}, std::move(local));
}

/// Rotates every local pair by the matching single-qubit unitary: |a> -> u_q |a>.
template <typename Real>
ProductBasis<Real> rotate_basis(const ProductBasis<Real>& basis, std::span<const CMatrix<Real>> locals) {
  if (int(locals.size()) != basis.qubits()) throw Error(ErrorCode::DimensionMismatch, "one unitary per qubit");
  auto pairs = basis.local_bases();
  for (int q = 0; q < basis.qubits(); ++q)
    for (auto& v : pairs[q]) v = locals[q] * v;
  return ProductBasis<Real>(detail::Trusted{}, std::move(pairs));
}

}  // namespace stingy
