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
#include <cmath>
#include <optional>
#include <string_view>

#include "stingy/qregister.hpp"

namespace stingy {

/// Unit-normalized distances on density operators of equal dimension.
enum class DistanceMeasure {
  Trace,
  HilbertSchmidt,
};

constexpr std::string_view to_string(DistanceMeasure d) {
  return d == DistanceMeasure::Trace ? "trace" : "hs";
}

constexpr std::optional<DistanceMeasure> parse_distance(std::string_view id) {
  if (id == "trace") return DistanceMeasure::Trace;
  if (id == "hs") return DistanceMeasure::HilbertSchmidt;
  return std::nullopt;
}

namespace detail {

template <typename Real>
void check_same_dim(const DensityMatrix<Real>& a, const DensityMatrix<Real>& b) {
  if (a.dim() != b.dim())
    throw Error(ErrorCode::DimensionMismatch,
                "distance between " + std::to_string(a.dim()) + "- and " + std::to_string(b.dim()) + "-dim states");
}

template <typename Real>
Real clamp_unit(Real x) {
  return std::clamp(x, Real(0), Real(1));
}

}  // namespace detail

/// Half the trace norm of rho - sigma, from the eigenvalues of the Hermitian
/// difference.
template <typename Real>
Real trace_distance(const DensityMatrix<Real>& rho, const DensityMatrix<Real>& sigma) {
  detail::check_same_dim(rho, sigma);
  const CMatrix<Real> diff = rho.matrix() - sigma.matrix();
  const CMatrix<Real> herm = (diff + diff.adjoint()) / Real(2);
  Eigen::SelfAdjointEigenSolver<CMatrix<Real>> es(herm, Eigen::EigenvaluesOnly);
  return detail::clamp_unit(es.eigenvalues().cwiseAbs().sum() / Real(2));
}

/// Frobenius norm of rho - sigma over sqrt(2); orthogonal pure states sit at 1.
template <typename Real>
Real hs_distance_normalized(const DensityMatrix<Real>& rho, const DensityMatrix<Real>& sigma) {
  detail::check_same_dim(rho, sigma);
  return detail::clamp_unit((rho.matrix() - sigma.matrix()).norm() / std::sqrt(Real(2)));
}

template <typename Real>
Real distance(DistanceMeasure measure, const DensityMatrix<Real>& rho, const DensityMatrix<Real>& sigma) {
  switch (measure) {
    case DistanceMeasure::Trace: return trace_distance(rho, sigma);
    case DistanceMeasure::HilbertSchmidt: return hs_distance_normalized(rho, sigma);
  }
  throw Error(ErrorCode::BadParams, "unknown distance measure");
}

}  // namespace stingy
