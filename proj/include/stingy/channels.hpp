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
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "stingy/qregister.hpp"

namespace stingy {

/// CPTP map on n qubits in Kraus form, rho -> sum_k K_k rho K_k^dagger.
template <typename Real = double>
class QuantumChannel {
 public:
  QuantumChannel(detail::Trusted, int n, std::vector<CMatrix<Real>> kraus) : n_(n), kraus_(std::move(kraus)) {}

  int qubits() const { return n_; }
  Eigen::Index dim() const { return detail::dim_of(n_); }
  const std::vector<CMatrix<Real>>& kraus() const { return kraus_; }

 private:
  int n_;
  std::vector<CMatrix<Real>> kraus_;
};

/// Tolerance on sum_k K_k^dagger K_k = I, entrywise.
template <typename Real>
inline constexpr Real kCompletenessTolerance = Real(1e-9);

template <typename Real>
QuantumChannel<Real> make_channel(std::vector<CMatrix<Real>> kraus, int n, int max_qubits = kDefaultMaxQubits) {
  detail::check_register(n, max_qubits);
  if (kraus.empty()) throw Error(ErrorCode::DimensionMismatch, "channel needs at least one Kraus operator");
  const Eigen::Index d = detail::dim_of(n);
  CMatrix<Real> sum = CMatrix<Real>::Zero(d, d);
  for (std::size_t k = 0; k < kraus.size(); ++k) {
    const auto& op = kraus[k];
    if (op.rows() != d || op.cols() != d)
      throw Error(ErrorCode::DimensionMismatch, "Kraus operator " + std::to_string(k) + " is " +
                                                    std::to_string(op.rows()) + "x" + std::to_string(op.cols()) +
                                                    ", expected " + std::to_string(d) + "x" + std::to_string(d));
    sum.noalias() += op.adjoint() * op;
  }
  const Real dev = (sum - CMatrix<Real>::Identity(d, d)).cwiseAbs().maxCoeff();
  if (!(dev <= kCompletenessTolerance<Real>))
    throw Error(ErrorCode::NotTracePreserving, "max |sum K^dagger K - I| entry is " + detail::fmt_real(double(dev)));
  return QuantumChannel<Real>(detail::Trusted{}, n, std::move(kraus));
}

template <typename Real>
DensityMatrix<Real> apply_channel(const QuantumChannel<Real>& ch, const DensityMatrix<Real>& rho) {
  if (ch.qubits() != rho.qubits())
    throw Error(ErrorCode::DimensionMismatch, "channel acts on " + std::to_string(ch.qubits()) +
                                                  " qubits, state has " + std::to_string(rho.qubits()));
  const Eigen::Index d = rho.dim();
  CMatrix<Real> out = CMatrix<Real>::Zero(d, d);
  for (const auto& k : ch.kraus()) out.noalias() += k * rho.matrix() * k.adjoint();
  return DensityMatrix<Real>(detail::Trusted{}, rho.qubits(), std::move(out));
}

/// `second` after `first`: Kraus set {A_j B_k} with A from second, B from first.
template <typename Real>
QuantumChannel<Real> compose(const QuantumChannel<Real>& second, const QuantumChannel<Real>& first) {
  if (second.qubits() != first.qubits()) throw Error(ErrorCode::DimensionMismatch, "composing channels of different size");
  std::vector<CMatrix<Real>> ops;
  ops.reserve(second.kraus().size() * first.kraus().size());
  for (const auto& a : second.kraus())
    for (const auto& b : first.kraus()) ops.push_back(a * b);
  return QuantumChannel<Real>(detail::Trusted{}, first.qubits(), std::move(ops));
}

template <typename Real = double>
QuantumChannel<Real> identity_channel(int n) {
  detail::check_register(n, kDefaultMaxQubits);
  const Eigen::Index d = detail::dim_of(n);
  return QuantumChannel<Real>(detail::Trusted{}, n, {CMatrix<Real>::Identity(d, d)});
}

namespace detail {

template <typename Real>
void check_probability(Real p, std::string_view name) {
  if (!(p >= 0 && p <= 1))
    throw Error(ErrorCode::BadParams, std::string(name) + " probability must lie in [0, 1], got " + fmt_real(double(p)));
}

}  // namespace detail

/// rho -> (1-p) rho + p diag(rho): computational-basis dephasing, complete at p = 1.
template <typename Real = double>
QuantumChannel<Real> dephasing_channel(int n, Real p) {
  detail::check_register(n, kDefaultMaxQubits);
  detail::check_probability(p, "dephasing");
  const Eigen::Index d = detail::dim_of(n);
  std::vector<CMatrix<Real>> ops;
  if (p < 1) ops.push_back(std::sqrt(1 - p) * CMatrix<Real>::Identity(d, d));
  if (p > 0)
    for (Eigen::Index j = 0; j < d; ++j) {
      CMatrix<Real> k = CMatrix<Real>::Zero(d, d);
      k(j, j) = std::sqrt(p);
      ops.push_back(std::move(k));
    }
  return QuantumChannel<Real>(detail::Trusted{}, n, std::move(ops));
}

/// rho -> (1-p) rho + p I/d, with Kraus set {sqrt(1-p) I} + {sqrt(p/d) |j><k|}.
template <typename Real = double>
QuantumChannel<Real> depolarizing_channel(int n, Real p) {
  detail::check_register(n, kDefaultMaxQubits);
  detail::check_probability(p, "depolarizing");
  const Eigen::Index d = detail::dim_of(n);
  std::vector<CMatrix<Real>> ops;
  if (p < 1) ops.push_back(std::sqrt(1 - p) * CMatrix<Real>::Identity(d, d));
  if (p > 0) {
    const Real w = std::sqrt(p / Real(d));
    for (Eigen::Index j = 0; j < d; ++j)
      for (Eigen::Index k = 0; k < d; ++k) {
        CMatrix<Real> op = CMatrix<Real>::Zero(d, d);
        op(j, k) = w;
        ops.push_back(std::move(op));
      }
  }
  return QuantumChannel<Real>(detail::Trusted{}, n, std::move(ops));
}

/// Constant map onto |phi><phi|, Kraus set {|phi><e_j|}.
template <typename Real>
QuantumChannel<Real> replacement_channel(const PureState<Real>& target) {
  const Eigen::Index d = target.dim();
  std::vector<CMatrix<Real>> ops;
  ops.reserve(d);
  for (Eigen::Index j = 0; j < d; ++j) {
    CMatrix<Real> op = CMatrix<Real>::Zero(d, d);
    op.col(j) = target.amplitudes();
    ops.push_back(std::move(op));
  }
  return QuantumChannel<Real>(detail::Trusted{}, target.qubits(), std::move(ops));
}

/// Constant map onto a mixed target, Kraus set {sqrt(lambda_a) |v_a><e_j|}
/// from the target's eigendecomposition. Negligible eigenvalues are dropped
/// and the rest renormalized so completeness holds to round-off.
template <typename Real>
QuantumChannel<Real> replacement_channel(const DensityMatrix<Real>& target) {
  const Eigen::Index d = target.dim();
  const CMatrix<Real> herm = (target.matrix() + target.matrix().adjoint()) / Real(2);
  Eigen::SelfAdjointEigenSolver<CMatrix<Real>> es(herm);
  const auto& lambda = es.eigenvalues();
  const Real cut = Real(64) * std::numeric_limits<Real>::epsilon();
  Real kept = 0;
  for (Eigen::Index a = 0; a < d; ++a)
    if (lambda(a) > cut) kept += lambda(a);
  std::vector<CMatrix<Real>> ops;
  for (Eigen::Index a = d; a-- > 0;) {
    if (lambda(a) <= cut) continue;
    const CVector<Real> v = es.eigenvectors().col(a) * std::sqrt(lambda(a) / kept);
    for (Eigen::Index j = 0; j < d; ++j) {
      CMatrix<Real> op = CMatrix<Real>::Zero(d, d);
      op.col(j) = v;
      ops.push_back(std::move(op));
    }
  }
  return QuantumChannel<Real>(detail::Trusted{}, target.qubits(), std::move(ops));
}

/// Target of a replace_with channel.
template <typename Real>
using ReplacementTarget = std::variant<PureState<Real>, DensityMatrix<Real>>;

/// Named channel lookup: "identity", "dephasing" [p], "depolarizing" [p],
/// "replace_with" (target passed separately, no params).
template <typename Real = double>
QuantumChannel<Real> standard_channel(std::string_view name, std::span<const Real> params, int n,
                                      const ReplacementTarget<Real>* target = nullptr) {
  auto want = [&](std::size_t count) {
    if (params.size() != count)
      throw Error(ErrorCode::BadParams, std::string(name) + " takes " + std::to_string(count) + " parameter(s), got " +
                                            std::to_string(params.size()));
  };
  if (name == "identity") {
    want(0);
    return identity_channel<Real>(n);
  }
  if (name == "dephasing") {
    want(1);
    return dephasing_channel<Real>(n, params[0]);
  }
  if (name == "depolarizing") {
    want(1);
    return depolarizing_channel<Real>(n, params[0]);
  }
  if (name == "replace_with") {
    want(0);
    if (target == nullptr) throw Error(ErrorCode::BadParams, "replace_with needs a target state");
    return std::visit(
        [n](const auto& t) {
          if (t.qubits() != n)
            throw Error(ErrorCode::DimensionMismatch, "replacement target has " + std::to_string(t.qubits()) +
                                                          " qubits, channel has " + std::to_string(n));
          return replacement_channel(t);
        },
        *target);
  }
  throw Error(ErrorCode::UnknownChannel, "no standard channel named '" + std::string(name) + "'");
}

}  // namespace stingy
