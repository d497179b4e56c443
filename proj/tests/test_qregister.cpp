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


#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "stingy/qregister.hpp"
#include "stingy/random.hpp"

namespace stingy {
namespace {

using Mat = CMatrix<double>;
using Vec = CVector<double>;
using cd = std::complex<double>;

DensityMatrix<double> bell() {
  Vec v = Vec::Zero(4);
  v(0) = v(3) = 1 / std::sqrt(2.0);
  return pure_to_density(make_pure(v, 2));
}

void expect_code(ErrorCode code, auto&& fn) {
  try {
    fn();
    ADD_FAILURE() << "expected " << to_string(code);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

TEST(MakeDensity, AcceptsMaximallyMixedQubit) {
  const auto rho = make_density<double>(Mat::Identity(2, 2) / 2.0, 1);
  EXPECT_EQ(rho.qubits(), 1);
  EXPECT_EQ(rho.dim(), 2);
}

TEST(MakeDensity, RejectsBadTrace) {
  Mat m = Mat::Zero(2, 2);
  m(0, 0) = 0.9;
  expect_code(ErrorCode::BadTrace, [&] { make_density(m, 1); });
}

TEST(MakeDensity, RejectsNonHermitian) {
  Mat m(2, 2);
  m << 0.5, 0.6, 0.2, 0.5;
  expect_code(ErrorCode::NotHermitian, [&] { make_density(m, 1); });
}

TEST(MakeDensity, RejectsNegativeEigenvalue) {
  Mat m(2, 2);
  m << 1.2, 0, 0, -0.2;
  expect_code(ErrorCode::NotPSD, [&] { make_density(m, 1); });
}

TEST(MakeDensity, RejectsWrongDimensionAndCap) {
  expect_code(ErrorCode::DimensionMismatch, [] { make_density<double>(Mat::Identity(3, 3) / 3.0, 1); });
  expect_code(ErrorCode::RegisterTooLarge, [] { make_density<double>(Mat::Identity(8, 8) / 8.0, 3, 2); });
}

TEST(MakeDensity, ErrorNamesMagnitude) {
  Mat m = Mat::Zero(2, 2);
  m(0, 0) = 0.9;
  try {
    make_density(m, 1);
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("1.000e-01"), std::string::npos) << e.what();
  }
}

TEST(PureToDensity, ComputationalAndPlus) {
  const auto zero = pure_to_density(make_pure<double>(Vec::Unit(2, 0), 1));
  EXPECT_EQ(zero(0, 0), cd(1));
  EXPECT_EQ(zero(1, 1), cd(0));
  EXPECT_EQ(zero(0, 1), cd(0));

  Vec plus(2);
  plus << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
  const auto p = pure_to_density(make_pure(plus, 1));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) EXPECT_NEAR(std::abs(p(i, j) - cd(0.5)), 0, 1e-15);
}

TEST(PureToDensity, MatchesElementwiseOuterProduct) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const auto psi = haar_pure<double>(2, rng);
    const auto rho = pure_to_density(psi);
    EXPECT_LE(oracle::max_abs(rho.matrix() - oracle::outer(psi.amplitudes())), 1e-15);
  }
}

TEST(MakePure, RejectsUnnormalized) {
  expect_code(ErrorCode::NotNormalized, [] { make_pure<double>(Vec::Ones(2), 1); });
}

TEST(QubitSubset, SortsAndComputesComplement) {
  QubitSubset s(4, {3, 0});
  EXPECT_EQ(s.lost(), (std::vector<int>{0, 3}));
  EXPECT_EQ(s.kept(), (std::vector<int>{1, 2}));
  expect_code(ErrorCode::IndexOutOfRange, [] { QubitSubset(2, {2}); });
  expect_code(ErrorCode::BadParams, [] { QubitSubset(3, {1, 1}); });
}

TEST(QubitSubset, LexicographicEnumeration) {
  const auto subs = subsets_of_size(4, 2);
  std::vector<std::vector<int>> lists;
  for (const auto& s : subs) lists.push_back(s.lost());
  EXPECT_EQ(lists, (std::vector<std::vector<int>>{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}));
  EXPECT_EQ(subsets_of_size(3, 0).size(), 1u);
  EXPECT_EQ(subsets_of_size(3, 3).size(), 1u);
}

TEST(PartialTrace, ProductStateFactorizes) {
  const auto ket01 = pure_to_density(basis_state(computational_basis<double>(2), 0b01));
  const auto r = partial_trace(ket01, QubitSubset(2, {1}));
  EXPECT_EQ(r.qubits(), 1);
  EXPECT_EQ(r(0, 0), cd(1));
  EXPECT_EQ(r(1, 1), cd(0));
}

TEST(PartialTrace, BellReducesToMaximallyMixed) {
  for (int q : {0, 1}) {
    const auto r = partial_trace(bell(), QubitSubset(2, {q}));
    EXPECT_LE(oracle::max_abs(r.matrix() - Mat::Identity(2, 2) / 2.0), 1e-15);
  }
}

TEST(PartialTrace, Errors) {
  expect_code(ErrorCode::SubsetMismatch, [] { partial_trace(bell(), QubitSubset(3, {0})); });
  expect_code(ErrorCode::FullTrace, [] { partial_trace(bell(), QubitSubset(2, {0, 1})); });
}

TEST(PartialTrace, MatchesNaiveSummation) {
  std::mt19937_64 rng(11);
  const auto rho = ginibre_density<double>(3, rng);
  const auto r = partial_trace(rho, QubitSubset(3, {0, 2}));
  EXPECT_LE(oracle::max_abs(r.matrix() - oracle::partial_trace(rho.matrix(), 3, {0, 2})), 1e-12);

  for (int n = 2; n <= 4; ++n)
    for (int m = 1; m < n; ++m)
      for (const auto& s : subsets_of_size(n, m)) {
        const auto x = ginibre_density<double>(n, rng);
        EXPECT_LE(oracle::max_abs(partial_trace(x, s).matrix() - oracle::partial_trace(x.matrix(), n, s.lost())), 1e-12);
      }
}

TEST(PartialTrace, PreservesTraceAndPositivity) {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<int> pick_n(2, 4);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = pick_n(rng);
    const auto rho = ginibre_density<double>(n, rng);
    std::uniform_int_distribution<int> pick_m(1, n - 1);
    const auto subs = subsets_of_size(n, pick_m(rng));
    const auto& s = subs[std::uniform_int_distribution<std::size_t>(0, subs.size() - 1)(rng)];
    const auto r = partial_trace(rho, s);
    EXPECT_LE(std::abs(r.matrix().trace() - cd(1)), 1e-12);
    Eigen::SelfAdjointEigenSolver<Mat> es(r.matrix(), Eigen::EigenvaluesOnly);
    EXPECT_GE(es.eigenvalues().minCoeff(), -1e-9);
    EXPECT_NO_THROW(make_density(r.matrix(), r.qubits()));
  }
}

TEST(PartialTrace, SequentialEqualsJoint) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 4;
    const auto rho = ginibre_density<double>(n, rng);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        if (a == b) continue;
        const int relabeled = b > a ? b - 1 : b;
        const auto two_step = partial_trace(partial_trace(rho, QubitSubset(n, {a})), QubitSubset(n - 1, {relabeled}));
        const auto one_step = partial_trace(rho, QubitSubset(n, {a, b}));
        EXPECT_LE(oracle::max_abs(two_step.matrix() - one_step.matrix()), 1e-12);
      }
  }
}

TEST(PartialTrace, TensorFactorRecovered) {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 20; ++trial) {
    const auto rho = ginibre_density<double>(2, rng);
    const auto sigma = ginibre_density<double>(1, rng);
    const auto r = partial_trace(tensor(rho, sigma), QubitSubset(3, {2}));
    EXPECT_LE(oracle::max_abs(r.matrix() - rho.matrix()), 1e-12);
    const auto s = partial_trace(tensor(sigma, rho), QubitSubset(3, {1, 2}));
    EXPECT_LE(oracle::max_abs(s.matrix() - sigma.matrix()), 1e-12);
  }
}

TEST(BasisState, ComputationalAndHadamard) {
  const auto ket00 = basis_state(computational_basis<double>(2), 0);
  EXPECT_EQ(ket00.amplitudes(), Vec::Unit(4, 0));
  const auto minus = basis_state(hadamard_basis<double>(1), 1);
  EXPECT_NEAR(minus.amplitudes()(0).real(), 1 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(minus.amplitudes()(1).real(), -1 / std::sqrt(2.0), 1e-15);
  expect_code(ErrorCode::IndexOutOfRange, [] { basis_state(computational_basis<double>(2), 4); });
}

TEST(BasisState, QubitZeroIsMostSignificant) {
  const auto v = basis_state(computational_basis<double>(3), 0b100);
  EXPECT_EQ(v.amplitudes(), Vec::Unit(8, 4));
}

TEST(BasisState, GramMatrixIsIdentity) {
  std::mt19937_64 rng(15);
  for (int n = 1; n <= 4; ++n) {
    // mixed local bases: computational, Hadamard and Haar pairs interleaved
    auto local = haar_product_basis<double>(n, rng).local_bases();
    local[0] = computational_basis<double>(1).local_bases()[0];
    if (n > 1) local[1] = hadamard_basis<double>(1).local_bases()[0];
    const auto basis = make_product_basis<double>(local);
    const std::uint64_t d = std::uint64_t{1} << n;
    Mat gram(d, d);
    for (std::uint64_t i = 0; i < d; ++i)
      for (std::uint64_t j = 0; j < d; ++j)
        gram(i, j) = basis_state(basis, i).amplitudes().dot(basis_state(basis, j).amplitudes());
    EXPECT_LE(oracle::max_abs(gram - Mat::Identity(d, d)), 1e-12) << "n = " << n;
  }
}

TEST(ProductBasis, RejectsNonOrthogonalPair) {
  ProductBasis<double>::LocalPair pair{Qubit<double>(1, 0), Qubit<double>(1 / std::sqrt(2.0), 1 / std::sqrt(2.0))};
  expect_code(ErrorCode::NotOrthonormal, [&] { make_product_basis<double>({pair}); });
}

TEST(ReducedBasisState, ComputationalExamples) {
  const auto basis2 = computational_basis<double>(2);
  const auto r = reduced_basis_state(basis2, QubitSubset(2, {1}), 0);
  EXPECT_EQ(r(0, 0), cd(1));
  EXPECT_EQ(r(1, 1), cd(0));

  // qubits (0, 2) kept with bits 1, 0 -> |10><10|
  const auto r3 = reduced_basis_state(computational_basis<double>(3), QubitSubset(3, {1}), 0b10);
  Mat expected = Mat::Zero(4, 4);
  expected(2, 2) = 1;
  EXPECT_EQ(r3.matrix(), expected);

  expect_code(ErrorCode::SubsetMismatch, [&] { reduced_basis_state(basis2, QubitSubset(3, {1}), 0); });
}

TEST(ReducedBasisState, AgreesWithTwoStepRouteExhaustively) {
  std::mt19937_64 rng(16);
  for (int n = 1; n <= 4; ++n) {
    const auto basis = haar_product_basis<double>(n, rng);
    for (int m = 0; m < n; ++m)
      for (const auto& s : subsets_of_size(n, m))
        for (std::uint64_t i = 0; i < (std::uint64_t{1} << n); ++i) {
          const auto two_step = partial_trace(pure_to_density(basis_state(basis, i)), s);
          const auto shortcut = reduced_basis_state(basis, s, kept_bits_of(s, i));
          EXPECT_LE(oracle::max_abs(two_step.matrix() - shortcut.matrix()), 1e-12);
        }
  }
}

TEST(PermuteQubits, MovesWires) {
  const auto ket01 = pure_to_density(basis_state(computational_basis<double>(2), 0b01));
  const std::vector<int> swap{1, 0};
  const auto r = permute_qubits(ket01, swap);
  EXPECT_EQ(r(0b10, 0b10), cd(1));
}

}  // namespace
}  // namespace stingy
