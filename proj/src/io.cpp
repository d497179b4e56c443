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


#include "stingy/io.hpp"

#include <fstream>
#include <sstream>
#include <string>

namespace stingy::io {

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) fail("expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) fail(std::string("missing field '") + key + "'");
  return *it;
}

int qubit_count(const Json& j) {
  const Json& n = field(j, "n");
  if (!n.is_number_integer()) fail("'n' must be an integer");
  return n.get<int>();
}

double number(const Json& j) {
  if (!j.is_number()) fail("expected a number, got " + j.dump());
  return j.get<double>();
}

}  // namespace

Json complex_to_json(Complex<double> z) { return Json::array({z.real(), z.imag()}); }

Json vector_to_json(const CVector<double>& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

Json matrix_to_json(const CMatrix<double>& m) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(complex_to_json(m(i, k)));
    out.push_back(std::move(row));
  }
  return out;
}

Complex<double> complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) fail("complex numbers are [re, im] pairs, got " + j.dump());
  return {number(j[0]), number(j[1])};
}

CVector<double> vector_from_json(const Json& j) {
  if (!j.is_array()) fail("expected an array of [re, im] pairs");
  CVector<double> v(Eigen::Index(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(Eigen::Index(i)) = complex_from_json(j[i]);
  return v;
}

CMatrix<double> matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) fail("expected a non-empty nested array for a matrix");
  const std::size_t rows = j.size();
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  CMatrix<double> m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) fail("matrix rows must all have length " + std::to_string(cols));
    for (std::size_t k = 0; k < cols; ++k) m(Eigen::Index(i), Eigen::Index(k)) = complex_from_json(j[i][k]);
  }
  return m;
}

Json state_to_json(const PureState<double>& psi) {
  Json j;
  j["n"] = psi.qubits();
  j["kind"] = "statevector";
  j["data"] = vector_to_json(psi.amplitudes());
  return j;
}

Json state_to_json(const DensityMatrix<double>& rho) {
  Json j;
  j["n"] = rho.qubits();
  j["kind"] = "density";
  j["data"] = matrix_to_json(rho.matrix());
  return j;
}

Json state_to_json(const LoadedState& s) {
  return std::visit([](const auto& v) { return state_to_json(v); }, s);
}

LoadedState state_from_json(const Json& j) {
  const int n = qubit_count(j);
  const Json& kind = field(j, "kind");
  const Json& data = field(j, "data");
  if (kind == "statevector") return make_pure(vector_from_json(data), n);
  if (kind == "density") return make_density(matrix_from_json(data), n);
  fail("'kind' must be \"statevector\" or \"density\", got " + kind.dump());
}

DensityMatrix<double> as_density(const LoadedState& s) {
  if (const auto* psi = std::get_if<PureState<double>>(&s)) return pure_to_density(*psi);
  return std::get<DensityMatrix<double>>(s);
}

Json basis_to_json(const ProductBasis<double>& basis) {
  Json local = Json::array();
  for (const auto& [a, b] : basis.local_bases())
    local.push_back(Json::array({vector_to_json(a), vector_to_json(b)}));
  Json j;
  j["n"] = basis.qubits();
  j["local_bases"] = std::move(local);
  return j;
}

ProductBasis<double> basis_from_json(const Json& j) {
  const int n = qubit_count(j);
  const Json& local = field(j, "local_bases");
  if (!local.is_array() || int(local.size()) != n)
    fail("'local_bases' must list one pair per qubit (" + std::to_string(n) + ")");
  std::vector<ProductBasis<double>::LocalPair> pairs;
  for (const auto& pair : local) {
    if (!pair.is_array() || pair.size() != 2) fail("each local basis is a pair of single-qubit vectors");
    ProductBasis<double>::LocalPair p;
    for (int k = 0; k < 2; ++k) {
      const CVector<double> v = vector_from_json(pair[k]);
      if (v.size() != 2) fail("local basis vectors have exactly two amplitudes");
      p[k] = v;
    }
    pairs.push_back(p);
  }
  return make_product_basis<double>(std::move(pairs));
}

Json channel_to_json(const QuantumChannel<double>& ch) {
  Json kraus = Json::array();
  for (const auto& k : ch.kraus()) kraus.push_back(matrix_to_json(k));
  Json j;
  j["n"] = ch.qubits();
  j["kraus"] = std::move(kraus);
  return j;
}

QuantumChannel<double> channel_from_json(const Json& j) {
  const int n = qubit_count(j);
  if (j.contains("kraus")) {
    const Json& list = j["kraus"];
    if (!list.is_array()) fail("'kraus' must be an array of matrices");
    std::vector<CMatrix<double>> ops;
    for (const auto& m : list) ops.push_back(matrix_from_json(m));
    return make_channel(std::move(ops), n);
  }
  if (j.contains("named")) {
    const Json& named = j["named"];
    const Json& name = field(named, "name");
    if (!name.is_string()) fail("channel 'name' must be a string");
    std::vector<double> params;
    if (named.contains("params")) {
      if (!named["params"].is_array()) fail("'params' must be an array of numbers");
      for (const auto& p : named["params"]) params.push_back(number(p));
    }
    if (named.contains("target")) {
      const ReplacementTarget<double> target = std::visit(
          [](auto&& s) -> ReplacementTarget<double> { return s; }, state_from_json(named["target"]));
      return standard_channel<double>(name.get<std::string>(), params, n, &target);
    }
    return standard_channel<double>(name.get<std::string>(), params, n);
  }
  fail("channel file needs either 'kraus' or 'named'");
}

Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    fail(path.string() + ": " + e.what());
  }
}

void write_json(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) fail("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

}  // namespace stingy::io
