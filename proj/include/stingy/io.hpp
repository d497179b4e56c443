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

// JSON file formats. Complex numbers are [re, im] pairs everywhere.
//
//   state:   {"n": 2, "kind": "statevector", "data": [[re, im], ...]}
//            {"n": 2, "kind": "density", "data": [[[re, im], ...], ...]}
//   basis:   {"n": 2, "local_bases": [[[[re, im], [re, im]], [[re, im], [re, im]]], ...]}
//   channel: {"n": 2, "kraus": [matrix, ...]}
//            {"n": 2, "named": {"name": "depolarizing", "params": [0.3]}}
//            {"n": 2, "named": {"name": "replace_with", "params": [], "target": <state>}}

#include <filesystem>
#include <variant>

#include <json.hpp>

#include "stingy/stingy.hpp"

namespace stingy::io {

using Json = nlohmann::ordered_json;

using LoadedState = std::variant<PureState<double>, DensityMatrix<double>>;

Json complex_to_json(Complex<double> z);
Json vector_to_json(const CVector<double>& v);
Json matrix_to_json(const CMatrix<double>& m);

Complex<double> complex_from_json(const Json& j);
CVector<double> vector_from_json(const Json& j);
CMatrix<double> matrix_from_json(const Json& j);

Json state_to_json(const PureState<double>& psi);
Json state_to_json(const DensityMatrix<double>& rho);
Json state_to_json(const LoadedState& s);
LoadedState state_from_json(const Json& j);
DensityMatrix<double> as_density(const LoadedState& s);

Json basis_to_json(const ProductBasis<double>& basis);
ProductBasis<double> basis_from_json(const Json& j);

Json channel_to_json(const QuantumChannel<double>& ch);
QuantumChannel<double> channel_from_json(const Json& j);

/// Reads and parses a JSON file; failures raise Error(ParseError).
Json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const Json& j);

}  // namespace stingy::io
