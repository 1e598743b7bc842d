// Copyright 2026 The coxkl Authors.
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

#ifndef COXKL_JSON_IO_HPP_
#define COXKL_JSON_IO_HPP_

// JSON forms of polynomials, matchings, intervals, reports and group specs.
// Object keys are emitted sorted, so equal values serialize identically.

#include <string_view>

#include <nlohmann/json.hpp>

#include "coxkl/coxeter.hpp"
#include "coxkl/invariance.hpp"
#include "coxkl/matchings.hpp"
#include "coxkl/polynomial.hpp"
#include "coxkl/poset.hpp"

namespace coxkl {

using Json = nlohmann::json;

// {"coeffs": [c0, c1, ...]}, constant term first.
Json to_json(const QPolynomial& p);
QPolynomial polynomial_from_json(const Json& j);

// {"source": ..., "generator": label|null, "pairs": [[lower, upper], ...]}
// with canonical words, pairs in order of the lower element.
Json to_json(const Interval& iv, const Matching& m);
Matching matching_from_json(const Interval& iv, const Json& j);

// {"group", "w", "H", "elements": [{"word", "rank", "marked"}], "edges": [[i, j]]}
// with edges as local index pairs, lower first.
Json to_json(const MarkedInterval& marked);

Json to_json(const Counterexample& c);
Counterexample counterexample_from_json(const Json& j);

// Wall time is left out unless requested, so reports of identical runs are
// byte-identical.
Json to_json(const VerificationReport& r, bool include_wall_time = false);
VerificationReport report_from_json(const Json& j);

Json to_json(const MongelliReport& r);

// {"type": "named", "name": "B3"} or {"type": "matrix", "m": [[1,3],[3,1]]},
// each with optional "labels", "name" and "max_length".
CoxeterSystem group_from_json(const Json& j, GroupOptions options = {});

// A group name ("F4", "I2(7)"), an inline JSON object, or a path to a JSON
// file holding one.
CoxeterSystem group_from_spec(std::string_view spec, GroupOptions options = {});

}  // namespace coxkl

#endif  // COXKL_JSON_IO_HPP_
