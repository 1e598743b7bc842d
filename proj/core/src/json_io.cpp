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

#include "coxkl/json_io.hpp"

#include <filesystem>
#include <fstream>
#include <string>

#include "coxkl/error.hpp"

namespace coxkl {
namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw InvalidArgument(std::string("JSON: missing field '") + key + "'");
  }
  return j.at(key);
}

template <typename T>
T get(const Json& j, const char* key) {
  try {
    return field(j, key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("JSON: bad field '") + key + "': " + e.what());
  }
}

Json pairs_to_json(const std::vector<std::pair<std::string, std::string>>& pairs) {
  Json out = Json::array();
  for (const auto& [a, b] : pairs) out.push_back(Json::array({a, b}));
  return out;
}

std::vector<std::pair<std::string, std::string>> pairs_from_json(const Json& j) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& p : j) {
    if (!p.is_array() || p.size() != 2) throw InvalidArgument("JSON: pair must have 2 entries");
    out.emplace_back(p[0].get<std::string>(), p[1].get<std::string>());
  }
  return out;
}

}  // namespace

Json to_json(const QPolynomial& p) { return Json{{"coeffs", p.coeffs()}}; }

QPolynomial polynomial_from_json(const Json& j) {
  return QPolynomial(get<std::vector<QPolynomial::Coeff>>(j, "coeffs"));
}

Json to_json(const Interval& iv, const Matching& m) {
  check_matching(iv, m);
  const auto& sys = iv.system();
  Json pairs = Json::array();
  for (Index i = 0; i < m.size(); ++i) {
    if (i < m(i)) {
      pairs.push_back(Json::array({sys.format(iv.element(i)), sys.format(iv.element(m(i)))}));
    }
  }
  Json generator = nullptr;
  if (m.generator >= 0) generator = sys.labels()[m.generator];
  return Json{{"source", to_string(m.source)}, {"generator", generator}, {"pairs", pairs}};
}

Matching matching_from_json(const Interval& iv, const Json& j) {
  const auto& sys = iv.system();
  Matching m;
  m.partner.assign(iv.size(), kNoIndex);
  if (j.contains("source")) m.source = parse_matching_source(get<std::string>(j, "source"));
  if (j.contains("generator") && !j.at("generator").is_null()) {
    const auto word = sys.parse_word(get<std::string>(j, "generator"));
    if (word.size() != 1) throw InvalidArgument("JSON: generator must be a single label");
    m.generator = word[0];
  }
  for (const auto& [a, b] : pairs_from_json(field(j, "pairs"))) {
    const auto ia = iv.index_of(sys.parse(a));
    const auto ib = iv.index_of(sys.parse(b));
    if (!ia || !ib) throw InvalidArgument("JSON: matching pair outside the interval");
    m.partner[*ia] = *ib;
    m.partner[*ib] = *ia;
  }
  check_matching(iv, m);
  return m;
}

Json to_json(const MarkedInterval& marked) {
  const Interval& iv = marked.interval();
  const auto& sys = iv.system();
  Json elements = Json::array();
  Json edges = Json::array();
  for (Index i = 0; i < iv.size(); ++i) {
    elements.push_back(Json{{"word", sys.format(iv.element(i))},
                            {"rank", iv.rank(i)},
                            {"marked", marked.marked(i)}});
    for (Index j : iv.up(i)) edges.push_back(Json::array({i, j}));
  }
  Json H = Json::array();
  for (Generator s : marked.H().members()) H.push_back(sys.labels()[s]);
  return Json{{"group", sys.name()},
              {"bottom", sys.format(iv.element(iv.bottom()))},
              {"top", sys.format(iv.element(iv.top()))},
              {"H", H},
              {"elements", elements},
              {"edges", edges}};
}

Json to_json(const Counterexample& c) {
  return Json{{"w", c.w},
              {"H", c.H},
              {"x", to_string(c.x)},
              {"matching", pairs_to_json(c.matching)},
              {"u", c.u},
              {"expected", to_json(c.expected)},
              {"got", to_json(c.got)}};
}

Counterexample counterexample_from_json(const Json& j) {
  Counterexample c;
  c.w = get<std::string>(j, "w");
  c.H = get<std::vector<std::string>>(j, "H");
  c.x = parse_xparam(get<std::string>(j, "x"));
  c.matching = pairs_from_json(field(j, "matching"));
  c.u = get<std::string>(j, "u");
  c.expected = polynomial_from_json(field(j, "expected"));
  c.got = polynomial_from_json(field(j, "got"));
  return c;
}

Json to_json(const VerificationReport& r, bool include_wall_time) {
  Json xs = Json::array();
  for (XParam x : r.x_values) xs.push_back(to_string(x));
  Json ces = Json::array();
  for (const auto& c : r.counterexamples) ces.push_back(to_json(c));
  Json out{{"campaign", r.campaign},
           {"group", r.group},
           {"max_length", r.max_length},
           {"H_set", r.H_set},
           {"x", xs},
           {"totals",
            {{"intervals", r.intervals},
             {"matchings", r.matchings},
             {"h_special", r.h_special},
             {"calculating", r.calculating}}},
           {"counterexamples", ces},
           {"ok", r.ok()}};
  if (include_wall_time) out["wall_seconds"] = r.wall_seconds;
  return out;
}

VerificationReport report_from_json(const Json& j) {
  VerificationReport r;
  r.campaign = get<std::string>(j, "campaign");
  r.group = get<std::string>(j, "group");
  r.max_length = get<int>(j, "max_length");
  r.H_set = get<std::vector<std::vector<std::string>>>(j, "H_set");
  for (const auto& x : field(j, "x")) r.x_values.push_back(parse_xparam(x.get<std::string>()));
  const Json& totals = field(j, "totals");
  r.intervals = get<std::size_t>(totals, "intervals");
  r.matchings = get<std::size_t>(totals, "matchings");
  r.h_special = get<std::size_t>(totals, "h_special");
  r.calculating = get<std::size_t>(totals, "calculating");
  for (const auto& c : field(j, "counterexamples")) {
    r.counterexamples.push_back(counterexample_from_json(c));
  }
  if (j.contains("wall_seconds")) r.wall_seconds = get<double>(j, "wall_seconds");
  return r;
}

Json to_json(const MongelliReport& r) {
  return Json{{"u", r.u},
              {"v", r.v},
              {"x", r.x},
              {"y", r.y},
              {"all_in_WH", r.all_in_WH},
              {"parabolic_isomorphic", r.parabolic_isomorphic},
              {"full_isomorphic", r.full_isomorphic},
              {"parabolic_size", r.parabolic_size},
              {"full_uv_size", r.full_uv_size},
              {"full_xy_size", r.full_xy_size},
              {"P_q_uv", to_json(r.p_q_uv)},
              {"P_q_xy", to_json(r.p_q_xy)},
              {"P_minus_one_uv", to_json(r.p_minus_one_uv)},
              {"P_minus_one_xy", to_json(r.p_minus_one_xy)},
              {"matches_expected", r.matches_expected()}};
}

CoxeterSystem group_from_json(const Json& j, GroupOptions options) {
  if (j.contains("max_length")) options.max_length = get<int>(j, "max_length");
  std::vector<std::string> labels;
  if (j.contains("labels")) labels = get<std::vector<std::string>>(j, "labels");
  const std::string type = get<std::string>(j, "type");
  if (type == "named") {
    const auto name = get<std::string>(j, "name");
    if (labels.empty()) return CoxeterSystem::named(name, options);
    return CoxeterSystem::from_matrix(CoxeterSystem::named_matrix(name), options, labels, name);
  }
  if (type == "matrix") {
    std::string name = j.contains("name") ? get<std::string>(j, "name") : std::string();
    const auto m = get<CoxeterMatrix>(j, "m");
    return CoxeterSystem::from_matrix(m, options, labels, name);
  }
  throw InvalidArgument("JSON: group type must be 'named' or 'matrix'");
}

CoxeterSystem group_from_spec(std::string_view spec, GroupOptions options) {
  auto parse = [&](const std::string& text) {
    try {
      return group_from_json(Json::parse(text), options);
    } catch (const nlohmann::json::exception& e) {
      throw InvalidArgument(std::string("JSON group spec: ") + e.what());
    }
  };
  const std::string text(spec);
  if (!text.empty() && text.front() == '{') return parse(text);
  std::error_code ec;
  if (text.find('(') == std::string::npos && std::filesystem::is_regular_file(text, ec)) {
    std::ifstream in(text);
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse(content);
  }
  return CoxeterSystem::named(text, options);
}

}  // namespace coxkl
