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

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "coxkl/error.hpp"
#include "coxkl/json_io.hpp"
#include "coxkl_cli/cli.hpp"
#include "oracles.hpp"

using namespace coxkl;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "coxkl");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("json: polynomial round trip") {
  auto g = oracle::rng(8);
  std::uniform_int_distribution<int> c(-9, 9), d(0, 6);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<QPolynomial::Coeff> coeffs(d(g));
    for (auto& x : coeffs) x = c(g);
    const QPolynomial p(coeffs);
    CHECK(polynomial_from_json(Json::parse(to_json(p).dump())) == p);
  }
  CHECK(to_json(QPolynomial()).dump() == R"({"coeffs":[]})");
  CHECK_THROWS_AS(polynomial_from_json(Json::parse(R"({"coef":[1]})")), InvalidArgument);
}

TEST_CASE("json: matching round trip") {
  const auto sys = CoxeterSystem::named("B3");
  for (Element w : sys.elements()) {
    if (w.length() > 5) continue;
    const Interval iv = Interval::lower(sys, w);
    for (const auto& m : enumerate_special_matchings(iv)) {
      const Json j = to_json(iv, m);
      const Matching back = matching_from_json(iv, Json::parse(j.dump()));
      CHECK(back == m);
      CHECK(back.source == m.source);
    }
    for (Generator s : w.right_descents().members()) {
      const auto m = multiplication_matching(iv, s, Side::kRight);
      const auto back = matching_from_json(iv, to_json(iv, m));
      CHECK(back.generator == s);
      CHECK(back.source == MatchingSource::kRightMultiplication);
    }
  }
}

TEST_CASE("json: report round trip") {
  VerificationReport r = sweep_calculating(CoxeterSystem::named("B2"), {});
  r.counterexamples.push_back(Counterexample{"s1s2", {"s1"}, XParam::kMinusOne,
                                             {{"e", "s2"}, {"s1", "s1s2"}}, "e",
                                             QPolynomial({1, 1}), QPolynomial({0, 2})});
  const VerificationReport back = report_from_json(Json::parse(to_json(r).dump()));
  CHECK(back == r);
  CHECK(!to_json(r).contains("wall_seconds"));
  CHECK(to_json(r, true).contains("wall_seconds"));
  CHECK(to_json(r)["ok"] == false);
}

TEST_CASE("json: interval export") {
  const auto sys = CoxeterSystem::named("I2(4)");
  const Json j = to_json(MarkedInterval(Interval::lower(sys, sys.parse("s1s2s1s2")),
                                        GeneratorSubset::of({0})));
  CHECK(j["elements"].size() == 8);
  CHECK(j["edges"].size() == 12);
  CHECK(j["elements"][0]["word"] == "e");
  CHECK(j["elements"][0]["marked"] == true);
  CHECK(j["elements"][7]["rank"] == 4);
  CHECK(j["H"] == Json::array({"s1"}));
}

TEST_CASE("json: group specs") {
  CHECK(group_from_spec("B3").size() == 48);
  CHECK(group_from_spec("i2(5)").size() == 10);
  const auto m = group_from_spec(R"({"type":"matrix","m":[[1,3],[3,1]],"labels":["a","b"]})");
  CHECK(m.size() == 6);
  CHECK(m.format(m.longest_element()) == "aba");
  const auto bounded = group_from_spec(
      R"({"type":"matrix","m":[[1,4,3],[4,1,3],[3,3,1]],"max_length":5,"name":"str"})");
  CHECK(!bounded.is_finite());
  CHECK(bounded.name() == "str");
  const auto named = group_from_json(Json{{"type", "named"}, {"name", "A3"}});
  CHECK(named.size() == 24);

  const auto path = std::filesystem::temp_directory_path() / "coxkl_group_spec.json";
  {
    std::ofstream f(path);
    f << R"({"type":"named","name":"F4"})";
  }
  CHECK(group_from_spec(path.string()).size() == 1152);
  std::filesystem::remove(path);

  CHECK_THROWS_AS(group_from_spec(R"({"type":"cube"})"), InvalidArgument);
  CHECK_THROWS_AS(group_from_spec("{not json"), InvalidArgument);
  CHECK_THROWS_AS(group_from_spec("Z9"), InvalidArgument);
}

TEST_CASE("cli: poly") {
  auto r = run_cli({"poly", "--group", "F4", "--H", "s1,s2,s3", "--x", "q", "--u", "s3s1s2s3s4",
                "--w", "s3s4s2s3s1s2s3s4"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("P = q\n") != std::string::npos);

  r = run_cli({"poly", "--group", "A2", "--H", "", "--u", "e", "--w", "s1"});
  CHECK(r.out.find("R = q - 1\n") != std::string::npos);
  CHECK(r.out.find("P = 1\n") != std::string::npos);

  r = run_cli({"poly", "--group", "B3", "--u", "s1s2", "--w", "s2s1"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("R = 0\n") != std::string::npos);

  r = run_cli({"poly", "--group", "B3", "--u", "s2s3", "--w", "s2s3", "--format", "json"});
  const Json j = Json::parse(r.out);
  CHECK(j["R"]["coeffs"] == Json::array({1}));
  CHECK(j["P"]["coeffs"] == Json::array({1}));

  r = run_cli({"poly", "--group", "A2", "--H", "s1", "--u", "s1", "--w", "s1s2"});
  CHECK(r.code == cli::kUsage);
  CHECK(r.err.find("right descent s1") != std::string::npos);
}

TEST_CASE("cli: matchings") {
  auto r = run_cli({"matchings", "--group", "A2", "--w", "s1"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.rfind("1 special matching(s)", 0) == 0);
  r = run_cli({"matchings", "--group", "I2(4)", "--w", "s1s2s1s2", "--format", "json"});
  const Json j = Json::parse(r.out);
  CHECK(j["matchings"].size() == 8);
  const auto sys = CoxeterSystem::named("I2(4)");
  const Interval iv = Interval::lower(sys, sys.parse("s1s2s1s2"));
  for (const auto& m : j["matchings"]) CHECK(is_special(iv, matching_from_json(iv, m)));
}

TEST_CASE("cli: verify") {
  for (const char* g : {"A2", "I2(7)", "B2"}) {
    const auto r = run_cli({"verify", "--group", g});
    CHECK(r.code == cli::kOk);
    CHECK(r.out.find("OK") != std::string::npos);
  }
  const auto r = run_cli({"verify", "--group", "B3", "--H", "s1", "--H", "s2,s3", "--x", "-1",
                      "--max-length", "5", "--format", "json"});
  const auto report = report_from_json(Json::parse(r.out));
  CHECK(report.H_set.size() == 2);
  CHECK(report.max_length == 5);
  CHECK(report.ok());
}

TEST_CASE("cli: thread count from the environment") {
  ::setenv(cli::kThreadsEnv, "3", 1);
  const auto a = run_cli({"verify", "--group", "B3", "--format", "json"});
  ::unsetenv(cli::kThreadsEnv);
  const auto b = run_cli({"verify", "--group", "B3", "--format", "json"});
  CHECK(a.code == cli::kOk);
  CHECK(a.out == b.out);
}

TEST_CASE("cli: invariance, mongelli, export") {
  auto r = run_cli({"invariance", "--group", "B2"});
  CHECK(r.code == cli::kOk);
  r = run_cli({"invariance", "--group", "A3", "--group2", "B3", "--max-length", "3", "--format",
           "json"});
  CHECK(Json::parse(r.out)["ok"] == true);

  r = run_cli({"mongelli"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("P^{H,q}_{x,y}  = 0") != std::string::npos);
  CHECK(r.out.find("P^{H,-1}_{u,v} = q + 1") != std::string::npos);
  r = run_cli({"mongelli", "--format", "json"});
  CHECK(Json::parse(r.out)["matches_expected"] == true);

  r = run_cli({"export-interval", "--group", "A2", "--w", "s1s2", "--H", "s1"});
  const Json j = Json::parse(r.out);
  CHECK(j["elements"].size() == 4);
  CHECK(j["top"] == "s1s2");
}

TEST_CASE("cli: usage errors") {
  CHECK(run_cli({}).code == cli::kUsage);
  CHECK(run_cli({"nope"}).code == cli::kUsage);
  CHECK(run_cli({"poly", "--group", "A2"}).code == cli::kUsage);
  CHECK(run_cli({"poly", "--group", "A2", "--w", "s1", "--x", "7"}).code == cli::kUsage);
  CHECK(run_cli({"verify", "--group", "A2", "--format", "xml"}).code == cli::kUsage);
  CHECK(run_cli({"verify", "--group", "A2", "--threads", "0"}).code == cli::kUsage);
  CHECK(run_cli({"--help"}).code == cli::kOk);
}
