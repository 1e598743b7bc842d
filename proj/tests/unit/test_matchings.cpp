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

#include <algorithm>
#include <set>

#include "coxkl/coxeter.hpp"
#include "coxkl/error.hpp"
#include "coxkl/matchings.hpp"
#include "coxkl/poset.hpp"
#include "oracles.hpp"

using namespace coxkl;

namespace {

std::vector<Element> corpus(const CoxeterSystem& sys, int max_length = 99) {
  std::vector<Element> out;
  for (Element w : sys.elements()) {
    if (w.length() <= max_length) out.push_back(w);
  }
  return out;
}

Index at(const Interval& iv, const char* word) {
  const auto i = iv.index_of(iv.system().parse(word));
  REQUIRE(i.has_value());
  return *i;
}

// m(s,t) = 4, m(s,r) = m(t,r) = 3, enumerated up to length 8.
CoxeterSystem str_group() {
  GroupOptions o;
  o.max_length = 8;
  return CoxeterSystem::from_matrix({{1, 4, 3}, {4, 1, 3}, {3, 3, 1}}, o, {"s", "t", "r"},
                                    "str");
}

}  // namespace

TEST_CASE("matchings: enumeration agrees with brute force") {
  for (const char* name : {"A3", "B3", "I2(6)", "D4"}) {
    CAPTURE(name);
    const auto sys = CoxeterSystem::named(name);
    for (Element w : corpus(sys, 5)) {
      const Interval iv = Interval::lower(sys, w);
      if (iv.size() > 20) continue;
      const auto found = enumerate_special_matchings(iv);
      std::vector<std::vector<Index>> got;
      for (const auto& m : found) got.push_back(m.partner);
      CHECK(got == oracle::brute_special_matchings(iv));
    }
  }
}

TEST_CASE("matchings: small counts") {
  const auto i4 = CoxeterSystem::named("I2(4)");
  CHECK(enumerate_special_matchings(Interval::lower(i4, i4.parse("s1"))).size() == 1);
  CHECK(enumerate_special_matchings(Interval::lower(i4, i4.parse("s1s2"))).size() == 2);
  CHECK(enumerate_special_matchings(Interval::lower(i4, i4.parse("s1s2s1s2"))).size() == 8);
  CHECK(enumerate_special_matchings(Interval::lower(i4, i4.identity())).empty());
  const auto a3 = CoxeterSystem::named("A3");
  // Frozen from the brute-force oracle.
  CHECK(enumerate_special_matchings(Interval::lower(a3, a3.longest_element())).size() == 6);
}

TEST_CASE("matchings: every enumerated matching is special") {
  for (const char* name : {"A3", "B3", "I2(7)"}) {
    const auto sys = CoxeterSystem::named(name);
    for (Element w : corpus(sys)) {
      const Interval iv = Interval::lower(sys, w);
      const auto all = enumerate_special_matchings(iv);
      for (std::size_t k = 0; k < all.size(); ++k) {
        CHECK(is_matching(iv, all[k]));
        CHECK(is_special(iv, all[k]));
        if (k > 0) CHECK(all[k - 1].partner < all[k].partner);
      }
    }
  }
}

TEST_CASE("matchings: multiplication matchings") {
  for (const char* name : {"A3", "B3", "F4"}) {
    const auto sys = CoxeterSystem::named(name);
    auto g = oracle::rng(6);
    const auto all = sys.elements();
    std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
    for (int trial = 0; trial < 12; ++trial) {
      const Element w = all[pick(g)];
      if (w.length() > 10) continue;
      const Interval iv = Interval::lower(sys, w);
      const auto special = enumerate_special_matchings(iv);
      for (Side side : {Side::kLeft, Side::kRight}) {
        for (Generator s = 0; s < sys.rank(); ++s) {
          if (!w.descents(side).contains(s)) {
            if (!w.is_identity()) {
              CHECK_THROWS_AS(multiplication_matching(iv, s, side), PreconditionFailed);
            }
            continue;
          }
          const Matching m = multiplication_matching(iv, s, side);
          CHECK(is_special(iv, m));
          CHECK(std::find(special.begin(), special.end(), m) != special.end());
          for (Index i = 0; i < iv.size(); ++i) {
            const Element expect = side == Side::kLeft
                                       ? sys.multiply(sys.generator(s), iv.element(i))
                                       : sys.multiply(iv.element(i), sys.generator(s));
            CHECK(iv.element(m(i)) == expect);
          }
        }
      }
    }
  }
  const auto i4 = CoxeterSystem::named("I2(4)");
  const Interval tst = Interval::lower(i4, i4.parse("s2s1s2"));
  const Matching lt = multiplication_matching(tst, 1, Side::kLeft);
  CHECK(lt(at(tst, "e")) == at(tst, "s2"));
  CHECK(lt(at(tst, "s1")) == at(tst, "s2s1"));
  CHECK(lt(at(tst, "s1s2")) == at(tst, "s2s1s2"));
}

TEST_CASE("matchings: the exceptional dihedral matching is special") {
  const auto i4 = CoxeterSystem::named("I2(4)");
  const Interval iv = Interval::lower(i4, i4.parse("s1s2s1s2"));
  Matching m;
  m.partner.assign(iv.size(), kNoIndex);
  auto pair = [&](const char* a, const char* b) {
    m.partner[at(iv, a)] = at(iv, b);
    m.partner[at(iv, b)] = at(iv, a);
  };
  pair("e", "s1");
  pair("s2", "s2s1");
  pair("s1s2", "s2s1s2");
  pair("s1s2s1", "s1s2s1s2");
  CHECK(is_special(iv, m));
  Matching bad = m;
  bad.partner[at(iv, "s2")] = at(iv, "s1s2");
  CHECK(!is_matching(iv, bad));
  CHECK_THROWS_AS(is_special(iv, bad), InvalidArgument);
}

TEST_CASE("matchings: H-special classification") {
  for (const char* name : {"A3", "B3"}) {
    const auto sys = CoxeterSystem::named(name);
    for (Element w : corpus(sys)) {
      const Interval iv = Interval::lower(sys, w);
      const auto all = enumerate_special_matchings(iv);
      for (GeneratorSubset H : all_subsets(sys.rank())) {
        if (!sys.is_min_coset_rep(w, H)) continue;
        const MarkedInterval marked(iv, H);
        for (const auto& M : all) {
          if (H.empty()) CHECK(is_H_special(marked, M));
        }
        for (Generator s : w.left_descents().members()) {
          CHECK(is_H_special(marked, multiplication_matching(iv, s, Side::kLeft)));
        }
      }
    }
  }
  const auto a2 = CoxeterSystem::named("A2");
  const Interval iv = Interval::lower(a2, a2.parse("s2s1"));
  const MarkedInterval marked(iv, GeneratorSubset::of({1}));
  CHECK(!is_H_special(marked, multiplication_matching(iv, 0, Side::kRight)));
}

TEST_CASE("matchings: orbits are dihedral intervals") {
  for (const char* name : {"A3", "B3"}) {
    const auto sys = CoxeterSystem::named(name);
    for (Element w : corpus(sys)) {
      const Interval iv = Interval::lower(sys, w);
      const auto all = enumerate_special_matchings(iv);
      for (const auto& M : all) {
        for (const auto& N : all) {
          const bool commuting = commute(M, N);
          CHECK(commute_on_dihedral_intervals(iv, M, N) == commuting);
          for (Index u = 0; u < iv.size(); ++u) {
            const auto orb = orbit(M, N, u);
            CHECK(orb.size() % 2 == 0);
            const Index lo = *std::min_element(orb.begin(), orb.end());
            const Index hi = *std::max_element(orb.begin(), orb.end());
            const auto between = iv.range(lo, hi);
            CHECK(std::set<Index>(orb.begin(), orb.end()) ==
                  std::set<Index>(between.begin(), between.end()));
            CHECK(is_dihedral_shape(iv, orb));
          }
          if (M == N) CHECK(orbit(M, N, 0).size() == 2);
        }
      }
    }
  }
}

// Orbit sizes of <M,N> on [e,w], against those inside [e,w] cap W_{s,t}.
struct OrbitSizes {
  std::set<std::size_t> inside;
  std::set<std::size_t> all;
};

OrbitSizes orbit_sizes(const Interval& iv, const Matching& M, const Matching& N) {
  const GeneratorSubset st =
      iv.element(M(iv.bottom())).support() | iv.element(N(iv.bottom())).support();
  OrbitSizes out;
  for (Index v = 0; v < iv.size(); ++v) {
    const std::size_t k = orbit(M, N, v).size();
    out.all.insert(k);
    if (iv.system().in_parabolic(iv.element(v), st)) out.inside.insert(k);
  }
  return out;
}

TEST_CASE("matchings: orbits never outgrow the dihedral interval [e, w_0(s,t)]") {
  for (const char* name : {"A3", "B3"}) {
    const auto sys = CoxeterSystem::named(name);
    for (Element w : corpus(sys)) {
      const Interval iv = Interval::lower(sys, w);
      const auto all = enumerate_special_matchings(iv);
      for (const auto& M : all) {
        for (const auto& N : all) {
          if (M(0) == N(0)) continue;
          const OrbitSizes sizes = orbit_sizes(iv, M, N);
          CHECK(*sizes.all.rbegin() <= *sizes.inside.rbegin());
          for (std::size_t k : sizes.all) CHECK((k == 2 || sizes.inside.count(k) == 1));
        }
      }
    }
  }
}

TEST_CASE("matchings: an orbit size missing from [e, w_0(s,t)]") {
  // lambda_s1 and rho_s3 on [e, s1s2s1s3s2] in A3: the top and s2s1s3s2 form
  // an orbit of size 2, while W_{s1,s3} only carries the 4-cycle e, s1, s1s3, s3.
  const auto a3 = CoxeterSystem::named("A3");
  const Interval iv = Interval::lower(a3, a3.parse("s1s2s1s3s2"));
  const Matching M = multiplication_matching(iv, 0, Side::kLeft);
  const Matching N = multiplication_matching(iv, 2, Side::kRight);
  CHECK(is_special(iv, M));
  CHECK(is_special(iv, N));
  CHECK(orbit(M, N, at(iv, "s2s1s3s2")).size() == 2);
  const OrbitSizes sizes = orbit_sizes(iv, M, N);
  CHECK(sizes.inside == std::set<std::size_t>{4});
  CHECK(sizes.all.count(2) == 1);
}

TEST_CASE("matchings: restriction to subintervals") {
  const auto i4 = CoxeterSystem::named("I2(4)");
  const Interval iv = Interval::lower(i4, i4.parse("s2s1s2"));
  const Matching lt = multiplication_matching(iv, 1, Side::kLeft);
  const auto r = restrict_matching(iv, lt, at(iv, "s1"), at(iv, "s2s1s2"));
  CHECK(r.interval.size() == 4);
  CHECK(is_special(r.interval, r.matching));
  const auto& sub = r.interval;
  CHECK(sub.element(r.matching(*sub.index_of(i4.parse("s1")))) == i4.parse("s2s1"));
  CHECK(sub.element(r.matching(*sub.index_of(i4.parse("s1s2")))) == i4.parse("s2s1s2"));
  const auto whole = restrict_matching(iv, lt, iv.bottom(), iv.top());
  CHECK(whole.matching == lt);
  CHECK_THROWS_AS(restrict_matching(iv, lt, at(iv, "s2"), iv.top()), PreconditionFailed);

  // Restrictions of special matchings are special.
  const auto b3 = CoxeterSystem::named("B3");
  const Interval big = Interval::lower(b3, b3.parse("s1s2s3s2s1"));
  for (const auto& M : enumerate_special_matchings(big)) {
    for (Index u = 0; u < big.size(); ++u) {
      for (Index v = 0; v < big.size(); ++v) {
        if (!big.leq(u, v) || !big.covers(M(v), v) || !big.covers(u, M(u))) continue;
        const auto res = restrict_matching(big, M, u, v);
        CHECK(is_special(res.interval, res.matching));
      }
    }
  }
}

TEST_CASE("matchings: trivial systems give multiplication matchings") {
  const auto sys = CoxeterSystem::named("B3");
  for (Element w : corpus(sys)) {
    const Interval host = Interval::lower(sys, w);
    for (Generator s : w.right_descents().members()) {
      for (Generator t = 0; t < sys.rank(); ++t) {
        if (t == s) continue;
        const Element w0 = sys.max_parabolic_below(w, GeneratorSubset::of({s, t}));
        const Interval st = Interval::lower(sys, w0);
        const auto system = make_system(host, Side::kRight, GeneratorSubset::single(s), s, t,
                                        multiplication_matching(st, s, Side::kRight));
        const auto check = verify_system(host, system);
        CHECK(check.valid);
        if (check.valid) {
          CHECK(matching_from_system(host, system) ==
                multiplication_matching(host, s, Side::kRight));
        }
      }
    }
  }
}

TEST_CASE("matchings: exceptional right system") {
  const auto sys = str_group();
  const Element w = sys.parse("tstrs");
  const Interval host = Interval::lower(sys, w);
  const Generator s = 0, t = 1;
  const GeneratorSubset J = GeneratorSubset::of({0, 2});

  std::optional<DihedralSystem> found;
  for (const auto& c : candidate_systems(host, Side::kRight)) {
    if (c.J != J || c.s != s || c.t != t) continue;
    const Interval& st = c.st_interval;
    auto image = [&](const char* word) { return st.element(c.m_st(*st.index_of(sys.parse(word)))); };
    if (image("st") == sys.parse("tst") && image("sts") == sys.parse("tsts")) found = c;
  }
  REQUIRE(found.has_value());
  CHECK(found->st_interval.element(found->st_interval.top()) == sys.parse("tsts"));
  const auto check = verify_system(host, *found);
  CHECK(check.valid);
  const Matching M = matching_from_system(host, *found);
  CHECK(is_special(host, M));
  CHECK(host.element(M(0)) == sys.parse("s"));

  const Matching lambda_t = multiplication_matching(host, t, Side::kLeft);
  CHECK(commute(M, lambda_t));
  CHECK(M(host.top()) == lambda_t(host.top()));
  CHECK(!find_commuting_multiplication_matching(host, M, Side::kLeft, true).has_value());
  const auto any = find_commuting_multiplication_matching(host, M, Side::kLeft);
  REQUIRE(any.has_value());
  CHECK(!any->differs_on_top);

  // Swapping in the left multiplication by s breaks R1.
  const auto bad = make_system(host, Side::kRight, J, s, t,
                               multiplication_matching(found->st_interval, s, Side::kLeft));
  const auto bad_check = verify_system(host, bad);
  CHECK(!bad_check.valid);
  CHECK(std::find(bad_check.violations.begin(), bad_check.violations.end(), "R1") !=
        bad_check.violations.end());
  CHECK_THROWS_AS(matching_from_system(host, bad), PreconditionFailed);
}

TEST_CASE("matchings: every special matching comes from a system") {
  for (const char* name : {"A2", "B2", "A3", "B3"}) {
    CAPTURE(name);
    const auto sys = CoxeterSystem::named(name);
    for (Element w : corpus(sys)) {
      if (w.is_identity()) continue;
      const Interval host = Interval::lower(sys, w);
      for (const auto& M : enumerate_special_matchings(host)) {
        CAPTURE(sys.format(w));
        CHECK(!systems_realizing(host, M).empty());
      }
    }
  }
}

TEST_CASE("matchings: commuting multiplication matchings in simply laced groups") {
  for (const char* name : {"A3", "A4", "D4"}) {
    const auto sys = CoxeterSystem::named(name);
    for (Element w : corpus(sys, 7)) {
      if (w.length() < 2) continue;
      const Interval iv = Interval::lower(sys, w);
      for (const auto& M : enumerate_special_matchings(iv)) {
        for (Side side : {Side::kLeft, Side::kRight}) {
          if (is_multiplication_matching(iv, M, side)) continue;
          const auto found = find_commuting_multiplication_matching(iv, M, side, true);
          REQUIRE(found.has_value());
          CHECK(found->differs_on_top);
          CHECK(commute(M, found->matching));
          CHECK(found->matching(iv.top()) != M(iv.top()));
        }
      }
    }
  }
}

TEST_CASE("matchings: a multiplication matching may be alone on its side") {
  // [e, s1s2] has the single left descent s1, so lambda_s1 has no other
  // left multiplication matching to commute with; the right side still works.
  const auto a3 = CoxeterSystem::named("A3");
  const Interval iv = Interval::lower(a3, a3.parse("s1s2"));
  const Matching M = multiplication_matching(iv, 0, Side::kLeft);
  CHECK(is_multiplication_matching(iv, M, Side::kLeft));
  CHECK_FALSE(is_multiplication_matching(iv, M, Side::kRight));
  CHECK_FALSE(find_commuting_multiplication_matching(iv, M, Side::kLeft, true).has_value());
  const auto right = find_commuting_multiplication_matching(iv, M, Side::kRight, true);
  REQUIRE(right.has_value());
  CHECK(right->matching.generator == 1);
}

TEST_CASE("matchings: doubly laced exceptions need a bond of order 4") {
  for (const char* name : {"B3", "B4", "F4"}) {
    const auto sys = CoxeterSystem::named(name);
    std::size_t exceptions = 0;
    for (Element w : corpus(sys, 7)) {
      if (w.length() < 2) continue;
      const Interval iv = Interval::lower(sys, w);
      for (const auto& M : enumerate_special_matchings(iv)) {
        for (Side side : {Side::kLeft, Side::kRight}) {
          if (is_multiplication_matching(iv, M, side)) continue;
          if (find_commuting_multiplication_matching(iv, M, side, true)) continue;
          ++exceptions;
          bool four = false;
          for (const auto& sys_st : systems_realizing(iv, M)) {
            four = four || sys.bond(sys_st.s, sys_st.t) == 4;
          }
          CHECK(four);
        }
      }
    }
    CHECK(exceptions > 0);
  }
}

TEST_CASE("matchings: at most one coatom in W^H outside W^H") {
  for (const char* name : {"A3", "B3", "F4"}) {
    const auto sys = CoxeterSystem::named(name);
    for (Element v : sys.elements()) {
      if (v.is_identity()) continue;
      for (GeneratorSubset H : all_subsets(sys.rank())) {
        if (sys.is_min_coset_rep(v, H)) continue;
        int in_quotient = 0;
        // Coatoms of v: one letter deleted, length dropping by one.
        const auto word = v.word();
        std::set<ElementId> coatoms;
        for (std::size_t i = 0; i < word.size(); ++i) {
          std::vector<Generator> sub(word.begin(), word.end());
          sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(i));
          const Element c = sys.from_word(sub);
          if (c.length() + 1 == v.length()) coatoms.insert(c.id());
        }
        for (ElementId c : coatoms) in_quotient += sys.is_min_coset_rep(sys.element(c), H);
        CHECK(in_quotient <= 1);
      }
    }
  }
}

TEST_CASE("matching sources") {
  for (MatchingSource s :
       {MatchingSource::kExplicit, MatchingSource::kLeftMultiplication,
        MatchingSource::kRightMultiplication, MatchingSource::kRightSystem,
        MatchingSource::kLeftSystem, MatchingSource::kEnumerated, MatchingSource::kRestricted}) {
    CHECK(parse_matching_source(to_string(s)) == s);
  }
  CHECK_THROWS_AS(parse_matching_source("nope"), InvalidArgument);
}
