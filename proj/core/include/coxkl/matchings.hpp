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

#ifndef COXKL_MATCHINGS_HPP_
#define COXKL_MATCHINGS_HPP_

#include <optional>
#include <string>
#include <vector>

#include "coxkl/coxeter.hpp"
#include "coxkl/poset.hpp"

namespace coxkl {

enum class MatchingSource {
  kExplicit,
  kLeftMultiplication,
  kRightMultiplication,
  kRightSystem,
  kLeftSystem,
  kEnumerated,
  kRestricted,
};

std::string to_string(MatchingSource source);
MatchingSource parse_matching_source(std::string_view text);

// Involution on the local indices of an interval. Equality is pointwise; the
// source tag is informational.
struct Matching {
  std::vector<Index> partner;
  MatchingSource source = MatchingSource::kExplicit;
  Generator generator = -1;  // for multiplication matchings

  Index operator()(Index u) const { return partner[u]; }
  std::size_t size() const { return partner.size(); }

  friend bool operator==(const Matching& a, const Matching& b) {
    return a.partner == b.partner;
  }
};

// Involution whose pairs are Hasse edges.
bool is_matching(const Interval& iv, const Matching& m);
// Throws InvalidArgument unless is_matching.
void check_matching(const Interval& iv, const Matching& m);

// u covered by v and M(u) != v imply M(u) <= M(v). Throws on non-matchings.
bool is_special(const Interval& iv, const Matching& m);

// u -> us (right) or su (left) on [e,w]; s must be a descent of w on that side.
Matching multiplication_matching(const Interval& iv, Generator s, Side side);

// True when M coincides with some multiplication matching on the given side.
bool is_multiplication_matching(const Interval& iv, const Matching& M, Side side);

// Every special matching, ordered lexicographically by partner array.
std::vector<Matching> enumerate_special_matchings(const Interval& iv);

// Marked u with M(u) below u forces M(u) marked.
bool is_H_special(const MarkedInterval& marked, const Matching& m);

// <M,N>(u) as the cycle u, M(u), N(M(u)), ...
std::vector<Index> orbit(const Matching& M, const Matching& N, Index u);

// Pointwise MN = NM.
bool commute(const Matching& M, const Matching& N);
// Commutation tested only on the lower dihedral intervals that contain M(e)
// and N(e). Equivalent to commute() for special matchings of a lower
// Bruhat interval.
bool commute_on_dihedral_intervals(const Interval& iv, const Matching& M,
                                   const Matching& N);

struct RestrictedMatching {
  Interval interval;
  Matching matching;
  std::vector<Index> to_parent;  // local index in [u,v] -> index in parent
};

// Requires M(v) covered by v and M(u) covering u.
RestrictedMatching restrict_matching(const Interval& iv, const Matching& M, Index u,
                                     Index v);

// (J, s, t, M_st) with M_st a matching of [e, w_0(s,t)].
struct DihedralSystem {
  Side side = Side::kRight;
  GeneratorSubset J;
  Generator s = -1;
  Generator t = -1;
  Interval st_interval;  // [e, w_0(s,t)] of the top of the host interval
  Matching m_st;
};

// Builds the [e, w_0(s,t)] interval for the host and wraps m_st.
DihedralSystem make_system(const Interval& host, Side side, GeneratorSubset J,
                           Generator s, Generator t, Matching m_st);

struct SystemCheck {
  bool valid = true;
  std::vector<std::string> violations;  // "R1", "R4(b)", "L5", ...
};

SystemCheck verify_system(const Interval& host, const DihedralSystem& system);

// Evaluates the system formula at u. nullopt when the inner argument falls
// outside [e, w_0(s,t)] or the result leaves the enumerated group.
std::optional<Element> system_image(const Interval& host, const DihedralSystem& system,
                                    Element u);

// Matching associated with a verified system; throws PreconditionFailed for
// an invalid system.
Matching matching_from_system(const Interval& host, const DihedralSystem& system);

// Every (J, s, t, M_st) in the finite search space: J a subset of the support
// of w, s in J, t outside J, M_st a special matching of [e, w_0(s,t)] with
// M_st(e) = s. Not verified.
std::vector<DihedralSystem> candidate_systems(const Interval& host, Side side);

// Verified systems (either side) whose associated matching equals M.
std::vector<DihedralSystem> systems_realizing(const Interval& host, const Matching& M);

struct CommutingMatch {
  Matching matching;
  bool differs_on_top = false;
};

// A multiplication matching on the given side commuting with M. Prefers one
// that differs from M at the top; with require_differs, only such ones count.
std::optional<CommutingMatch> find_commuting_multiplication_matching(
    const Interval& iv, const Matching& M, Side side, bool require_differs = false);

}  // namespace coxkl

#endif  // COXKL_MATCHINGS_HPP_
