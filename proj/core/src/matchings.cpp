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

#include "coxkl/matchings.hpp"

#include <algorithm>
#include <array>
#include <map>

namespace coxkl {

namespace {

constexpr std::array<std::pair<MatchingSource, const char*>, 7> kSourceNames{{
    {MatchingSource::kExplicit, "explicit"},
    {MatchingSource::kLeftMultiplication, "left-mult"},
    {MatchingSource::kRightMultiplication, "right-mult"},
    {MatchingSource::kRightSystem, "from-right-system"},
    {MatchingSource::kLeftSystem, "from-left-system"},
    {MatchingSource::kEnumerated, "enumerated"},
    {MatchingSource::kRestricted, "restricted"},
}};

}  // namespace

std::string to_string(MatchingSource source) {
  for (const auto& [s, name] : kSourceNames) {
    if (s == source) return name;
  }
  return "explicit";
}

MatchingSource parse_matching_source(std::string_view text) {
  for (const auto& [s, name] : kSourceNames) {
    if (text == name) return s;
  }
  throw InvalidArgument("unknown matching source '" + std::string(text) + "'");
}

bool is_matching(const Interval& iv, const Matching& m) {
  if (m.size() != iv.size()) return false;
  for (Index u = 0; u < iv.size(); ++u) {
    const Index v = m(u);
    if (v >= iv.size() || v == u || m(v) != u) return false;
    if (!iv.covers(u, v) && !iv.covers(v, u)) return false;
  }
  return true;
}

void check_matching(const Interval& iv, const Matching& m) {
  if (!is_matching(iv, m)) {
    throw InvalidArgument("not a matching: pairs must be Hasse edges forming an involution");
  }
}

bool is_special(const Interval& iv, const Matching& m) {
  check_matching(iv, m);
  for (Index v = 0; v < iv.size(); ++v) {
    for (Index u : iv.down(v)) {
      if (m(u) != v && !iv.leq(m(u), m(v))) return false;
    }
  }
  return true;
}

Matching multiplication_matching(const Interval& iv, Generator s, Side side) {
  if (!iv.is_lower()) throw PreconditionFailed("multiplication matchings need a lower interval");
  const auto& sys = iv.system();
  const Element w = iv.element(iv.top());
  if (!w.descents(side).contains(s)) {
    throw PreconditionFailed("generator " + sys.labels().at(s) + " is not a " +
                             (side == Side::kLeft ? "left" : "right") +
                             " descent of " + sys.format(w));
  }
  Matching m;
  m.source = side == Side::kLeft ? MatchingSource::kLeftMultiplication
                                 : MatchingSource::kRightMultiplication;
  m.generator = s;
  m.partner.resize(iv.size());
  for (Index u = 0; u < iv.size(); ++u) {
    const auto image = iv.index_of(sys.multiply(iv.element(u), s, side));
    if (!image) throw InternalError("multiplication by a descent left [e,w]");
    m.partner[u] = *image;
  }
  return m;
}

// ---------------------------------------------------------------------------
// Enumeration

namespace {

class SpecialMatchingSearch {
 public:
  explicit SpecialMatchingSearch(const Interval& iv)
      : iv_(iv), partner_(iv.size(), kNoIndex) {}

  std::vector<Matching> run() {
    if (iv_.size() % 2 == 0) extend(0);
    return std::move(found_);
  }

 private:
  // Elements are matched in rank order, so an unmatched element at the front
  // can only be paired with one of its upper covers.
  void extend(Index pos) {
    while (pos < iv_.size() && partner_[pos] != kNoIndex) ++pos;
    if (pos == iv_.size()) {
      Matching m;
      m.partner = partner_;
      m.source = MatchingSource::kEnumerated;
      found_.push_back(std::move(m));
      return;
    }
    for (Index v : iv_.up(pos)) {
      if (partner_[v] != kNoIndex) continue;
      partner_[pos] = v;
      partner_[v] = pos;
      if (consistent(pos) && consistent(v)) extend(pos + 1);
      partner_[pos] = kNoIndex;
      partner_[v] = kNoIndex;
    }
  }

  // The special condition on every cover pair through x whose endpoints are
  // both matched.
  bool consistent(Index x) const {
    for (Index b : iv_.up(x)) {
      if (partner_[b] == kNoIndex || partner_[x] == b) continue;
      if (!iv_.leq(partner_[x], partner_[b])) return false;
    }
    for (Index a : iv_.down(x)) {
      if (partner_[a] == kNoIndex || partner_[a] == x) continue;
      if (!iv_.leq(partner_[a], partner_[x])) return false;
    }
    return true;
  }

  const Interval& iv_;
  std::vector<Index> partner_;
  std::vector<Matching> found_;
};

}  // namespace

std::vector<Matching> enumerate_special_matchings(const Interval& iv) {
  auto all = SpecialMatchingSearch(iv).run();
  std::sort(all.begin(), all.end(),
            [](const Matching& a, const Matching& b) { return a.partner < b.partner; });
  return all;
}

bool is_H_special(const MarkedInterval& marked, const Matching& m) {
  const Interval& iv = marked.interval();
  check_matching(iv, m);
  for (Index u = 0; u < iv.size(); ++u) {
    if (marked.marked(u) && iv.rank(m(u)) < iv.rank(u) && !marked.marked(m(u))) {
      return false;
    }
  }
  return true;
}

std::vector<Index> orbit(const Matching& M, const Matching& N, Index u) {
  if (M.size() != N.size()) throw InvalidArgument("matchings of different intervals");
  std::vector<Index> out{u};
  Index x = u;
  for (std::size_t step = 0;; ++step) {
    x = step % 2 == 0 ? M(x) : N(x);
    if (x == u && step % 2 == 1) break;
    out.push_back(x);
    if (out.size() > M.size() + 1) throw InternalError("orbit does not close");
  }
  return out;
}

bool commute(const Matching& M, const Matching& N) {
  if (M.size() != N.size()) throw InvalidArgument("matchings of different intervals");
  for (Index u = 0; u < M.size(); ++u) {
    if (M(N(u)) != N(M(u))) return false;
  }
  return true;
}

bool commute_on_dihedral_intervals(const Interval& iv, const Matching& M,
                                   const Matching& N) {
  if (!iv.is_lower()) throw PreconditionFailed("lemma applies to lower intervals");
  if (M.size() != N.size() || M.size() != iv.size()) {
    throw InvalidArgument("matchings of different intervals");
  }
  if (iv.size() == 1) return true;
  const Generator s = iv.element(M(iv.bottom())).word()[0];
  const Generator t = iv.element(N(iv.bottom())).word()[0];
  std::vector<GeneratorSubset> parabolics;
  if (s != t) {
    parabolics.push_back(GeneratorSubset::of({s, t}));
  } else {
    for (Generator r = 0; r < iv.system().rank(); ++r) {
      if (r != s) parabolics.push_back(GeneratorSubset::of({s, r}));
    }
    if (parabolics.empty()) parabolics.push_back(GeneratorSubset::single(s));
  }
  for (Index u = 0; u < iv.size(); ++u) {
    const auto support = iv.element(u).support();
    const bool inside = std::any_of(parabolics.begin(), parabolics.end(),
                                    [&](GeneratorSubset p) { return support.is_subset_of(p); });
    if (inside && M(N(u)) != N(M(u))) return false;
  }
  return true;
}

RestrictedMatching restrict_matching(const Interval& iv, const Matching& M, Index u,
                                     Index v) {
  check_matching(iv, M);
  if (!iv.leq(u, v)) throw PreconditionFailed("restriction bounds are not comparable");
  if (u != v && !(iv.covers(M(v), v) && iv.covers(u, M(u)))) {
    throw PreconditionFailed("restriction needs M(v) covered by v and M(u) covering u");
  }
  RestrictedMatching out;
  out.to_parent = iv.range(u, v);
  out.interval = iv.subinterval(u, v);
  out.matching.source = MatchingSource::kRestricted;
  out.matching.partner.resize(out.to_parent.size());
  std::vector<Index> local(iv.size(), kNoIndex);
  for (Index i = 0; i < out.to_parent.size(); ++i) local[out.to_parent[i]] = i;
  for (Index i = 0; i < out.to_parent.size(); ++i) {
    const Index image = local[M(out.to_parent[i])];
    if (image == kNoIndex) throw InternalError("matching does not stabilize [u,v]");
    out.matching.partner[i] = image;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Systems

DihedralSystem make_system(const Interval& host, Side side, GeneratorSubset J,
                           Generator s, Generator t, Matching m_st) {
  if (!host.is_lower()) throw PreconditionFailed("systems are defined on lower intervals");
  const auto& sys = host.system();
  sys.check_generator(s);
  sys.check_generator(t);
  DihedralSystem out;
  out.side = side;
  out.J = J;
  out.s = s;
  out.t = t;
  const Element w = host.element(host.top());
  out.st_interval = Interval::lower(sys, sys.max_parabolic_below(w, GeneratorSubset::of({s, t})));
  if (m_st.size() != out.st_interval.size()) {
    throw InvalidArgument("M_st must be a matching of [e, w_0(s,t)]");
  }
  out.m_st = std::move(m_st);
  return out;
}

std::optional<Element> system_image(const Interval& host, const DihedralSystem& sys_data,
                                    Element u) {
  const auto& sys = host.system();
  const auto st = GeneratorSubset::of({sys_data.s, sys_data.t});
  const auto s_only = GeneratorSubset::single(sys_data.s);
  Element prefix, middle, suffix;
  if (sys_data.side == Side::kRight) {
    // (u^J)^{st} . M_st((u^J)_{st} . _{s}(u_J)) . ^{s}(u_J)
    const auto [uJ, u_J] = sys.coset_decompose_right(u, sys_data.J);
    const auto [a, b] = sys.coset_decompose_right(uJ, st);
    const auto [c, d] = sys.coset_decompose_left(u_J, s_only);
    prefix = a;
    middle = sys.multiply(b, c);
    suffix = d;
  } else {
    // (_J u)^{s} . M_st((_J u)_{s} . _{st}(^J u)) . ^{st}(^J u)
    const auto [jl, jr] = sys.coset_decompose_left(u, sys_data.J);
    const auto [a, b] = sys.coset_decompose_right(jl, s_only);
    const auto [c, d] = sys.coset_decompose_left(jr, st);
    prefix = a;
    middle = sys.multiply(b, c);
    suffix = d;
  }
  const auto mid_index = sys_data.st_interval.index_of(middle);
  if (!mid_index) return std::nullopt;
  const Element image = sys_data.st_interval.element(sys_data.m_st(*mid_index));
  try {
    return sys.multiply(sys.multiply(prefix, image), suffix);
  } catch (const LengthBoundExceeded&) {
    return std::nullopt;
  }
}

namespace {

// M commutes with multiplication by g (on the given side) on the subset of
// [e, w_0(s,t)] selected by `within`; the product must stay in the interval.
template <typename Pred>
bool commutes_with_multiplication(const Interval& st, const Matching& m, Generator g,
                                  Side side, Pred within) {
  const auto& sys = st.system();
  for (Index z = 0; z < st.size(); ++z) {
    if (!within(z)) continue;
    const auto gz = st.index_of(sys.multiply(st.element(z), g, side));
    if (!gz) return false;
    const auto g_mz = st.index_of(sys.multiply(st.element(m(z)), g, side));
    if (!g_mz || m(*gz) != *g_mz) return false;
  }
  return true;
}

bool equals_multiplication(const Interval& st, const Matching& m, Generator g, Side side) {
  const auto& sys = st.system();
  for (Index z = 0; z < st.size(); ++z) {
    const auto gz = st.index_of(sys.multiply(st.element(z), g, side));
    if (!gz || m(z) != *gz) return false;
  }
  return true;
}

}  // namespace

SystemCheck verify_system(const Interval& host, const DihedralSystem& d) {
  SystemCheck out;
  const auto& sys = host.system();
  const bool right = d.side == Side::kRight;
  const std::string tag = right ? "R" : "L";
  auto fail = [&](const std::string& axiom) {
    out.valid = false;
    if (std::find(out.violations.begin(), out.violations.end(), tag + axiom) ==
        out.violations.end()) {
      out.violations.push_back(tag + axiom);
    }
  };
  const Element w = host.element(host.top());
  const Interval& st = d.st_interval;
  const Side other = right ? Side::kLeft : Side::kRight;

  // 1: J, s, t and M_st.
  bool m_ok = d.J.contains(d.s) && !d.J.contains(d.t) && d.s != d.t &&
              is_matching(st, d.m_st) && is_special(st, d.m_st);
  if (m_ok) {
    const auto s_idx = st.index_of(sys.generator(d.s));
    m_ok = s_idx && d.m_st(st.bottom()) == *s_idx;
    if (m_ok) {
      if (const auto t_idx = st.index_of(sys.generator(d.t))) {
        // M_st(t) = ts (right) or st (left).
        const Element target = right ? sys.multiply(sys.generator(d.t), d.s, Side::kRight)
                                     : sys.multiply(sys.generator(d.t), d.s, Side::kLeft);
        const auto target_idx = st.index_of(target);
        m_ok = target_idx && d.m_st(*t_idx) == *target_idx;
      }
    }
  }
  if (!m_ok) {
    fail("1");
    return out;  // the remaining axioms refer to M_st
  }

  // 2: the formula stays inside [e,w].
  for (Index u = 0; u < host.size(); ++u) {
    const auto image = system_image(host, d, host.element(u));
    if (!image || !host.index_of(*image)) {
      fail("2");
      break;
    }
  }

  // 3: r in J below w^J (right) or ^J w (left) commutes with s.
  const Element w_part = right ? sys.coset_decompose_right(w, d.J).first
                               : sys.coset_decompose_left(w, d.J).second;
  for (Generator r : d.J.members()) {
    if (r != d.s && w_part.support().contains(r) && !sys.commute(r, d.s)) fail("3");
  }

  // 4: depends on which of s, t lie below (w^J)^{st} or ^{st}(^J w).
  const auto st_set = GeneratorSubset::of({d.s, d.t});
  const Element x = right ? sys.coset_decompose_right(w_part, st_set).first
                          : sys.coset_decompose_left(w_part, st_set).second;
  const bool s_below = x.support().contains(d.s);
  const bool t_below = x.support().contains(d.t);
  auto everywhere = [](Index) { return true; };
  if (s_below && t_below) {
    if (!equals_multiplication(st, d.m_st, d.s, right ? Side::kRight : Side::kLeft)) fail("4(a)");
  } else if (s_below) {
    if (!commutes_with_multiplication(st, d.m_st, d.s, other, everywhere)) fail("4(b)");
  } else if (t_below) {
    if (!commutes_with_multiplication(st, d.m_st, d.t, other, everywhere)) fail("4(c)");
  }

  // 5: for v <= w with s below ^{s}(v_J) (right) or (_J v)^{s} (left), M_st
  // commutes with multiplication by s on [e, v_0(s,t)].
  const auto s_only = GeneratorSubset::single(d.s);
  const Side own = right ? Side::kRight : Side::kLeft;
  for (Index v = 0; v < host.size(); ++v) {
    const Element ve = host.element(v);
    Element piece;
    if (right) {
      piece = sys.coset_decompose_left(sys.coset_decompose_right(ve, d.J).second, s_only).second;
    } else {
      piece = sys.coset_decompose_right(sys.coset_decompose_left(ve, d.J).first, s_only).first;
    }
    if (!piece.support().contains(d.s)) continue;
    const auto v0 = st.index_of(sys.max_parabolic_below(ve, st_set));
    if (!v0) throw InternalError("v_0(s,t) outside [e, w_0(s,t)]");
    auto below_v0 = [&](Index z) { return st.leq(z, *v0); };
    if (!commutes_with_multiplication(st, d.m_st, d.s, own, below_v0)) {
      fail("5");
      break;
    }
  }
  return out;
}

Matching matching_from_system(const Interval& host, const DihedralSystem& d) {
  const auto check = verify_system(host, d);
  if (!check.valid) {
    std::string what = "invalid system:";
    for (const auto& v : check.violations) what += " " + v;
    throw PreconditionFailed(what);
  }
  Matching m;
  m.source = d.side == Side::kRight ? MatchingSource::kRightSystem : MatchingSource::kLeftSystem;
  m.partner.resize(host.size());
  for (Index u = 0; u < host.size(); ++u) {
    m.partner[u] = *host.index_of(*system_image(host, d, host.element(u)));
  }
  if (!is_matching(host, m) || !is_special(host, m)) {
    throw InternalError("system produced a non-special matching");
  }
  return m;
}

std::vector<DihedralSystem> candidate_systems(const Interval& host, Side side) {
  std::vector<DihedralSystem> out;
  if (host.size() == 1) return out;
  const auto& sys = host.system();
  const Element w = host.element(host.top());
  const auto support = w.support();
  const int n = sys.rank();
  // Special matchings of [e, w_0(s,t)] depend only on {s,t}.
  std::map<std::pair<Generator, Generator>, std::pair<Interval, std::vector<Matching>>> cache;
  for (GeneratorSubset J : all_subsets(n)) {
    if (!J.is_subset_of(support) || J.empty()) continue;
    for (Generator s : J.members()) {
      for (Generator t = 0; t < n; ++t) {
        if (J.contains(t)) continue;
        auto key = std::minmax(s, t);
        auto it = cache.find(key);
        if (it == cache.end()) {
          Interval st = Interval::lower(sys, sys.max_parabolic_below(w, GeneratorSubset::of({s, t})));
          auto ms = enumerate_special_matchings(st);
          it = cache.emplace(key, std::make_pair(std::move(st), std::move(ms))).first;
        }
        const auto& [st, matchings] = it->second;
        const auto s_idx = st.index_of(sys.generator(s));
        if (!s_idx) continue;
        for (const Matching& m : matchings) {
          if (m(st.bottom()) != *s_idx) continue;
          DihedralSystem d;
          d.side = side;
          d.J = J;
          d.s = s;
          d.t = t;
          d.st_interval = st;
          d.m_st = m;
          out.push_back(std::move(d));
        }
      }
    }
  }
  return out;
}

std::vector<DihedralSystem> systems_realizing(const Interval& host, const Matching& M) {
  std::vector<DihedralSystem> out;
  for (Side side : {Side::kRight, Side::kLeft}) {
    for (auto& d : candidate_systems(host, side)) {
      // Cheap filter first: the formula must reproduce M everywhere.
      bool agrees = true;
      for (Index u = 0; u < host.size() && agrees; ++u) {
        const auto image = system_image(host, d, host.element(u));
        const auto idx = image ? host.index_of(*image) : std::nullopt;
        agrees = idx && *idx == M(u);
      }
      if (agrees && verify_system(host, d).valid) out.push_back(std::move(d));
    }
  }
  return out;
}

bool is_multiplication_matching(const Interval& iv, const Matching& M, Side side) {
  check_matching(iv, M);
  for (Generator s : iv.element(iv.top()).descents(side).members()) {
    if (multiplication_matching(iv, s, side).partner == M.partner) return true;
  }
  return false;
}

std::optional<CommutingMatch> find_commuting_multiplication_matching(
    const Interval& iv, const Matching& M, Side side, bool require_differs) {
  check_matching(iv, M);
  const Element w = iv.element(iv.top());
  std::optional<CommutingMatch> agreeing;
  for (Generator s : w.descents(side).members()) {
    Matching N = multiplication_matching(iv, s, side);
    if (!commute(M, N)) continue;
    const bool differs = N(iv.top()) != M(iv.top());
    if (differs) return CommutingMatch{std::move(N), true};
    if (!agreeing) agreeing = CommutingMatch{std::move(N), false};
  }
  if (require_differs) return std::nullopt;
  return agreeing;
}

}  // namespace coxkl
