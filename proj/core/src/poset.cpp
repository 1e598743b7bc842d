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

#include "coxkl/poset.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

namespace coxkl {

namespace {

// Elements covered by v in W: deletions of one letter from a reduced word of v
// that stay of length l(v) - 1.
std::vector<Element> bruhat_coatoms(const CoxeterSystem& sys, Element v) {
  const auto word = v.word();
  const int n = static_cast<int>(word.size());
  std::vector<Element> prefix(n + 1);
  prefix[0] = sys.identity();
  for (int i = 0; i < n; ++i) prefix[i + 1] = sys.multiply(prefix[i], word[i], Side::kRight);
  std::vector<Element> out;
  for (int i = 0; i < n; ++i) {
    Element z = prefix[i];
    for (int j = i + 1; j < n; ++j) z = sys.multiply(z, word[j], Side::kRight);
    if (z.length() == n - 1) out.push_back(z);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

Interval Interval::lower(const CoxeterSystem& sys, Element w) {
  sys.check_member(w);
  std::map<ElementId, std::vector<Element>> coatoms;
  std::vector<Element> stack{w};
  coatoms[w.id()];
  std::vector<Element> all;
  while (!stack.empty()) {
    Element v = stack.back();
    stack.pop_back();
    all.push_back(v);
    auto c = bruhat_coatoms(sys, v);
    for (Element z : c) {
      if (!coatoms.contains(z.id())) {
        coatoms[z.id()];
        stack.push_back(z);
      }
    }
    coatoms[v.id()] = std::move(c);
  }
  std::sort(all.begin(), all.end());

  Interval iv;
  iv.sys_ = sys;
  iv.elements_ = std::move(all);
  const auto n = iv.elements_.size();
  for (Index i = 0; i < n; ++i) iv.index_.emplace(iv.elements_[i].id(), i);
  iv.up_.assign(n, {});
  iv.down_.assign(n, {});
  for (Index i = 0; i < n; ++i) {
    for (Element z : coatoms[iv.elements_[i].id()]) {
      const Index j = iv.index_.at(z.id());
      iv.down_[i].push_back(j);
      iv.up_[j].push_back(i);
    }
  }
  for (auto& u : iv.up_) std::sort(u.begin(), u.end());
  iv.build_order();
  return iv;
}

Interval Interval::between(const CoxeterSystem& sys, Element u, Element v) {
  sys.check_member(u);
  sys.check_member(v);
  if (!sys.bruhat_leq(u, v)) throw InvalidArgument("empty interval: u is not below v");
  if (u.is_identity()) return lower(sys, v);
  const Interval full = lower(sys, v);
  const Index lo = *full.index_of(u);
  std::vector<Element> elems;
  for (Index i = 0; i < full.size(); ++i) {
    if (full.leq(lo, i)) elems.push_back(full.element(i));
  }
  return from_elements(sys, std::move(elems));
}

Interval Interval::from_elements(const CoxeterSystem& sys, std::vector<Element> elems) {
  if (elems.empty()) throw InvalidArgument("interval must be non-empty");
  for (Element e : elems) sys.check_member(e);
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  Interval iv;
  iv.sys_ = sys;
  iv.elements_ = std::move(elems);
  const auto n = iv.elements_.size();
  for (Index i = 0; i < n; ++i) iv.index_.emplace(iv.elements_[i].id(), i);
  iv.up_.assign(n, {});
  iv.down_.assign(n, {});
  // Covers of the induced order: comparable pairs one length apart. Valid
  // for sets graded by length (intervals of W and of W^H).
  for (Index i = 0; i < n; ++i) {
    const int li = iv.elements_[i].length();
    for (Index j = 0; j < i; ++j) {
      if (iv.elements_[j].length() != li - 1) continue;
      if (sys.bruhat_leq(iv.elements_[j], iv.elements_[i])) {
        iv.down_[i].push_back(j);
        iv.up_[j].push_back(i);
      }
    }
  }
  iv.build_order();
  for (Index i = 1; i < n; ++i) {
    if (!iv.leq(0, i) || !iv.leq(i, static_cast<Index>(n - 1))) {
      throw InvalidArgument("element set is not a graded interval");
    }
  }
  return iv;
}

void Interval::build_order() {
  const auto n = elements_.size();
  words_ = (n + 63) / 64;
  below_.assign(n * words_, 0);
  for (Index b = 0; b < n; ++b) {
    auto* row = &below_[static_cast<std::size_t>(b) * words_];
    row[b >> 6] |= std::uint64_t{1} << (b & 63);
    for (Index c : down_[b]) {
      const auto* crow = &below_[static_cast<std::size_t>(c) * words_];
      for (std::size_t k = 0; k < words_; ++k) row[k] |= crow[k];
    }
  }
}

std::optional<Index> Interval::index_of(Element w) const {
  if (w.group() != elements_.front().group()) return std::nullopt;
  auto it = index_.find(w.id());
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Interval::edge_count() const {
  std::size_t n = 0;
  for (const auto& d : down_) n += d.size();
  return n;
}

bool Interval::covers(Index lower, Index upper) const {
  const auto& d = down_[upper];
  return std::find(d.begin(), d.end(), lower) != d.end();
}

bool Interval::is_dihedral() const {
  const int h = height();
  std::vector<std::vector<Index>> by_rank(h + 1);
  for (Index i = 0; i < size(); ++i) by_rank[rank(i)].push_back(i);
  for (int r = 0; r <= h; ++r) {
    const std::size_t want = (r == 0 || r == h) ? 1 : 2;
    if (by_rank[r].size() != want) return false;
  }
  for (int r = 1; r <= h; ++r) {
    for (Index i : by_rank[r]) {
      if (down_[i].size() != by_rank[r - 1].size()) return false;
    }
  }
  return true;
}

std::vector<Index> Interval::range(Index lo, Index hi) const {
  std::vector<Index> out;
  for (Index i = lo; i <= hi; ++i) {
    if (leq(lo, i) && leq(i, hi)) out.push_back(i);
  }
  return out;
}

Interval Interval::subinterval(Index lo, Index hi) const {
  if (!leq(lo, hi)) throw InvalidArgument("subinterval bounds are not comparable");
  std::vector<Element> elems;
  for (Index i : range(lo, hi)) elems.push_back(elements_[i]);
  return from_elements(sys_, std::move(elems));
}

bool is_dihedral_shape(const Interval& iv, std::span<const Index> members) {
  if (members.empty()) return false;
  std::vector<Index> sorted(members.begin(), members.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  const Index lo = sorted.front();
  const Index hi = sorted.back();
  if (sorted != iv.range(lo, hi)) return false;
  // Rank sizes 1,2,...,2,1 with complete bipartite covers between ranks.
  const int base = iv.rank(lo);
  const int h = iv.rank(hi) - base;
  std::vector<std::vector<Index>> by_rank(h + 1);
  for (Index i : sorted) by_rank[iv.rank(i) - base].push_back(i);
  for (int r = 0; r <= h; ++r) {
    const std::size_t want = (r == 0 || r == h) ? 1 : 2;
    if (by_rank[r].size() != want) return false;
  }
  for (int r = 1; r <= h; ++r) {
    for (Index i : by_rank[r]) {
      for (Index j : by_rank[r - 1]) {
        if (!iv.covers(j, i)) return false;
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Marks

MarkedInterval::MarkedInterval(Interval iv, GeneratorSubset H)
    : interval_(std::move(iv)), H_(H) {
  mark_.resize(interval_.size());
  for (Index i = 0; i < interval_.size(); ++i) {
    mark_[i] = !interval_.element(i).right_descents().intersects(H) ? 1 : 0;
  }
}

MarkedInterval::MarkedInterval(Interval iv, std::vector<char> marks)
    : interval_(std::move(iv)), mark_(std::move(marks)) {
  if (mark_.size() != interval_.size()) {
    throw InvalidArgument("need one mark per interval element");
  }
}

std::size_t MarkedInterval::marked_count() const {
  return static_cast<std::size_t>(std::count(mark_.begin(), mark_.end(), 1));
}

MarkedInterval mark_interval(Interval iv, GeneratorSubset H) {
  return MarkedInterval(std::move(iv), H);
}

// ---------------------------------------------------------------------------
// Isomorphism

namespace {

// Colour refinement run jointly on both posets so colours are comparable.
std::pair<std::vector<int>, std::vector<int>> refine_colours(const MarkedInterval& a,
                                                             const MarkedInterval& b) {
  const Interval& ia = a.interval();
  const Interval& ib = b.interval();
  std::vector<int> ca(ia.size()), cb(ib.size());
  {
    std::map<std::pair<int, int>, int> ids;
    auto colour = [&](int rank, int mark) {
      auto [it, _] = ids.try_emplace({rank, mark}, static_cast<int>(ids.size()));
      return it->second;
    };
    for (Index i = 0; i < ia.size(); ++i) ca[i] = colour(ia.rank(i), a.marked(i));
    for (Index i = 0; i < ib.size(); ++i) cb[i] = colour(ib.rank(i), b.marked(i));
  }
  std::size_t classes = 0;
  for (;;) {
    using Signature = std::tuple<int, std::vector<int>, std::vector<int>>;
    std::map<Signature, int> ids;
    auto signature = [](const Interval& iv, const std::vector<int>& c, Index i) {
      std::vector<int> ups, downs;
      for (Index j : iv.up(i)) ups.push_back(c[j]);
      for (Index j : iv.down(i)) downs.push_back(c[j]);
      std::sort(ups.begin(), ups.end());
      std::sort(downs.begin(), downs.end());
      return Signature{c[i], std::move(ups), std::move(downs)};
    };
    std::vector<Signature> sa, sb;
    for (Index i = 0; i < ia.size(); ++i) sa.push_back(signature(ia, ca, i));
    for (Index i = 0; i < ib.size(); ++i) sb.push_back(signature(ib, cb, i));
    for (const auto& s : sa) ids.try_emplace(s, 0);
    for (const auto& s : sb) ids.try_emplace(s, 0);
    int next = 0;
    for (auto& [_, id] : ids) id = next++;
    for (Index i = 0; i < ia.size(); ++i) ca[i] = ids.at(sa[i]);
    for (Index i = 0; i < ib.size(); ++i) cb[i] = ids.at(sb[i]);
    if (ids.size() == classes) break;
    classes = ids.size();
  }
  return {std::move(ca), std::move(cb)};
}

class IsoSearch {
 public:
  IsoSearch(const Interval& a, const Interval& b, const std::vector<int>& ca,
            const std::vector<int>& cb)
      : a_(a), b_(b), ca_(ca), cb_(cb), phi_(a.size(), kNoIndex), used_(b.size(), 0) {
    for (Index j = 0; j < b.size(); ++j) by_colour_[cb[j]].push_back(j);
  }

  std::optional<std::vector<Index>> run() {
    if (extend(0)) return phi_;
    return std::nullopt;
  }

 private:
  // Vertices of a are assigned in index order, so all lower covers of i are
  // already mapped when i is reached.
  bool extend(Index i) {
    if (i == a_.size()) return true;
    auto it = by_colour_.find(ca_[i]);
    if (it == by_colour_.end()) return false;
    for (Index j : it->second) {
      if (used_[j]) continue;
      bool ok = true;
      for (Index d : a_.down(i)) {
        if (!b_.covers(phi_[d], j)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      phi_[i] = j;
      used_[j] = 1;
      if (extend(i + 1)) return true;
      used_[j] = 0;
      phi_[i] = kNoIndex;
    }
    return false;
  }

  const Interval& a_;
  const Interval& b_;
  const std::vector<int>& ca_;
  const std::vector<int>& cb_;
  std::map<int, std::vector<Index>> by_colour_;
  std::vector<Index> phi_;
  std::vector<char> used_;
};

}  // namespace

std::optional<std::vector<Index>> find_marked_isomorphism(const MarkedInterval& a,
                                                          const MarkedInterval& b) {
  const Interval& ia = a.interval();
  const Interval& ib = b.interval();
  if (ia.size() != ib.size() || ia.edge_count() != ib.edge_count() ||
      a.marked_count() != b.marked_count()) {
    return std::nullopt;
  }
  auto [ca, cb] = refine_colours(a, b);
  std::vector<int> ha = ca, hb = cb;
  std::sort(ha.begin(), ha.end());
  std::sort(hb.begin(), hb.end());
  if (ha != hb) return std::nullopt;
  auto phi = IsoSearch(ia, ib, ca, cb).run();
  if (phi && !is_marked_isomorphism(a, b, *phi)) {
    throw InternalError("isomorphism search produced an invalid map");
  }
  return phi;
}

std::optional<std::vector<Index>> find_isomorphism(const Interval& a, const Interval& b) {
  return find_marked_isomorphism(MarkedInterval(a, std::vector<char>(a.size(), 1)),
                                 MarkedInterval(b, std::vector<char>(b.size(), 1)));
}

bool is_marked_isomorphism(const MarkedInterval& a, const MarkedInterval& b,
                           std::span<const Index> phi) {
  const Interval& ia = a.interval();
  const Interval& ib = b.interval();
  if (ia.size() != ib.size() || phi.size() != ia.size()) return false;
  std::vector<char> hit(ib.size(), 0);
  for (Index i = 0; i < ia.size(); ++i) {
    if (phi[i] >= ib.size() || hit[phi[i]]) return false;
    hit[phi[i]] = 1;
    if (ia.rank(i) != ib.rank(phi[i])) return false;
    if (a.marked(i) != b.marked(phi[i])) return false;
  }
  if (ia.edge_count() != ib.edge_count()) return false;
  for (Index i = 0; i < ia.size(); ++i) {
    for (Index d : ia.down(i)) {
      if (!ib.covers(phi[d], phi[i])) return false;
    }
  }
  return true;
}

}  // namespace coxkl
