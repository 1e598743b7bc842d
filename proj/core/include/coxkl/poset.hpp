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

#ifndef COXKL_POSET_HPP_
#define COXKL_POSET_HPP_

// Bruhat intervals as explicit graded posets. Elements of an interval are
// addressed by dense local indices in (length, ShortLex) order, so index 0 is
// the bottom and the last index is the top.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "coxkl/coxeter.hpp"

namespace coxkl {

using Index = std::uint32_t;
inline constexpr Index kNoIndex = ~Index{0};

class Interval {
 public:
  Interval() = default;

  // [e, w].
  static Interval lower(const CoxeterSystem& sys, Element w);
  // [u, v]; empty interval is rejected.
  static Interval between(const CoxeterSystem& sys, Element u, Element v);
  // Induced subposet on an arbitrary element set (graded by length), e.g. a
  // parabolic interval [u,v]^H.
  static Interval from_elements(const CoxeterSystem& sys, std::vector<Element> elems);

  const CoxeterSystem& system() const { return sys_; }
  std::size_t size() const { return elements_.size(); }
  Element element(Index i) const { return elements_[i]; }
  const std::vector<Element>& elements() const { return elements_; }
  std::optional<Index> index_of(Element w) const;
  Index bottom() const { return 0; }
  Index top() const { return static_cast<Index>(elements_.size() - 1); }
  int rank(Index i) const { return elements_[i].length() - elements_[0].length(); }
  int height() const { return rank(top()); }
  // True when the bottom is the identity.
  bool is_lower() const { return elements_.front().is_identity(); }

  // Hasse diagram.
  std::span<const Index> up(Index i) const { return up_[i]; }
  std::span<const Index> down(Index i) const { return down_[i]; }
  std::size_t edge_count() const;
  bool covers(Index lower, Index upper) const;

  // Order relation within the interval.
  bool leq(Index a, Index b) const {
    return (below_[static_cast<std::size_t>(b) * words_ + (a >> 6)] >> (a & 63)) & 1u;
  }

  // Covers above / below u inside the interval.
  std::vector<Index> atoms(Index u) const { return up_[u]; }
  std::vector<Index> coatoms(Index u) const { return down_[u]; }

  // Shape of a Bruhat interval in a rank-2 Coxeter group.
  bool is_dihedral() const;
  // Indices in [lo, hi] (local order) and, optionally, the induced interval.
  std::vector<Index> range(Index lo, Index hi) const;
  Interval subinterval(Index lo, Index hi) const;

 private:
  void build_order();

  CoxeterSystem sys_;
  std::vector<Element> elements_;
  std::unordered_map<ElementId, Index> index_;
  std::vector<std::vector<Index>> up_;
  std::vector<std::vector<Index>> down_;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> below_;  // row b: bitset of a with a <= b
};

// Checks that the down-sets of a rank-2 shape hold. Shared by Interval and the
// orbit checks.
bool is_dihedral_shape(const Interval& iv, std::span<const Index> members);

class MarkedInterval {
 public:
  MarkedInterval() = default;
  MarkedInterval(Interval iv, GeneratorSubset H);
  // Explicit marks (used for parabolic-interval comparisons and tests).
  MarkedInterval(Interval iv, std::vector<char> marks);

  const Interval& interval() const { return interval_; }
  GeneratorSubset H() const { return H_; }
  bool marked(Index i) const { return mark_[i] != 0; }
  const std::vector<char>& marks() const { return mark_; }
  std::size_t marked_count() const;

 private:
  Interval interval_;
  GeneratorSubset H_;
  std::vector<char> mark_;
};

MarkedInterval mark_interval(Interval iv, GeneratorSubset H);

// A rank-preserving poset isomorphism a -> b mapping marked elements exactly
// onto marked elements. result[i] is the image of local index i.
std::optional<std::vector<Index>> find_marked_isomorphism(const MarkedInterval& a,
                                                          const MarkedInterval& b);
std::optional<std::vector<Index>> find_isomorphism(const Interval& a, const Interval& b);
// Direct check that phi is a marked isomorphism (covers both ways, marks).
bool is_marked_isomorphism(const MarkedInterval& a, const MarkedInterval& b,
                           std::span<const Index> phi);

}  // namespace coxkl

#endif  // COXKL_POSET_HPP_
