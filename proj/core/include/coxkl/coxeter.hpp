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

#ifndef COXKL_COXETER_HPP_
#define COXKL_COXETER_HPP_

// Finite-rank Coxeter systems with bond orders in {2,3,4} (any rank) or any
// finite bond order (rank 2). The group is enumerated once, breadth first by
// length, and every element is stored with its ShortLex-least reduced word and
// its left/right multiplication table rows. Element handles are cheap values
// that point into that shared table.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "coxkl/error.hpp"

namespace coxkl {

using Generator = int;
using ElementId = std::uint32_t;
inline constexpr ElementId kNoElement = ~ElementId{0};
inline constexpr int kMaxRank = 16;

enum class Side { kLeft, kRight };

enum class Backend {
  kCrystallographicRoot,  // integer root lattice, bonds in {2,3,4}
  kDihedralWord,          // rank 2, alternating words, any finite bond
};

// A subset of the generators, stored as a bitmask over generator indices.
class GeneratorSubset {
 public:
  constexpr GeneratorSubset() = default;
  constexpr explicit GeneratorSubset(std::uint32_t mask) : mask_(mask) {}
  static GeneratorSubset of(std::initializer_list<Generator> gens);
  static GeneratorSubset of(std::span<const Generator> gens);
  static constexpr GeneratorSubset all(int rank) {
    return GeneratorSubset(rank >= 32 ? ~0u : (1u << rank) - 1u);
  }
  static constexpr GeneratorSubset single(Generator s) {
    return GeneratorSubset(1u << s);
  }

  constexpr std::uint32_t mask() const { return mask_; }
  constexpr bool contains(Generator s) const { return (mask_ >> s) & 1u; }
  constexpr bool empty() const { return mask_ == 0; }
  int size() const;
  constexpr GeneratorSubset with(Generator s) const {
    return GeneratorSubset(mask_ | (1u << s));
  }
  constexpr GeneratorSubset without(Generator s) const {
    return GeneratorSubset(mask_ & ~(1u << s));
  }
  constexpr bool intersects(GeneratorSubset o) const {
    return (mask_ & o.mask_) != 0;
  }
  constexpr bool is_subset_of(GeneratorSubset o) const {
    return (mask_ & ~o.mask_) == 0;
  }
  constexpr GeneratorSubset operator&(GeneratorSubset o) const {
    return GeneratorSubset(mask_ & o.mask_);
  }
  constexpr GeneratorSubset operator|(GeneratorSubset o) const {
    return GeneratorSubset(mask_ | o.mask_);
  }
  // Lowest generator in the subset, or -1 when empty.
  Generator first() const;
  std::vector<Generator> members() const;

  friend constexpr bool operator==(GeneratorSubset, GeneratorSubset) = default;
  friend constexpr auto operator<=>(GeneratorSubset a, GeneratorSubset b) {
    return a.mask_ <=> b.mask_;
  }

 private:
  std::uint32_t mask_ = 0;
};

// All 2^rank subsets in increasing mask order.
std::vector<GeneratorSubset> all_subsets(int rank);

namespace detail {
struct GroupData;
}

// Handle to an element of an enumerated Coxeter group. Valid while any
// CoxeterSystem sharing the same group data is alive.
class Element {
 public:
  Element() = default;

  bool valid() const { return group_ != nullptr; }
  ElementId id() const { return id_; }
  int length() const;
  // Canonical (ShortLex-least) reduced word.
  std::span<const Generator> word() const;
  GeneratorSubset right_descents() const;
  GeneratorSubset left_descents() const;
  GeneratorSubset descents(Side side) const {
    return side == Side::kLeft ? left_descents() : right_descents();
  }
  bool is_identity() const { return id_ == 0; }
  // Generators appearing in the (any) reduced word.
  GeneratorSubset support() const;

  const detail::GroupData* group() const { return group_; }

  friend bool operator==(const Element& a, const Element& b) {
    return a.group_ == b.group_ && a.id_ == b.id_;
  }
  // Ids are assigned in (length, ShortLex word) order.
  friend std::strong_ordering operator<=>(const Element& a, const Element& b) {
    return a.id_ <=> b.id_;
  }

 private:
  friend class CoxeterSystem;
  Element(const detail::GroupData* g, ElementId id) : group_(g), id_(id) {}

  const detail::GroupData* group_ = nullptr;
  ElementId id_ = kNoElement;
};

struct ElementHash {
  std::size_t operator()(const Element& e) const noexcept { return e.id(); }
};

using CoxeterMatrix = std::vector<std::vector<int>>;

struct GroupOptions {
  // Enumerate only elements of length <= max_length; -1 means the whole
  // group (which must then be finite).
  int max_length = -1;
  // Hard cap on the number of enumerated elements.
  std::size_t max_elements = 4'000'000;
};

class CoxeterSystem {
 public:
  CoxeterSystem() = default;

  // Validates the matrix and enumerates the group. Rank-2 matrices use the
  // dihedral backend; everything else needs bonds in {2,3,4}.
  static CoxeterSystem from_matrix(const CoxeterMatrix& matrix,
                                   GroupOptions options = {},
                                   std::vector<std::string> labels = {},
                                   std::string name = {});
  // "A3", "B2", "D4", "F4", "I2(5)", ...
  static CoxeterSystem named(std::string_view name, GroupOptions options = {});
  static CoxeterSystem type_a(int n, GroupOptions options = {});
  static CoxeterSystem type_b(int n, GroupOptions options = {});
  static CoxeterSystem type_d(int n, GroupOptions options = {});
  static CoxeterSystem type_f4(GroupOptions options = {});
  static CoxeterSystem dihedral(int m, GroupOptions options = {});

  static CoxeterMatrix named_matrix(std::string_view name);

  bool valid() const { return data_ != nullptr; }
  int rank() const;
  int bond(Generator s, Generator t) const;
  const CoxeterMatrix& matrix() const;
  Backend backend() const;
  const std::string& name() const;
  const std::vector<std::string>& labels() const;
  bool commute(Generator s, Generator t) const { return bond(s, t) <= 2; }

  // True when enumeration exhausted the group.
  bool is_finite() const;
  // Longest length present in the enumerated table.
  int max_length() const;
  std::size_t size() const;

  Element identity() const;
  Element element(ElementId id) const;
  Element generator(Generator s) const;
  // Every enumerated element, in id order.
  std::vector<Element> elements() const;
  std::vector<Element> elements_up_to(int length) const;
  // Longest element of a finite group.
  Element longest_element() const;

  Element from_word(std::span<const Generator> word) const;
  Element from_word(std::initializer_list<Generator> word) const {
    return from_word(std::span<const Generator>(word.begin(), word.size()));
  }
  Element multiply(Element w, Generator s, Side side) const;
  Element multiply(Element a, Element b) const;
  Element inverse(Element w) const;

  bool bruhat_leq(Element u, Element v) const;

  // (u^J, u_J): u = u^J * u_J, u^J in W^J, u_J in W_J.
  std::pair<Element, Element> coset_decompose_right(Element u,
                                                    GeneratorSubset J) const;
  // (_J u, ^J u): u = _J u * ^J u, _J u in W_J, ^J u in ^J W.
  std::pair<Element, Element> coset_decompose_left(Element u,
                                                   GeneratorSubset J) const;
  bool is_min_coset_rep(Element u, GeneratorSubset H) const;
  // Maximum of W_J intersected with [e, w].
  Element max_parabolic_below(Element w, GeneratorSubset J) const;
  Element longest_element_of_parabolic(GeneratorSubset H) const;
  bool in_parabolic(Element u, GeneratorSubset J) const {
    return u.support().is_subset_of(J);
  }

  // Labels concatenated, "e" for the identity.
  std::string format(Element w) const;
  std::string format_subset(GeneratorSubset J) const;
  // Accepts "s1s2s3", "s1 s2 s3", "s1,s2,s3", "e", "" (identity).
  std::vector<Generator> parse_word(std::string_view text) const;
  Element parse(std::string_view text) const { return from_word(parse_word(text)); }
  GeneratorSubset parse_subset(std::string_view text) const;

  void check_member(Element w) const;
  void check_generator(Generator s) const;

  bool same_group(const CoxeterSystem& other) const {
    return data_ == other.data_;
  }

 private:
  explicit CoxeterSystem(std::shared_ptr<const detail::GroupData> d)
      : data_(std::move(d)) {}

  std::shared_ptr<const detail::GroupData> data_;
};

}  // namespace coxkl

#endif  // COXKL_COXETER_HPP_
