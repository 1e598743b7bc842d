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

#include "coxkl/coxeter.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <sstream>
#include <unordered_map>

namespace coxkl {

namespace detail {

struct GroupData {
  std::string name;
  CoxeterMatrix matrix;
  Backend backend = Backend::kCrystallographicRoot;
  int rank = 0;
  std::vector<std::string> labels;
  bool finite = false;
  int max_length = 0;

  std::vector<int> length;
  std::vector<std::uint32_t> word_offset;  // size() + 1 entries
  std::vector<Generator> words;
  std::vector<ElementId> right;  // id * rank + s
  std::vector<ElementId> left;
  std::vector<std::uint32_t> right_descents;
  std::vector<std::uint32_t> left_descents;

  std::size_t size() const { return length.size(); }
  ElementId right_of(ElementId w, Generator s) const {
    return right[static_cast<std::size_t>(w) * rank + s];
  }
  ElementId left_of(ElementId w, Generator s) const {
    return left[static_cast<std::size_t>(w) * rank + s];
  }
};

}  // namespace detail

// ---------------------------------------------------------------------------
// GeneratorSubset

GeneratorSubset GeneratorSubset::of(std::initializer_list<Generator> gens) {
  return of(std::span<const Generator>(gens.begin(), gens.size()));
}

GeneratorSubset GeneratorSubset::of(std::span<const Generator> gens) {
  std::uint32_t m = 0;
  for (Generator s : gens) m |= 1u << s;
  return GeneratorSubset(m);
}

int GeneratorSubset::size() const { return std::popcount(mask_); }

Generator GeneratorSubset::first() const {
  return mask_ == 0 ? -1 : std::countr_zero(mask_);
}

std::vector<Generator> GeneratorSubset::members() const {
  std::vector<Generator> out;
  for (std::uint32_t m = mask_; m != 0; m &= m - 1) {
    out.push_back(std::countr_zero(m));
  }
  return out;
}

std::vector<GeneratorSubset> all_subsets(int rank) {
  std::vector<GeneratorSubset> out;
  out.reserve(std::size_t{1} << rank);
  for (std::uint32_t m = 0; m < (1u << rank); ++m) out.emplace_back(m);
  return out;
}

// ---------------------------------------------------------------------------
// Element

int Element::length() const { return group_->length[id_]; }

std::span<const Generator> Element::word() const {
  const auto begin = group_->word_offset[id_];
  const auto end = group_->word_offset[id_ + 1];
  return {group_->words.data() + begin, end - begin};
}

GeneratorSubset Element::right_descents() const {
  return GeneratorSubset(group_->right_descents[id_]);
}

GeneratorSubset Element::left_descents() const {
  return GeneratorSubset(group_->left_descents[id_]);
}

GeneratorSubset Element::support() const {
  std::uint32_t m = 0;
  for (Generator s : word()) m |= 1u << s;
  return GeneratorSubset(m);
}

// ---------------------------------------------------------------------------
// Realizations used only while enumerating.

namespace {

using Key = std::vector<std::int64_t>;

struct KeyHash {
  std::size_t operator()(const Key& k) const noexcept {
    std::size_t h = 0xcbf29ce484222325ull;
    for (auto v : k) {
      h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) +
           (h >> 2);
    }
    return h;
  }
};

// Faithful linear action on the root lattice of a generalized Cartan matrix
// whose products a_ij * a_ji realize the bonds (0 -> 2, 1 -> 3, 2 -> 4). The
// key is the matrix of w in the simple-root basis, row major.
class RootRealization {
 public:
  explicit RootRealization(const CoxeterMatrix& m) : n_(static_cast<int>(m.size())) {
    cartan_.assign(n_ * n_, 0);
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < n_; ++j) {
        if (i == j) {
          cartan_[i * n_ + j] = 2;
          continue;
        }
        switch (m[i][j]) {
          case 2: break;
          case 3: cartan_[i * n_ + j] = -1; break;
          case 4: cartan_[i * n_ + j] = i < j ? -2 : -1; break;
          default: throw InvalidArgument("root backend needs bonds in {2,3,4}");
        }
      }
    }
  }

  Key identity() const {
    Key k(n_ * n_, 0);
    for (int i = 0; i < n_; ++i) k[i * n_ + i] = 1;
    return k;
  }

  // s_i(alpha_j) = alpha_j - a_ij alpha_i, so column j of W*S_i is
  // W e_j - a_ij W e_i.
  Key right(const Key& w, Generator s) const {
    Key out = w;
    for (int j = 0; j < n_; ++j) {
      const auto a = cartan_[s * n_ + j];
      if (j == s) {
        for (int r = 0; r < n_; ++r) out[r * n_ + j] = -w[r * n_ + s];
      } else if (a != 0) {
        for (int r = 0; r < n_; ++r) out[r * n_ + j] -= a * w[r * n_ + s];
      }
    }
    return out;
  }

  // Row s of S_i*W is row_s(W) - sum_l a_sl row_l(W).
  Key left(const Key& w, Generator s) const {
    Key out = w;
    for (int j = 0; j < n_; ++j) {
      std::int64_t acc = 0;
      for (int l = 0; l < n_; ++l) acc += cartan_[s * n_ + l] * w[l * n_ + j];
      out[s * n_ + j] = w[s * n_ + j] - acc;
    }
    return out;
  }

 private:
  int n_;
  std::vector<std::int64_t> cartan_;
};

// Rank 2: the dihedral group of order 2m acting on Z/2m by x -> eps*x + k,
// with s: x -> -x and t: x -> 2 - x. Key is {eps, k}.
class DihedralRealization {
 public:
  explicit DihedralRealization(int m) : mod_(2 * static_cast<std::int64_t>(m)) {}

  Key identity() const { return {1, 0}; }

  Key right(const Key& w, Generator g) const {
    const std::int64_t c = g == 0 ? 0 : 2;
    return {-w[0], norm(w[0] * c + w[1])};
  }

  Key left(const Key& w, Generator g) const {
    const std::int64_t c = g == 0 ? 0 : 2;
    return {-w[0], norm(-w[1] + c)};
  }

 private:
  std::int64_t norm(std::int64_t v) const { return ((v % mod_) + mod_) % mod_; }
  std::int64_t mod_;
};

template <typename Realization>
void enumerate_group(detail::GroupData& g, const Realization& real,
                     const GroupOptions& options) {
  const int n = g.rank;
  std::unordered_map<Key, ElementId, KeyHash> index;
  std::vector<Key> keys;

  auto add = [&](Key key, int len, ElementId parent, Generator s) {
    const auto id = static_cast<ElementId>(keys.size());
    index.emplace(key, id);
    keys.push_back(std::move(key));
    g.length.push_back(len);
    if (parent != kNoElement) {
      const auto b = g.word_offset[parent];
      const auto e = g.word_offset[parent + 1];
      for (auto i = b; i < e; ++i) g.words.push_back(g.words[i]);
      g.words.push_back(s);
    }
    g.word_offset.push_back(static_cast<std::uint32_t>(g.words.size()));
    g.right.resize(keys.size() * n, kNoElement);
    return id;
  };

  g.word_offset.push_back(0);
  add(real.identity(), 0, kNoElement, 0);

  // Elements of one length occupy a contiguous id range. Parents are visited
  // in ShortLex order and generators in index order, so the first discovery
  // of each element carries its ShortLex-least reduced word.
  ElementId level_begin = 0;
  ElementId level_end = 1;
  int len = 0;
  g.finite = false;
  for (;;) {
    if (options.max_length >= 0 && len >= options.max_length) {
      // The bound may coincide with the top of a finite group.
      bool grows = false;
      for (ElementId w = level_begin; w < level_end && !grows; ++w) {
        for (Generator s = 0; s < n && !grows; ++s) {
          if (g.right[static_cast<std::size_t>(w) * n + s] == kNoElement) {
            grows = !index.contains(real.right(keys[w], s));
          }
        }
      }
      g.finite = !grows;
      break;
    }
    for (ElementId w = level_begin; w < level_end; ++w) {
      for (Generator s = 0; s < n; ++s) {
        if (g.right[static_cast<std::size_t>(w) * n + s] != kNoElement) continue;
        Key k = real.right(keys[w], s);
        ElementId target;
        if (auto it = index.find(k); it != index.end()) {
          target = it->second;
        } else {
          if (keys.size() >= options.max_elements) {
            throw InvalidArgument(
                "group enumeration exceeded " +
                std::to_string(options.max_elements) +
                " elements; the group is infinite or too large (set a length "
                "bound)");
          }
          target = add(std::move(k), len + 1, w, s);
        }
        g.right[static_cast<std::size_t>(w) * n + s] = target;
        g.right[static_cast<std::size_t>(target) * n + s] = w;
      }
    }
    const auto next_end = static_cast<ElementId>(keys.size());
    if (next_end == level_end) {
      g.finite = true;
      break;
    }
    level_begin = level_end;
    level_end = next_end;
    ++len;
  }
  g.max_length = g.length.back();

  const std::size_t size = keys.size();
  g.left.assign(size * n, kNoElement);
  g.right_descents.assign(size, 0);
  g.left_descents.assign(size, 0);
  for (ElementId w = 0; w < size; ++w) {
    for (Generator s = 0; s < n; ++s) {
      const auto r = g.right_of(w, s);
      if (r != kNoElement && g.length[r] < g.length[w]) {
        g.right_descents[w] |= 1u << s;
      }
      if (auto it = index.find(real.left(keys[w], s)); it != index.end()) {
        g.left[static_cast<std::size_t>(w) * n + s] = it->second;
        if (g.length[it->second] < g.length[w]) g.left_descents[w] |= 1u << s;
      } else if (g.length[w] < g.max_length || g.finite) {
        throw InternalError("left multiplication left the enumerated group");
      }
    }
  }
}

void validate_matrix(const CoxeterMatrix& m) {
  const auto n = m.size();
  if (n == 0) throw InvalidArgument("Coxeter matrix must be non-empty");
  if (n > static_cast<std::size_t>(kMaxRank)) {
    throw InvalidArgument("rank exceeds " + std::to_string(kMaxRank));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i].size() != n) throw InvalidArgument("Coxeter matrix must be square");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i][i] != 1) throw InvalidArgument("Coxeter matrix diagonal must be 1");
    for (std::size_t j = 0; j < n; ++j) {
      if (m[i][j] != m[j][i]) {
        throw InvalidArgument("Coxeter matrix must be symmetric");
      }
      if (i == j) continue;
      if (m[i][j] < 2) {
        throw InvalidArgument(
            "off-diagonal bond orders must be finite integers >= 2");
      }
      if (n > 2 && m[i][j] > 4) {
        throw InvalidArgument(
            "bond orders above 4 are only supported in rank 2");
      }
    }
  }
}

std::string default_name(const CoxeterMatrix& m) {
  std::ostringstream os;
  os << "matrix[";
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = i + 1; j < m.size(); ++j) {
      if (i + j > 1) os << ',';
      os << m[i][j];
    }
  }
  os << ']';
  return os.str();
}

CoxeterMatrix chain_matrix(int n) {
  CoxeterMatrix m(n, std::vector<int>(n, 2));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  for (int i = 0; i + 1 < n; ++i) m[i][i + 1] = m[i + 1][i] = 3;
  return m;
}

}  // namespace

// ---------------------------------------------------------------------------
// Construction

CoxeterSystem CoxeterSystem::from_matrix(const CoxeterMatrix& matrix,
                                         GroupOptions options,
                                         std::vector<std::string> labels,
                                         std::string name) {
  validate_matrix(matrix);
  auto g = std::make_shared<detail::GroupData>();
  g->rank = static_cast<int>(matrix.size());
  g->matrix = matrix;
  g->name = name.empty() ? default_name(matrix) : std::move(name);
  if (labels.empty()) {
    for (int i = 0; i < g->rank; ++i) labels.push_back("s" + std::to_string(i + 1));
  }
  if (static_cast<int>(labels.size()) != g->rank) {
    throw InvalidArgument("need one label per generator");
  }
  for (const auto& l : labels) {
    if (l.empty()) throw InvalidArgument("generator labels must be non-empty");
  }
  g->labels = std::move(labels);
  if (g->rank == 2) {
    g->backend = Backend::kDihedralWord;
    enumerate_group(*g, DihedralRealization(matrix[0][1]), options);
  } else {
    g->backend = Backend::kCrystallographicRoot;
    enumerate_group(*g, RootRealization(matrix), options);
  }
  return CoxeterSystem(std::move(g));
}

CoxeterMatrix CoxeterSystem::named_matrix(std::string_view name) {
  std::string s(name);
  std::erase_if(s, [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
  for (auto& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  auto bad = [&]() { return InvalidArgument("unknown group name '" + std::string(name) + "'"); };
  if (s.size() < 2) throw bad();

  if (s.rfind("I2(", 0) == 0 && s.back() == ')') {
    const int m = std::stoi(s.substr(3, s.size() - 4));
    return {{1, m}, {m, 1}};
  }
  if (s == "G2") return {{1, 6}, {6, 1}};
  if (s == "F4") {
    auto m = chain_matrix(4);
    m[1][2] = m[2][1] = 4;
    return m;
  }
  int n = 0;
  try {
    std::size_t used = 0;
    n = std::stoi(s.substr(1), &used);
    if (used != s.size() - 1) throw bad();
  } catch (const std::logic_error&) {
    throw bad();
  }
  if (n < 1) throw bad();
  switch (s[0]) {
    case 'A':
      return chain_matrix(n);
    case 'B':
    case 'C': {
      if (n < 2) throw bad();
      auto m = chain_matrix(n);
      m[0][1] = m[1][0] = 4;
      return m;
    }
    case 'D': {
      if (n < 4) throw bad();
      auto m = chain_matrix(n);
      m[n - 2][n - 1] = m[n - 1][n - 2] = 2;
      m[n - 3][n - 1] = m[n - 1][n - 3] = 3;
      return m;
    }
    case 'E': {
      if (n < 6 || n > 8) throw bad();
      // Bourbaki: s1-s3-s4-...-sn with s2 attached to s4.
      CoxeterMatrix m(n, std::vector<int>(n, 2));
      for (int i = 0; i < n; ++i) m[i][i] = 1;
      auto link = [&](int a, int b) { m[a - 1][b - 1] = m[b - 1][a - 1] = 3; };
      link(1, 3);
      link(2, 4);
      for (int i = 3; i < n; ++i) link(i, i + 1);
      return m;
    }
    default:
      throw bad();
  }
}

CoxeterSystem CoxeterSystem::named(std::string_view name, GroupOptions options) {
  std::string canonical(name);
  std::erase_if(canonical, [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
  for (auto& c : canonical) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return from_matrix(named_matrix(name), options, {}, canonical);
}

CoxeterSystem CoxeterSystem::type_a(int n, GroupOptions o) { return named("A" + std::to_string(n), o); }
CoxeterSystem CoxeterSystem::type_b(int n, GroupOptions o) { return named("B" + std::to_string(n), o); }
CoxeterSystem CoxeterSystem::type_d(int n, GroupOptions o) { return named("D" + std::to_string(n), o); }
CoxeterSystem CoxeterSystem::type_f4(GroupOptions o) { return named("F4", o); }
CoxeterSystem CoxeterSystem::dihedral(int m, GroupOptions o) {
  return named("I2(" + std::to_string(m) + ")", o);
}

// ---------------------------------------------------------------------------
// Accessors

int CoxeterSystem::rank() const { return data_->rank; }
int CoxeterSystem::bond(Generator s, Generator t) const {
  check_generator(s);
  check_generator(t);
  return data_->matrix[s][t];
}
const CoxeterMatrix& CoxeterSystem::matrix() const { return data_->matrix; }
Backend CoxeterSystem::backend() const { return data_->backend; }
const std::string& CoxeterSystem::name() const { return data_->name; }
const std::vector<std::string>& CoxeterSystem::labels() const { return data_->labels; }
bool CoxeterSystem::is_finite() const { return data_->finite; }
int CoxeterSystem::max_length() const { return data_->max_length; }
std::size_t CoxeterSystem::size() const { return data_->size(); }

Element CoxeterSystem::identity() const { return Element(data_.get(), 0); }

Element CoxeterSystem::element(ElementId id) const {
  if (id >= data_->size()) throw InvalidArgument("element id out of range");
  return Element(data_.get(), id);
}

Element CoxeterSystem::generator(Generator s) const {
  check_generator(s);
  return multiply(identity(), s, Side::kRight);
}

std::vector<Element> CoxeterSystem::elements() const {
  std::vector<Element> out;
  out.reserve(size());
  for (ElementId i = 0; i < size(); ++i) out.push_back(Element(data_.get(), i));
  return out;
}

std::vector<Element> CoxeterSystem::elements_up_to(int length) const {
  std::vector<Element> out;
  for (ElementId i = 0; i < size() && data_->length[i] <= length; ++i) {
    out.push_back(Element(data_.get(), i));
  }
  return out;
}

Element CoxeterSystem::longest_element() const {
  if (!is_finite()) throw PreconditionFailed("group is not finite");
  return Element(data_.get(), static_cast<ElementId>(size() - 1));
}

void CoxeterSystem::check_member(Element w) const {
  if (!w.valid() || w.group() != data_.get()) {
    throw InvalidArgument("element does not belong to this Coxeter system");
  }
}

void CoxeterSystem::check_generator(Generator s) const {
  if (s < 0 || s >= data_->rank) {
    throw InvalidArgument("generator index " + std::to_string(s) +
                          " out of range for rank " + std::to_string(data_->rank));
  }
}

// ---------------------------------------------------------------------------
// Arithmetic

Element CoxeterSystem::multiply(Element w, Generator s, Side side) const {
  check_member(w);
  check_generator(s);
  const auto r = side == Side::kRight ? data_->right_of(w.id(), s)
                                      : data_->left_of(w.id(), s);
  if (r == kNoElement) {
    throw LengthBoundExceeded("product exceeds enumerated length bound " +
                              std::to_string(data_->max_length));
  }
  return Element(data_.get(), r);
}

Element CoxeterSystem::from_word(std::span<const Generator> word) const {
  Element w = identity();
  for (Generator s : word) w = multiply(w, s, Side::kRight);
  return w;
}

Element CoxeterSystem::multiply(Element a, Element b) const {
  check_member(a);
  check_member(b);
  for (Generator s : b.word()) a = multiply(a, s, Side::kRight);
  return a;
}

Element CoxeterSystem::inverse(Element w) const {
  check_member(w);
  std::vector<Generator> rev(w.word().rbegin(), w.word().rend());
  return from_word(rev);
}

bool CoxeterSystem::bruhat_leq(Element u, Element v) const {
  check_member(u);
  check_member(v);
  // For s in D_L(v): u <= v iff min(u, su) <= sv. Each step shortens v, so
  // the walk is a single path of at most l(v) steps.
  const auto& g = *data_;
  ElementId a = u.id();
  ElementId b = v.id();
  for (;;) {
    if (a == b) return true;
    if (g.length[a] >= g.length[b]) return false;
    if (a == 0) return true;
    const Generator s = std::countr_zero(g.left_descents[b]);
    if ((g.left_descents[a] >> s) & 1u) a = g.left_of(a, s);
    b = g.left_of(b, s);
  }
}

std::pair<Element, Element> CoxeterSystem::coset_decompose_right(
    Element u, GeneratorSubset J) const {
  check_member(u);
  std::vector<Generator> stripped;
  for (;;) {
    const auto d = u.right_descents() & J;
    if (d.empty()) break;
    const auto s = d.first();
    u = multiply(u, s, Side::kRight);
    stripped.push_back(s);
  }
  std::reverse(stripped.begin(), stripped.end());
  return {u, from_word(stripped)};
}

std::pair<Element, Element> CoxeterSystem::coset_decompose_left(
    Element u, GeneratorSubset J) const {
  check_member(u);
  std::vector<Generator> stripped;
  for (;;) {
    const auto d = u.left_descents() & J;
    if (d.empty()) break;
    const auto s = d.first();
    u = multiply(u, s, Side::kLeft);
    stripped.push_back(s);
  }
  return {from_word(stripped), u};
}

bool CoxeterSystem::is_min_coset_rep(Element u, GeneratorSubset H) const {
  check_member(u);
  return !u.right_descents().intersects(H);
}

Element CoxeterSystem::max_parabolic_below(Element w, GeneratorSubset J) const {
  check_member(w);
  // W_J intersected with [e,w] is the lower interval [e, w_0(J)] of W_J, and
  // every element of it is reached by right-multiplying by generators of J.
  std::vector<ElementId> frontier{0};
  std::vector<char> seen(size(), 0);
  seen[0] = 1;
  ElementId best = 0;
  while (!frontier.empty()) {
    std::vector<ElementId> next;
    for (ElementId z : frontier) {
      if (data_->length[z] > data_->length[best]) best = z;
      if (data_->length[z] >= w.length()) continue;
      for (Generator s : J.members()) {
        const auto zs = data_->right_of(z, s);
        if (zs == kNoElement || seen[zs] || data_->length[zs] < data_->length[z]) continue;
        if (!bruhat_leq(Element(data_.get(), zs), w)) continue;
        seen[zs] = 1;
        next.push_back(zs);
      }
    }
    frontier = std::move(next);
  }
  return Element(data_.get(), best);
}

Element CoxeterSystem::longest_element_of_parabolic(GeneratorSubset H) const {
  for (Generator s : H.members()) check_generator(s);
  ElementId cur = 0;
  // Greedily climb: the longest element is the unique element of W_H with
  // every generator of H as a right descent.
  for (;;) {
    const auto ascents = GeneratorSubset(~data_->right_descents[cur]) & H;
    if (ascents.empty()) return Element(data_.get(), cur);
    const auto next = data_->right_of(cur, ascents.first());
    if (next == kNoElement) {
      throw LengthBoundExceeded(
          "parabolic subgroup is infinite or exceeds the enumerated bound");
    }
    cur = next;
  }
}

// ---------------------------------------------------------------------------
// Text

std::string CoxeterSystem::format(Element w) const {
  check_member(w);
  if (w.is_identity()) return "e";
  std::string out;
  for (Generator s : w.word()) out += data_->labels[s];
  return out;
}

std::string CoxeterSystem::format_subset(GeneratorSubset J) const {
  std::string out;
  for (Generator s : J.members()) {
    if (!out.empty()) out += ',';
    out += data_->labels[s];
  }
  return out;
}

std::vector<Generator> CoxeterSystem::parse_word(std::string_view text) const {
  std::vector<Generator> out;
  const auto& labels = data_->labels;
  const bool e_is_label = std::find(labels.begin(), labels.end(), "e") != labels.end();
  std::size_t i = 0;
  auto is_sep = [](char c) {
    return std::isspace(static_cast<unsigned char>(c)) || c == ',' || c == '*' ||
           c == '.';
  };
  while (i < text.size()) {
    if (is_sep(text[i])) {
      ++i;
      continue;
    }
    // Longest label matching at position i.
    std::size_t best_len = 0;
    Generator best = -1;
    for (Generator s = 0; s < data_->rank; ++s) {
      const auto& l = labels[s];
      if (l.size() > best_len && text.substr(i, l.size()) == l) {
        best_len = l.size();
        best = s;
      }
    }
    if (best < 0 && !e_is_label && text[i] == 'e') {
      ++i;  // identity factor
      continue;
    }
    if (best < 0) {
      throw InvalidArgument("cannot parse word '" + std::string(text) +
                            "' at position " + std::to_string(i));
    }
    out.push_back(best);
    i += best_len;
  }
  return out;
}

GeneratorSubset CoxeterSystem::parse_subset(std::string_view text) const {
  return GeneratorSubset::of(parse_word(text));
}

}  // namespace coxkl
