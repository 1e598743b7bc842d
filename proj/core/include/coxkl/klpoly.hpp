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

#ifndef COXKL_KLPOLY_HPP_
#define COXKL_KLPOLY_HPP_

// Parabolic R- and Kazhdan-Lusztig polynomials R^{H,x}_{u,w}, P^{H,x}_{u,w}
// for u, w in W^H. H = {} gives the ordinary polynomials (both x agree).
//
// R is computed from the left-descent recursion
//   R_{u,w} = R_{su,sw}                           if s in D_L(u)
//           = (q-1) R_{u,sw} + q R_{su,sw}        if s notin D_L(u), su in W^H
//           = (q-1-x) R_{u,sw}                    if s notin D_L(u), su notin W^H
// always using the smallest left descent s of w. P is obtained column by
// column from q^{l(v)-l(u)} P_{u,v}(1/q) = sum_{u<=z<=v, z in W^H} R_{u,z} P_{z,v}
// and the degree bound deg P_{u,v} <= (l(v)-l(u)-1)/2.
//
// Tables memoize one (system, H, x) triple and are not thread safe; give each
// thread its own.

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "coxkl/coxeter.hpp"
#include "coxkl/matchings.hpp"
#include "coxkl/polynomial.hpp"
#include "coxkl/poset.hpp"

namespace coxkl {

class RTable {
 public:
  RTable(CoxeterSystem sys, GeneratorSubset H, XParam x);

  const CoxeterSystem& system() const { return sys_; }
  GeneratorSubset H() const { return H_; }
  XParam x() const { return x_; }
  std::size_t entries() const { return memo_.size(); }

  // Throws PreconditionFailed unless u, w are in W^H.
  const QPolynomial& R(Element u, Element w);
  // One step of the recursion at a chosen left descent s of w, with the
  // smaller values taken from the table.
  QPolynomial R_via_descent(Element u, Element w, Generator s);

 private:
  const QPolynomial& compute(ElementId u, ElementId w);
  void require_parabolic(Element e, const char* role) const;

  CoxeterSystem sys_;
  GeneratorSubset H_;
  XParam x_;
  QPolynomial zero_;
  QPolynomial factor_;  // q - 1 - x
  std::unordered_map<std::uint64_t, QPolynomial> memo_;
};

class PTable {
 public:
  PTable(CoxeterSystem sys, GeneratorSubset H, XParam x);

  const CoxeterSystem& system() const { return r_.system(); }
  GeneratorSubset H() const { return r_.H(); }
  XParam x() const { return r_.x(); }
  RTable& r_table() { return r_; }

  const QPolynomial& P(Element u, Element v);
  // All P_{z,v} for z in [e,v]^H, keyed by element id.
  const std::unordered_map<ElementId, QPolynomial>& column(Element v);

 private:
  RTable r_;
  QPolynomial zero_;
  std::unordered_map<ElementId, std::unordered_map<ElementId, QPolynomial>> columns_;
};

QPolynomial parabolic_R(const CoxeterSystem& sys, GeneratorSubset H, XParam x, Element u,
                        Element w);
QPolynomial parabolic_P(const CoxeterSystem& sys, GeneratorSubset H, XParam x, Element u,
                        Element w);
QPolynomial ordinary_R(const CoxeterSystem& sys, Element u, Element v);
QPolynomial ordinary_P(const CoxeterSystem& sys, Element u, Element v);

// Right-hand side of the matching recurrence at u for an H-special matching
// M of [e,w] (w the top of `marked`):
//   R_{M(u),M(w)}                           if M(u) covered by u
//   (q-1) R_{u,M(w)} + q R_{M(u),M(w)}      if M(u) covers u and is marked
//   (q-1-x) R_{u,M(w)}                      if M(u) covers u and is unmarked
// The R values come from `table`, whose H must match the marks.
QPolynomial R_step_via_matching(const MarkedInterval& marked, const Matching& M, Index u,
                                RTable& table);

struct CalculatingCounterexample {
  Index u = kNoIndex;
  QPolynomial expected;  // reference recursion
  QPolynomial got;       // matching recurrence
};

struct CalculatingResult {
  bool calculating = true;
  std::optional<CalculatingCounterexample> first_counterexample;
};

// Compares the matching recurrence with the reference recursion at every
// marked u. Throws PreconditionFailed if M is not H-special.
CalculatingResult verify_calculating(const MarkedInterval& marked, const Matching& M,
                                     RTable& table);

struct DeodharCheck {
  bool alternating_sum_holds = false;  // x = q
  bool longest_shift_holds = false;    // x = -1
  QPolynomial parabolic_q;
  QPolynomial alternating_sum;
  QPolynomial parabolic_minus_one;
  QPolynomial shifted_ordinary;
  bool holds() const { return alternating_sum_holds && longest_shift_holds; }
};

// Checks P^{H,q}_{u,v} = sum_{z in W_H} (-1)^{l(z)} P_{uz,v} and
// P^{H,-1}_{u,v} = P_{u w_0^H, v w_0^H}. The tables must share the system
// and carry (H,q), (H,-1) and ({},·) respectively.
DeodharCheck deodhar_identity_check(PTable& parabolic_q, PTable& parabolic_minus_one,
                                    PTable& ordinary, Element u, Element v);
DeodharCheck deodhar_identity_check(const CoxeterSystem& sys, GeneratorSubset H, Element u,
                                    Element v);

// Elements of the finite parabolic subgroup W_H, by breadth-first search.
std::vector<Element> parabolic_subgroup(const CoxeterSystem& sys, GeneratorSubset H);

}  // namespace coxkl

#endif  // COXKL_KLPOLY_HPP_
