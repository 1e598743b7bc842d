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

#include "coxkl/klpoly.hpp"

#include <algorithm>

namespace coxkl {

namespace {

std::uint64_t pair_key(ElementId u, ElementId w) {
  return (static_cast<std::uint64_t>(u) << 32) | w;
}

const QPolynomial& q_minus_one() {
  static const QPolynomial p(std::vector<QPolynomial::Coeff>{-1, 1});
  return p;
}

}  // namespace

// ---------------------------------------------------------------------------
// R

RTable::RTable(CoxeterSystem sys, GeneratorSubset H, XParam x)
    : sys_(std::move(sys)), H_(H), x_(x), factor_(q_minus_one_minus_x(x)) {
  for (Generator s : H.members()) sys_.check_generator(s);
}

void RTable::require_parabolic(Element e, const char* role) const {
  sys_.check_member(e);
  const auto bad = e.right_descents() & H_;
  if (!bad.empty()) {
    throw PreconditionFailed(std::string(role) + " = " + sys_.format(e) +
                             " is not in W^H: right descent " +
                             sys_.labels()[bad.first()] + " lies in H");
  }
}

const QPolynomial& RTable::R(Element u, Element w) {
  require_parabolic(u, "u");
  require_parabolic(w, "w");
  return compute(u.id(), w.id());
}

const QPolynomial& RTable::compute(ElementId uid, ElementId wid) {
  const auto key = pair_key(uid, wid);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;

  const Element u = sys_.element(uid);
  const Element w = sys_.element(wid);
  QPolynomial result;
  if (uid == wid) {
    result = QPolynomial::one();
  } else if (sys_.bruhat_leq(u, w)) {
    const Generator s = w.left_descents().first();
    const Element sw = sys_.multiply(w, s, Side::kLeft);
    if (u.left_descents().contains(s)) {
      result = compute(sys_.multiply(u, s, Side::kLeft).id(), sw.id());
    } else {
      const Element su = sys_.multiply(u, s, Side::kLeft);
      if (!su.right_descents().intersects(H_)) {
        result = q_minus_one() * compute(uid, sw.id()) +
                 QPolynomial::q() * compute(su.id(), sw.id());
      } else {
        result = factor_ * compute(uid, sw.id());
      }
    }
  }
  return memo_.emplace(key, std::move(result)).first->second;
}

QPolynomial RTable::R_via_descent(Element u, Element w, Generator s) {
  require_parabolic(u, "u");
  require_parabolic(w, "w");
  if (!w.left_descents().contains(s)) {
    throw PreconditionFailed("generator is not a left descent of w");
  }
  if (u == w) return QPolynomial::one();
  if (!sys_.bruhat_leq(u, w)) return {};
  const Element sw = sys_.multiply(w, s, Side::kLeft);
  const Element su = sys_.multiply(u, s, Side::kLeft);
  if (u.left_descents().contains(s)) return R(su, sw);
  if (!su.right_descents().intersects(H_)) {
    return q_minus_one() * R(u, sw) + QPolynomial::q() * R(su, sw);
  }
  return factor_ * R(u, sw);
}

// ---------------------------------------------------------------------------
// P

PTable::PTable(CoxeterSystem sys, GeneratorSubset H, XParam x) : r_(std::move(sys), H, x) {}

const std::unordered_map<ElementId, QPolynomial>& PTable::column(Element v) {
  if (auto it = columns_.find(v.id()); it != columns_.end()) return it->second;
  const auto& sys = system();
  r_.R(v, v);  // validates v

  const Interval iv = Interval::lower(sys, v);
  std::vector<Index> marked;
  for (Index i = 0; i < iv.size(); ++i) {
    if (!iv.element(i).right_descents().intersects(H())) marked.push_back(i);
  }
  std::unordered_map<ElementId, QPolynomial> col;
  col.emplace(v.id(), QPolynomial::one());
  // Descending length: every P_{y,v} with y above z is known when z is reached.
  for (auto it = marked.rbegin(); it != marked.rend(); ++it) {
    const Index z = *it;
    if (z == iv.top()) continue;
    const Element ze = iv.element(z);
    QPolynomial sum;
    for (Index y : marked) {
      if (y == z || !iv.leq(z, y)) continue;
      sum += r_.R(ze, iv.element(y)) * col.at(iv.element(y).id());
    }
    const int d = v.length() - ze.length();
    QPolynomial p = -sum.truncated((d - 1) / 2);
    if (p.reversed(d) - p != sum) {
      throw InternalError("no polynomial satisfies the degree bound for P_{" + sys.format(ze) +
                          "," + sys.format(v) + "}");
    }
    col.emplace(ze.id(), std::move(p));
  }
  return columns_.emplace(v.id(), std::move(col)).first->second;
}

const QPolynomial& PTable::P(Element u, Element v) {
  r_.R(u, u);  // validates u
  const auto& col = column(v);
  if (auto it = col.find(u.id()); it != col.end()) return it->second;
  return zero_;
}

QPolynomial parabolic_R(const CoxeterSystem& sys, GeneratorSubset H, XParam x, Element u,
                        Element w) {
  RTable t(sys, H, x);
  return t.R(u, w);
}

QPolynomial parabolic_P(const CoxeterSystem& sys, GeneratorSubset H, XParam x, Element u,
                        Element w) {
  PTable t(sys, H, x);
  return t.P(u, w);
}

QPolynomial ordinary_R(const CoxeterSystem& sys, Element u, Element v) {
  return parabolic_R(sys, GeneratorSubset(), XParam::kMinusOne, u, v);
}

QPolynomial ordinary_P(const CoxeterSystem& sys, Element u, Element v) {
  return parabolic_P(sys, GeneratorSubset(), XParam::kMinusOne, u, v);
}

// ---------------------------------------------------------------------------
// Matching recurrence

QPolynomial R_step_via_matching(const MarkedInterval& marked, const Matching& M, Index u,
                                RTable& table) {
  const Interval& iv = marked.interval();
  if (!iv.is_lower()) throw PreconditionFailed("matching recurrence needs a lower interval");
  if (marked.H() != table.H()) throw InvalidArgument("table H differs from the marking");
  if (!marked.marked(u)) throw PreconditionFailed("u must lie in W^H");
  const Index mu = M(u);
  const Index mw = M(iv.top());
  const Element eu = iv.element(u);
  const Element emu = iv.element(mu);
  const Element emw = iv.element(mw);
  if (!marked.marked(iv.top()) || !marked.marked(mw)) {
    throw PreconditionFailed("matching recurrence needs w and M(w) in W^H");
  }
  if (iv.rank(mu) < iv.rank(u)) {
    if (!marked.marked(mu)) throw PreconditionFailed("matching is not H-special");
    return table.R(emu, emw);
  }
  if (marked.marked(mu)) {
    return q_minus_one() * table.R(eu, emw) + QPolynomial::q() * table.R(emu, emw);
  }
  return q_minus_one_minus_x(table.x()) * table.R(eu, emw);
}

CalculatingResult verify_calculating(const MarkedInterval& marked, const Matching& M,
                                     RTable& table) {
  const Interval& iv = marked.interval();
  if (!is_special(iv, M) || !is_H_special(marked, M)) {
    throw PreconditionFailed("verify_calculating needs an H-special matching");
  }
  CalculatingResult out;
  const Element w = iv.element(iv.top());
  for (Index u = 0; u < iv.size(); ++u) {
    if (!marked.marked(u)) continue;
    QPolynomial expected = table.R(iv.element(u), w);
    QPolynomial got = R_step_via_matching(marked, M, u, table);
    if (expected != got) {
      out.calculating = false;
      out.first_counterexample = CalculatingCounterexample{u, std::move(expected), std::move(got)};
      break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Deodhar identities

std::vector<Element> parabolic_subgroup(const CoxeterSystem& sys, GeneratorSubset H) {
  std::vector<Element> out{sys.identity()};
  std::vector<char> seen(sys.size(), 0);
  seen[0] = 1;
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (Generator s : H.members()) {
      const Element z = sys.multiply(out[i], s, Side::kRight);
      if (!seen[z.id()]) {
        seen[z.id()] = 1;
        out.push_back(z);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

DeodharCheck deodhar_identity_check(PTable& parabolic_q, PTable& parabolic_minus_one,
                                    PTable& ordinary, Element u, Element v) {
  const auto& sys = parabolic_q.system();
  const GeneratorSubset H = parabolic_q.H();
  if (parabolic_q.x() != XParam::kQ || parabolic_minus_one.x() != XParam::kMinusOne ||
      parabolic_minus_one.H() != H || !ordinary.H().empty()) {
    throw InvalidArgument("Deodhar check needs (H,q), (H,-1) and ordinary tables");
  }
  DeodharCheck out;
  out.parabolic_q = parabolic_q.P(u, v);
  for (Element z : parabolic_subgroup(sys, H)) {
    const QPolynomial& p = ordinary.P(sys.multiply(u, z), v);
    if (z.length() % 2 == 0) {
      out.alternating_sum += p;
    } else {
      out.alternating_sum -= p;
    }
  }
  out.alternating_sum_holds = out.alternating_sum == out.parabolic_q;

  const Element w0 = sys.longest_element_of_parabolic(H);
  out.parabolic_minus_one = parabolic_minus_one.P(u, v);
  out.shifted_ordinary = ordinary.P(sys.multiply(u, w0), sys.multiply(v, w0));
  out.longest_shift_holds = out.parabolic_minus_one == out.shifted_ordinary;
  return out;
}

DeodharCheck deodhar_identity_check(const CoxeterSystem& sys, GeneratorSubset H, Element u,
                                    Element v) {
  PTable pq(sys, H, XParam::kQ);
  PTable pm(sys, H, XParam::kMinusOne);
  PTable ord(sys, GeneratorSubset(), XParam::kQ);
  return deodhar_identity_check(pq, pm, ord, u, v);
}

}  // namespace coxkl
