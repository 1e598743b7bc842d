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

#include "coxkl/polynomial.hpp"

#include <algorithm>
#include <sstream>

#include "coxkl/error.hpp"

namespace coxkl {

namespace {

using Coeff = QPolynomial::Coeff;

Coeff checked_add(Coeff a, Coeff b) {
  Coeff r;
  if (__builtin_add_overflow(a, b, &r)) throw InternalError("polynomial coefficient overflow");
  return r;
}

Coeff checked_mul(Coeff a, Coeff b) {
  Coeff r;
  if (__builtin_mul_overflow(a, b, &r)) throw InternalError("polynomial coefficient overflow");
  return r;
}

}  // namespace

QPolynomial::QPolynomial(std::vector<Coeff> coeffs) : c_(std::move(coeffs)) { trim(); }

QPolynomial QPolynomial::monomial(Coeff c, int degree) {
  std::vector<Coeff> v(degree + 1, 0);
  v[degree] = c;
  return QPolynomial(std::move(v));
}

void QPolynomial::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Coeff QPolynomial::evaluate(Coeff at) const {
  Coeff acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc = checked_add(checked_mul(acc, at), *it);
  }
  return acc;
}

QPolynomial QPolynomial::truncated(int max_degree) const {
  if (max_degree < 0) return {};
  const auto n = std::min<std::size_t>(c_.size(), static_cast<std::size_t>(max_degree) + 1);
  return QPolynomial(std::vector<Coeff>(c_.begin(), c_.begin() + n));
}

QPolynomial QPolynomial::reversed(int d) const {
  if (degree() > d) throw InternalError("reversal degree below polynomial degree");
  if (is_zero()) return {};
  std::vector<Coeff> v(d + 1, 0);
  for (int k = 0; k <= degree(); ++k) v[d - k] = c_[k];
  return QPolynomial(std::move(v));
}

QPolynomial QPolynomial::pow(int e) const {
  QPolynomial r = one();
  for (int i = 0; i < e; ++i) r *= *this;
  return r;
}

QPolynomial& QPolynomial::operator+=(const QPolynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] = checked_add(c_[k], o.c_[k]);
  trim();
  return *this;
}

QPolynomial& QPolynomial::operator-=(const QPolynomial& o) { return *this += -o; }

QPolynomial& QPolynomial::operator*=(const QPolynomial& o) {
  if (is_zero() || o.is_zero()) {
    c_.clear();
    return *this;
  }
  std::vector<Coeff> r(c_.size() + o.c_.size() - 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) {
      r[i + j] = checked_add(r[i + j], checked_mul(c_[i], o.c_[j]));
    }
  }
  c_ = std::move(r);
  trim();
  return *this;
}

QPolynomial QPolynomial::operator-() const {
  QPolynomial r = *this;
  for (auto& c : r.c_) c = checked_mul(c, -1);
  return r;
}

std::string QPolynomial::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    const Coeff c = c_[k];
    if (c == 0) continue;
    const Coeff mag = c < 0 ? -c : c;
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (k == 0) {
      os << mag;
      continue;
    }
    if (mag != 1) os << mag;
    os << 'q';
    if (k > 1) os << '^' << k;
  }
  return os.str();
}

QPolynomial q_minus_one_minus_x(XParam x) {
  return x == XParam::kMinusOne ? QPolynomial::q() : QPolynomial::constant(-1);
}

QPolynomial x_value(XParam x) {
  return x == XParam::kMinusOne ? QPolynomial::constant(-1) : QPolynomial::q();
}

std::string to_string(XParam x) { return x == XParam::kMinusOne ? "-1" : "q"; }

XParam parse_xparam(std::string_view text) {
  if (text == "q") return XParam::kQ;
  if (text == "-1" || text == "minus-one") return XParam::kMinusOne;
  throw InvalidArgument("x must be 'q' or '-1', got '" + std::string(text) + "'");
}

}  // namespace coxkl
