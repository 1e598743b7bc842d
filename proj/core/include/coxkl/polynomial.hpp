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

#ifndef COXKL_POLYNOMIAL_HPP_
#define COXKL_POLYNOMIAL_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace coxkl {

// Integer polynomial in q, dense, trailing zeros trimmed. The zero polynomial
// has no coefficients and degree -1. Arithmetic is exact; any int64 overflow
// raises InternalError.
class QPolynomial {
 public:
  using Coeff = std::int64_t;

  QPolynomial() = default;
  explicit QPolynomial(std::vector<Coeff> coeffs);

  static QPolynomial constant(Coeff c) { return QPolynomial(std::vector<Coeff>{c}); }
  static QPolynomial one() { return constant(1); }
  static QPolynomial q() { return monomial(1, 1); }
  static QPolynomial monomial(Coeff c, int degree);

  const std::vector<Coeff>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  Coeff coeff(int k) const {
    return k >= 0 && k < static_cast<int>(c_.size()) ? c_[k] : 0;
  }
  Coeff evaluate(Coeff at) const;

  // Terms of degree <= max_degree.
  QPolynomial truncated(int max_degree) const;
  // q^d * P(1/q); requires degree() <= d.
  QPolynomial reversed(int d) const;
  QPolynomial pow(int e) const;

  QPolynomial& operator+=(const QPolynomial& o);
  QPolynomial& operator-=(const QPolynomial& o);
  QPolynomial& operator*=(const QPolynomial& o);
  friend QPolynomial operator+(QPolynomial a, const QPolynomial& b) { return a += b; }
  friend QPolynomial operator-(QPolynomial a, const QPolynomial& b) { return a -= b; }
  friend QPolynomial operator*(QPolynomial a, const QPolynomial& b) { return a *= b; }
  QPolynomial operator-() const;

  friend bool operator==(const QPolynomial&, const QPolynomial&) = default;

  // "q^2 - q + 1", descending powers; "0" for zero.
  std::string to_string() const;

 private:
  void trim();
  std::vector<Coeff> c_;
};

// Deodhar's two parabolic variants, the roots x = -1 and x = q of
// x^2 = q + (q - 1) x.
enum class XParam { kMinusOne, kQ };

// q - 1 - x with x substituted: q for x = -1, and -1 for x = q.
QPolynomial q_minus_one_minus_x(XParam x);
// x itself as a polynomial in q.
QPolynomial x_value(XParam x);
std::string to_string(XParam x);
XParam parse_xparam(std::string_view text);

}  // namespace coxkl

#endif  // COXKL_POLYNOMIAL_HPP_
