// Copyright 2026 The bellfield Authors
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

#ifndef BELLFIELD_GRADED_COEFF_HPP
#define BELLFIELD_GRADED_COEFF_HPP

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace bellfield {

/// Truncated bivariate polynomial in the formal small parameters alpha (a)
/// and beta (b).
///
/// Terms are kept sorted by (a exponent, b exponent) with no exact zeros and
/// nothing above max_total_degree. Products inherit the smaller truncation
/// degree of their operands, so truncation never loses a term that both
/// operands could represent.
class GradedCoeff {
public:
  struct Term {
    int a = 0;
    int b = 0;
    double value = 0.0;

    friend bool operator==(const Term&, const Term&) = default;
  };

  static constexpr int kDefaultMaxDegree = 8;

  GradedCoeff() = default;
  explicit GradedCoeff(int max_total_degree);

  /// c * a^a_exp * b^b_exp.
  static GradedCoeff monomial(double c, int a_exp, int b_exp,
                              int max_total_degree = kDefaultMaxDegree);
  static GradedCoeff constant(double c) { return monomial(c, 0, 0); }
  static GradedCoeff alpha() { return monomial(1.0, 1, 0); }
  static GradedCoeff beta() { return monomial(1.0, 0, 1); }

  std::span<const Term> terms() const { return terms_; }
  int max_total_degree() const { return max_degree_; }
  bool is_zero() const { return terms_.empty(); }

  /// Coefficient of a^a_exp b^b_exp (zero if absent).
  double coefficient(int a_exp, int b_exp) const;

  /// Smallest a exponent among stored terms; requires !is_zero().
  int min_a_order() const;
  /// Smallest b exponent among terms at the given a exponent.
  int min_b_order_at(int a_exp) const;

  /// Numeric substitution.
  double evaluate(double alpha, double beta) const;

  GradedCoeff& operator+=(const GradedCoeff& rhs);
  GradedCoeff& operator-=(const GradedCoeff& rhs);
  GradedCoeff& operator*=(double s);

  friend GradedCoeff operator+(GradedCoeff lhs, const GradedCoeff& rhs) { return lhs += rhs; }
  friend GradedCoeff operator-(GradedCoeff lhs, const GradedCoeff& rhs) { return lhs -= rhs; }
  friend GradedCoeff operator*(const GradedCoeff& lhs, const GradedCoeff& rhs);
  friend GradedCoeff operator*(GradedCoeff lhs, double s) { return lhs *= s; }
  friend GradedCoeff operator*(double s, GradedCoeff rhs) { return rhs *= s; }
  GradedCoeff operator-() const { return *this * -1.0; }

  /// Exact structural equality (same monomials, bitwise-equal values).
  friend bool operator==(const GradedCoeff& lhs, const GradedCoeff& rhs) {
    return lhs.terms_ == rhs.terms_;
  }

  /// Same monomial support and every coefficient within rel_tol of its
  /// counterpart (relative to the larger magnitude).
  bool approx_equal(const GradedCoeff& other, double rel_tol = 1e-13) const;

  std::string to_string() const;

private:
  void add_term(int a, int b, double value);
  GradedCoeff& accumulate(const GradedCoeff& rhs, double sign);

  std::vector<Term> terms_;
  int max_degree_ = kDefaultMaxDegree;
};

std::ostream& operator<<(std::ostream& os, const GradedCoeff& c);

/// Limit of num/den as beta -> 0 once the common leading alpha power has
/// cancelled. Returns 0 when the numerator vanishes faster than the
/// denominator.
///
/// Throws ZeroPartition if den is zero, MismatchedAlphaOrder if the leading
/// alpha orders differ and DivergentLimit if the numerator's leading beta
/// order is below the denominator's.
double coeff_ratio_limit(const GradedCoeff& num, const GradedCoeff& den);

/// num/den at finite alpha and beta.
double coeff_ratio_at(const GradedCoeff& num, const GradedCoeff& den,
                      double alpha, double beta);

}  // namespace bellfield

#endif  // BELLFIELD_GRADED_COEFF_HPP
