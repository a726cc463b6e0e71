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

#include "bellfield/graded_coeff.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include "bellfield/errors.hpp"

namespace bellfield {

namespace {

bool key_less(const GradedCoeff::Term& t, int a, int b) {
  return t.a < a || (t.a == a && t.b < b);
}

}  // namespace

GradedCoeff::GradedCoeff(int max_total_degree) : max_degree_(max_total_degree) {}

GradedCoeff GradedCoeff::monomial(double c, int a_exp, int b_exp, int max_total_degree) {
  GradedCoeff out(max_total_degree);
  out.add_term(a_exp, b_exp, c);
  return out;
}

void GradedCoeff::add_term(int a, int b, double value) {
  if (value == 0.0 || a + b > max_degree_) return;
  auto it = std::lower_bound(terms_.begin(), terms_.end(), std::pair{a, b},
                             [](const Term& t, const std::pair<int, int>& k) {
                               return key_less(t, k.first, k.second);
                             });
  if (it != terms_.end() && it->a == a && it->b == b) {
    it->value += value;
    if (it->value == 0.0) terms_.erase(it);
  } else {
    terms_.insert(it, Term{a, b, value});
  }
}

double GradedCoeff::coefficient(int a_exp, int b_exp) const {
  for (const Term& t : terms_) {
    if (t.a == a_exp && t.b == b_exp) return t.value;
  }
  return 0.0;
}

int GradedCoeff::min_a_order() const {
  if (terms_.empty()) throw std::logic_error("min_a_order of zero coefficient");
  return terms_.front().a;
}

int GradedCoeff::min_b_order_at(int a_exp) const {
  for (const Term& t : terms_) {
    if (t.a == a_exp) return t.b;
  }
  throw std::logic_error("no term at requested alpha order");
}

double GradedCoeff::evaluate(double alpha, double beta) const {
  double sum = 0.0;
  for (const Term& t : terms_) {
    sum += t.value * std::pow(alpha, t.a) * std::pow(beta, t.b);
  }
  return sum;
}

GradedCoeff& GradedCoeff::accumulate(const GradedCoeff& rhs, double sign) {
  max_degree_ = std::min(max_degree_, rhs.max_degree_);
  std::vector<Term> merged;
  merged.reserve(terms_.size() + rhs.terms_.size());
  auto l = terms_.begin();
  auto r = rhs.terms_.begin();
  while (l != terms_.end() || r != rhs.terms_.end()) {
    Term next;
    if (r == rhs.terms_.end() || (l != terms_.end() && key_less(*l, r->a, r->b))) {
      next = *l++;
    } else if (l == terms_.end() || key_less(*r, l->a, l->b)) {
      next = Term{r->a, r->b, sign * r->value};
      ++r;
    } else {
      next = Term{l->a, l->b, l->value + sign * r->value};
      ++l;
      ++r;
    }
    if (next.value != 0.0 && next.a + next.b <= max_degree_) merged.push_back(next);
  }
  terms_ = std::move(merged);
  return *this;
}

GradedCoeff& GradedCoeff::operator+=(const GradedCoeff& rhs) { return accumulate(rhs, 1.0); }
GradedCoeff& GradedCoeff::operator-=(const GradedCoeff& rhs) { return accumulate(rhs, -1.0); }

GradedCoeff& GradedCoeff::operator*=(double s) {
  if (s == 0.0) {
    terms_.clear();
    return *this;
  }
  for (Term& t : terms_) t.value *= s;
  std::erase_if(terms_, [](const Term& t) { return t.value == 0.0; });
  return *this;
}

GradedCoeff operator*(const GradedCoeff& lhs, const GradedCoeff& rhs) {
  GradedCoeff out(std::min(lhs.max_degree_, rhs.max_degree_));
  if (lhs.is_zero() || rhs.is_zero()) return out;
  // Single-term operands are the common case (feature weights); keep them cheap.
  if (lhs.terms_.size() == 1 || rhs.terms_.size() == 1) {
    const auto& single = lhs.terms_.size() == 1 ? lhs.terms_.front() : rhs.terms_.front();
    const auto& other = lhs.terms_.size() == 1 ? rhs : lhs;
    out.terms_.reserve(other.terms_.size());
    for (const auto& t : other.terms_) {
      const int a = t.a + single.a;
      const int b = t.b + single.b;
      const double v = t.value * single.value;
      if (a + b <= out.max_degree_ && v != 0.0) out.terms_.push_back({a, b, v});
    }
    return out;
  }
  for (const auto& l : lhs.terms_) {
    for (const auto& r : rhs.terms_) out.add_term(l.a + r.a, l.b + r.b, l.value * r.value);
  }
  return out;
}

bool GradedCoeff::approx_equal(const GradedCoeff& other, double rel_tol) const {
  if (terms_.size() != other.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const Term& l = terms_[i];
    const Term& r = other.terms_[i];
    if (l.a != r.a || l.b != r.b) return false;
    const double scale = std::max(std::fabs(l.value), std::fabs(r.value));
    if (std::fabs(l.value - r.value) > rel_tol * scale) return false;
  }
  return true;
}

std::string GradedCoeff::to_string() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const GradedCoeff& c) {
  if (c.is_zero()) return os << "0";
  bool first = true;
  for (const auto& t : c.terms()) {
    if (!first) os << " + ";
    first = false;
    os << t.value;
    if (t.a > 0) os << "*a^" << t.a;
    if (t.b > 0) os << "*b^" << t.b;
  }
  return os;
}

double coeff_ratio_limit(const GradedCoeff& num, const GradedCoeff& den) {
  if (den.is_zero()) throw ZeroPartition("graded ratio with zero denominator");
  if (num.is_zero()) return 0.0;
  const int a_num = num.min_a_order();
  const int a_den = den.min_a_order();
  if (a_num != a_den) {
    throw MismatchedAlphaOrder("numerator alpha order " + std::to_string(a_num) +
                               " differs from denominator alpha order " +
                               std::to_string(a_den));
  }
  const int b_num = num.min_b_order_at(a_num);
  const int b_den = den.min_b_order_at(a_den);
  if (b_num > b_den) return 0.0;
  if (b_num < b_den) {
    throw DivergentLimit("numerator beta order " + std::to_string(b_num) +
                         " below denominator beta order " + std::to_string(b_den));
  }
  return num.coefficient(a_num, b_num) / den.coefficient(a_den, b_den);
}

double coeff_ratio_at(const GradedCoeff& num, const GradedCoeff& den, double alpha, double beta) {
  const double d = den.evaluate(alpha, beta);
  if (d == 0.0) throw ZeroPartition("graded ratio denominator evaluates to zero");
  return num.evaluate(alpha, beta) / d;
}

}  // namespace bellfield
