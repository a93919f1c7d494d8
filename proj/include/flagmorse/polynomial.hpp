#pragma once

// Integer polynomials in one variable, coefficient index = degree.
// Trailing zeros are trimmed; the zero polynomial has empty storage.

#include <cstdint>
#include <string>
#include <vector>

namespace flagmorse {

struct IntPolynomial {
  std::vector<long long> coeffs;

  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<long long> c) : coeffs(std::move(c)) { trim(); }

  static IntPolynomial one() { return IntPolynomial({1}); }
  static IntPolynomial monomial(int degree, long long c = 1) {
    std::vector<long long> v(degree + 1, 0);
    v[degree] = c;
    return IntPolynomial(std::move(v));
  }

  void trim() {
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  }

  bool is_zero() const { return coeffs.empty(); }
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  long long coeff(int k) const {
    return (k >= 0 && k < static_cast<int>(coeffs.size())) ? coeffs[k] : 0;
  }

  long long eval(long long t) const {
    long long v = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * t + *it;
    return v;
  }

  bool nonnegative() const {
    for (auto c : coeffs)
      if (c < 0) return false;
    return true;
  }

  IntPolynomial& operator+=(const IntPolynomial& o) {
    if (o.coeffs.size() > coeffs.size()) coeffs.resize(o.coeffs.size(), 0);
    for (std::size_t k = 0; k < o.coeffs.size(); ++k) coeffs[k] += o.coeffs[k];
    trim();
    return *this;
  }

  IntPolynomial& operator-=(const IntPolynomial& o) {
    if (o.coeffs.size() > coeffs.size()) coeffs.resize(o.coeffs.size(), 0);
    for (std::size_t k = 0; k < o.coeffs.size(); ++k) coeffs[k] -= o.coeffs[k];
    trim();
    return *this;
  }

  friend IntPolynomial operator+(IntPolynomial a, const IntPolynomial& b) { return a += b; }
  friend IntPolynomial operator-(IntPolynomial a, const IntPolynomial& b) { return a -= b; }

  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<long long> c(a.coeffs.size() + b.coeffs.size() - 1, 0);
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs.size(); ++j) c[i + j] += a.coeffs[i] * b.coeffs[j];
    return IntPolynomial(std::move(c));
  }

  // Multiply by t^k.
  IntPolynomial shifted(int k) const {
    if (is_zero()) return {};
    std::vector<long long> c(coeffs.size() + k, 0);
    for (std::size_t i = 0; i < coeffs.size(); ++i) c[i + k] = coeffs[i];
    return IntPolynomial(std::move(c));
  }

  bool operator==(const IntPolynomial& o) const { return coeffs == o.coeffs; }
  bool operator!=(const IntPolynomial& o) const { return coeffs != o.coeffs; }

  std::string str() const {
    if (is_zero()) return "0";
    std::string s;
    for (int k = 0; k <= degree(); ++k) {
      long long c = coeffs[k];
      if (c == 0) continue;
      if (!s.empty()) s += c > 0 ? " + " : " - ";
      else if (c < 0) s += "-";
      long long a = c > 0 ? c : -c;
      if (k == 0) s += std::to_string(a);
      else {
        if (a != 1) s += std::to_string(a) + "*";
        s += (k == 1) ? "t" : "t^" + std::to_string(k);
      }
    }
    return s;
  }
};

struct DivisionByOnePlusT {
  bool exact = false;
  IntPolynomial quotient;   // valid when exact
  long long remainder = 0;  // D(-1)
};

// Synthetic division of D by (1 + t); exact iff D(-1) = 0.
inline DivisionByOnePlusT divide_by_one_plus_t(const IntPolynomial& d) {
  DivisionByOnePlusT out;
  if (d.is_zero()) {
    out.exact = true;
    return out;
  }
  const int m = d.degree();
  std::vector<long long> q(m, 0);
  long long carry = d.coeff(m);
  for (int i = m - 1; i >= 0; --i) {
    q[i] = carry;
    carry = d.coeff(i) - carry;
  }
  out.remainder = carry;
  if (carry == 0) {
    out.exact = true;
    out.quotient = IntPolynomial(std::move(q));
  }
  return out;
}

}  // namespace flagmorse
