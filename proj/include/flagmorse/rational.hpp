#pragma once

// Exact rational arithmetic for the root-system combinatorics.
// All chamber/Bruhat/sign computations stay in Rat; doubles appear only in
// the numerical flow modules. Intermediates widen to 128 bits, and every
// result is normalized (gcd reduced, positive denominator), which keeps the
// small numbers of rank <= 4 systems far from overflow.

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace flagmorse {

class Rat {
 public:
  Rat() = default;
  Rat(long long n) : num_(n) {}  // NOLINT: implicit from integers is intended
  Rat(int n) : num_(n) {}
  Rat(long long n, long long d) : num_(n), den_(d) { normalize(); }

  long long numerator() const { return num_; }
  long long denominator() const { return den_; }

  Rat operator-() const { return Rat(-num_, den_); }

  Rat& operator+=(const Rat& o) { return assign(i128(num_) * o.den_ + i128(o.num_) * den_, i128(den_) * o.den_); }
  Rat& operator-=(const Rat& o) { return assign(i128(num_) * o.den_ - i128(o.num_) * den_, i128(den_) * o.den_); }
  Rat& operator*=(const Rat& o) { return assign(i128(num_) * o.num_, i128(den_) * o.den_); }
  Rat& operator/=(const Rat& o) {
    if (o.num_ == 0) throw std::domain_error("rational division by zero");
    return assign(i128(num_) * o.den_, i128(den_) * o.num_);
  }

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

  friend bool operator==(const Rat& a, const Rat& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
  friend bool operator<(const Rat& a, const Rat& b) {
    return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
  }
  friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
  friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
  friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

  int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

  std::string str() const {
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
  }

 private:
  using i128 = __int128;
  long long num_ = 0;
  long long den_ = 1;

  void normalize() {
    if (den_ == 0) throw std::domain_error("rational with zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  Rat& assign(i128 n, i128 d) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    i128 an = n < 0 ? -n : n;
    i128 g = gcd128(an, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    constexpr i128 lim = 0x7fffffffffffffffLL;
    if (n > lim || n < -lim || d > lim) throw std::overflow_error("rational overflow");
    num_ = static_cast<long long>(n);
    den_ = static_cast<long long>(d);
    return *this;
  }

  static i128 gcd128(i128 a, i128 b) {
    while (b != 0) {
      i128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }
};

inline double to_double(const Rat& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

using RatVec = std::vector<Rat>;

inline Rat dot(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline RatVec add(const RatVec& a, const RatVec& b) {
  RatVec r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

inline RatVec sub(const RatVec& a, const RatVec& b) {
  RatVec r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

inline RatVec scale(const Rat& c, const RatVec& a) {
  RatVec r(a);
  for (auto& x : r) x *= c;
  return r;
}

inline bool is_zero(const RatVec& a) {
  for (const auto& x : a)
    if (x != Rat(0)) return false;
  return true;
}

// Reflection of v through the hyperplane orthogonal to the root a.
inline RatVec reflect(const RatVec& v, const RatVec& a) {
  Rat c = Rat(2) * dot(v, a) / dot(a, a);
  return sub(v, scale(c, a));
}

// Solve A x = b exactly by Gaussian elimination with first-nonzero
// pivoting. A must be square and nonsingular.
inline RatVec solve_linear(std::vector<RatVec> A, RatVec b) {
  const std::size_t n = A.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && A[piv][col] == Rat(0)) ++piv;
    if (piv == n) throw std::runtime_error("solve_linear: singular matrix");
    std::swap(A[piv], A[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || A[row][col] == Rat(0)) continue;
      Rat f = A[row][col] / A[col][col];
      for (std::size_t k = col; k < n; ++k) A[row][k] -= f * A[col][k];
      b[row] -= f * b[col];
    }
  }
  RatVec x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / A[i][i];
  return x;
}

}  // namespace flagmorse
