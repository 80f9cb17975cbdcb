#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>

namespace obslab {

/// Exact rational number; always kept in lowest terms with positive denominator.
class Rat {
 public:
  Rat() = default;
  Rat(int v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Rat(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Rat(long long v) : q_(static_cast<long>(v)) {}  // NOLINT(google-explicit-constructor)
  Rat(long num, long den);
  explicit Rat(const mpq_class& q) : q_(q) { q_.canonicalize(); }
  explicit Rat(const mpz_class& z) : q_(z) {}

  /// Parses "a", "-a", or "a/b".
  static Rat parse(const std::string& text);

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_one() const { return q_ == 1; }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }

  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }
  const mpq_class& raw() const { return q_; }

  Rat inverse() const;
  Rat abs() const { return Rat(mpq_class(::abs(q_))); }

  /// Canonical "n" or "n/d" form.
  std::string str() const { return q_.get_str(); }

  Rat& operator+=(const Rat& o) { q_ += o.q_; return *this; }
  Rat& operator-=(const Rat& o) { q_ -= o.q_; return *this; }
  Rat& operator*=(const Rat& o) { q_ *= o.q_; return *this; }
  Rat& operator/=(const Rat& o);

  friend Rat operator+(Rat a, const Rat& b) { a += b; return a; }
  friend Rat operator-(Rat a, const Rat& b) { a -= b; return a; }
  friend Rat operator*(Rat a, const Rat& b) { a *= b; return a; }
  friend Rat operator/(Rat a, const Rat& b) { a /= b; return a; }
  Rat operator-() const { return Rat(mpq_class(-q_)); }

  friend bool operator==(const Rat& a, const Rat& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

 private:
  mpq_class q_;
};

Rat pow(const Rat& base, unsigned exponent);
Rat factorial(unsigned n);
inline Rat abs(const Rat& r) { return r.abs(); }

}  // namespace obslab
