#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace virlab {

/// Exact rational number, always in lowest terms with a positive denominator.
class Rat {
 public:
  Rat() = default;
  Rat(long n) : v_(n) {}  // NOLINT(google-explicit-constructor)
  Rat(int n) : v_(n) {}   // NOLINT(google-explicit-constructor)
  Rat(long num, long den);
  explicit Rat(const mpz_class& n) : v_(n) {}
  Rat(const mpz_class& num, const mpz_class& den);
  explicit Rat(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

  /// Exact value of a finite binary64.
  static Rat from_double(double x);
  /// Parses "p", "p/q" or a plain decimal "1.25" / "-0.5e-3".
  static Rat parse(std::string_view text);

  const mpq_class& get() const noexcept { return v_; }
  mpz_class num() const { return v_.get_num(); }
  mpz_class den() const { return v_.get_den(); }

  bool is_zero() const noexcept { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const noexcept { return sgn(v_); }
  double to_double() const { return v_.get_d(); }
  std::string str() const { return v_.get_str(); }

  Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
  Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
  Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
  Rat& operator/=(const Rat& o);

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
  friend Rat operator-(const Rat& a) { return Rat(mpq_class(-a.v_)); }

  friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    const int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class v_{0};
};

std::ostream& operator<<(std::ostream& os, const Rat& r);

Rat abs(const Rat& r);
/// r^e for any integer e (e < 0 requires r != 0).
Rat pow(const Rat& r, long e);
mpz_class factorial(unsigned long n);
mpz_class binomial(unsigned long n, unsigned long k);

}  // namespace virlab
