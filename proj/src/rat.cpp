#include "virlab/rat.hpp"

#include <cmath>
#include <ostream>

#include "virlab/errors.hpp"

namespace virlab {

Rat::Rat(long num, long den) : Rat(mpz_class(num), mpz_class(den)) {}

Rat::Rat(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rat& Rat::operator/=(const Rat& o) {
  if (o.is_zero()) throw DomainError("division by zero");
  v_ /= o.v_;
  return *this;
}

Rat Rat::from_double(double x) {
  if (!std::isfinite(x)) throw DomainError("non-finite value has no exact rational");
  return Rat(mpq_class(x));
}

Rat Rat::parse(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw ParseError("empty rational");
  try {
    if (s.find_first_of(".eE") != std::string::npos) {
      // Decimal literal: split mantissa and exponent, keep it exact.
      std::size_t epos = s.find_first_of("eE");
      std::string mant = s.substr(0, epos);
      long exp10 = epos == std::string::npos ? 0 : std::stol(s.substr(epos + 1));
      bool neg = !mant.empty() && (mant[0] == '-' || mant[0] == '+');
      bool minus = neg && mant[0] == '-';
      if (neg) mant.erase(0, 1);
      std::size_t dot = mant.find('.');
      std::string digits = mant;
      if (dot != std::string::npos) {
        exp10 -= static_cast<long>(mant.size() - dot - 1);
        digits.erase(dot, 1);
      }
      if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError("bad decimal '" + s + "'");
      mpz_class n(digits, 10);
      if (minus) n = -n;
      mpz_class p;
      mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exp10)));
      return exp10 >= 0 ? Rat(mpz_class(n * p)) : Rat(n, p);
    }
    std::size_t slash = s.find('/');
    if (slash == std::string::npos) return Rat(mpz_class(s, 10));
    return Rat(mpz_class(s.substr(0, slash), 10), mpz_class(s.substr(slash + 1), 10));
  } catch (const std::invalid_argument&) {
    throw ParseError("bad rational '" + s + "'");
  } catch (const std::out_of_range&) {
    throw ParseError("bad rational '" + s + "'");
  }
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

Rat abs(const Rat& r) { return r.sign() < 0 ? -r : r; }

Rat pow(const Rat& r, long e) {
  if (e < 0) return Rat(1) / pow(r, -e);
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), r.get().get_num_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(d.get_mpz_t(), r.get().get_den_mpz_t(), static_cast<unsigned long>(e));
  return Rat(n, d);
}

mpz_class factorial(unsigned long n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

mpz_class binomial(unsigned long n, unsigned long k) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return b;
}

}  // namespace virlab
