#pragma once

#include "virlab/errors.hpp"
#include "virlab/eta_expr.hpp"
#include "virlab/rat.hpp"

namespace virlab {

/// Coefficient rings accepted by the series templates: Rat, EtaExpr and double.
template <typename T>
struct Ring;

template <>
struct Ring<Rat> {
  static Rat zero() { return Rat(0); }
  static Rat one() { return Rat(1); }
  static Rat from_rat(const Rat& r) { return r; }
  static bool is_zero(const Rat& x) { return x.is_zero(); }
  static Rat inverse(const Rat& x) {
    if (x.is_zero()) throw NotInvertible("zero has no inverse");
    return Rat(1) / x;
  }
};

template <>
struct Ring<EtaExpr> {
  static EtaExpr zero() { return EtaExpr(); }
  static EtaExpr one() { return EtaExpr(1); }
  static EtaExpr from_rat(const Rat& r) { return EtaExpr(r); }
  static bool is_zero(const EtaExpr& x) { return x.is_zero(); }
  /// Only nonzero constants are units of the η/log η ring.
  static EtaExpr inverse(const EtaExpr& x) {
    if (x.is_zero() || !x.is_constant()) throw NotInvertible("EtaExpr is not a nonzero constant");
    return EtaExpr(Rat(1) / x.coeff(0, 0));
  }
};

template <>
struct Ring<double> {
  static double zero() { return 0.0; }
  static double one() { return 1.0; }
  static double from_rat(const Rat& r) { return r.to_double(); }
  static bool is_zero(double x) { return x == 0.0; }
  static double inverse(double x) {
    if (x == 0.0) throw NotInvertible("zero has no inverse");
    return 1.0 / x;
  }
};

template <typename T>
concept CoefficientRing = requires(const T& a, const T& b) {
  { Ring<T>::zero() };
  { a + b };
  { a * b };
};

template <typename T>
T scale(const T& x, const Rat& s) {
  if constexpr (std::is_same_v<T, double>)
    return x * s.to_double();
  else
    return x * s;
}

}  // namespace virlab
