#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "virlab/rat.hpp"

namespace virlab {

/// Exact function of time in the basis η^a·log^m η, with η = e^{-2εt}.
///
/// Everything is expressed in the internal normalization 2ε = 1, so that
/// λ = 1 - η and t = -log η. Terms are kept canonical: keyed by (a, m),
/// sorted, and never carrying a zero coefficient.
class EtaExpr {
 public:
  struct Key {
    int a = 0;  ///< exponent of η
    int m = 0;  ///< power of log η, m >= 0
    friend auto operator<=>(const Key&, const Key&) = default;
  };
  using Terms = std::map<Key, Rat>;

  EtaExpr() = default;
  EtaExpr(const Rat& c);  // NOLINT(google-explicit-constructor)
  EtaExpr(int c) : EtaExpr(Rat(c)) {}  // NOLINT(google-explicit-constructor)

  /// c·η^a·log^m η
  static EtaExpr monomial(int a, int m = 0, const Rat& c = Rat(1));
  static EtaExpr eta() { return monomial(1); }
  /// λ = 1 - η in 2ε = 1 units.
  static EtaExpr lambda();
  /// Builds c_0 + c_1 η + ... from a coefficient list.
  static EtaExpr polynomial(const std::vector<Rat>& coeffs);

  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  /// Coefficient of η^a log^m η (zero if absent).
  Rat coeff(int a, int m = 0) const;
  void add_term(int a, int m, const Rat& c);

  bool has_logs() const;
  bool has_negative_powers() const;
  /// No negative powers of η and no log terms: finite as η → 0⁺ (t → ∞).
  bool bounded_at_origin() const { return !has_logs() && !has_negative_powers(); }
  bool is_constant() const;
  int min_power() const;
  int max_power() const;

  EtaExpr& operator+=(const EtaExpr& o);
  EtaExpr& operator-=(const EtaExpr& o);
  EtaExpr& operator*=(const EtaExpr& o);
  EtaExpr& operator*=(const Rat& s);

  friend EtaExpr operator+(EtaExpr a, const EtaExpr& b) { return a += b; }
  friend EtaExpr operator-(EtaExpr a, const EtaExpr& b) { return a -= b; }
  friend EtaExpr operator*(EtaExpr a, const EtaExpr& b) { return a *= b; }
  friend EtaExpr operator*(EtaExpr a, const Rat& s) { return a *= s; }
  friend EtaExpr operator*(const Rat& s, EtaExpr a) { return a *= s; }
  friend EtaExpr operator-(EtaExpr a) { return a *= Rat(-1); }
  friend bool operator==(const EtaExpr&, const EtaExpr&) = default;

  /// d/dt in 2ε = 1 units: d/dt η^a L^m = -a η^a L^m - m η^a L^{m-1}, L = log η.
  EtaExpr derivative_t() const;

  /// Exact value at a rational η ∈ (0, 1]. Log terms are only allowed at η = 1.
  Rat eval_exact(const Rat& eta) const;
  /// binary64 value at η ∈ (0, 1]. Log-free expressions are evaluated exactly at the
  /// binary value of η and rounded once.
  double eval(double eta) const;
  /// Limit as η → 0⁺; requires bounded_at_origin().
  Rat limit_at_origin() const;

  /// Exact quotient by (1 - η)^times. Throws ExactnessError if the division leaves a remainder.
  EtaExpr divide_by_lambda(int times = 1) const;
  EtaExpr pow(int e) const;

  std::string str() const;

 private:
  Terms terms_;
};

enum class EtaOp { add, sub, mul };

/// scale·(x op y), canonical.
EtaExpr eta_arith(const EtaExpr& x, const EtaExpr& y, EtaOp op, const Rat& scale = Rat(1));

/// t ↦ ∫_0^t e^{-εk(k+1)(t-s)} g(η(s)) ds, exactly, in 2ε = 1 units.
///
/// With u = η(s): e^{-εk(k+1)(t-s)} = (η/u)^{N_k}, N_k = k(k+1)/2, and ds = -du/u, so the
/// integral is η^{N_k} ∫_η^1 u^{-N_k-1} g(u) du, assembled term by term.
EtaExpr kernel_integrate(const EtaExpr& g, int k);

}  // namespace virlab
