#pragma once

#include <string>
#include <vector>

#include "virlab/coeff_seq.hpp"

namespace virlab {

/// Truncated power series Σ_{n=0}^{K} c_n x^n with exact (or float) coefficients.
/// Coefficients below the stored base are zero.
template <CoefficientRing T>
class FormalSeries {
 public:
  FormalSeries() = default;
  FormalSeries(CoeffSeq<T> coeffs, std::string indeterminate = "z")
      : coeffs_(std::move(coeffs)), var_(std::move(indeterminate)) {}
  /// Dense constructor from c_0..c_K.
  static FormalSeries dense(std::vector<T> c, std::string var = "z") {
    return FormalSeries(CoeffSeq<T>(0, std::move(c)), std::move(var));
  }

  int order() const { return coeffs_.order(); }
  const std::string& indeterminate() const { return var_; }
  const CoeffSeq<T>& coefficients() const { return coeffs_; }
  T operator[](int n) const {
    return n >= coeffs_.base() && n <= coeffs_.order() ? coeffs_[n] : Ring<T>::zero();
  }
  /// Dense c_0..c_K.
  std::vector<T> dense_coefficients() const {
    std::vector<T> c;
    for (int n = 0; n <= order(); ++n) c.push_back((*this)[n]);
    return c;
  }

 private:
  CoeffSeq<T> coeffs_{0, {}};
  std::string var_ = "z";
};

/// Truncated product to order K.
template <CoefficientRing T>
std::vector<T> series_multiply(const std::vector<T>& a, const std::vector<T>& b, int K) {
  std::vector<T> out(static_cast<std::size_t>(K) + 1, Ring<T>::zero());
  for (std::size_t i = 0; i < a.size() && static_cast<int>(i) <= K; ++i) {
    if (Ring<T>::is_zero(a[i])) continue;
    for (std::size_t j = 0; j < b.size() && static_cast<int>(i + j) <= K; ++j)
      out[i + j] = out[i + j] + a[i] * b[j];
  }
  return out;
}

/// f(g(x)) to order K by Horner's scheme; g must have zero constant term.
template <CoefficientRing T>
FormalSeries<T> compose(const FormalSeries<T>& f, const FormalSeries<T>& g, int K) {
  if (!Ring<T>::is_zero(g[0])) throw DomainError("inner series of a composition needs g(0) = 0");
  const std::vector<T> gd = g.dense_coefficients();
  std::vector<T> acc(static_cast<std::size_t>(K) + 1, Ring<T>::zero());
  for (int n = std::min(f.order(), K); n >= 0; --n) {
    acc = series_multiply(acc, gd, K);
    acc[0] = acc[0] + f[n];
  }
  return FormalSeries<T>::dense(std::move(acc), f.indeterminate());
}

/// Multiplicative inverse 1/a to order K; a(0) must be a unit.
template <CoefficientRing T>
std::vector<T> series_reciprocal(const std::vector<T>& a, int K) {
  const T inv0 = Ring<T>::inverse(a.empty() ? Ring<T>::zero() : a[0]);
  std::vector<T> r(static_cast<std::size_t>(K) + 1, Ring<T>::zero());
  r[0] = inv0;
  for (int n = 1; n <= K; ++n) {
    T acc = Ring<T>::zero();
    for (int j = 1; j <= n && j < static_cast<int>(a.size()); ++j) acc = acc + a[j] * r[n - j];
    r[n] = Ring<T>::zero() - acc * inv0;
  }
  return r;
}

/// Compositional inverse by the Lagrange–Bürmann formula:
///   [z^n] f^{-1} = (1/n) [w^{n-1}] (w/f(w))^n.
template <CoefficientRing T>
FormalSeries<T> series_invert(const FormalSeries<T>& f, int K) {
  if (!Ring<T>::is_zero(f[0])) throw NotInvertible("series to invert must vanish at the origin");
  if (Ring<T>::is_zero(f[1])) throw NotInvertible("linear coefficient is zero");
  // f(w)/w = f_1 + f_2 w + ...
  std::vector<T> shifted;
  for (int n = 1; n <= K; ++n) shifted.push_back(f[n]);
  const std::vector<T> h = series_reciprocal(shifted, K);

  std::vector<T> out(static_cast<std::size_t>(K) + 1, Ring<T>::zero());
  std::vector<T> hp = h;  // h^n
  for (int n = 1; n <= K; ++n) {
    out[static_cast<std::size_t>(n)] = scale(hp[static_cast<std::size_t>(n - 1)], Rat(1) / Rat(n));
    hp = series_multiply(hp, h, K);
  }
  return FormalSeries<T>::dense(std::move(out), f.indeterminate());
}

}  // namespace virlab
