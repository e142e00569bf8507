#pragma once

#include <cstddef>
#include <vector>

#include "virlab/errors.hpp"
#include "virlab/ring.hpp"

namespace virlab {

/// Finite truncated coefficient sequence.
///
/// Base 1 (virial convention): values hold a_1..a_K and (a∗b)_k = Σ_{l=1}^{k-1} a_l b_{k-l}.
/// Base 0 (Mayer convention): values hold a_0..a_K and (a∗b)_m = Σ_{j=0}^{m} a_j b_{m-j}.
template <CoefficientRing T>
class CoeffSeq {
 public:
  CoeffSeq() = default;
  CoeffSeq(int base, std::vector<T> values) : base_(base), values_(std::move(values)) {
    if (base != 0 && base != 1) throw DomainError("CoeffSeq base must be 0 or 1");
  }

  int base() const noexcept { return base_; }
  /// Highest index held.
  int order() const noexcept { return base_ + static_cast<int>(values_.size()) - 1; }
  bool has(int k) const noexcept { return k >= base_ && k <= order(); }
  const T& operator[](int k) const { return values_[static_cast<std::size_t>(k - base_)]; }
  T& operator[](int k) { return values_[static_cast<std::size_t>(k - base_)]; }
  const T& at(int k) const {
    if (!has(k)) throw InsufficientOrder("coefficient index " + std::to_string(k) + " not available");
    return (*this)[k];
  }
  const std::vector<T>& values() const noexcept { return values_; }
  void push_back(T v) { values_.push_back(std::move(v)); }

  friend bool operator==(const CoeffSeq&, const CoeffSeq&) = default;

 private:
  int base_ = 1;
  std::vector<T> values_;
};

/// Convolution in the sequences' convention; output order is the smaller input order.
template <CoefficientRing T>
CoeffSeq<T> conv(const CoeffSeq<T>& a, const CoeffSeq<T>& b) {
  if (a.base() != b.base()) throw BaseMismatch("conv of base-0 and base-1 sequences");
  const int base = a.base();
  const int order = std::min(a.order(), b.order());
  std::vector<T> out;
  for (int k = base; k <= order; ++k) {
    T acc = Ring<T>::zero();
    if (base == 1) {
      for (int l = 1; l <= k - 1; ++l) acc = acc + a[l] * b[k - l];
    } else {
      for (int j = 0; j <= k; ++j) acc = acc + a[j] * b[k - j];
    }
    out.push_back(std::move(acc));
  }
  return CoeffSeq<T>(base, std::move(out));
}

/// n-fold self-convolution a∗⋯∗a (n ≥ 1).
template <CoefficientRing T>
CoeffSeq<T> self_power(const CoeffSeq<T>& a, int n) {
  if (n < 1) throw DomainError("self_power needs n >= 1");
  CoeffSeq<T> r = a;
  for (int i = 1; i < n; ++i) r = conv(r, a);
  return r;
}

/// Tracks T = γ/(1-γ) = Σ_{n≥1} γ^{∗n} for a base-1 sequence that grows one entry at a
/// time, so that Σ_{n≥2} (γ^{∗n})_k = Σ_{l=1}^{k-1} γ_l T_{k-l} costs O(k) per index.
template <CoefficientRing T>
class PowerSumTracker {
 public:
  void push(const T& gamma_k) {
    const int k = static_cast<int>(gamma_.size()) + 1;
    gamma_.push_back(gamma_k);
    geometric_.push_back(gamma_k + tail(k));
  }
  /// Σ_{n=2}^{k} (γ^{∗n})_k; needs γ_1..γ_{k-1} pushed.
  T tail(int k) const {
    if (static_cast<int>(gamma_.size()) < k - 1)
      throw InsufficientOrder("power sum needs gamma up to k-1");
    T acc = Ring<T>::zero();
    for (int l = 1; l <= k - 1; ++l) acc = acc + gamma_[l - 1] * geometric_[k - l - 1];
    return acc;
  }
  int size() const { return static_cast<int>(gamma_.size()); }

 private:
  std::vector<T> gamma_;
  std::vector<T> geometric_;
};

/// The nonlinearity h_k(γ_1..γ_{k-1}) = ε Σ_{n=2}^{k} (γ^{∗n})_k, with h_1 = 1/2.
/// The default ε = 1/2 is the internal 2ε = 1 normalization.
template <CoefficientRing T>
T h_k_eval(const CoeffSeq<T>& gamma, int k, const Rat& epsilon = Rat(1, 2)) {
  if (k < 1) throw DomainError("h_k needs k >= 1");
  if (k == 1) return Ring<T>::from_rat(Rat(1, 2));
  if (gamma.base() != 1) throw BaseMismatch("h_k needs a base-1 sequence");
  if (gamma.order() < k - 1) throw InsufficientOrder("h_k needs gamma up to k-1");
  PowerSumTracker<T> tracker;
  for (int j = 1; j <= k - 1; ++j) tracker.push(gamma[j]);
  return scale(tracker.tail(k), epsilon);
}

}  // namespace virlab
