#pragma once

#include <map>
#include <utility>
#include <vector>

#include "virlab/coeff_seq.hpp"
#include "virlab/partitions.hpp"

namespace virlab {

namespace detail {

/// Caches x_i^n for repeated partition products.
template <CoefficientRing T>
class PowerCache {
 public:
  explicit PowerCache(std::vector<T> base) : base_(std::move(base)) {}
  const T& get(int i, int n) {
    auto [it, inserted] = cache_.try_emplace({i, n}, Ring<T>::one());
    if (inserted && n > 0) it->second = get(i, n - 1) * base_[static_cast<std::size_t>(i)];
    return it->second;
  }

 private:
  std::vector<T> base_;
  std::map<std::pair<int, int>, T> cache_;
};

}  // namespace detail

/// Mayer coefficients from irreducible cluster integrals (Faà di Bruno reduction):
///   b_l = l^{-2} Σ_{n_1+2n_2+⋯+(l-1)n_{l-1}=l-1} Π_i (lβ_i)^{n_i}/n_i!,  b_1 = 1.
template <CoefficientRing T>
CoeffSeq<T> b_from_beta(const CoeffSeq<T>& beta, int L) {
  if (beta.base() != 1) throw BaseMismatch("beta must be a base-1 sequence");
  if (L >= 2 && beta.order() < L - 1) throw InsufficientOrder("b_from_beta needs beta up to L-1");
  std::vector<T> raw(1, Ring<T>::zero());
  for (int i = 1; i <= L - 1; ++i) raw.push_back(beta[i]);
  detail::PowerCache<T> powers(raw);

  std::vector<T> b;
  for (int l = 1; l <= L; ++l) {
    if (l == 1) {
      b.push_back(Ring<T>::one());
      continue;
    }
    T acc = Ring<T>::zero();
    for (const auto& p : weighted_partitions(l - 1, l - 1)) {
      Rat weight(1);
      T prod = Ring<T>::one();
      for (int i = 1; i <= l - 1; ++i) {
        const int n = p.multiplicity[static_cast<std::size_t>(i)];
        if (n == 0) continue;
        weight *= pow(Rat(l), n) / Rat(factorial(static_cast<unsigned long>(n)));
        prod = prod * powers.get(i, n);
      }
      acc = acc + scale(prod, weight);
    }
    b.push_back(scale(acc, Rat(1) / Rat(l * l)));
  }
  return CoeffSeq<T>(1, std::move(b));
}

/// Irreducible cluster integrals from Mayer coefficients, the inverse of b_from_beta:
///   β_k = Σ_{n_2+2n_3+⋯+k n_{k+1}=k} (-1)^{Σn-1} (k+Σn-1)!/k! Π_i (i b_i)^{n_i}/n_i!.
template <CoefficientRing T>
CoeffSeq<T> beta_from_b(const CoeffSeq<T>& b, int K) {
  if (b.base() != 1) throw BaseMismatch("b must be a base-1 sequence");
  if (b.order() < K + 1) throw InsufficientOrder("beta_from_b needs b up to K+1");
  std::vector<T> raw(2, Ring<T>::zero());
  for (int i = 2; i <= K + 1; ++i) raw.push_back(scale(b[i], Rat(i)));
  detail::PowerCache<T> powers(raw);

  std::vector<T> beta;
  for (int k = 1; k <= K; ++k) {
    T acc = Ring<T>::zero();
    // Part j of the weighted partition corresponds to b_{j+1}.
    for (const auto& p : weighted_partitions(k, k)) {
      const int total = p.total_parts();
      Rat weight = Rat(factorial(static_cast<unsigned long>(k + total - 1))) /
                   Rat(factorial(static_cast<unsigned long>(k)));
      if ((total - 1) % 2 != 0) weight = -weight;
      T prod = Ring<T>::one();
      for (int j = 1; j <= k; ++j) {
        const int n = p.multiplicity[static_cast<std::size_t>(j)];
        if (n == 0) continue;
        weight /= Rat(factorial(static_cast<unsigned long>(n)));
        prod = prod * powers.get(j + 1, n);
      }
      acc = acc + scale(prod, weight);
    }
    beta.push_back(std::move(acc));
  }
  return CoeffSeq<T>(1, std::move(beta));
}

}  // namespace virlab
