#pragma once

#include "virlab/formal_series.hpp"

namespace virlab {

/// A power series plus an explicit multiple of a logarithmic marker that is never expanded.
/// For μ*(ρ) the marker is log ρ; for the free energy it is the ideal part ρ log ρ - ρ.
template <CoefficientRing T>
struct LogTagged {
  Rat log_coefficient;
  FormalSeries<T> series;
};

template <CoefficientRing T>
struct ThermoMaps {
  FormalSeries<T> pressure;       ///< P(ρ) = ρ - Σ n/(n+1) β_n ρ^{n+1}
  LogTagged<T> mu_star;           ///< μ*(ρ) = log ρ - Σ β_n ρ^n
  LogTagged<T> free_energy;       ///< F(ρ) = (ρ log ρ - ρ) + F_excess
  FormalSeries<T> free_excess;    ///< F_excess = -Σ β_n ρ^{n+1}/(n+1)
  CoeffSeq<T> virial;             ///< B_1 = 1, B_{n+1} = -n β_n/(n+1)
};

template <CoefficientRing T>
ThermoMaps<T> thermo_maps(const CoeffSeq<T>& beta, int K) {
  if (beta.base() != 1) throw BaseMismatch("beta must be a base-1 sequence");
  if (beta.order() < K) throw InsufficientOrder("thermo_maps needs beta up to K");
  const T zero = Ring<T>::zero();
  std::vector<T> P{zero, Ring<T>::one()}, mu{zero}, F{zero, zero}, B{Ring<T>::one()};
  for (int n = 1; n <= K; ++n) {
    const T& b = beta[n];
    P.push_back(scale(b, -Rat(n) / Rat(n + 1)));
    mu.push_back(zero - b);
    F.push_back(scale(b, Rat(-1) / Rat(n + 1)));
    B.push_back(scale(b, -Rat(n) / Rat(n + 1)));
  }
  ThermoMaps<T> out;
  out.pressure = FormalSeries<T>::dense(P, "rho");
  out.mu_star = {Rat(1), FormalSeries<T>::dense(mu, "rho")};
  out.free_excess = FormalSeries<T>::dense(F, "rho");
  out.free_energy = {Rat(1), out.free_excess};
  out.virial = CoeffSeq<T>(1, std::move(B));
  return out;
}

}  // namespace virlab
