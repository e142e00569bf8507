#include <cmath>

#include "doctest.h"
#include "virlab/cluster.hpp"
#include "virlab/engines.hpp"
#include "virlab/thermo.hpp"

using namespace virlab;

namespace {

const EtaExpr lam = EtaExpr::lambda();
const EtaExpr eta = EtaExpr::eta();

ModelParams with_K(int K, Rat eps = Rat(1, 2)) {
  ModelParams p;
  p.K = K;
  p.epsilon = eps;
  return p;
}

Rat kk_over_fact(int k) {
  return pow(Rat(k + 1), k) / Rat(factorial(static_cast<unsigned long>(k + 1)));
}

}  // namespace

TEST_CASE("virial engine anchors") {
  const auto v = virial_exact(with_K(12));
  CHECK(v.gamma[1] == -lam);
  CHECK(v.gamma[2] == -(lam.pow(3)));
  CHECK(v.delta[1] == EtaExpr(-1));
  CHECK(v.delta[2] == -lam);
  CHECK(v.delta[3] == -(lam * (EtaExpr(1) - eta * Rat(2) - eta * eta * Rat(1, 2))));
  for (int k = 1; k <= 12; ++k) {
    CAPTURE(k);
    CHECK(v.delta[k].bounded_at_origin());
    CHECK(v.gamma[k] == lam.pow(k) * v.delta[k]);
    CHECK(v.gamma[k] == v.beta[k] * Rat(k));
    CHECK(v.delta[k].limit_at_origin() == Rat(-1));
  }
}

TEST_CASE("virial engine scales with epsilon") {
  const Rat eps(3, 4);
  const auto half = virial_exact(with_K(6));
  const auto v = virial_exact(with_K(6, eps));
  // γ₂ = -2ελ³ with λ = (1-η)/(2ε)
  CHECK(v.gamma[2] == -(lam.pow(3)) * (Rat(2) * eps / pow(Rat(2) * eps, 3)));
  for (int k = 1; k <= 6; ++k) {
    CHECK(v.delta[k] == half.delta[k]);
    CHECK(v.gamma[k] == half.gamma[k] * pow(Rat(2) * eps, -k));
  }
}

TEST_CASE("small-time slopes") {
  const auto v = virial_exact(with_K(12));
  for (const Rat eps : {Rat(1, 2), Rat(2, 3)}) {
    const auto a = asymptotic_smallt(12, eps);
    for (int k = 2; k <= 12; ++k) {
      CAPTURE(k);
      CHECK(delta_slope_at_origin(v.delta[k], eps) == a.slopes[k]);
      // lim_{η→1} δ_k/(1-η) equals the slope in 2ε = 1 units
      CHECK(v.delta[k].divide_by_lambda().eval_exact(Rat(1)) == a.slopes[k] / (Rat(2) * eps));
    }
  }
  CHECK(asymptotic_smallt(3, Rat(1, 2)).slopes[3] == Rat(3, 2));
  CHECK(asymptotic_smallt(3, Rat(1, 2)).slopes[2] == Rat(-1));
  const auto a = asymptotic_smallt(2, Rat(1, 2));
  CHECK(a.pade_form(0.5, 0.0) == 0.0);
  CHECK(a.pade_form(1.0, 0.1) == doctest::Approx(-0.1 - 0.01 / 1.1 * 0.05));
}

TEST_CASE("Mayer engine anchors") {
  const auto m = mayer_exact(with_K(20));
  CHECK(m.q[0] == EtaExpr(1));
  CHECK(m.q[1] == -lam);
  CHECK(m.q[2] == EtaExpr::polynomial({1, Rat(-3, 2), 0, Rat(1, 2)}));
  CHECK(m.c[2].eval_exact(Rat(1)) == Rat(3, 2));
  CHECK(m.c[3].eval_exact(Rat(1)) == Rat(8, 3));
  CHECK(m.c[4].eval_exact(Rat(1)) == Rat(125, 24));
  for (int k = 0; k <= 20; ++k) {
    CAPTURE(k);
    CHECK(m.c[k].eval_exact(Rat(1)) == kk_over_fact(k));
    CHECK(m.c[k].bounded_at_origin());
  }
  for (int k = 0; k <= 12; ++k) CHECK(m.c[k].limit_at_origin() == Rat(1));
  for (int k = 1; k <= 21; ++k) CHECK(m.q[k - 1] == m.b[k] * Rat(k));
}

TEST_CASE("Mayer signs alternate on a grid") {
  const auto m = mayer_exact(with_K(11));
  for (int k = 1; k <= 12; ++k)
    for (int i = 1; i <= 50; ++i) {
      const Rat x(i, 50);
      const Rat v = m.b[k].eval_exact(x);
      CHECK((k % 2 == 1 ? v.sign() >= 0 : v.sign() <= 0));
    }
}

TEST_CASE("cross-engine identity through the cluster inversion") {
  const int K = 8;
  const auto v = virial_exact(with_K(K));
  const auto m = mayer_exact(with_K(K));
  const auto beta = beta_from_b(m.b, K);
  for (int k = 1; k <= K; ++k) CHECK(beta[k] == v.beta[k]);
}

TEST_CASE("stationary limit") {
  for (const Rat eps : {Rat(1, 2), Rat(1, 5)}) {
    const auto s = stationary_limit(12, eps);
    CHECK(s.gamma_inf[1] == -Rat(1) / (Rat(2) * eps));
    for (int k = 1; k <= 12; ++k) CHECK(s.residual[k].is_zero());
    const double te = 2 * eps.to_double();
    for (double rho : {-0.7 * te, -0.1 * te, 0.2 * te, 0.9 * te}) {
      CHECK(std::abs(s.psi0_residual(rho)) < 1e-15);
      CHECK(s.P0(rho) == doctest::Approx(-te * std::log(1 - rho / te)));
      CHECK(s.P0(rho) == doctest::Approx(-te * s.phi0(rho)));
    }
    CHECK_THROWS_AS(s.P0(te), DomainError);
    CHECK_THROWS_AS(s.phi0(-1.5 * te), DomainError);

    // P₀ agrees with the pressure built from the stationary β_n = γ̃_n/n
    std::vector<Rat> beta;
    for (int n = 1; n <= 12; ++n) beta.push_back(s.gamma_inf[n] / Rat(n));
    const auto maps = thermo_maps(CoeffSeq<Rat>(1, beta), 12);
    double rho = 0.3 * te, series = 0;
    for (int n = 1; n <= 13; ++n) series += maps.pressure[n].to_double() * std::pow(rho, n);
    CHECK(series == doctest::Approx(s.P0(rho)).epsilon(1e-6));
  }
}

TEST_CASE("majorant constants") {
  const auto edge = appendix_d_constants(Rat(1, 2), Rat(1, 2), Rat(1), Rat(0));
  CHECK(edge.delta == doctest::Approx(2 - std::sqrt(3.0)).epsilon(1e-14));
  CHECK(edge.A == doctest::Approx(0.1519).epsilon(1e-3));
  CHECK(edge.B == doctest::Approx(1 / (edge.delta * edge.A * edge.A)));
  CHECK(edge.domain_check(1.0, 0.5 / edge.B));
  CHECK(!edge.domain_check(1.0, 2.0 / edge.B));
  // the domain widens as e^{ε(1+a)t}/t for large t
  CHECK(edge.domain_check(200.0, 10.0));
  const auto hj = appendix_d_constants(Rat(0), Rat(1, 2), Rat(1, 4), Rat(-1));
  CHECK(hj.delta == doctest::Approx(4 - std::sqrt(8.0)));
  CHECK_THROWS_AS(appendix_d_constants(Rat(0), Rat(1, 2), Rat(1), Rat(-1)), DegenerateParams);
  CHECK_THROWS_AS(appendix_d_constants(Rat(0), Rat(0), Rat(1), Rat(0)), DegenerateParams);
}

TEST_CASE("numeric oracle agrees with the exact engine") {
  const int K = 12;
  const auto v = virial_exact(with_K(K));
  const auto m = mayer_exact(with_K(K));
  std::vector<double> grid;
  for (int i = 0; i <= 20; ++i) grid.push_back(0.25 * i);
  const auto nv = numeric_trajectories(with_K(K), grid, Side::virial);
  const auto nm = numeric_trajectories(with_K(K), grid, Side::mayer);
  double worst = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double e = std::exp(-grid[i]);
    for (int k = 1; k <= K; ++k) {
      const auto ku = static_cast<std::size_t>(k);
      worst = std::max(worst, std::abs(nv.normalized[ku][i] - v.delta[k].eval(e)));
      worst = std::max(worst, std::abs(nv.primary[ku][i] - v.gamma[k].eval(e)));
      worst = std::max(worst, std::abs(nm.normalized[ku][i] - m.c[k].eval(e)));
      worst = std::max(worst, std::abs(nm.primary[ku][i] - m.q[k].eval(e)));
    }
  }
  MESSAGE("max deviation " << worst << " over " << nv.panels << " panels");
  CHECK(worst <= 1e-9);

  for (int k = 1; k <= 2; ++k)
    for (std::size_t i = 0; i < grid.size(); ++i)
      CHECK(std::abs(nv.primary[static_cast<std::size_t>(k)][i] -
                     v.gamma[k].eval(std::exp(-grid[i]))) <= 1e-12);
}

TEST_CASE("numeric Mayer coefficients decrease to one") {
  std::vector<double> grid;
  for (int i = 0; i <= 80; ++i) grid.push_back(0.5 * i);
  const auto nm = numeric_trajectories(with_K(12), grid, Side::mayer);
  for (int k = 2; k <= 12; ++k) {
    const auto& c = nm.normalized[static_cast<std::size_t>(k)];
    // strict while c_k - 1 is resolvable in binary64, non-increasing up to rounding beyond
    for (std::size_t i = 1; i < c.size(); ++i) {
      if (c[i - 1] - 1 > 1e-12) CHECK(c[i] < c[i - 1]);
      else CHECK(c[i] <= c[i - 1] + 1e-15);
    }
    CHECK(std::abs(c.back() - 1) < 1e-6);
  }
}

TEST_CASE("numeric engine with another epsilon") {
  const Rat eps(1, 3);
  const auto v = virial_exact(with_K(6, eps));
  const auto nv = numeric_trajectories(with_K(6, eps), {0.5, 2.0}, Side::virial);
  for (std::size_t i = 0; i < 2; ++i) {
    const double e = std::exp(-2 * eps.to_double() * nv.times[i]);
    for (int k = 1; k <= 6; ++k) {
      CHECK(nv.primary[static_cast<std::size_t>(k)][i] == doctest::Approx(v.gamma[k].eval(e)).epsilon(1e-10));
      CHECK(nv.normalized[static_cast<std::size_t>(k)][i] == doctest::Approx(v.delta[k].eval(e)).epsilon(1e-10));
    }
  }
  CHECK_THROWS_AS(numeric_trajectories(with_K(3), {1.0, 0.5}, Side::virial), DomainError);
}

TEST_CASE("peak of delta_3") {
  const auto v = virial_exact(with_K(3));
  const auto peak = delta_peak(v.delta[3], 0.5, 5.0);
  REQUIRE(peak.has_value());
  // δ₃ = -(1-η)(1-2η-η²/2): the maximum solves d/dη = 0, i.e. 3η²/2 + 2η... checked numerically
  const double e = std::exp(-peak->t);
  const double h = 1e-6;
  auto d3 = [](double x) { return -(1 - x) * (1 - 2 * x - x * x / 2); };
  CHECK(std::abs((d3(e + h) - d3(e - h)) / (2 * h)) < 1e-5);
  CHECK(!delta_peak(v.delta[2], 0.5, 5.0).has_value());
}

TEST_CASE("coefficients stay polynomial in eta") {
  // No log or negative-power term survives, or appears, in any computed coefficient.
  const auto v = virial_exact(with_K(16));
  const auto m = mayer_exact(with_K(16));
  for (int k = 1; k <= 16; ++k) {
    CAPTURE(k);
    CHECK_FALSE(v.gamma[k].has_logs());
    CHECK_FALSE(v.gamma[k].has_negative_powers());
    CHECK_FALSE(v.delta[k].has_logs());
    CHECK_FALSE(v.delta[k].has_negative_powers());
    CHECK_FALSE(m.q[k].has_logs());
    CHECK_FALSE(m.c[k].has_negative_powers());
  }
}
