#include <cmath>
#include <numbers>

#include "doctest.h"
#include "virlab/engines.hpp"
#include "virlab/formal_series.hpp"
#include "virlab/models.hpp"

using namespace virlab;

TEST_CASE("hard spheres in infinite dimension") {
  CHECK(hard_sphere::zmap(-1.0) == doctest::Approx(-std::exp(-1.0)).epsilon(1e-15));
  CHECK(hard_sphere::pressure(0.4) == doctest::Approx(0.48));
  CHECK(hard_sphere::mayer_coeff(3) == Rat(3, 2));
  CHECK(hard_sphere::mayer_coeff(1) == Rat(1));
  CHECK(hard_sphere::mayer_coeff(2) == Rat(-1));

  std::vector<Rat> z{0};
  for (int n = 1; n <= 14; ++n) z.push_back(Rat(1) / Rat(factorial(static_cast<unsigned long>(n - 1))));
  const auto w = series_invert(FormalSeries<Rat>::dense(z), 14);
  for (int n = 1; n <= 14; ++n) CHECK(hard_sphere::mayer_coeff(n) == w[n]);
}

TEST_CASE("circle images") {
  const auto img = hard_sphere::circle_image_z(1.0, 8);
  REQUIRE(img.size() == 8);
  // θ = π: Z(-1) = -1/e, the cusp
  CHECK(img[4].value.re == doctest::Approx(-std::exp(-1.0)));
  CHECK(std::abs(img[4].value.im) < 1e-15);
  CHECK_THROWS_AS(hard_sphere::circle_image_z(1.5, 8), DomainError);

  // W inverts Z along its circles
  for (double r : {0.1, 0.25, std::exp(-1.0)}) {
    for (const auto& p : hard_sphere::circle_image_w(r, 16)) {
      const auto back = hard_sphere::zmap(p.value);
      CHECK(back.re == doctest::Approx(r * std::cos(p.theta)).epsilon(1e-12).scale(1));
      CHECK(back.im == doctest::Approx(r * std::sin(p.theta)).epsilon(1e-12).scale(1));
    }
  }
  const auto cusp = hard_sphere::circle_image_w(std::exp(-1.0), 2);
  CHECK(cusp[1].value.re == doctest::Approx(-1).epsilon(1e-7));
  // the images of |z| = 1/e stay outside |ρ| < W(1/e)
  for (const auto& p : hard_sphere::circle_image_w(std::exp(-1.0), 360))
    CHECK(std::hypot(p.value.re, p.value.im) >= 0.278464);
  const auto wc = hard_sphere::lambert_w_complex({0.2, 0.3});
  const auto check = hard_sphere::zmap(wc);
  CHECK(check.re == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(check.im == doctest::Approx(0.3).epsilon(1e-14));
}

TEST_CASE("Ford model") {
  CHECK(ford_model(0.5).P == doctest::Approx(std::log(2.0)));
  CHECK(ford_model(0.5).branch == "plateau");
  CHECK(std::abs(ford_model(std::nextafter(0.5, 0.0)).P - std::log(2.0)) < 1e-12);
  CHECK(std::abs(ford_model(std::nextafter(1.5, 0.0)).P - ford_model(1.5).P) < 1e-12);
  CHECK(ford_model(1.5).branch == "dense");
  CHECK(ford_model(1.0).F == doctest::Approx(-std::log(2.0)));
  CHECK(ford_model(1e-9).P == doctest::Approx(1e-9).epsilon(1e-8));
  CHECK(ford_model(0.2).branch == "fluid");
  CHECK_THROWS_AS(ford_model(2.0), DomainError);
  CHECK_THROWS_AS(ford_model(-0.1), DomainError);
  // free energy continuous and flat where it meets the plateau
  const double h = 1e-7;
  CHECK(std::abs(ford_model(0.5 - h).F + std::log(2.0)) < 1e-6);
  CHECK(std::abs((ford_model(0.5 - h).F - ford_model(0.5 - 2 * h).F) / h) < 1e-6);
  CHECK(std::abs((ford_model(1.5 + 2 * h).F - ford_model(1.5 + h).F) / h) < 1e-6);
}

TEST_CASE("limit pressures") {
  const auto lp = limit_pressures(1.0, 0.5, 0.1);
  CHECK(lp.t0 == 0.1);
  CHECK(lp.eps0 == doctest::Approx(0.105));
  CHECK(limit_pressures(1.0, 0.5, 0.5).tinf == doctest::Approx(std::log(2.0)));
  CHECK_THROWS_AS(limit_pressures(1.0, 0.5, 1.0), DomainError);
}

TEST_CASE("Mayer majorant") {
  CHECK(mayer_majorant_Q(1.0, 0.0, 0.5) == 1.0);
  CHECK(mayer_majorant_Q(1.0, 1e-12, 0.5) == doctest::Approx(1.0));
  const double lam = 1 - std::exp(-1.0);
  // at the boundary eλ|z| = 1 the W argument reaches -1/e
  CHECK_THROWS_AS(mayer_majorant_Q(1.0, 1 / (std::numbers::e * lam), 0.5), DomainError);
  const double z = 0.9 / (std::numbers::e * lam);
  const double x = lam * z;
  double series = 0;
  const auto c = mayer_majorant_coefficients(60);
  for (int k = 0; k <= 60; ++k) series += c[static_cast<std::size_t>(k)].to_double() * std::pow(x, k);
  CHECK(mayer_majorant_Q(1.0, z, 0.5) == doctest::Approx(series).epsilon(1e-3));

  ModelParams p;
  p.K = 12;
  const auto m = mayer_exact(p);
  const auto q = mayer_majorant_coefficients(12);
  for (int k = 0; k <= 12; ++k) {
    CHECK(q[static_cast<std::size_t>(k)] == m.c[k].eval_exact(Rat(1)));
    CHECK(q[static_cast<std::size_t>(k)] == pow(Rat(k + 1), k) / Rat(factorial(static_cast<unsigned long>(k + 1))));
  }
}
