#include "virlab/models.hpp"

#include <cmath>
#include <numbers>

#include "virlab/bounds.hpp"
#include "virlab/errors.hpp"
#include "virlab/formal_series.hpp"

namespace virlab {

namespace {

ComplexPair operator+(ComplexPair a, ComplexPair b) { return {a.re + b.re, a.im + b.im}; }
ComplexPair operator-(ComplexPair a, ComplexPair b) { return {a.re - b.re, a.im - b.im}; }
ComplexPair operator*(ComplexPair a, ComplexPair b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
ComplexPair operator*(double s, ComplexPair a) { return {s * a.re, s * a.im}; }
ComplexPair operator/(ComplexPair a, ComplexPair b) {
  const double d = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
double modulus(ComplexPair a) { return std::hypot(a.re, a.im); }
ComplexPair cexp(ComplexPair a) {
  const double m = std::exp(a.re);
  return {m * std::cos(a.im), m * std::sin(a.im)};
}
ComplexPair clog(ComplexPair a) { return {std::log(modulus(a)), std::atan2(a.im, a.re)}; }
ComplexPair csqrt(ComplexPair a) {
  const double m = std::sqrt(modulus(a));
  const double arg = std::atan2(a.im, a.re) / 2;
  return {m * std::cos(arg), m * std::sin(arg)};
}

}  // namespace

namespace hard_sphere {

double zmap(double rho) { return rho * std::exp(rho); }

ComplexPair zmap(ComplexPair rho) { return rho * cexp(rho); }

double pressure(double rho) { return rho + rho * rho / 2; }

Rat mayer_coeff(int n) {
  if (n < 1) throw DomainError("Mayer coefficients start at n = 1");
  return pow(Rat(-n), n - 1) / Rat(factorial(static_cast<unsigned long>(n)));
}

ComplexPair lambert_w_complex(ComplexPair z) {
  constexpr double inv_e = 0.36787944117144233;
  if (z.im == 0 && z.re >= -inv_e) return {lambert_w(z.re), 0};
  if (z.im == 0 && z.re < -inv_e) throw DomainError("z lies on the branch cut of W");
  ComplexPair w;
  const ComplexPair shifted = std::numbers::e * z + ComplexPair{1, 0};
  if (modulus(shifted) < 0.5) {
    const ComplexPair p = csqrt(2.0 * shifted);
    w = ComplexPair{-1, 0} + p - (1.0 / 3) * (p * p) + (11.0 / 72) * (p * p * p);
  } else if (modulus(z) < 3) {
    w = clog(ComplexPair{1, 0} + z);
  } else {
    const ComplexPair l = clog(z);
    w = l - clog(l);
  }
  for (int it = 0; it < 100; ++it) {
    const ComplexPair ew = cexp(w);
    const ComplexPair f = w * ew - z;
    const ComplexPair wp1 = w + ComplexPair{1, 0};
    const ComplexPair denom = ew * wp1 - ((w + ComplexPair{2, 0}) * f) / (2.0 * wp1);
    const ComplexPair dw = f / denom;
    w = w - dw;
    if (modulus(dw) <= 1e-16 * (1 + modulus(w))) break;
  }
  return w;
}

std::vector<CirclePoint> circle_image_z(double radius, int points) {
  if (!(radius > 0 && radius <= 1.2)) throw DomainError("circle radius must lie in (0, 1.2]");
  if (points < 1) throw DomainError("need at least one sample point");
  std::vector<CirclePoint> out;
  for (int i = 0; i < points; ++i) {
    const double theta = 2 * std::numbers::pi * i / points;
    out.push_back({radius, theta, zmap(ComplexPair{radius * std::cos(theta), radius * std::sin(theta)})});
  }
  return out;
}

std::vector<CirclePoint> circle_image_w(double radius, int points) {
  if (!(radius > 0 && radius <= std::exp(-1.0) * (1 + 1e-15)))
    throw DomainError("circle radius must lie in (0, 1/e]");
  if (points < 1) throw DomainError("need at least one sample point");
  std::vector<CirclePoint> out;
  for (int i = 0; i < points; ++i) {
    const double theta = 2 * std::numbers::pi * i / points;
    ComplexPair z{radius * std::cos(theta), radius * std::sin(theta)};
    // the sample at θ = π sits on the branch point when radius = 1/e
    if (2 * i == points) z = {-std::min(radius, 0.36787944117144233), 0};
    out.push_back({radius, theta, lambert_w_complex(z)});
  }
  return out;
}

}  // namespace hard_sphere

FordValue ford_model(double rho) {
  if (!(rho >= 0 && rho < 2)) throw DomainError("Ford model needs rho in [0, 2)");
  FordValue v;
  auto xlogx = [](double x) { return x == 0 ? 0.0 : x * std::log(x); };
  if (rho < 0.5) {
    v.P = -std::log1p(-rho);
    v.F = xlogx(rho) + xlogx(1 - rho);
    v.branch = "fluid";
  } else if (rho < 1.5) {
    v.P = std::numbers::ln2;
    v.F = -std::numbers::ln2;
    v.branch = "plateau";
  } else {
    v.P = std::log((rho - 1) / ((2 - rho) * (2 - rho)));
    v.F = xlogx(rho - 1) + xlogx(2 - rho);
    v.branch = "dense";
  }
  return v;
}

LimitPressures limit_pressures(double t, double epsilon, double rho) {
  if (!(epsilon > 0)) throw DomainError("epsilon must be positive");
  const double te = 2 * epsilon;
  if (!(std::abs(rho) < te)) throw DomainError("large-time pressure needs |rho| < 2 epsilon");
  return {rho, rho + t * rho * rho / 2, -te * std::log1p(-rho / te)};
}

double mayer_majorant_Q(double t, double z, double epsilon) {
  if (!(epsilon > 0) || !(t >= 0)) throw DomainError("need epsilon > 0 and t >= 0");
  const double lam = -std::expm1(-2 * epsilon * t) / (2 * epsilon);
  const double x = lam * z;
  if (!(std::numbers::e * std::abs(x) < 1)) throw DomainError("need e*lambda*|z| < 1");
  if (x == 0) return 1;
  return -lambert_w(-x) / x;
}

std::vector<Rat> mayer_majorant_coefficients(int K) {
  // W from inverting ρe^ρ, then -W(-x)/x = Σ_k (-1)^k w_{k+1} x^k
  std::vector<Rat> z{0};
  for (int n = 1; n <= K + 1; ++n) z.push_back(Rat(1) / Rat(factorial(static_cast<unsigned long>(n - 1))));
  const auto w = series_invert(FormalSeries<Rat>::dense(z), K + 1);
  std::vector<Rat> out;
  for (int k = 0; k <= K; ++k) out.push_back(k % 2 == 0 ? w[k + 1] : -w[k + 1]);
  return out;
}

}  // namespace virlab
