#pragma once

#include <string>
#include <vector>

#include "virlab/rat.hpp"

namespace virlab {

/// Minimal complex pair for the conformal images of circles; nothing else uses complex values.
struct ComplexPair {
  double re = 0;
  double im = 0;
};

/// Hard spheres in infinite dimension.
namespace hard_sphere {

/// Z(ρ) = ρe^ρ
double zmap(double rho);
ComplexPair zmap(ComplexPair rho);
/// Equation of state ρ + ρ²/2.
double pressure(double rho);
/// n·b_n = (-n)^{n-1}/n!, exactly.
Rat mayer_coeff(int n);

struct CirclePoint {
  double radius = 0;
  double theta = 0;
  ComplexPair value;
};

/// Image of |ρ| = radius under Z, sampled at `points` equally spaced angles.
std::vector<CirclePoint> circle_image_z(double radius, int points);
/// Image of |z| = radius under the principal Lambert W (radius ≤ 1/e keeps the circle inside
/// the disc of convergence of the Mayer series).
std::vector<CirclePoint> circle_image_w(double radius, int points);
/// Principal-branch W on the complex plane minus (-∞, -1/e].
ComplexPair lambert_w_complex(ComplexPair z);

}  // namespace hard_sphere

struct FordValue {
  double P = 0;
  double F = 0;
  std::string branch;  ///< fluid, plateau or dense
};

/// Ford model on [0, 2): fluid branch log(1/(1-ρ)) on [0, 1/2), plateau log 2 on [1/2, 3/2),
/// dense branch log((ρ-1)/(2-ρ)²) on [3/2, 2), with the matching convex-envelope free energy.
FordValue ford_model(double rho);

struct LimitPressures {
  double t0 = 0;    ///< t → 0: ρ
  double eps0 = 0;  ///< ε → 0: ρ + tρ²/2
  double tinf = 0;  ///< t → ∞: -2ε log(1 - ρ/2ε)
};

LimitPressures limit_pressures(double t, double epsilon, double rho);

/// Q(t, z) = -W(-λz)/(λz), λ = (1 - e^{-2εt})/(2ε); needs eλ|z| < 1.
double mayer_majorant_Q(double t, double z, double epsilon);
/// Taylor coefficients of -W(-x)/x, exactly: (k+1)^k/(k+1)!.
std::vector<Rat> mayer_majorant_coefficients(int K);

}  // namespace virlab
