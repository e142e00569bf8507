#pragma once

#include <array>
#include <complex>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "virlab/formal_series.hpp"

namespace virlab {

/// Sampled (η, value) curve tagged with the bound it represents.
struct BoundCurve {
  std::string name;
  std::vector<std::pair<double, double>> samples;
  std::map<std::string, std::string> metadata;
};

/// Samples f on an increasing η grid inside [0, 1].
BoundCurve sample_curve(std::string name, const std::function<double(double)>& f,
                        const std::vector<double>& eta_grid);

/// Uniform grid 0, 1/n, ..., 1 in binary64.
std::vector<double> unit_grid(int n);

/// κ(η) = (2 + √(1-η) - 2√(1 - η/2 + √(1-η)))/(1+η).
double kappa(double eta);

/// Majorant H(r) = Σ c_k r^k as the branch of Ψ = u + 2Ψ² - uΨ, u = r - ηr², vanishing at 0,
/// with the four roots of the discriminant p(r) = η²r⁴ - 2ηr³ + (1+6η)r² - 6r + 1.
struct MajorantH {
  FormalSeries<Rat> series;
  /// r_{s,s'} = (1 + s√(1 - (12 + s'8√2)η))/(2η), ordered (--, -+, +-, ++). Complex when the
  /// radicand is negative; at η = 0 the two r_{+,·} roots are infinite.
  std::array<std::complex<double>, 4> roots;
  double smallest_positive = 0;
};

MajorantH majorant_h(const Rat& eta, int K);
/// r_{-,-}(η) alone, for η ∈ [0, 1]; the series is not needed for the curve.
double r_minus_minus(double eta);
/// The coefficients c_k(η) of H as exact polynomials in η.
CoeffSeq<EtaExpr> majorant_h_polynomials(int K);
/// p(r) for the discriminant above.
std::complex<double> majorant_h_discriminant(double eta, std::complex<double> r);

struct MajorantH1 {
  /// R_{σ,σ'} = (2 - σ'√(1-η) + 2σ√(1 - η/2 - σ'√(1-η)))/(1+η), ordered (--, -+, +-, ++).
  std::array<double, 4> roots;
  double smallest = 0;  ///< R_{-,-}
};

MajorantH1 majorant_h1(double eta);
/// Quartic whose roots are the R_{σ,σ'}: (1 - r² - ηr²)² - 8(r(1-r)² - ηr²(1-r)).
double majorant_h1_discriminant(double eta, double r);

/// Exact polynomial families of the positivity arguments, for index k ≥ 2.
///
/// P_k has coefficients p_{k,n} = Π_{j=1}^n (D-j+1)/(N-j) with D = (k-2)(k+1)/2 and
/// N = k(k+1)/2. Q_k = 1 - (1-η)P_k, T_k = Q_k + (k-1)(1-η)Q_{k+1} (T_2 = Q_2 = η, since the
/// correction term is absent at k = 2). R_k uses the same product with D = k(k-1)/2 and
/// L_k = (1 - (k-1)η/(k+1))R_k - 1. Coefficient lists are indexed by the power of η.
struct PolyFamily {
  int k = 0;
  int N = 0;
  int D_int = 0;
  int D_contra = 0;
  std::vector<Rat> P, Q, T, R, L;
  /// t_{k,n} with T_k = t_1 η - Σ_{n≥2} t_n η^n, from the general formula (also at k = 2).
  std::vector<Rat> t;
};

PolyFamily poly_family(int k);
/// Π_{j=1}^n (D-j+1)/(N-j)
Rat product_coefficient(int D, int N, int n);
/// Lower-bound constant for the coefficients t_{k,n}, k ≥ 3, 1 ≤ n ≤ D_int.
Rat t_lower_constant(int k, int n);
/// Exact evaluation of a coefficient list at η.
Rat eval_poly(const std::vector<Rat>& coeffs, const Rat& eta);

/// Principal branch W(x), x ≥ -1/e, by Halley iteration.
double lambert_w(double x);

struct LPBound {
  double R0 = 0;
  double w_star = 0;
};

/// max over w ∈ [0, 1) of ((1+κ)e^{-w} - 1)w/(κ²B).
LPBound lp_bounds(double kappa_stab, double B);

struct Threshold {
  double eta_star = 0;
  double epsilon_t_star = 0;      ///< -(log η*)/2
  double minus_log_eta_star = 0;  ///< -log η* = 2εt*
};

/// Solves R_{-,-}(η) = W(e^{-1}) on (0, 1).
Threshold threshold_solve();

}  // namespace virlab
