#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "virlab/coeff_seq.hpp"
#include "virlab/eta_expr.hpp"

namespace virlab {

struct ModelParams {
  Rat epsilon{1, 2};
  int K = 16;
  std::optional<Rat> eta;   ///< exact time, η = e^{-2εt}
  std::optional<double> t;  ///< float time; ignored when eta is set
};

enum class CoeffKind { gamma, delta, beta, q, c, b };

const char* to_string(CoeffKind kind);

/// Exact virial-side coefficients as functions of η.
///
/// γ_k and β_k carry the factor (2ε)^{-k} for ε ≠ 1/2; δ_k is ε-free.
struct VirialExact {
  Rat epsilon{1, 2};
  CoeffSeq<EtaExpr> gamma, delta, beta;
};

/// Exact Mayer-side coefficients: q_k (base 0), c_k (base 0) and b_k = q_{k-1}/k (base 1).
struct MayerExact {
  Rat epsilon{1, 2};
  CoeffSeq<EtaExpr> q, c, b;
};

VirialExact virial_exact(const ModelParams& params);
MayerExact mayer_exact(const ModelParams& params);

enum class Side { virial, mayer };

/// Float trajectories sampled on a time grid.
struct NumericTrajectory {
  Side side = Side::virial;
  double epsilon = 0.5;
  int K = 0;
  std::vector<double> times;
  /// primary[k][i]: γ_k (virial, k ≥ 1) or q_k (Mayer, k ≥ 0) at times[i]. Row 0 is unused
  /// on the virial side.
  std::vector<std::vector<double>> primary;
  /// normalized[k][i]: δ_k = γ_k/λ^k or c_k = (-1)^k q_k/λ^k, with the t → 0 limit at t = 0.
  std::vector<std::vector<double>> normalized;
  int panels = 0;
};

struct QuadratureOptions {
  int nodes = 16;             ///< Gauss–Legendre points per panel
  double tolerance = 1e-13;   ///< step-doubling tolerance, relative to max(1, |value|)
  double max_panel = 0.25;
  long panel_budget = 2'000'000;
};

/// Variation-of-constants integration panel by panel: on each panel the forcing term is
/// interpolated at Gauss–Legendre nodes and the exponential kernel is integrated against it,
/// so the stiff linear part is never stepped explicitly. Panel widths adapt by step doubling.
NumericTrajectory numeric_trajectories(const ModelParams& params, const std::vector<double>& t_grid,
                                       Side side, const QuadratureOptions& options = {});

/// Small-time behaviour: δ̇_k(0) = (-1)^{k+1}kε and the closed-form approximant
/// φ(t, ρ) ≈ -tρ - (t²ρ²/(1+tρ))εt.
struct SmallTimeAsymptotics {
  CoeffSeq<Rat> slopes;  ///< base 1, slopes[1] = 0 since δ_1 ≡ -1
  std::function<double(double rho, double t)> pade_form;
};

SmallTimeAsymptotics asymptotic_smallt(int K, const Rat& epsilon);

/// δ̇_k(0) from the exact expression: the symbolic t-derivative at η = 1, scaled by 2ε.
Rat delta_slope_at_origin(const EtaExpr& delta_k, const Rat& epsilon);

struct StationaryLimit {
  CoeffSeq<Rat> gamma_inf;  ///< γ̃_k = -(2ε)^{-k}
  CoeffSeq<Rat> residual;   ///< γ̃_k + h_k(γ̃)/ε, identically zero
  std::function<double(double rho)> phi0;
  std::function<double(double rho)> P0;
  /// ρ/2 + εψ₀/(1-ψ₀) with ψ₀ = -(ρ/2ε)/(1-ρ/2ε).
  std::function<double(double rho)> psi0_residual;
};

StationaryLimit stationary_limit(int K, const Rat& epsilon);

struct AppendixDConstants {
  double delta = 0;
  double B = 0;
  double A = 0;
  std::function<bool(double t, double abs_z)> domain_check;
};

/// Majorant constants for a Mayer-type equation whose coefficients obey
/// |A_{n,m}| ≤ C(tη_c)^{n+m-1}: δ = 1/η_c + C/ε - √(2/η_c + C²/ε²), B = (δA²)^{-1},
/// A = 3/(2π²), and the convergence domain B·max(1,t)·e^{-ε(1+a)t}|z| < 1.
AppendixDConstants appendix_d_constants(const Rat& C, const Rat& epsilon, const Rat& eta_const,
                                        const Rat& a);

/// Location of the first interior maximum of δ_n(t) on [0, t_max], by a coarse scan followed
/// by golden-section refinement. Returns nullopt if δ_n has no interior maximum there.
struct PeakReport {
  double t = 0;
  double value = 0;
};
std::optional<PeakReport> delta_peak(const EtaExpr& delta_n, double epsilon, double t_max);

}  // namespace virlab
