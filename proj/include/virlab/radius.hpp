#pragma once

#include <span>
#include <vector>

namespace virlab {

enum class RadiusMethod { ratio, domb_sykes };

struct RadiusEstimate {
  double estimate = 0;               ///< radius of convergence
  std::vector<double> partial;       ///< per-index estimates |a_{n-1}/a_n|, for inspection
  double slope = 0;                  ///< Domb–Sykes fit slope (0 for the ratio method)
  int points_used = 0;
};

/// Radius of convergence of Σ a_n x^n from its trailing coefficients.
/// `seq[i]` is a_{first_index + i}. The ratio method returns the last |a_{n-1}/a_n|;
/// Domb–Sykes fits a_n/a_{n-1} linearly against 1/n over the last half of the sequence
/// and returns the reciprocal of the intercept.
RadiusEstimate radius_estimate(std::span<const double> seq, RadiusMethod method,
                               int first_index = 1);

}  // namespace virlab
