#pragma once

#include <functional>
#include <vector>

namespace virlab {

struct GaussRule {
  std::vector<double> nodes;    ///< on [0, 1], increasing
  std::vector<double> weights;  ///< sum to 1
};

/// n-point Gauss–Legendre rule mapped to [0, 1].
GaussRule gauss_legendre(int n);

struct Extremum {
  double x = 0;
  double value = 0;
};

/// Maximizer of a unimodal f on [lo, hi] by golden-section search.
Extremum golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                            double tol = 1e-12);

/// Root of f on [lo, hi] by bisection; f(lo) and f(hi) must differ in sign (NoRoot otherwise).
double bisect(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-15,
              int max_iter = 200);

}  // namespace virlab
