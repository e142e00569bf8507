#include "virlab/numerics.hpp"

#include <cmath>
#include <numbers>

#include "virlab/errors.hpp"

namespace virlab {

GaussRule gauss_legendre(int n) {
  if (n < 1) throw DomainError("Gauss-Legendre rule needs n >= 1");
  GaussRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    // Tricomi's initial guess, then Newton on P_n.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 1;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1;
      dp = n * (x * p1 - p0) / (x * x - 1);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    {
      double p0 = 1, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1);
    }
    const double w = 2.0 / ((1 - x * x) * dp * dp);
    // Descending x; store ascending on [0, 1].
    const auto idx = static_cast<std::size_t>(i);
    rule.nodes[idx] = (1 - x) / 2;
    rule.weights[idx] = w / 2;
  }
  return rule;
}

Extremum golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                            double tol) {
  const double g = (std::sqrt(5.0) - 1) / 2;
  double a = lo, b = hi;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol * std::max(1.0, std::abs(a) + std::abs(b))) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  const double x = (a + b) / 2;
  return {x, f(x)};
}

double bisect(const std::function<double(double)>& f, double lo, double hi, double tol,
              int max_iter) {
  double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0) return lo;
  if (fhi == 0) return hi;
  if ((flo < 0) == (fhi < 0)) throw NoRoot("bisection bracket does not change sign");
  for (int i = 0; i < max_iter && hi - lo > tol; ++i) {
    const double mid = lo + (hi - lo) / 2;
    const double fm = f(mid);
    if (fm == 0) return mid;
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return lo + (hi - lo) / 2;
}

}  // namespace virlab
