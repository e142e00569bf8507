#include "virlab/combinatorics.hpp"

#include <algorithm>
#include <numbers>
#include <vector>

#include "virlab/rat.hpp"

namespace virlab {

IntegerIdentity tree_split_identity(unsigned n) {
  IntegerIdentity out;
  mpz_class sum = 0;
  for (unsigned j = 1; j + 1 <= n; ++j) {
    mpz_class a, b;
    mpz_ui_pow_ui(a.get_mpz_t(), j, j - 1);
    mpz_ui_pow_ui(b.get_mpz_t(), n - j, n - j - 1);
    sum += binomial(n, j) * a * b;
  }
  out.lhs = mpq_class(sum, 2);
  out.lhs.canonicalize();
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), n, n - 2);
  out.rhs = mpq_class(r * (n - 1));
  return out;
}

double convolution_domination_margin(int n_max) {
  const double A = 3 / (2 * std::numbers::pi * std::numbers::pi);
  std::vector<double> c(static_cast<std::size_t>(n_max) + 1, 0.0);
  for (int i = 1; i <= n_max; ++i) c[static_cast<std::size_t>(i)] = A / (static_cast<double>(i) * i);
  double worst = -1e300;
  for (int n = 2; n <= n_max; ++n) {
    double s = 0;
    for (int l = 1; l <= n - 1; ++l) s += c[static_cast<std::size_t>(l)] * c[static_cast<std::size_t>(n - l)];
    worst = std::max(worst, s - c[static_cast<std::size_t>(n)]);
  }
  return worst;
}

}  // namespace virlab
