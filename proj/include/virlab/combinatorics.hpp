#pragma once

#include <gmpxx.h>

namespace virlab {

/// Both sides of the tree-counting identity
///   (1/2) Σ_{j=1}^{n-1} C(n,j) j^{j-1} (n-j)^{n-j-1} = (n-1) n^{n-2}.
struct IntegerIdentity {
  mpq_class lhs, rhs;
};
IntegerIdentity tree_split_identity(unsigned n);

/// Largest (c∗c)_n - c_n over 2 ≤ n ≤ n_max for c_i = A d^i / i², A = 3/(2π²), d = 1.
/// A nonpositive value means the sequence dominates its own convolution.
double convolution_domination_margin(int n_max);

}  // namespace virlab
