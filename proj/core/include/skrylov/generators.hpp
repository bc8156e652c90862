#pragma once

#include "skrylov/operator.hpp"

namespace skrylov {

/// m x m skew-symmetric tridiagonal operator: sigma on the superdiagonal,
/// -sigma on the subdiagonal, zero diagonal.
LinearOperator make_tridiag_skew(int m, double sigma);

/// m^2 x m^2 skew operator I_m (x) T(sigma1) + T(sigma2) (x) I_m, the
/// finite-difference convection stencil on the unit square.
LinearOperator make_conv2d_skew(int m, double sigma1, double sigma2);

enum class RhsKind { consistent, inconsistent };

/// Unit-norm right-hand side [1/sqrt(2), 0, ..., 0, -+1/sqrt(2)]^T:
/// the consistent variant ends with -1/sqrt(2), the inconsistent with
/// +1/sqrt(2). Requires n >= 2.
Vector example_rhs(RhsKind kind, int n);

}  // namespace skrylov
