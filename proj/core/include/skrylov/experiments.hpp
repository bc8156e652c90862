#pragma once

#include <cstdint>

#include "skrylov/operator.hpp"

namespace skrylov {

/// The three reference systems driven by the `experiment` CLI command.
struct ExperimentSystem {
    LinearOperator a;
    Vector b;
};

/// Singular consistent system: n = 49 unit-coefficient skew tridiagonal with
/// b = [1/sqrt(2), 0, ..., 0, -1/sqrt(2)]. The pseudoinverse solution
/// alternates 0 and 1/sqrt(2).
ExperimentSystem fig1_system();
/// Exact solution of the fig1 system.
Vector fig1_reference();

/// Singular inconsistent variant: same matrix, +1/sqrt(2) in the last entry.
ExperimentSystem fig2_system();

/// Shifted system: 225 x 225 convection operator (m = 15, sigma1 = 0.4,
/// sigma2 = 0.6) with alpha = 0.8 and a seeded random right-hand side.
ExperimentSystem fig3_system(std::uint64_t seed);

}  // namespace skrylov
