#pragma once

#include "skrylov/history.hpp"
#include "skrylov/operator.hpp"

namespace skrylov {

/// Galerkin solver for skew-symmetric A x = b, realized through the Lanczos
/// LQ factorization with zero shift. Only the even iterates x_2, x_4, ...
/// exist; they reach the pseudoinverse solution on consistent systems. An
/// odd-grade termination (b outside ran(A)) is reported as not_applicable
/// with the recorded iterates intact.
ConvergenceHistory s2cg_solve(const LinearOperator& a, const Vector& b,
                              const SolverConfig& cfg = {});

/// Minimum-residual solver for skew-symmetric A x = b (Givens QR of the skew
/// tridiagonal projection). Returns the pseudoinverse solution whether or not
/// the system is consistent.
ConvergenceHistory s2mr_solve(const LinearOperator& a, const Vector& b,
                              const SolverConfig& cfg = {});

/// Craig's method on the Golub-Kahan bidiagonalization: the minimum-error
/// iterates x_j = x_{j-1} + tau_j v_j with tau_1 = beta_1/alpha_1 and
/// tau_j = -beta_j tau_{j-1} / alpha_j. Breaks down (alpha side) on
/// inconsistent systems.
ConvergenceHistory craig_solve(const LinearOperator& a, const Vector& b,
                               const SolverConfig& cfg = {});

/// LSQR with the standard rotation scheme; converges to the pseudoinverse
/// solution for every system type.
ConvergenceHistory lsqr_solve(const LinearOperator& a, const Vector& b,
                              const SolverConfig& cfg = {});

}  // namespace skrylov
