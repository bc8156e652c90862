#pragma once

#include "skrylov/history.hpp"
#include "skrylov/operator.hpp"

namespace skrylov {

/// Conjugate-gradient-type Galerkin solver for A = alpha*I + S, alpha != 0.
/// Identical to CG except that the direction-update coefficient carries a
/// minus sign. A negative alpha is handled by solving (-A) x = -b.
ConvergenceHistory s3cg_solve(const LinearOperator& a, const Vector& b,
                              const SolverConfig& cfg = {});

/// Minimum-residual solver for shifted skew-symmetric systems: Givens QR of
/// the shifted tridiagonal projection with a two-vector direction window.
/// The residual norm equals |psi~_{k+1}| and is strictly decreasing.
ConvergenceHistory s3mr_solve(const LinearOperator& a, const Vector& b,
                              const SolverConfig& cfg = {});

/// LQ solver for shifted skew-symmetric systems: each iterate has minimum
/// norm subject to orthogonality of the residual against the previous Krylov
/// space, and the error norm decreases monotonically. With emit_cg_points the
/// Galerkin point x^G_k = x^L_k + xi~_k p~_k is recorded alongside each
/// iterate (skipped, flagged, where its diagonal vanishes).
ConvergenceHistory s3lq_solve(const LinearOperator& a, const Vector& b,
                              const SolverConfig& cfg = {}, bool emit_cg_points = false);

/// USYMQR: minimum-residual solver on the Saunders-Simon-Yip
/// tridiagonalization of (A, b, c). For shifted skew-symmetric A and c = b it
/// produces the S3MR iterates.
ConvergenceHistory usymqr_solve(const LinearOperator& a, const Vector& b, const Vector& c,
                                const SolverConfig& cfg = {});

/// USYMLQ: LQ solver on the Saunders-Simon-Yip tridiagonalization. For
/// shifted skew-symmetric A and c = b it produces the S3LQ iterates.
ConvergenceHistory usymlq_solve(const LinearOperator& a, const Vector& b, const Vector& c,
                                const SolverConfig& cfg = {});

/// Convergence bound for the Galerkin (cg) and minimum-residual (mr)
/// families, where i[-beta, beta] covers the spectrum of S:
///   cg: 2 ((sqrt(1+(beta/alpha)^2) - 1) / (sqrt(1+(beta/alpha)^2) + 1))^k
///   mr: 2 ((beta/|alpha|) / (sqrt(1+(beta/alpha)^2) + 1))^k
enum class BoundKind { cg, mr };
double error_bound(double alpha, double beta, int k, BoundKind kind);

/// ||S||_2 (= the spectral half-interval beta) by power iteration on S^T S,
/// to 1e-6 relative. `converged` is false when the iteration cap was hit, in
/// which case beta is the best estimate so far.
struct SpectralEstimate {
    double beta = 0.0;
    bool converged = false;
    int iterations = 0;
};
SpectralEstimate estimate_spectral_interval(const LinearOperator& s);

}  // namespace skrylov
