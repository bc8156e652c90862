#pragma once

// Internal solver engines shared by the skew (alpha = 0) and shifted
// (alpha != 0) Lanczos-based solvers. Not installed.

#include <chrono>

#include "skrylov/history.hpp"
#include "skrylov/operator.hpp"

namespace skrylov::detail {

class StepTimer {
public:
    StepTimer() : start_(std::chrono::steady_clock::now()) {}
    std::int64_t elapsed_ns() const {
        return std::chrono::duration_cast<std::chrono::nanoseconds>(
                   std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

/// Minimum-residual engine: Givens QR of the (k+1) x k tridiagonal projection
/// of alpha*I + S. The operator must be skew (alpha = 0) or shifted-skew.
ConvergenceHistory minres_lanczos_engine(const LinearOperator& a, const Vector& b,
                                         const SolverConfig& cfg);

/// LQ engine: Givens LQ of the (k-1) x k projection. Produces the LQ points;
/// with even_only only even iterate indices are recorded (the skew Galerkin
/// solver), and with emit_cg_points the Galerkin transfer point accompanies
/// each record.
ConvergenceHistory lq_lanczos_engine(const LinearOperator& a, const Vector& b,
                                     const SolverConfig& cfg, bool even_only, bool emit_cg_points);

}  // namespace skrylov::detail
