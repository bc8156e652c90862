#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "skrylov/vec.hpp"

namespace skrylov {

struct SolverConfig {
    /// Convergence: residual estimate <= tol * ||b||.
    double tol = 1e-10;
    /// Iteration cap; 0 means the default 4n.
    int max_iters = 0;
    double breakdown_tol = 1e-13;
    /// Retain process bases / solver directions and residuals for inspection.
    bool store_basis = false;
    /// Full reorthogonalization of the underlying process.
    bool reorthogonalize = false;
    /// Keep a copy of every iterate in the history.
    bool store_iterates = false;
    /// Seed for generated right-hand sides (recorded in CSV output).
    std::uint64_t seed = 0;

    int iteration_cap(int n) const { return max_iters > 0 ? max_iters : 4 * n; }
};

enum class Outcome {
    converged,        // tolerance met, or process termination delivered the solution
    not_applicable,   // the method does not apply to this system (odd-grade skew case)
    breakdown,        // process broke down before a solution was reached
    iteration_limit,  // cap hit without convergence
};

const char* outcome_name(Outcome o);

struct IterationRecord {
    int iter = 0;
    double residual_norm = 0.0;         // directly computed ||b - A x||
    std::optional<double> error_norm;   // against a reference solution, when set
    double estimate_norm = 0.0;         // the solver's own cheap estimate
    std::int64_t elapsed_ns = 0;        // since the start of the solve
};

struct ConvergenceHistory {
    std::vector<IterationRecord> records;
    Vector solution;
    Outcome outcome = Outcome::converged;
    std::string detail;  // human-readable outcome qualifier

    /// Iterates parallel to records (store_iterates).
    std::vector<Vector> iterates;
    /// Galerkin transfer points parallel to records (S3LQ with emit_cg_points);
    /// empty at records where the transfer is undefined.
    std::vector<std::optional<Vector>> galerkin_points;

    /// Test-build extras, populated when store_basis is set.
    std::vector<Vector> stored_residuals;   // CG-type solvers
    std::vector<Vector> stored_directions;  // CG-type solvers
    std::vector<double> diag_gamma, diag_c, diag_s, diag_xi;  // LQ solvers

    bool converged() const { return outcome == Outcome::converged; }
    int final_iter() const { return records.empty() ? 0 : records.back().iter; }
};

/// Fills record.error_norm = ||x_k - reference|| from stored iterates.
void fill_error_norms(ConvergenceHistory& history, const Vector& reference);

}  // namespace skrylov
