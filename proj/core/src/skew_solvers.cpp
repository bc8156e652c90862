#include "skrylov/skew_solvers.hpp"

#include <cmath>

#include "engines.hpp"
#include "skrylov/factorizations.hpp"

namespace skrylov {

namespace {

void require_skew(const LinearOperator& a, const char* who) {
    if (a.structure() != Structure::skew)
        throw std::invalid_argument(std::string(who) + " requires a skew-symmetric operator");
}

void require_square_structured(const LinearOperator& a, const char* who) {
    if (a.structure() == Structure::general)
        throw std::invalid_argument(std::string(who) +
                                    " requires a skew or shifted skew-symmetric operator");
}

ProcessOptions process_options(const SolverConfig& cfg) {
    ProcessOptions o;
    o.breakdown_tol = cfg.breakdown_tol;
    o.store_basis = cfg.store_basis;
    o.reorthogonalize = cfg.reorthogonalize;
    return o;
}

}  // namespace

ConvergenceHistory s2cg_solve(const LinearOperator& a, const Vector& b, const SolverConfig& cfg) {
    require_skew(a, "s2cg_solve");
    ConvergenceHistory history =
        detail::lq_lanczos_engine(a, b, cfg, /*even_only=*/true, /*emit_cg_points=*/false);
    if (history.outcome == Outcome::not_applicable)
        history.detail = "b is outside ran(A): the Galerkin iterates stop existing (odd "
                         "Lanczos grade); last even iterate kept";
    return history;
}

ConvergenceHistory s2mr_solve(const LinearOperator& a, const Vector& b, const SolverConfig& cfg) {
    require_skew(a, "s2mr_solve");
    return detail::minres_lanczos_engine(a, b, cfg);
}

ConvergenceHistory craig_solve(const LinearOperator& a, const Vector& b, const SolverConfig& cfg) {
    require_square_structured(a, "craig_solve");
    if (norm2(b) == 0.0) throw std::invalid_argument("craig_solve: b must be nonzero");
    const int n = a.n();
    const int cap = cfg.iteration_cap(n);

    ConvergenceHistory history;
    detail::StepTimer timer;

    GolubKahanProcess proc(a, b, process_options(cfg));
    const double beta1 = norm2(b);
    Vector x = zeros(static_cast<std::size_t>(n));

    if (proc.terminated()) {
        // alpha_1 = 0: b is orthogonal to ran(A) and no step exists.
        history.outcome = Outcome::breakdown;
        history.detail = "bidiagonalization broke down immediately (A^T b = 0): system inconsistent";
        history.solution = std::move(x);
        return history;
    }

    history.outcome = Outcome::iteration_limit;
    history.detail = "iteration cap reached";

    // A step with beta_j / alpha_j beyond this ratio means alpha_j is noise
    // from an exhausted bidiagonalization that slipped past the breakdown
    // threshold; treat it as the alpha-side breakdown it really is.
    constexpr double kAlphaNoiseRatio = 1e8;

    double tau = 0.0;
    for (int j = 1; j <= cap; ++j) {
        if (j >= 2 && proc.beta(j) > kAlphaNoiseRatio * proc.alpha(j)) {
            history.outcome = Outcome::breakdown;
            history.detail = "alpha-side breakdown: b is outside ran(A); last iterate kept";
            break;
        }
        // x_j = x_{j-1} + tau_j v_j with tau_1 = beta_1/alpha_1 and
        // tau_j = -beta_j tau_{j-1} / alpha_j.
        tau = j == 1 ? proc.beta(1) / proc.alpha(1) : -proc.beta(j) * tau / proc.alpha(j);
        axpy(tau, proc.v_curr(), x);

        proc.step();  // provides beta_{j+1} (or the termination flag)
        const double beta_next = proc.beta_count() >= j + 1 ? proc.beta(j + 1) : 0.0;
        const double estimate = std::abs(tau) * beta_next;  // ||b - A x_j||

        IterationRecord rec;
        rec.iter = j;
        rec.estimate_norm = estimate;
        rec.residual_norm = norm2(a.residual(b, x));
        rec.elapsed_ns = timer.elapsed_ns();
        history.records.push_back(rec);
        if (cfg.store_iterates) history.iterates.push_back(x);

        if (proc.terminated()) {
            if (proc.termination_side() == GolubKahanProcess::TerminationSide::beta_zero) {
                history.outcome = Outcome::converged;
                history.detail = "process terminated";
            } else {
                history.outcome = Outcome::breakdown;
                history.detail = "alpha-side breakdown: b is outside ran(A); last iterate kept";
            }
            break;
        }
        if (estimate <= cfg.tol * beta1) {
            history.outcome = Outcome::converged;
            history.detail = "residual tolerance met";
            break;
        }
    }

    history.solution = std::move(x);
    return history;
}

ConvergenceHistory lsqr_solve(const LinearOperator& a, const Vector& b, const SolverConfig& cfg) {
    if (norm2(b) == 0.0) throw std::invalid_argument("lsqr_solve: b must be nonzero");
    const int n = a.n();
    const int cap = cfg.iteration_cap(n);

    ConvergenceHistory history;
    detail::StepTimer timer;

    GolubKahanProcess proc(a, b, process_options(cfg));
    const double beta1 = norm2(b);
    Vector x = zeros(static_cast<std::size_t>(n));

    if (proc.terminated()) {
        // A^T b = 0: the zero vector already minimizes ||b - A x||.
        history.outcome = Outcome::converged;
        history.detail = "A^T b = 0: the zero vector is the least-squares solution";
        history.solution = std::move(x);
        return history;
    }

    history.outcome = Outcome::iteration_limit;
    history.detail = "iteration cap reached";

    const double a_fro = a.frobenius_norm();
    Vector w = proc.v_curr();
    double phi_bar = beta1;
    double rho_bar = proc.alpha(1);
    double max_step = 0.0;

    for (int j = 1; j <= cap; ++j) {
        proc.step();
        const double beta_next = proc.beta_count() >= j + 1 ? proc.beta(j + 1) : 0.0;

        const double rho = std::hypot(rho_bar, beta_next);
        const double cj = rho_bar / rho;
        const double sj = beta_next / rho;
        const double phi = cj * phi_bar;
        const double phi_bar_next = sj * phi_bar;

        // A suddenly exploding step means the rotation ran on exhaustion
        // noise; the least-squares solution is the previous iterate.
        if (j >= 2 && std::abs(phi / rho) > 1e8 * std::max(1.0, max_step)) {
            history.outcome = Outcome::converged;
            history.detail = "subspace exhausted; least-squares solution reached";
            break;
        }
        max_step = std::max(max_step, std::abs(phi / rho));

        axpy(phi / rho, w, x);

        IterationRecord rec;
        rec.iter = j;
        rec.estimate_norm = phi_bar_next;
        rec.residual_norm = norm2(a.residual(b, x));
        rec.elapsed_ns = timer.elapsed_ns();
        history.records.push_back(rec);
        if (cfg.store_iterates) history.iterates.push_back(x);

        if (phi_bar_next <= cfg.tol * beta1) {
            history.outcome = Outcome::converged;
            history.detail = "residual tolerance met";
            break;
        }
        if (proc.terminated()) {
            // beta side: the residual is zero and was caught above. alpha
            // side: the least-squares (pseudoinverse) solution is reached
            // with a nonzero final residual.
            history.outcome = Outcome::converged;
            history.detail = "terminated at the least-squares (pseudoinverse) solution";
            break;
        }

        const double alpha_next = proc.alpha(j + 1);
        // ||A^T r_j|| = phi_bar_{j+1} alpha_{j+1} |c_j|: once it is negligible
        // against ||A||_F the iterate is a least-squares solution even though
        // the residual itself cannot decrease further (inconsistent system).
        if (alpha_next * std::abs(cj) <= cfg.tol * a_fro) {
            history.outcome = Outcome::converged;
            history.detail = "normal-equations residual below tolerance: least-squares "
                             "(pseudoinverse) solution reached";
            break;
        }
        const double theta = sj * alpha_next;
        rho_bar = -cj * alpha_next;
        phi_bar = phi_bar_next;
        // w_{j+1} = v_{j+1} - (theta/rho) w_j
        Vector w_next = proc.v_curr();
        axpy(-theta / rho, w, w_next);
        w = std::move(w_next);
    }

    history.solution = std::move(x);
    return history;
}

}  // namespace skrylov
