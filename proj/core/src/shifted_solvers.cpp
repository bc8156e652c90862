#include "skrylov/shifted_solvers.hpp"

#include <cmath>

#include "engines.hpp"
#include "skrylov/factorizations.hpp"
#include "skrylov/prng.hpp"

namespace skrylov {

namespace detail {

namespace {

ProcessOptions process_options(const SolverConfig& cfg) {
    ProcessOptions o;
    o.breakdown_tol = cfg.breakdown_tol;
    o.store_basis = cfg.store_basis;
    o.reorthogonalize = cfg.reorthogonalize;
    return o;
}

void require_nonzero_rhs(const Vector& b) {
    if (norm2(b) == 0.0) throw std::invalid_argument("solver: b must be nonzero");
}

struct Recorder {
    ConvergenceHistory* history;
    const LinearOperator* op;
    const Vector* b;
    const SolverConfig* cfg;
    StepTimer timer;

    void emit(int iter, const Vector& x, double estimate,
              std::optional<Vector> galerkin = std::nullopt, bool keep_galerkin = false) {
        IterationRecord rec;
        rec.iter = iter;
        rec.estimate_norm = estimate;
        rec.residual_norm = norm2(op->residual(*b, x));
        rec.elapsed_ns = timer.elapsed_ns();
        history->records.push_back(rec);
        if (cfg->store_iterates) history->iterates.push_back(x);
        if (keep_galerkin) history->galerkin_points.push_back(std::move(galerkin));
    }
};

}  // namespace

ConvergenceHistory minres_lanczos_engine(const LinearOperator& a, const Vector& b,
                                         const SolverConfig& cfg) {
    require_nonzero_rhs(b);
    const double alpha = a.shift();
    const int n = a.n();
    const int cap = cfg.iteration_cap(n);

    ConvergenceHistory history;
    Recorder rec{&history, &a, &b, &cfg, StepTimer{}};

    LanczosProcess proc(a, b, process_options(cfg));
    const double gamma1 = proc.gamma(1);

    Vector x = zeros(static_cast<std::size_t>(n));
    Vector p_prev1 = zeros(static_cast<std::size_t>(n));
    Vector p_prev2 = zeros(static_cast<std::size_t>(n));
    double delta_tilde = alpha;
    double psi_tilde = gamma1;
    double c_prev = 1.0;      // c_{k-1}
    double s_prev1 = 0.0;     // s_{k-1}
    double s_prev2 = 0.0;     // s_{k-2}

    history.outcome = Outcome::iteration_limit;
    history.detail = "iteration cap reached";

    for (int k = 1; k <= cap; ++k) {
        proc.step();
        const double gamma_next = proc.gamma(k + 1);  // exactly 0 at termination
        const double delta = std::hypot(delta_tilde, gamma_next);

        if (delta <= cfg.breakdown_tol * proc.breakdown_scale()) {
            // Terminal singular step of a singular skew system: the least
            // squares (pseudoinverse) solution was reached one step earlier
            // and the iterate stalls there.
            rec.emit(k, x, std::abs(psi_tilde));
            history.outcome = Outcome::converged;
            history.detail = "terminated at the pseudoinverse solution; system inconsistent";
            break;
        }

        const double c = delta_tilde / delta;
        const double s = gamma_next / delta;
        const double delta_tilde_next = alpha * c + gamma_next * c_prev * s;
        const double psi = c * psi_tilde;
        const double psi_tilde_next = -s * psi_tilde;

        // p_k = (w_k + gamma_k s_{k-2} p_{k-2}) / delta_k; the (k-1,k) entry
        // of the QR factor vanishes identically, so no p_{k-1} term appears.
        Vector p = proc.w_prev();
        if (k >= 3) axpy(proc.gamma(k) * s_prev2, p_prev2, p);
        scal(1.0 / delta, p);
        axpy(psi, p, x);

        if (cfg.store_basis) {
            history.diag_gamma.push_back(gamma_next);
            history.diag_c.push_back(c);
            history.diag_s.push_back(s);
        }

        rec.emit(k, x, std::abs(psi_tilde_next));

        if (std::abs(psi_tilde_next) <= cfg.tol * gamma1 || proc.terminated()) {
            history.outcome = Outcome::converged;
            history.detail = proc.terminated() && std::abs(psi_tilde_next) > cfg.tol * gamma1
                                 ? "process terminated"
                                 : "residual tolerance met";
            break;
        }

        psi_tilde = psi_tilde_next;
        delta_tilde = delta_tilde_next;
        s_prev2 = s_prev1;
        s_prev1 = s;
        c_prev = c;
        p_prev2 = std::move(p_prev1);
        p_prev1 = std::move(p);
    }

    history.solution = std::move(x);
    return history;
}

ConvergenceHistory lq_lanczos_engine(const LinearOperator& a, const Vector& b,
                                     const SolverConfig& cfg, bool even_only,
                                     bool emit_cg_points) {
    require_nonzero_rhs(b);
    const double alpha = a.shift();
    const int n = a.n();
    const int cap = cfg.iteration_cap(n);

    ConvergenceHistory history;
    Recorder rec{&history, &a, &b, &cfg, StepTimer{}};

    LanczosProcess proc(a, b, process_options(cfg));
    const double gamma1 = proc.gamma(1);

    Vector x = zeros(static_cast<std::size_t>(n));  // x_1
    Vector p_tilde = proc.w_curr();                 // p~_1 = w_1
    double delta_tilde = alpha;
    double c_prev1 = 1.0;  // c_{k-1}
    double s_prev1 = 0.0;  // s_{k-1}
    double s_prev2 = 0.0;
    double xi_prev1 = 0.0;  // xi_{k-1}
    double xi_prev2 = 0.0;

    struct Pending {
        int iter = 0;
        Vector x;
        std::optional<Vector> galerkin;
        bool active = false;
    } pending;

    history.outcome = Outcome::iteration_limit;
    history.detail = "iteration cap reached";

    for (int k = 1;; ++k) {
        proc.step();
        const double gamma_k = proc.gamma(k);
        const double gamma_next = proc.gamma(k + 1);

        // Residual of the pending iterate x_k (created last pass):
        // r_k = -eta_k xi_{k-2} w_k - eta_{k+1} xi_{k-1} w_{k+1}
        // with eta_k = gamma_k s_{k-2}; one term vanishes by parity.
        if (pending.active) {
            const double estimate =
                std::hypot(gamma_k * s_prev2 * xi_prev2, gamma_next * s_prev1 * xi_prev1);
            if (!even_only || pending.iter % 2 == 0)
                rec.emit(pending.iter, pending.x, estimate, std::move(pending.galerkin),
                         emit_cg_points);
            pending.active = false;
            if (estimate <= cfg.tol * gamma1) {
                history.outcome = Outcome::converged;
                history.detail = "residual tolerance met";
                x = std::move(pending.x);
                break;
            }
            if (pending.iter >= cap) {
                x = std::move(pending.x);
                break;  // iteration cap
            }
        }

        const double delta = std::hypot(delta_tilde, gamma_next);
        if (delta <= cfg.breakdown_tol * proc.breakdown_scale()) {
            // Odd-grade termination of a skew system: the projected system is
            // singular and the Galerkin sequence stops being defined.
            history.outcome = Outcome::not_applicable;
            history.detail = "Lanczos terminated at odd step " + std::to_string(k) +
                             ": b is outside ran(A), Galerkin point undefined";
            break;
        }

        const double c = delta_tilde / delta;
        const double s = -gamma_next / delta;
        const double delta_tilde_next = alpha * c - gamma_next * c_prev1 * s;
        const double xi = k == 1 ? gamma1 / delta : -gamma_k * s_prev2 * xi_prev2 / delta;

        Vector p = p_tilde;
        scal(c, p);
        axpy(s, proc.w_curr(), p);  // w_{k+1}; the zero vector at termination
        axpy(xi, p, x);             // x_{k+1} = x_k + xi_k p_k

        Vector p_tilde_next = proc.w_curr();
        scal(c, p_tilde_next);
        axpy(-s, p_tilde, p_tilde_next);

        if (cfg.store_basis) {
            history.diag_gamma.push_back(gamma_next);
            history.diag_c.push_back(c);
            history.diag_s.push_back(s);
            history.diag_xi.push_back(xi);
        }

        if (proc.terminated()) {
            // x_{k+1} solves the projected square system exactly.
            rec.emit(k + 1, x, 0.0,
                     emit_cg_points ? std::optional<Vector>(x) : std::nullopt, emit_cg_points);
            history.outcome = Outcome::converged;
            history.detail = "process terminated with the exact projected solution";
            break;
        }

        pending.active = true;
        pending.iter = k + 1;
        pending.x = x;
        if (emit_cg_points) {
            // Galerkin transfer x^G_{k+1} = x^L_{k+1} + xi~_{k+1} p~_{k+1},
            // xi~_{k+1} = -eta_{k+1} xi_{k-1} / delta~_{k+1}.
            if (std::abs(delta_tilde_next) > cfg.breakdown_tol * proc.breakdown_scale()) {
                const double xi_g = -(gamma_next * s_prev1) * xi_prev1 / delta_tilde_next;
                Vector xg = x;
                axpy(xi_g, p_tilde_next, xg);
                pending.galerkin = std::move(xg);
            } else {
                pending.galerkin = std::nullopt;  // flagged skip
            }
        }

        delta_tilde = delta_tilde_next;
        c_prev1 = c;
        s_prev2 = s_prev1;
        s_prev1 = s;
        xi_prev2 = xi_prev1;
        xi_prev1 = xi;
        p_tilde = std::move(p_tilde_next);
    }

    history.solution = std::move(x);
    return history;
}

}  // namespace detail

namespace {

// alpha < 0 is solved as (-A) x = (-b); iterates and residual norms are
// unchanged by the flip.
struct Oriented {
    LinearOperator a;
    Vector b;
};

Oriented orient(const LinearOperator& a, const Vector& b) {
    if (a.structure() != Structure::shifted_skew)
        throw std::invalid_argument("solver requires a shifted skew-symmetric operator");
    if (a.shift() > 0.0) return {a, b};
    Vector nb(b);
    scal(-1.0, nb);
    return {a.negated(), std::move(nb)};
}

}  // namespace

ConvergenceHistory s3cg_solve(const LinearOperator& a_in, const Vector& b_in,
                              const SolverConfig& cfg) {
    auto [a, b] = orient(a_in, b_in);
    detail::require_nonzero_rhs(b);
    const int n = a.n();
    const int cap = cfg.iteration_cap(n);

    ConvergenceHistory history;
    detail::StepTimer timer;

    Vector x = zeros(static_cast<std::size_t>(n));
    Vector r = b;
    Vector p = r;
    const double gamma1 = norm2(b);
    double rr_old = dot(r, r);

    history.outcome = Outcome::iteration_limit;
    history.detail = "iteration cap reached";

    for (int k = 1; k <= cap; ++k) {
        const Vector ap = a.apply(p);
        const double denom = dot(p, ap);
        if (!(denom > 0.0)) {
            history.outcome = Outcome::breakdown;
            history.detail = "nonpositive direction curvature p^T A p";
            break;
        }
        const double step = rr_old / denom;
        axpy(step, p, x);
        axpy(-step, ap, r);
        const double rr_new = dot(r, r);
        const double rnorm = std::sqrt(rr_new);

        IterationRecord rec;
        rec.iter = k;
        rec.estimate_norm = rnorm;
        rec.residual_norm = norm2(a.residual(b, x));
        rec.elapsed_ns = timer.elapsed_ns();
        history.records.push_back(rec);
        if (cfg.store_iterates) history.iterates.push_back(x);
        if (cfg.store_basis) {
            history.stored_residuals.push_back(r);
            history.stored_directions.push_back(p);
        }

        if (rnorm <= cfg.tol * gamma1) {
            history.outcome = Outcome::converged;
            history.detail = "residual tolerance met";
            break;
        }

        const double beta = -rr_new / rr_old;  // the sign is the whole difference from CG
        for (std::size_t i = 0; i < p.size(); ++i) p[i] = r[i] + beta * p[i];
        rr_old = rr_new;
    }

    history.solution = std::move(x);
    return history;
}

ConvergenceHistory s3mr_solve(const LinearOperator& a_in, const Vector& b_in,
                              const SolverConfig& cfg) {
    auto [a, b] = orient(a_in, b_in);
    return detail::minres_lanczos_engine(a, b, cfg);
}

ConvergenceHistory s3lq_solve(const LinearOperator& a_in, const Vector& b_in,
                              const SolverConfig& cfg, bool emit_cg_points) {
    auto [a, b] = orient(a_in, b_in);
    return detail::lq_lanczos_engine(a, b, cfg, /*even_only=*/false, emit_cg_points);
}

ConvergenceHistory usymqr_solve(const LinearOperator& a, const Vector& b, const Vector& c,
                                const SolverConfig& cfg) {
    detail::require_nonzero_rhs(b);
    detail::require_nonzero_rhs(c);
    const int n = a.n();
    const int cap = cfg.iteration_cap(n);

    ConvergenceHistory history;
    detail::Recorder rec{&history, &a, &b, &cfg, detail::StepTimer{}};

    SsyProcess proc(a, b, c, detail::process_options(cfg));
    const double beta1 = norm2(b);

    Vector x = zeros(static_cast<std::size_t>(n));
    Vector p_prev1 = zeros(static_cast<std::size_t>(n));
    Vector p_prev2 = zeros(static_cast<std::size_t>(n));
    double psi_tilde = beta1;
    double c_prev1 = 1.0, c_prev2 = 1.0;
    double s_prev1 = 0.0, s_prev2 = 0.0;

    history.outcome = Outcome::iteration_limit;
    history.detail = "iteration cap reached";

    for (int k = 1; k <= cap; ++k) {
        const Vector v_k = proc.v_curr();  // consumed before the process moves on
        const double alpha_k = proc.alpha(k);
        proc.step();
        const double theta_k = proc.theta(k);
        const double beta_next = proc.beta(k + 1);

        // Rotated column k of the tridiagonal projection.
        const double eps = k >= 3 ? s_prev2 * alpha_k : 0.0;
        const double sigma = k >= 2 ? c_prev1 * c_prev2 * alpha_k + s_prev1 * theta_k : 0.0;
        const double delta_tilde = k >= 2 ? -s_prev1 * c_prev2 * alpha_k + c_prev1 * theta_k
                                          : theta_k;
        const double delta = std::hypot(delta_tilde, beta_next);

        if (delta <= cfg.breakdown_tol * std::max(1.0, beta1)) {
            rec.emit(k, x, std::abs(psi_tilde));
            history.outcome = Outcome::breakdown;
            history.detail = "singular projected step; last iterate kept";
            break;
        }

        const double ck = delta_tilde / delta;
        const double sk = beta_next / delta;
        const double psi = ck * psi_tilde;
        const double psi_tilde_next = -sk * psi_tilde;

        Vector p = v_k;
        if (k >= 2) axpy(-sigma, p_prev1, p);
        if (k >= 3) axpy(-eps, p_prev2, p);
        scal(1.0 / delta, p);
        axpy(psi, p, x);

        rec.emit(k, x, std::abs(psi_tilde_next));

        if (std::abs(psi_tilde_next) <= cfg.tol * beta1) {
            history.outcome = Outcome::converged;
            history.detail = "residual tolerance met";
            break;
        }
        if (proc.terminated()) {
            history.outcome = proc.u_side_zero() ? Outcome::converged : Outcome::breakdown;
            history.detail = proc.u_side_zero()
                                 ? "process terminated"
                                 : "tridiagonalization exhausted (alpha side); last iterate kept";
            break;
        }

        psi_tilde = psi_tilde_next;
        c_prev2 = c_prev1;
        c_prev1 = ck;
        s_prev2 = s_prev1;
        s_prev1 = sk;
        p_prev2 = std::move(p_prev1);
        p_prev1 = std::move(p);
    }

    history.solution = std::move(x);
    return history;
}

ConvergenceHistory usymlq_solve(const LinearOperator& a, const Vector& b, const Vector& c,
                                const SolverConfig& cfg) {
    detail::require_nonzero_rhs(b);
    detail::require_nonzero_rhs(c);
    const int n = a.n();
    const int cap = cfg.iteration_cap(n);

    ConvergenceHistory history;
    detail::Recorder rec{&history, &a, &b, &cfg, detail::StepTimer{}};

    SsyProcess proc(a, b, c, detail::process_options(cfg));
    const double beta1 = norm2(b);

    Vector x = zeros(static_cast<std::size_t>(n));  // x_1
    Vector p_tilde = proc.v_curr();                 // p~_1 = v_1
    double c_prev1 = 1.0, c_prev2 = 1.0;
    double s_prev1 = 0.0, s_prev2 = 0.0;
    double xi_prev1 = 0.0, xi_prev2 = 0.0;
    double delta_tilde = 0.0;

    struct Pending {
        int iter = 0;
        Vector x;
        bool active = false;
    } pending;

    history.outcome = Outcome::iteration_limit;
    history.detail = "iteration cap reached";

    for (int k = 1;; ++k) {
        const double beta_k = proc.beta(k);
        proc.step();
        const double theta_k = proc.theta(k);
        const double beta_next = proc.beta(k + 1);
        const double alpha_next = proc.alpha(k + 1);

        delta_tilde = k == 1 ? theta_k : -s_prev1 * c_prev2 * beta_k + c_prev1 * theta_k;
        const double lambda_k = k >= 2 ? c_prev1 * c_prev2 * beta_k + s_prev1 * theta_k : 0.0;
        const double eta_k = k >= 3 ? s_prev2 * beta_k : 0.0;

        if (pending.active) {
            // ||r_k|| from the two trailing components of the rotated system.
            const double estimate = std::hypot(eta_k * xi_prev2 + lambda_k * xi_prev1,
                                               beta_next * s_prev1 * xi_prev1);
            rec.emit(pending.iter, pending.x, estimate);
            pending.active = false;
            if (estimate <= cfg.tol * beta1) {
                history.outcome = Outcome::converged;
                history.detail = "residual tolerance met";
                x = std::move(pending.x);
                break;
            }
            if (pending.iter >= cap) {
                x = std::move(pending.x);
                break;
            }
        }

        const double delta = std::hypot(delta_tilde, alpha_next);
        if (delta <= cfg.breakdown_tol * std::max(1.0, beta1)) {
            history.outcome = Outcome::breakdown;
            history.detail = "singular projected step; last iterate kept";
            break;
        }

        const double ck = delta_tilde / delta;
        const double sk = alpha_next / delta;
        const double xi =
            k == 1 ? beta1 / delta : -(eta_k * xi_prev2 + lambda_k * xi_prev1) / delta;

        Vector p = p_tilde;
        scal(ck, p);
        axpy(sk, proc.v_curr(), p);  // v_{k+1}; zero vector if that side vanished
        axpy(xi, p, x);

        Vector p_tilde_next = proc.v_curr();
        scal(ck, p_tilde_next);
        axpy(-sk, p_tilde, p_tilde_next);

        if (proc.terminated()) {
            const double res = norm2(a.residual(b, x));
            rec.emit(k + 1, x, res);
            const bool solved = res <= std::max(cfg.tol * beta1, 1e-8 * beta1);
            history.outcome = solved ? Outcome::converged : Outcome::breakdown;
            history.detail = solved ? "process terminated"
                                    : "tridiagonalization exhausted; last iterate kept";
            break;
        }

        pending.active = true;
        pending.iter = k + 1;
        pending.x = x;

        c_prev2 = c_prev1;
        c_prev1 = ck;
        s_prev2 = s_prev1;
        s_prev1 = sk;
        xi_prev2 = xi_prev1;
        xi_prev1 = xi;
        p_tilde = std::move(p_tilde_next);
    }

    history.solution = std::move(x);
    return history;
}

double error_bound(double alpha, double beta, int k, BoundKind kind) {
    if (alpha == 0.0) throw std::invalid_argument("error_bound: alpha must be nonzero");
    if (beta < 0.0 || k < 0) throw std::invalid_argument("error_bound: beta >= 0, k >= 0");
    const double ratio = beta / std::abs(alpha);
    const double s = std::sqrt(1.0 + ratio * ratio);
    const double base = kind == BoundKind::cg ? (s - 1.0) / (s + 1.0) : ratio / (s + 1.0);
    return 2.0 * std::pow(base, k);
}

SpectralEstimate estimate_spectral_interval(const LinearOperator& s) {
    if (s.structure() == Structure::general)
        throw std::invalid_argument("estimate_spectral_interval: operator must be skew");
    const int n = s.n();
    SpectralEstimate out;
    if (n == 0) {
        out.converged = true;
        return out;
    }

    if (s.skew_part_operator().frobenius_norm() == 0.0) {
        out.converged = true;
        return out;
    }

    // Power iteration on S^T S; for skew S the square root of its largest
    // eigenvalue is ||S||_2 = beta.
    Vector z = random_vector(static_cast<std::size_t>(n), 0x5eedULL);
    scal(1.0 / norm2(z), z);
    double lambda_prev = 0.0;
    const int max_iters = std::max(200, 40 * n);
    for (int it = 1; it <= max_iters; ++it) {
        // S^T S z = -S (S z); only the skew part participates.
        const Vector sz = s.apply_skew_part(z);
        Vector w = s.apply_skew_part(sz);
        scal(-1.0, w);
        const double lambda = norm2(w);
        out.iterations = it;
        if (lambda == 0.0) {
            // The start vector fell into the null space; reseed once.
            z = random_vector(static_cast<std::size_t>(n),
                              0x5eedULL + static_cast<std::uint64_t>(it));
            scal(1.0 / norm2(z), z);
            lambda_prev = 0.0;
            continue;
        }
        if (it > 1 && lambda_prev > 0.0 && std::abs(lambda - lambda_prev) <= 1e-6 * lambda) {
            out.beta = std::sqrt(lambda);
            out.converged = true;
            return out;
        }
        lambda_prev = lambda;
        scal(1.0 / lambda, w);
        z = std::move(w);
    }
    out.beta = std::sqrt(lambda_prev);
    out.converged = false;
    return out;
}

}  // namespace skrylov
