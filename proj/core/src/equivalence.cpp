#include "skrylov/equivalence.hpp"

#include <algorithm>
#include <cmath>

#include "skrylov/oracle.hpp"

namespace skrylov {

namespace {

double vec_sign_dev(const Vector& a, const Vector& b, double sign) {
    double dev = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) dev = std::max(dev, std::abs(a[i] - sign * b[i]));
    return dev;
}

double rel_scalar_dev(double value, double reference) {
    return std::abs(value - reference) / std::max(1.0, std::abs(reference));
}

}  // namespace

double GkLanczosReport::max_dev() const {
    return std::max({max_beta_dev, max_alpha_dev, max_u_dev, max_v_dev});
}

GkLanczosReport check_gk_lanczos_equivalence(const LinearOperator& s, const Vector& b, int steps,
                                             bool reorthogonalize) {
    if (s.structure() != Structure::skew)
        throw std::invalid_argument("check_gk_lanczos_equivalence: operator must be skew");
    ProcessOptions opts;
    opts.store_basis = true;
    opts.reorthogonalize = reorthogonalize;

    LanczosProcess lanczos(s, b, opts);
    for (int k = 0; k < 2 * steps && !lanczos.terminated(); ++k) lanczos.step();
    GolubKahanProcess gk(s, b, opts);
    for (int j = 0; j < steps && !gk.terminated(); ++j) gk.step();

    GkLanczosReport report;
    for (int j = 1; j <= steps; ++j) {
        const bool have_scalars = gk.alpha_count() >= j && gk.beta_count() >= j &&
                                  lanczos.gamma_count() >= 2 * j;
        if (!have_scalars) break;
        report.steps = j;
        const double beta_dev = rel_scalar_dev(gk.beta(j), lanczos.gamma(2 * j - 1));
        const double alpha_dev = rel_scalar_dev(gk.alpha(j), lanczos.gamma(2 * j));
        report.max_beta_dev = std::max(report.max_beta_dev, beta_dev);
        report.max_alpha_dev = std::max(report.max_alpha_dev, alpha_dev);
        double u_dev = 0.0, v_dev = 0.0;
        const double sign_u = (j % 2 == 1) ? 1.0 : -1.0;  // (-1)^{j-1}
        const double sign_v = (j % 2 == 0) ? 1.0 : -1.0;  // (-1)^j
        if (static_cast<int>(gk.basis_u().size()) >= j &&
            static_cast<int>(lanczos.basis().size()) >= 2 * j - 1)
            u_dev = vec_sign_dev(gk.basis_u()[static_cast<std::size_t>(j) - 1],
                                 lanczos.basis()[2 * static_cast<std::size_t>(j) - 2], sign_u);
        if (static_cast<int>(gk.basis_v().size()) >= j &&
            static_cast<int>(lanczos.basis().size()) >= 2 * j)
            v_dev = vec_sign_dev(gk.basis_v()[static_cast<std::size_t>(j) - 1],
                                 lanczos.basis()[2 * static_cast<std::size_t>(j) - 1], sign_v);
        report.max_u_dev = std::max(report.max_u_dev, u_dev);
        report.max_v_dev = std::max(report.max_v_dev, v_dev);
        report.per_step.push_back(std::max({beta_dev, alpha_dev, u_dev, v_dev}));
    }
    return report;
}

double SsyLanczosReport::max_dev() const {
    return std::max({max_theta, max_alpha_dev, max_beta_dev, max_u_dev, max_v_dev});
}

SsyLanczosReport check_ssy_lanczos_equivalence(const LinearOperator& s, const Vector& b, int steps,
                                               bool reorthogonalize) {
    if (s.structure() != Structure::skew)
        throw std::invalid_argument("check_ssy_lanczos_equivalence: operator must be skew");
    ProcessOptions opts;
    opts.store_basis = true;
    opts.reorthogonalize = reorthogonalize;

    LanczosProcess lanczos(s, b, opts);
    for (int k = 0; k < steps && !lanczos.terminated(); ++k) lanczos.step();
    SsyProcess ssy(s, b, b, opts);
    for (int k = 0; k < steps && !ssy.terminated(); ++k) ssy.step();

    SsyLanczosReport report;
    for (int k = 1; k <= steps; ++k) {
        if (ssy.theta_count() < k) break;
        report.steps = k;
        const double theta_dev = std::abs(ssy.theta(k));
        report.max_theta = std::max(report.max_theta, theta_dev);
        double alpha_dev = 0.0, beta_dev = 0.0, u_dev = 0.0, v_dev = 0.0;
        if (lanczos.gamma_count() >= k) {
            alpha_dev = rel_scalar_dev(ssy.alpha(k), lanczos.gamma(k));
            beta_dev = rel_scalar_dev(ssy.beta(k), lanczos.gamma(k));
        }
        if (static_cast<int>(ssy.basis_u().size()) >= k &&
            static_cast<int>(lanczos.basis().size()) >= k) {
            const Vector& w = lanczos.basis()[static_cast<std::size_t>(k) - 1];
            u_dev = vec_sign_dev(ssy.basis_u()[static_cast<std::size_t>(k) - 1], w, sign_d(k));
            v_dev =
                vec_sign_dev(ssy.basis_v()[static_cast<std::size_t>(k) - 1], w, sign_d_tilde(k));
        }
        report.max_alpha_dev = std::max(report.max_alpha_dev, alpha_dev);
        report.max_beta_dev = std::max(report.max_beta_dev, beta_dev);
        report.max_u_dev = std::max(report.max_u_dev, u_dev);
        report.max_v_dev = std::max(report.max_v_dev, v_dev);
        report.per_step.push_back(std::max({theta_dev, alpha_dev, beta_dev, u_dev, v_dev}));
    }
    return report;
}

ParityReport termination_parity(const LinearOperator& s, const Vector& b) {
    if (s.structure() != Structure::skew)
        throw std::invalid_argument("termination_parity: operator must be skew");
    ProcessOptions opts;
    opts.reorthogonalize = true;
    // Grade detection, not solver stepping: the recurrence noise at
    // exhaustion grows to ~1e-9 by n ~ 50 even with reorthogonalization,
    // while genuine gammas at desk scale stay above ~1e-4.
    opts.breakdown_tol = 1e-7;
    LanczosProcess lanczos(s, b, opts);
    while (!lanczos.terminated() && lanczos.steps() < s.n() + 2) lanczos.step();
    if (!lanczos.terminated())
        throw std::runtime_error("termination_parity: Lanczos failed to terminate");

    ParityReport report;
    report.ell = lanczos.grade();
    report.classification =
        report.ell % 2 == 0 ? Parity::even_in_range : Parity::odd_not_in_range;
    if (s.n() <= oracle::kMaxDenseDim) {
        const bool consistent = oracle::in_range(oracle::to_dense(s), b);
        report.oracle_consistent = consistent;
        report.agrees = consistent == (report.classification == Parity::even_in_range);
    }
    return report;
}

}  // namespace skrylov
