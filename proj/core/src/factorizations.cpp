#include "skrylov/factorizations.hpp"

#include <cmath>

namespace skrylov {

namespace {

// Twice-iterated classical Gram-Schmidt against the stored columns.
void reorthogonalize(Vector& z, const std::vector<Vector>& basis) {
    for (int pass = 0; pass < 2; ++pass)
        for (const Vector& w : basis) axpy(-dot(w, z), w, z);
}

}  // namespace

LanczosProcess::LanczosProcess(const LinearOperator& op, const Vector& b, ProcessOptions options)
    : op_(&op), options_(options) {
    if (options_.reorthogonalize) options_.store_basis = true;
    if (op.structure() == Structure::general)
        throw std::invalid_argument("LanczosProcess: operator must be skew or shifted-skew");
    if (static_cast<int>(b.size()) != op.n())
        throw DimensionMismatch(static_cast<std::size_t>(op.n()), b.size());

    const double gamma1 = norm2(b);
    scale_ = std::max(1.0, gamma1);
    w_prev_ = zeros(b.size());
    if (gamma1 <= options_.breakdown_tol * scale_) {
        gammas_.push_back(0.0);
        w_curr_ = zeros(b.size());
        terminated_ = true;  // grade 0: b = 0
        return;
    }
    gammas_.push_back(gamma1);
    w_curr_ = scaled(b, 1.0 / gamma1);
    if (options_.store_basis) basis_.push_back(w_curr_);
}

int LanczosProcess::grade() const {
    if (!terminated_) throw std::logic_error("LanczosProcess: grade requested before termination");
    return k_;
}

bool LanczosProcess::step() {
    if (terminated_) throw std::logic_error("LanczosProcess: step after termination");
    const int k = k_ + 1;
    Vector z = op_->apply_skew_part(w_curr_);
    if (k >= 2) axpy(gammas_[static_cast<std::size_t>(k) - 1], w_prev_, z);
    if (options_.reorthogonalize) reorthogonalize(z, basis_);

    const double gamma_next = norm2(z);
    scale_ = std::max(scale_, gamma_next);
    k_ = k;
    if (gamma_next <= options_.breakdown_tol * scale_) {
        gammas_.push_back(0.0);
        w_prev_ = w_curr_;
        w_curr_ = zeros(z.size());
        terminated_ = true;
        return false;
    }
    gammas_.push_back(gamma_next);
    scal(1.0 / gamma_next, z);
    w_prev_ = std::move(w_curr_);
    w_curr_ = std::move(z);
    if (options_.store_basis) basis_.push_back(w_curr_);
    return true;
}

GolubKahanProcess::GolubKahanProcess(const LinearOperator& op, const Vector& b,
                                     ProcessOptions options)
    : op_(&op), options_(options) {
    if (options_.reorthogonalize) options_.store_basis = true;
    if (static_cast<int>(b.size()) != op.n())
        throw DimensionMismatch(static_cast<std::size_t>(op.n()), b.size());

    const double beta1 = norm2(b);
    if (beta1 == 0.0) throw std::invalid_argument("GolubKahanProcess: b must be nonzero");
    scale_ = std::max(1.0, beta1);
    betas_.push_back(beta1);
    u_curr_ = scaled(b, 1.0 / beta1);
    if (options_.store_basis) basis_u_.push_back(u_curr_);

    Vector z = op_->apply_transpose(u_curr_);
    const double alpha1 = norm2(z);
    scale_ = std::max(scale_, alpha1);
    if (alpha1 <= options_.breakdown_tol * scale_) {
        alphas_.push_back(0.0);
        v_curr_ = zeros(b.size());
        side_ = TerminationSide::alpha_zero;  // k0 = 0: b is orthogonal to ran(A)
        return;
    }
    alphas_.push_back(alpha1);
    scal(1.0 / alpha1, z);
    v_curr_ = std::move(z);
    if (options_.store_basis) basis_v_.push_back(v_curr_);
}

int GolubKahanProcess::k0() const {
    if (side_ == TerminationSide::none)
        throw std::logic_error("GolubKahanProcess: k0 requested before termination");
    return j_;
}

double GolubKahanProcess::normalize(Vector& z, std::vector<Vector>& basis) {
    if (options_.reorthogonalize) reorthogonalize(z, basis);
    return norm2(z);
}

bool GolubKahanProcess::step() {
    if (terminated()) throw std::logic_error("GolubKahanProcess: step after termination");
    const int j = j_ + 1;

    Vector zu = op_->apply(v_curr_);
    axpy(-alphas_[static_cast<std::size_t>(j) - 1], u_curr_, zu);
    const double beta_next = normalize(zu, basis_u_);
    scale_ = std::max(scale_, beta_next);
    j_ = j;
    if (beta_next <= options_.breakdown_tol * scale_) {
        betas_.push_back(0.0);
        side_ = TerminationSide::beta_zero;
        return false;
    }
    betas_.push_back(beta_next);
    scal(1.0 / beta_next, zu);
    u_curr_ = std::move(zu);
    if (options_.store_basis) basis_u_.push_back(u_curr_);

    Vector zv = op_->apply_transpose(u_curr_);
    axpy(-beta_next, v_curr_, zv);
    const double alpha_next = normalize(zv, basis_v_);
    scale_ = std::max(scale_, alpha_next);
    if (alpha_next <= options_.breakdown_tol * scale_) {
        alphas_.push_back(0.0);
        side_ = TerminationSide::alpha_zero;
        return false;
    }
    alphas_.push_back(alpha_next);
    scal(1.0 / alpha_next, zv);
    v_curr_ = std::move(zv);
    if (options_.store_basis) basis_v_.push_back(v_curr_);
    return true;
}

SsyProcess::SsyProcess(const LinearOperator& op, const Vector& b, const Vector& c,
                       ProcessOptions options)
    : op_(&op), options_(options) {
    if (options_.reorthogonalize) options_.store_basis = true;
    if (static_cast<int>(b.size()) != op.n())
        throw DimensionMismatch(static_cast<std::size_t>(op.n()), b.size());
    if (static_cast<int>(c.size()) != op.n())
        throw DimensionMismatch(static_cast<std::size_t>(op.n()), c.size());

    const double beta1 = norm2(b);
    const double alpha1 = norm2(c);
    if (beta1 == 0.0 || alpha1 == 0.0)
        throw std::invalid_argument("SsyProcess: b and c must be nonzero");
    scale_ = std::max({1.0, beta1, alpha1});
    betas_.push_back(beta1);
    alphas_.push_back(alpha1);
    u_prev_ = zeros(b.size());
    v_prev_ = zeros(b.size());
    u_curr_ = scaled(b, 1.0 / beta1);
    v_curr_ = scaled(c, 1.0 / alpha1);
    if (options_.store_basis) {
        basis_u_.push_back(u_curr_);
        basis_v_.push_back(v_curr_);
    }
}

bool SsyProcess::step() {
    if (terminated()) throw std::logic_error("SsyProcess: step after termination");
    const int k = k_ + 1;
    const double alpha_k = alphas_[static_cast<std::size_t>(k) - 1];
    const double beta_k = betas_[static_cast<std::size_t>(k) - 1];

    Vector q = op_->apply(v_curr_);
    axpy(-alpha_k, u_prev_, q);
    const double theta = dot(u_curr_, q);
    thetas_.push_back(theta);
    axpy(-theta, u_curr_, q);
    if (options_.reorthogonalize) reorthogonalize(q, basis_u_);

    Vector zv = op_->apply_transpose(u_curr_);
    axpy(-beta_k, v_prev_, zv);
    axpy(-theta, v_curr_, zv);
    if (options_.reorthogonalize) reorthogonalize(zv, basis_v_);

    const double beta_next = norm2(q);
    const double alpha_next = norm2(zv);
    scale_ = std::max({scale_, beta_next, alpha_next});
    k_ = k;

    u_side_zero_ = beta_next <= options_.breakdown_tol * scale_;
    v_side_zero_ = alpha_next <= options_.breakdown_tol * scale_;

    if (u_side_zero_) {
        betas_.push_back(0.0);
        u_prev_ = u_curr_;
        u_curr_ = zeros(q.size());
    } else {
        betas_.push_back(beta_next);
        scal(1.0 / beta_next, q);
        u_prev_ = std::move(u_curr_);
        u_curr_ = std::move(q);
        if (options_.store_basis) basis_u_.push_back(u_curr_);
    }

    if (v_side_zero_) {
        alphas_.push_back(0.0);
        v_prev_ = v_curr_;
        v_curr_ = zeros(zv.size());
    } else {
        alphas_.push_back(alpha_next);
        scal(1.0 / alpha_next, zv);
        v_prev_ = std::move(v_curr_);
        v_curr_ = std::move(zv);
        if (options_.store_basis) basis_v_.push_back(v_curr_);
    }
    return !terminated();
}

std::vector<double> lanczos_rect_matrix(const std::vector<double>& gammas, int k) {
    if (k < 1 || static_cast<int>(gammas.size()) < k + 1)
        throw std::invalid_argument("lanczos_rect_matrix: need gamma_1..gamma_{k+1}");
    std::vector<double> h(static_cast<std::size_t>(k + 1) * static_cast<std::size_t>(k), 0.0);
    auto at = [&](int i, int j) -> double& {
        return h[static_cast<std::size_t>(i) * static_cast<std::size_t>(k) +
                 static_cast<std::size_t>(j)];
    };
    for (int j = 0; j < k; ++j) {
        if (j - 1 >= 0) at(j - 1, j) = -gammas[static_cast<std::size_t>(j)];
        if (j + 1 <= k) at(j + 1, j) = gammas[static_cast<std::size_t>(j) + 1];
    }
    return h;
}

}  // namespace skrylov
