#pragma once

#include "skrylov/operator.hpp"

namespace skrylov {

struct ProcessOptions {
    /// A normalization candidate counts as zero when its norm is at most
    /// breakdown_tol * max(1, ||b||, largest normalization seen so far).
    double breakdown_tol = 1e-13;
    bool store_basis = false;
    /// Twice-iterated Gram-Schmidt against all stored vectors; implies
    /// store_basis. Meant for the equivalence checkers, not the solvers.
    bool reorthogonalize = false;
};

/// Lanczos tridiagonalization of a skew operator S from a nonzero b:
///   gamma_1 w_1 := b,  gamma_{k+1} w_{k+1} := S w_k + gamma_k w_{k-1}.
/// step() advances one k and reports termination (gamma_{k+1} = 0), after
/// which the grade() is the final step index and w_curr() is the zero vector.
class LanczosProcess {
public:
    LanczosProcess(const LinearOperator& op, const Vector& b, ProcessOptions options = {});

    bool step();
    bool terminated() const { return terminated_; }
    /// Number of recurrence steps taken so far.
    int steps() const { return k_; }
    /// The final step index l; valid once terminated.
    int grade() const;

    /// gamma_1 .. gamma_{k+1}; gamma(j) is 1-based. The terminal value is
    /// clamped to exactly zero.
    double gamma(int j) const { return gammas_.at(static_cast<std::size_t>(j) - 1); }
    int gamma_count() const { return static_cast<int>(gammas_.size()); }
    const std::vector<double>& gammas() const { return gammas_; }

    const Vector& w_curr() const { return w_curr_; }
    const Vector& w_prev() const { return w_prev_; }
    /// Stored columns w_1..w_k (store_basis only; the terminal zero vector is
    /// not stored).
    const std::vector<Vector>& basis() const { return basis_; }

    double breakdown_scale() const { return scale_; }

private:
    const LinearOperator* op_;
    ProcessOptions options_;
    int k_ = 0;
    bool terminated_ = false;
    double scale_ = 1.0;
    std::vector<double> gammas_;
    Vector w_prev_, w_curr_;
    std::vector<Vector> basis_;
};

/// Golub-Kahan bidiagonalization of a square operator A from nonzero b:
///   beta_1 u_1 := b,  alpha_1 v_1 := A^T u_1,
///   beta_{j+1} u_{j+1} := A v_j - alpha_j u_j,
///   alpha_{j+1} v_{j+1} := A^T u_{j+1} - beta_{j+1} v_j.
/// Terminates on the first vanishing normalization; which side vanished
/// distinguishes consistent (beta) from inconsistent (alpha) systems.
class GolubKahanProcess {
public:
    enum class TerminationSide { none, alpha_zero, beta_zero };

    GolubKahanProcess(const LinearOperator& op, const Vector& b, ProcessOptions options = {});

    bool step();
    bool terminated() const { return side_ != TerminationSide::none; }
    TerminationSide termination_side() const { return side_; }
    /// Final step count k0; valid once terminated.
    int k0() const;
    int steps() const { return j_; }

    /// 1-based scalar access. After termination the vanished entry reads 0.
    double alpha(int j) const { return alphas_.at(static_cast<std::size_t>(j) - 1); }
    double beta(int j) const { return betas_.at(static_cast<std::size_t>(j) - 1); }
    int alpha_count() const { return static_cast<int>(alphas_.size()); }
    int beta_count() const { return static_cast<int>(betas_.size()); }

    const Vector& u_curr() const { return u_curr_; }
    const Vector& v_curr() const { return v_curr_; }
    const std::vector<Vector>& basis_u() const { return basis_u_; }
    const std::vector<Vector>& basis_v() const { return basis_v_; }

private:
    const LinearOperator* op_;
    ProcessOptions options_;
    int j_ = 0;
    TerminationSide side_ = TerminationSide::none;
    double scale_ = 1.0;
    std::vector<double> alphas_, betas_;
    Vector u_curr_, v_curr_;
    std::vector<Vector> basis_u_, basis_v_;

    double normalize(Vector& z, std::vector<Vector>& against);
};

/// Saunders-Simon-Yip tridiagonalization of A from nonzero b and c:
///   beta_1 u_1 := b,  alpha_1 v_1 := c,
///   q := A v_k - alpha_k u_{k-1},  theta_k := u_k^T q,
///   beta_{k+1} u_{k+1} := q - theta_k u_k,
///   alpha_{k+1} v_{k+1} := A^T u_k - beta_k v_{k-1} - theta_k v_k.
/// Both updates of step k are performed even if one normalization vanishes,
/// so the trailing scalars stay available to the USYM solvers.
class SsyProcess {
public:
    SsyProcess(const LinearOperator& op, const Vector& b, const Vector& c,
               ProcessOptions options = {});

    bool step();
    bool terminated() const { return u_side_zero_ || v_side_zero_; }
    bool u_side_zero() const { return u_side_zero_; }
    bool v_side_zero() const { return v_side_zero_; }
    int steps() const { return k_; }

    double alpha(int j) const { return alphas_.at(static_cast<std::size_t>(j) - 1); }
    double beta(int j) const { return betas_.at(static_cast<std::size_t>(j) - 1); }
    double theta(int j) const { return thetas_.at(static_cast<std::size_t>(j) - 1); }
    int theta_count() const { return static_cast<int>(thetas_.size()); }

    const Vector& u_curr() const { return u_curr_; }
    const Vector& v_curr() const { return v_curr_; }
    const std::vector<Vector>& basis_u() const { return basis_u_; }
    const std::vector<Vector>& basis_v() const { return basis_v_; }

private:
    const LinearOperator* op_;
    ProcessOptions options_;
    int k_ = 0;
    bool u_side_zero_ = false;
    bool v_side_zero_ = false;
    double scale_ = 1.0;
    std::vector<double> alphas_, betas_, thetas_;
    Vector u_prev_, u_curr_, v_prev_, v_curr_;
    std::vector<Vector> basis_u_, basis_v_;
};

/// Dense row-major (k+1) x k matrix H_{k+1,k} of the skew Lanczos process:
/// -gamma on the superdiagonal, +gamma on the subdiagonal, zero diagonal.
std::vector<double> lanczos_rect_matrix(const std::vector<double>& gammas, int k);

}  // namespace skrylov
