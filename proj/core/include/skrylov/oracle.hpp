#pragma once

#include <functional>
#include <optional>

#include "skrylov/operator.hpp"

namespace skrylov {
namespace oracle {

/// Column-major dense matrix for the reference computations. Everything in
/// this namespace is O(n^3) and capped at desk scale.
struct DenseMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> data;  // column-major, rows*cols

    DenseMatrix() = default;
    DenseMatrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, 0.0) {}

    double& at(int i, int j) { return data[static_cast<std::size_t>(j) * rows + i]; }
    double at(int i, int j) const { return data[static_cast<std::size_t>(j) * rows + i]; }
};

inline constexpr int kMaxDenseDim = 400;
/// Relative singular-value threshold used for every rank decision.
inline constexpr double kRankTol = 1e-10;

DenseMatrix to_dense(const LinearOperator& op);

/// Minimum-length least-squares solution A^+ b via SVD; singular values
/// below kRankTol * sigma_max are treated as zero.
Vector pseudoinverse_solution(const DenseMatrix& a, const Vector& b);

/// Moore-Penrose pseudoinverse of a (for the identity checks in tests).
DenseMatrix pseudoinverse(const DenseMatrix& a);

/// true iff b lies in ran(A): ||b - A A^+ b|| <= kRankTol * ||b||.
bool in_range(const DenseMatrix& a, const Vector& b);

/// Orthonormal basis of null(A) (columns), from the SVD.
DenseMatrix null_space(const DenseMatrix& a);

/// Largest singular value.
double spectral_norm(const DenseMatrix& a);

/// Orthonormal basis w_1, w_2, ... of the Krylov flag generated by repeated
/// application of `next` to `start`, built with twice-iterated Gram-Schmidt.
/// Stops early (and reports the grade) when the space is exhausted.
struct KrylovBasis {
    std::vector<Vector> columns;
    bool exhausted = false;  // true when fewer than `k` independent vectors exist
};
KrylovBasis krylov_basis(const std::function<Vector(const Vector&)>& next, const Vector& start,
                         int k);

/// x_k minimizing ||b - A x|| over the span of the explicitly built and fully
/// reorthogonalized Krylov basis of K_k(A, b); min-norm coefficients via SVD.
/// k past the grade is clamped (reported through `clamped`). sigma_ratio is
/// sigma_min/sigma_max of the least-squares section after thresholding: a
/// tiny value flags an intrinsically ill-conditioned section whose solution
/// is not determined to high accuracy in double precision.
struct ExplicitSolution {
    Vector x;
    bool clamped = false;
    double sigma_ratio = 1.0;
};
ExplicitSolution explicit_krylov_minres(const DenseMatrix& a, const Vector& b, int k);

/// Galerkin iterate from the explicit basis: solves (W_k^T A W_k) y = ||b|| e_1.
/// Empty when the projected matrix is singular at rank tolerance.
std::optional<Vector> explicit_krylov_galerkin(const DenseMatrix& a, const Vector& b, int k);

/// Minimum-norm iterate subject to the rectangular projected constraint
/// (W_{k-1}^T A W_k) y = ||b|| e_1, the dense reference for the LQ solvers.
ExplicitSolution explicit_minlen_galerkin(const DenseMatrix& a, const Vector& b, int k);

/// Least-squares min-norm coefficients for min || rhs - M y || (SVD route).
Vector least_squares_min_norm(const DenseMatrix& m, const Vector& rhs);

/// Per-step comparison of Golub-Kahan on A = alpha*I + S against Lanczos on
/// S from the same b, both with full reorthogonalization:
///   alpha_j >= sqrt(alpha^2 + gamma_{2j}^2) and alpha_j > gamma_{2j},
///   beta_{j+1} = gamma_{2j+1} gamma_{2j} / alpha_j,
///   u_{j+1} = (-1)^j w_{2j+1}.
/// The comparison covers the steps a bidiagonalization solver would take:
/// it stops once the residual estimate beta_{j+1} |tau_j| falls below
/// stop_tol * ||b|| (or at process termination). Past that point the coupled
/// recurrence is forward-unstable and the computed quantities carry no
/// information about the exact-arithmetic identities.
struct GkShiftedReport {
    int steps = 0;                        // GK steps compared
    bool terminated = false;              // the process itself hit beta = 0
    double max_alpha_lower_violation = 0.0;  // max of sqrt(..) - alpha_j
    double max_alpha_gamma_violation = 0.0;  // max of gamma_{2j} - alpha_j
    double max_beta_identity_dev = 0.0;      // |beta_{j+1} - g_{2j+1} g_{2j}/alpha_j| / g_{2j+1}
    double max_u_sign_dev = 0.0;             // ||u_{j+1} - (-1)^j w_{2j+1}||
    bool all_hold(double tol = 1e-10) const {
        return max_alpha_lower_violation <= tol && max_alpha_gamma_violation <= tol &&
               max_beta_identity_dev <= tol && max_u_sign_dev <= tol;
    }
};
GkShiftedReport gk_shifted_properties_check(const LinearOperator& a, const Vector& b,
                                            double stop_tol = 1e-10);

}  // namespace oracle
}  // namespace skrylov
