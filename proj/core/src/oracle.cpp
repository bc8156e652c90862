#include "skrylov/oracle.hpp"

#include <Eigen/Dense>

#include <cmath>

#include "skrylov/factorizations.hpp"

namespace skrylov {
namespace oracle {

namespace {

using EMat = Eigen::MatrixXd;
using EVec = Eigen::VectorXd;

Eigen::Map<const EMat> map(const DenseMatrix& a) {
    return Eigen::Map<const EMat>(a.data.data(), a.rows, a.cols);
}

Eigen::Map<const EVec> map(const Vector& v) {
    return Eigen::Map<const EVec>(v.data(), static_cast<Eigen::Index>(v.size()));
}

Vector to_vector(const EVec& v) { return Vector(v.data(), v.data() + v.size()); }

DenseMatrix to_dense_matrix(const EMat& m) {
    DenseMatrix d(static_cast<int>(m.rows()), static_cast<int>(m.cols()));
    Eigen::Map<EMat>(d.data.data(), m.rows(), m.cols()) = m;
    return d;
}

void check_cap(int rows, int cols) {
    if (rows > kMaxDenseDim || cols > kMaxDenseDim)
        throw std::invalid_argument("oracle: dense reference computations are capped at " +
                                    std::to_string(kMaxDenseDim) + " (got " +
                                    std::to_string(rows) + "x" + std::to_string(cols) + ")");
}

Eigen::BDCSVD<EMat> svd_of(const DenseMatrix& a) {
    check_cap(a.rows, a.cols);
    Eigen::BDCSVD<EMat> svd(map(a), Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(kRankTol);
    return svd;
}

DenseMatrix columns_to_matrix(const std::vector<Vector>& cols) {
    if (cols.empty()) return {};
    DenseMatrix m(static_cast<int>(cols.front().size()), static_cast<int>(cols.size()));
    for (int j = 0; j < m.cols; ++j)
        for (int i = 0; i < m.rows; ++i) m.at(i, j) = cols[static_cast<std::size_t>(j)][i];
    return m;
}

}  // namespace

DenseMatrix to_dense(const LinearOperator& op) {
    check_cap(op.n(), op.n());
    DenseMatrix d(op.n(), op.n());
    const std::vector<double> row_major = op.dense_row_major();
    for (int i = 0; i < d.rows; ++i)
        for (int j = 0; j < d.cols; ++j)
            d.at(i, j) = row_major[static_cast<std::size_t>(i) * d.cols + j];
    return d;
}

Vector pseudoinverse_solution(const DenseMatrix& a, const Vector& b) {
    auto svd = svd_of(a);
    return to_vector(svd.solve(map(b)));
}

DenseMatrix pseudoinverse(const DenseMatrix& a) {
    auto svd = svd_of(a);
    const auto& s = svd.singularValues();
    const double cutoff = s.size() > 0 ? kRankTol * s(0) : 0.0;
    EVec inv = EVec::Zero(s.size());
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > cutoff) inv(i) = 1.0 / s(i);
    return to_dense_matrix(svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose());
}

bool in_range(const DenseMatrix& a, const Vector& b) {
    const Vector x = pseudoinverse_solution(a, b);
    const EVec r = map(b) - map(a) * map(x);
    return r.norm() <= kRankTol * map(b).norm();
}

DenseMatrix null_space(const DenseMatrix& a) {
    Eigen::BDCSVD<EMat> svd(map(a), Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    const double cutoff = s.size() > 0 ? kRankTol * s(0) : 0.0;
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > cutoff) ++rank;
    return to_dense_matrix(svd.matrixV().rightCols(svd.matrixV().cols() - rank));
}

double spectral_norm(const DenseMatrix& a) {
    check_cap(a.rows, a.cols);
    Eigen::BDCSVD<EMat> svd(map(a));
    return svd.singularValues().size() > 0 ? svd.singularValues()(0) : 0.0;
}

KrylovBasis krylov_basis(const std::function<Vector(const Vector&)>& next, const Vector& start,
                         int k) {
    KrylovBasis out;
    const double n0 = norm2(start);
    if (n0 == 0.0 || k <= 0) {
        out.exhausted = true;
        return out;
    }
    double scale = std::max(1.0, n0);
    out.columns.push_back(scaled(start, 1.0 / n0));
    while (static_cast<int>(out.columns.size()) < k) {
        Vector z = next(out.columns.back());
        scale = std::max(scale, norm2(z));
        for (int pass = 0; pass < 2; ++pass)
            for (const Vector& w : out.columns) axpy(-dot(w, z), w, z);
        const double nz = norm2(z);
        if (nz <= 1e-12 * scale) {
            out.exhausted = true;
            break;
        }
        scal(1.0 / nz, z);
        out.columns.push_back(std::move(z));
    }
    return out;
}

Vector least_squares_min_norm(const DenseMatrix& m, const Vector& rhs) {
    auto svd = svd_of(m);
    return to_vector(svd.solve(map(rhs)));
}

ExplicitSolution explicit_krylov_minres(const DenseMatrix& a, const Vector& b, int k) {
    check_cap(a.rows, a.cols);
    ExplicitSolution out;
    out.x = zeros(b.size());
    if (k <= 0) return out;  // empty subspace
    const EMat ea = map(a);
    auto matvec = [&](const Vector& v) { return to_vector(EVec(ea * map(v))); };
    KrylovBasis basis = krylov_basis(matvec, b, k);
    out.clamped = static_cast<int>(basis.columns.size()) < k;
    if (basis.columns.empty()) return out;
    const DenseMatrix w = columns_to_matrix(basis.columns);
    auto svd = svd_of(to_dense_matrix(ea * map(w)));
    const auto& sv = svd.singularValues();
    if (sv.size() > 0 && sv(0) > 0.0) {
        // Conditioning of the retained part of the section.
        double smallest_kept = sv(0);
        for (Eigen::Index i = 0; i < sv.size(); ++i)
            if (sv(i) > kRankTol * sv(0)) smallest_kept = sv(i);
        out.sigma_ratio = smallest_kept / sv(0);
    }
    const EVec y = svd.solve(map(b));
    out.x = to_vector(EVec(map(w) * y));
    return out;
}

std::optional<Vector> explicit_krylov_galerkin(const DenseMatrix& a, const Vector& b, int k) {
    check_cap(a.rows, a.cols);
    if (k <= 0) return zeros(b.size());
    const EMat ea = map(a);
    auto matvec = [&](const Vector& v) { return to_vector(EVec(ea * map(v))); };
    KrylovBasis basis = krylov_basis(matvec, b, k);
    if (basis.columns.empty()) return zeros(b.size());
    const DenseMatrix w = columns_to_matrix(basis.columns);
    const EMat g = map(w).transpose() * ea * map(w);
    Eigen::BDCSVD<EMat> svd(g, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(kRankTol);
    const auto& s = svd.singularValues();
    if (s.size() == 0 || s(s.size() - 1) <= kRankTol * s(0)) return std::nullopt;
    EVec rhs = EVec::Zero(g.rows());
    rhs(0) = norm2(b);
    const EVec y = svd.solve(rhs);
    return to_vector(EVec(map(w) * y));
}

ExplicitSolution explicit_minlen_galerkin(const DenseMatrix& a, const Vector& b, int k) {
    check_cap(a.rows, a.cols);
    ExplicitSolution out;
    out.x = zeros(b.size());
    if (k <= 1) return out;  // the first LQ point is the origin
    const EMat ea = map(a);
    auto matvec = [&](const Vector& v) { return to_vector(EVec(ea * map(v))); };
    KrylovBasis basis = krylov_basis(matvec, b, k);
    const int have = static_cast<int>(basis.columns.size());
    if (have == 0) return out;
    const DenseMatrix w = columns_to_matrix(basis.columns);
    if (have < k) {
        // Past the grade the constrained problem becomes the square Galerkin
        // system on the full subspace, whose solution solves A x = b.
        out.clamped = true;
        const EMat g = map(w).transpose() * ea * map(w);
        const Vector y =
            least_squares_min_norm(to_dense_matrix(g), [&] {
                Vector rhs(static_cast<std::size_t>(have), 0.0);
                rhs[0] = norm2(b);
                return rhs;
            }());
        out.x = to_vector(EVec(map(w) * map(y)));
        return out;
    }
    const EMat t = map(w).leftCols(k - 1).transpose() * ea * map(w);  // (k-1) x k
    Vector rhs(static_cast<std::size_t>(k - 1), 0.0);
    rhs[0] = norm2(b);
    auto svd = svd_of(to_dense_matrix(t));
    const auto& sv = svd.singularValues();
    if (sv.size() > 0 && sv(0) > 0.0) {
        double smallest_kept = sv(0);
        for (Eigen::Index i = 0; i < sv.size(); ++i)
            if (sv(i) > kRankTol * sv(0)) smallest_kept = sv(i);
        out.sigma_ratio = smallest_kept / sv(0);
    }
    const EVec y = svd.solve(map(rhs));
    out.x = to_vector(EVec(map(w) * y));
    return out;
}

GkShiftedReport gk_shifted_properties_check(const LinearOperator& a, const Vector& b,
                                            double stop_tol) {
    if (a.structure() != Structure::shifted_skew)
        throw std::invalid_argument("gk_shifted_properties_check: operator must be shifted-skew");
    check_cap(a.n(), a.n());
    const double alpha = a.shift();
    const LinearOperator s = a.skew_part_operator();

    ProcessOptions opts;
    opts.reorthogonalize = true;

    // Advance the bidiagonalization through its solver regime only.
    GolubKahanProcess gk(a, b, opts);
    const double beta1 = norm2(b);
    double tau = 0.0;
    while (!gk.terminated() && gk.steps() < a.n() + 2) {
        gk.step();
        const int j = gk.steps();
        tau = j == 1 ? gk.beta(1) / gk.alpha(1) : -gk.beta(j) * tau / gk.alpha(j);
        if (!gk.terminated() && gk.beta(j + 1) * std::abs(tau) <= stop_tol * beta1) break;
    }
    const int jmax = std::min(gk.steps(), gk.alpha_count());

    LanczosProcess lanczos(s, b, opts);
    while (!lanczos.terminated() && lanczos.steps() < std::min(2 * jmax + 1, a.n() + 2))
        lanczos.step();

    GkShiftedReport report;
    report.steps = jmax;
    report.terminated = gk.terminated();
    const int ell = lanczos.steps();
    for (int j = 1; j <= jmax; ++j) {
        if (2 * j > ell) break;
        const double alpha_j = gk.alpha(j);
        const double g2j = lanczos.gamma(2 * j);
        report.max_alpha_lower_violation = std::max(
            report.max_alpha_lower_violation, std::hypot(alpha, g2j) - alpha_j);
        report.max_alpha_gamma_violation =
            std::max(report.max_alpha_gamma_violation, g2j - alpha_j);
        if (2 * j + 1 <= ell + 1) {
            const double g_next = lanczos.gamma(2 * j + 1);
            if (g_next > 0.0 && gk.beta_count() >= j + 1) {
                const double predicted = g_next * g2j / alpha_j;
                report.max_beta_identity_dev =
                    std::max(report.max_beta_identity_dev,
                             std::abs(gk.beta(j + 1) - predicted) / g_next);
            }
        }
        // u_{j+1} = (-1)^j w_{2j+1} while both columns exist.
        if (static_cast<int>(gk.basis_u().size()) >= j + 1 &&
            static_cast<int>(lanczos.basis().size()) >= 2 * j + 1) {
            const Vector& u = gk.basis_u()[static_cast<std::size_t>(j)];
            const Vector& w = lanczos.basis()[static_cast<std::size_t>(2 * j)];
            const double sign = (j % 2 == 0) ? 1.0 : -1.0;
            double dev = 0.0;
            for (std::size_t i = 0; i < u.size(); ++i)
                dev = std::max(dev, std::abs(u[i] - sign * w[i]));
            report.max_u_sign_dev = std::max(report.max_u_sign_dev, dev);
        }
    }
    return report;
}

}  // namespace oracle
}  // namespace skrylov
