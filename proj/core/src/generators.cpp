#include "skrylov/generators.hpp"

#include <cmath>

namespace skrylov {

LinearOperator make_tridiag_skew(int m, double sigma) {
    if (m < 1) throw std::invalid_argument("make_tridiag_skew: m must be positive");
    std::vector<Triplet> t;
    t.reserve(static_cast<std::size_t>(2 * std::max(0, m - 1)));
    for (int i = 0; i + 1 < m; ++i) {
        t.push_back({i, i + 1, sigma});
        t.push_back({i + 1, i, -sigma});
    }
    return LinearOperator::sparse(CsrMatrix::from_triplets(m, m, std::move(t)), Structure::skew);
}

LinearOperator make_conv2d_skew(int m, double sigma1, double sigma2) {
    if (m < 1) throw std::invalid_argument("make_conv2d_skew: m must be positive");
    const int n = m * m;
    std::vector<Triplet> t;
    t.reserve(static_cast<std::size_t>(4 * n));
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            const int row = i * m + j;
            if (j + 1 < m) t.push_back({row, i * m + (j + 1), sigma1});
            if (j - 1 >= 0) t.push_back({row, i * m + (j - 1), -sigma1});
            if (i + 1 < m) t.push_back({row, (i + 1) * m + j, sigma2});
            if (i - 1 >= 0) t.push_back({row, (i - 1) * m + j, -sigma2});
        }
    }
    return LinearOperator::sparse(CsrMatrix::from_triplets(n, n, std::move(t)), Structure::skew);
}

Vector example_rhs(RhsKind kind, int n) {
    if (n < 2) throw std::invalid_argument("example_rhs: n must be at least 2");
    Vector b(static_cast<std::size_t>(n), 0.0);
    const double v = 1.0 / std::sqrt(2.0);
    b.front() = v;
    b.back() = kind == RhsKind::consistent ? -v : v;
    return b;
}

}  // namespace skrylov
