#include "skrylov/operator.hpp"

#include <algorithm>
#include <cmath>

#include "skrylov/prng.hpp"

namespace skrylov {

DimensionMismatch::DimensionMismatch(std::size_t expected_, std::size_t got_)
    : std::invalid_argument("dimension mismatch: operator expects length " +
                            std::to_string(expected_) + ", vector has length " +
                            std::to_string(got_)),
      expected(expected_),
      got(got_) {}

CsrMatrix CsrMatrix::from_triplets(int rows, int cols, std::vector<Triplet> entries) {
    for (const Triplet& t : entries) {
        if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols)
            throw std::invalid_argument("triplet index out of range");
    }
    std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });

    CsrMatrix m;
    m.rows_ = rows;
    m.cols_ = cols;
    m.row_ptr_.assign(static_cast<std::size_t>(rows) + 1, 0);
    m.col_idx_.reserve(entries.size());
    m.values_.reserve(entries.size());

    std::size_t i = 0;
    for (int r = 0; r < rows; ++r) {
        while (i < entries.size() && entries[i].row == r) {
            double v = entries[i].value;
            const int c = entries[i].col;
            ++i;
            while (i < entries.size() && entries[i].row == r && entries[i].col == c) {
                v += entries[i].value;  // merge duplicates
                ++i;
            }
            m.col_idx_.push_back(c);
            m.values_.push_back(v);
        }
        m.row_ptr_[static_cast<std::size_t>(r) + 1] = m.values_.size();
    }
    return m;
}

void CsrMatrix::apply(std::span<const double> x, std::span<double> y) const {
    for (int r = 0; r < rows_; ++r) {
        double sum = 0.0;
        for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k)
            sum += values_[k] * x[static_cast<std::size_t>(col_idx_[k])];
        y[static_cast<std::size_t>(r)] = sum;
    }
}

void CsrMatrix::apply_transpose(std::span<const double> x, std::span<double> y) const {
    std::fill(y.begin(), y.end(), 0.0);
    for (int r = 0; r < rows_; ++r) {
        const double xr = x[static_cast<std::size_t>(r)];
        for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k)
            y[static_cast<std::size_t>(col_idx_[k])] += values_[k] * xr;
    }
}

double CsrMatrix::coeff(int i, int j) const {
    const std::size_t lo = row_ptr_[i];
    const std::size_t hi = row_ptr_[i + 1];
    const auto begin = col_idx_.begin() + static_cast<std::ptrdiff_t>(lo);
    const auto end = col_idx_.begin() + static_cast<std::ptrdiff_t>(hi);
    const auto it = std::lower_bound(begin, end, j);
    if (it == end || *it != j) return 0.0;
    return values_[static_cast<std::size_t>(it - col_idx_.begin())];
}

double CsrMatrix::max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

double CsrMatrix::frobenius_norm() const { return norm2(values_); }

double CsrMatrix::skew_defect() const {
    double worst = 0.0;
    for (int r = 0; r < rows_; ++r)
        for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k)
            worst = std::max(worst, std::abs(values_[k] + coeff(col_idx_[k], r)));
    return worst;
}

void CsrMatrix::negate_in_place() {
    for (double& v : values_) v = -v;
}

struct LinearOperator::Payload {
    int n = 0;
    double alpha = 0.0;
    Structure structure = Structure::general;
    // S for skew/shifted_skew, A itself for general. Dense is row-major n*n.
    std::variant<CsrMatrix, std::vector<double>> matrix;
};

LinearOperator LinearOperator::dense(int n, std::vector<double> row_major, Structure structure) {
    if (n < 0 || row_major.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n))
        throw std::invalid_argument("dense storage must hold n*n entries");
    if (structure == Structure::shifted_skew)
        throw std::invalid_argument("use LinearOperator::shifted to build a shifted operator");
    auto p = std::make_shared<Payload>();
    p->n = n;
    p->structure = structure;
    p->matrix = std::move(row_major);
    LinearOperator op;
    op.payload_ = std::move(p);
    return op;
}

LinearOperator LinearOperator::sparse(CsrMatrix matrix, Structure structure) {
    if (matrix.rows() != matrix.cols())
        throw std::invalid_argument("operator matrix must be square");
    if (structure == Structure::shifted_skew)
        throw std::invalid_argument("use LinearOperator::shifted to build a shifted operator");
    auto p = std::make_shared<Payload>();
    p->n = matrix.rows();
    p->structure = structure;
    p->matrix = std::move(matrix);
    LinearOperator op;
    op.payload_ = std::move(p);
    return op;
}

LinearOperator LinearOperator::shifted(double alpha, const LinearOperator& skew_part) {
    if (!skew_part.valid()) throw std::invalid_argument("shifted: empty skew part");
    if (skew_part.structure() != Structure::skew)
        throw std::invalid_argument("shifted: the wrapped operator must be skew");
    if (alpha == 0.0) throw std::invalid_argument("shifted: alpha must be nonzero");
    auto p = std::make_shared<Payload>();
    p->n = skew_part.n();
    p->alpha = alpha;
    p->structure = Structure::shifted_skew;
    p->matrix = skew_part.payload_->matrix;
    LinearOperator op;
    op.payload_ = std::move(p);
    return op;
}

int LinearOperator::n() const { return payload_ ? payload_->n : 0; }

Structure LinearOperator::structure() const {
    return payload_ ? payload_->structure : Structure::general;
}

double LinearOperator::shift() const { return payload_ ? payload_->alpha : 0.0; }

namespace {

void dense_apply(const std::vector<double>& a, int n, std::span<const double> x,
                 std::span<double> y) {
    for (int i = 0; i < n; ++i) {
        double sum = 0.0;
        const double* row = a.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(n);
        for (int j = 0; j < n; ++j) sum += row[j] * x[static_cast<std::size_t>(j)];
        y[static_cast<std::size_t>(i)] = sum;
    }
}

void dense_apply_transpose(const std::vector<double>& a, int n, std::span<const double> x,
                           std::span<double> y) {
    std::fill(y.begin(), y.end(), 0.0);
    for (int i = 0; i < n; ++i) {
        const double xi = x[static_cast<std::size_t>(i)];
        const double* row = a.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(n);
        for (int j = 0; j < n; ++j) y[static_cast<std::size_t>(j)] += row[j] * xi;
    }
}

}  // namespace

void LinearOperator::apply_skew_part(std::span<const double> x, std::span<double> y) const {
    if (!payload_) throw std::logic_error("empty operator");
    if (x.size() != static_cast<std::size_t>(payload_->n))
        throw DimensionMismatch(static_cast<std::size_t>(payload_->n), x.size());
    if (payload_->structure == Structure::general)
        throw std::logic_error("general operator has no skew part");
    if (const auto* csr = std::get_if<CsrMatrix>(&payload_->matrix))
        csr->apply(x, y);
    else
        dense_apply(std::get<std::vector<double>>(payload_->matrix), payload_->n, x, y);
}

void LinearOperator::apply(std::span<const double> x, std::span<double> y) const {
    if (!payload_) throw std::logic_error("empty operator");
    if (x.size() != static_cast<std::size_t>(payload_->n))
        throw DimensionMismatch(static_cast<std::size_t>(payload_->n), x.size());
    switch (payload_->structure) {
        case Structure::shifted_skew: {
            apply_skew_part(x, y);
            const double alpha = payload_->alpha;
            for (std::size_t i = 0; i < x.size(); ++i) y[i] = alpha * x[i] + y[i];
            return;
        }
        case Structure::skew:
        case Structure::general:
            if (const auto* csr = std::get_if<CsrMatrix>(&payload_->matrix))
                csr->apply(x, y);
            else
                dense_apply(std::get<std::vector<double>>(payload_->matrix), payload_->n, x, y);
            return;
    }
}

void LinearOperator::apply_transpose(std::span<const double> x, std::span<double> y) const {
    if (!payload_) throw std::logic_error("empty operator");
    if (x.size() != static_cast<std::size_t>(payload_->n))
        throw DimensionMismatch(static_cast<std::size_t>(payload_->n), x.size());
    switch (payload_->structure) {
        case Structure::skew:
            // A^T = -A: reuse the forward path so the sign flip is exact.
            apply_skew_part(x, y);
            for (double& v : y) v = -v;
            return;
        case Structure::shifted_skew: {
            apply_skew_part(x, y);
            const double alpha = payload_->alpha;
            for (std::size_t i = 0; i < x.size(); ++i) y[i] = alpha * x[i] - y[i];
            return;
        }
        case Structure::general:
            if (const auto* csr = std::get_if<CsrMatrix>(&payload_->matrix))
                csr->apply_transpose(x, y);
            else
                dense_apply_transpose(std::get<std::vector<double>>(payload_->matrix), payload_->n,
                                      x, y);
            return;
    }
}

Vector LinearOperator::apply(const Vector& x) const {
    Vector y(x.size());
    apply(std::span<const double>(x), std::span<double>(y));
    return y;
}

Vector LinearOperator::apply_transpose(const Vector& x) const {
    Vector y(x.size());
    apply_transpose(std::span<const double>(x), std::span<double>(y));
    return y;
}

Vector LinearOperator::apply_skew_part(const Vector& x) const {
    Vector y(x.size());
    apply_skew_part(std::span<const double>(x), std::span<double>(y));
    return y;
}

Vector LinearOperator::residual(const Vector& b, const Vector& x) const {
    Vector r = apply(x);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = b[i] - r[i];
    return r;
}

double LinearOperator::frobenius_norm() const {
    if (!payload_) return 0.0;
    double base = 0.0;
    if (const auto* csr = std::get_if<CsrMatrix>(&payload_->matrix))
        base = csr->frobenius_norm();
    else
        base = norm2(std::get<std::vector<double>>(payload_->matrix));
    if (payload_->structure != Structure::shifted_skew) return base;
    // S has a zero diagonal, so ||alpha*I + S||_F^2 = n*alpha^2 + ||S||_F^2.
    return std::hypot(payload_->alpha * std::sqrt(static_cast<double>(payload_->n)), base);
}

std::vector<double> LinearOperator::dense_row_major() const {
    if (!payload_) return {};
    const int n = payload_->n;
    std::vector<double> a(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
    if (const auto* csr = std::get_if<CsrMatrix>(&payload_->matrix)) {
        for (int r = 0; r < n; ++r)
            for (std::size_t k = csr->row_ptr()[r]; k < csr->row_ptr()[r + 1]; ++k)
                a[static_cast<std::size_t>(r) * n + csr->col_idx()[k]] = csr->values()[k];
    } else {
        a = std::get<std::vector<double>>(payload_->matrix);
    }
    if (payload_->structure == Structure::shifted_skew)
        for (int i = 0; i < n; ++i) a[static_cast<std::size_t>(i) * n + i] += payload_->alpha;
    return a;
}

LinearOperator LinearOperator::skew_part_operator() const {
    if (!payload_) throw std::logic_error("empty operator");
    if (payload_->structure == Structure::skew) return *this;
    if (payload_->structure != Structure::shifted_skew)
        throw std::logic_error("general operator has no skew part");
    auto p = std::make_shared<Payload>();
    p->n = payload_->n;
    p->structure = Structure::skew;
    p->matrix = payload_->matrix;
    LinearOperator op;
    op.payload_ = std::move(p);
    return op;
}

LinearOperator LinearOperator::negated() const {
    if (!payload_) throw std::logic_error("empty operator");
    auto p = std::make_shared<Payload>(*payload_);
    p->alpha = -p->alpha;
    if (auto* csr = std::get_if<CsrMatrix>(&p->matrix))
        csr->negate_in_place();
    else
        for (double& v : std::get<std::vector<double>>(p->matrix)) v = -v;
    LinearOperator op;
    op.payload_ = std::move(p);
    return op;
}

double skew_defect_sampled(const LinearOperator& op, int trials, std::uint64_t seed) {
    const int n = op.n();
    const double scale = op.frobenius_norm();
    SplitMix64 rng(seed);
    double worst = 0.0;
    Vector x(n), y(n);
    for (int t = 0; t < trials; ++t) {
        for (double& v : x) v = rng.next_symmetric();
        for (double& v : y) v = rng.next_symmetric();
        const Vector ax = op.apply(x);
        const Vector ay = op.apply(y);
        const double defect = std::abs(dot(y, ax) + dot(x, ay));
        const double denom = std::max(1e-300, norm2(x) * norm2(y) * scale);
        worst = std::max(worst, defect / denom);
    }
    return worst;
}

}  // namespace skrylov
