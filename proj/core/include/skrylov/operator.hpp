#pragma once

#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "skrylov/vec.hpp"

namespace skrylov {

/// Structural classification of a square operator A.
///   general      -- no structure assumed; the transpose is applied explicitly.
///   skew         -- A^T = -A.
///   shifted_skew -- A = alpha*I + S with S skew and alpha != 0; the pair
///                   (alpha, S) is stored and alpha*I + S is never formed.
enum class Structure { general, skew, shifted_skew };

struct DimensionMismatch : std::invalid_argument {
    DimensionMismatch(std::size_t expected_, std::size_t got_);
    std::size_t expected;
    std::size_t got;
};

struct Triplet {
    int row = 0;
    int col = 0;
    double value = 0.0;
};

/// Compressed sparse row storage. Duplicate triplets are summed on build.
class CsrMatrix {
public:
    CsrMatrix() = default;
    static CsrMatrix from_triplets(int rows, int cols, std::vector<Triplet> entries);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    std::size_t nnz() const { return values_.size(); }

    void apply(std::span<const double> x, std::span<double> y) const;
    void apply_transpose(std::span<const double> x, std::span<double> y) const;

    double coeff(int i, int j) const;
    double max_abs() const;
    double frobenius_norm() const;
    /// max_{ij} |a_ij + a_ji|, the deviation from skew-symmetry.
    double skew_defect() const;

    void negate_in_place();

    const std::vector<std::size_t>& row_ptr() const { return row_ptr_; }
    const std::vector<int>& col_idx() const { return col_idx_; }
    const std::vector<double>& values() const { return values_; }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<std::size_t> row_ptr_{0};
    std::vector<int> col_idx_;
    std::vector<double> values_;
};

/// Immutable square linear operator with forward and transpose application.
/// Copies share storage; concurrent read-only use is safe.
class LinearOperator {
public:
    LinearOperator() = default;

    /// Dense row-major storage of A (or of S when wrapped by shifted()).
    static LinearOperator dense(int n, std::vector<double> row_major,
                                Structure structure = Structure::general);
    static LinearOperator sparse(CsrMatrix matrix, Structure structure = Structure::general);
    /// A = alpha*I + S. Requires skew_part.structure() == skew and alpha != 0.
    static LinearOperator shifted(double alpha, const LinearOperator& skew_part);

    bool valid() const { return payload_ != nullptr; }
    int n() const;
    Structure structure() const;
    /// The scalar alpha; zero unless structure() == shifted_skew.
    double shift() const;

    void apply(std::span<const double> x, std::span<double> y) const;
    void apply_transpose(std::span<const double> x, std::span<double> y) const;
    /// S x for skew and shifted-skew operators (the stored matrix itself).
    void apply_skew_part(std::span<const double> x, std::span<double> y) const;

    Vector apply(const Vector& x) const;
    Vector apply_transpose(const Vector& x) const;
    Vector apply_skew_part(const Vector& x) const;

    Vector residual(const Vector& b, const Vector& x) const;  // b - A x

    double frobenius_norm() const;
    /// Row-major dense materialization of A (shift included).
    std::vector<double> dense_row_major() const;
    /// The skew part S as its own operator; *this when already skew.
    LinearOperator skew_part_operator() const;
    /// -A, preserving structure and storage (a shifted operator keeps the
    /// (alpha, S) split with both parts negated).
    LinearOperator negated() const;

private:
    struct Payload;
    std::shared_ptr<const Payload> payload_;
};

inline LinearOperator negate(const LinearOperator& op) { return op.negated(); }

/// Largest |y^T A x + x^T A y| over `trials` pseudo-random unit pairs,
/// normalized by ||A||_F. Zero for an exactly skew operator.
double skew_defect_sampled(const LinearOperator& op, int trials = 100, std::uint64_t seed = 1);

}  // namespace skrylov
