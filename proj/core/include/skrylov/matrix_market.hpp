#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "skrylov/operator.hpp"

namespace skrylov {

struct ParseError : std::runtime_error {
    ParseError(const std::string& path, long line, const std::string& what);
    std::string path;
    long line;  // 1-based; 0 when the failure is not tied to a line
};

struct MatrixMarketOptions {
    /// When true, a general file whose entries are not skew-symmetric is an
    /// error instead of being loaded with the general structure flag.
    bool require_skew = false;
    /// Relative tolerance for the post-hoc skew validation of general files:
    /// max|a_ij + a_ji| <= skew_tol * max|a_ij|.
    double skew_tol = 1e-12;
};

/// Reads a square real matrix in Matrix Market coordinate format. The
/// "skew-symmetric" symmetry qualifier is honored (strict lower triangle
/// stored); "general" and "symmetric" files are accepted and a general file
/// that validates as skew gets the skew structure flag.
LinearOperator load_matrix_market(const std::filesystem::path& path,
                                  const MatrixMarketOptions& options = {});

/// Writes in coordinate format; skew operators use the skew-symmetric
/// qualifier and store only the strict lower triangle.
void save_matrix_market(const std::filesystem::path& path, const LinearOperator& op);

/// Plain text vectors, one value per line.
Vector load_vector(const std::filesystem::path& path);
void save_vector(const std::filesystem::path& path, const Vector& v);

}  // namespace skrylov
