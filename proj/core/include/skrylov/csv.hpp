#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "skrylov/history.hpp"

namespace skrylov {

/// Convergence-history CSV: '#'-prefixed comment lines carrying the given
/// key=value pairs (solver, matrix parameters, seed, outcome), one header
/// row, then one row per iteration:
///   iter,residual_norm,error_norm,estimate_norm,elapsed_ns
/// Numbers use the shortest round-trip decimal form; a missing error_norm
/// leaves the field empty. All columns except elapsed_ns are bitwise
/// reproducible for identical inputs.
void write_history_csv(std::ostream& out, const ConvergenceHistory& history,
                       const std::vector<std::pair<std::string, std::string>>& comments = {});

void write_history_csv(const std::filesystem::path& path, const ConvergenceHistory& history,
                       const std::vector<std::pair<std::string, std::string>>& comments = {});

/// Shortest decimal representation that round-trips to the same double.
std::string format_shortest(double v);

}  // namespace skrylov
