#include "skrylov/csv.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>

namespace skrylov {

std::string format_shortest(double v) {
    char buf[32];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, p);
}

void write_history_csv(std::ostream& out, const ConvergenceHistory& history,
                       const std::vector<std::pair<std::string, std::string>>& comments) {
    for (const auto& [key, value] : comments) out << "# " << key << "=" << value << "\n";
    out << "# outcome=" << outcome_name(history.outcome) << "\n";
    out << "iter,residual_norm,error_norm,estimate_norm,elapsed_ns\n";
    for (const IterationRecord& r : history.records) {
        out << r.iter << ',' << format_shortest(r.residual_norm) << ',';
        if (r.error_norm) out << format_shortest(*r.error_norm);
        out << ',' << format_shortest(r.estimate_norm) << ',' << r.elapsed_ns << "\n";
    }
}

void write_history_csv(const std::filesystem::path& path, const ConvergenceHistory& history,
                       const std::vector<std::pair<std::string, std::string>>& comments) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    write_history_csv(out, history, comments);
    if (!out) throw std::runtime_error("write failure on " + path.string());
}

}  // namespace skrylov
