#include "skrylov/history.hpp"

#include <stdexcept>

namespace skrylov {

const char* outcome_name(Outcome o) {
    switch (o) {
        case Outcome::converged: return "converged";
        case Outcome::not_applicable: return "not-applicable";
        case Outcome::breakdown: return "breakdown";
        case Outcome::iteration_limit: return "iteration-limit";
    }
    return "unknown";
}

void fill_error_norms(ConvergenceHistory& history, const Vector& reference) {
    if (history.iterates.size() != history.records.size())
        throw std::logic_error("fill_error_norms: history was produced without store_iterates");
    for (std::size_t i = 0; i < history.records.size(); ++i)
        history.records[i].error_norm = distance2(history.iterates[i], reference);
}

}  // namespace skrylov
