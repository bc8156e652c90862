#include "skrylov/experiments.hpp"

#include <cmath>

#include "skrylov/generators.hpp"
#include "skrylov/prng.hpp"

namespace skrylov {

namespace {
constexpr int kFig12Size = 49;
}

ExperimentSystem fig1_system() {
    return {make_tridiag_skew(kFig12Size, 1.0), example_rhs(RhsKind::consistent, kFig12Size)};
}

Vector fig1_reference() {
    Vector x(kFig12Size, 0.0);
    for (int i = 1; i < kFig12Size; i += 2) x[static_cast<std::size_t>(i)] = 1.0 / std::sqrt(2.0);
    return x;
}

ExperimentSystem fig2_system() {
    return {make_tridiag_skew(kFig12Size, 1.0), example_rhs(RhsKind::inconsistent, kFig12Size)};
}

ExperimentSystem fig3_system(std::uint64_t seed) {
    LinearOperator s = make_conv2d_skew(15, 0.4, 0.6);
    LinearOperator a = LinearOperator::shifted(0.8, s);
    return {a, random_vector(static_cast<std::size_t>(a.n()), seed)};
}

}  // namespace skrylov
