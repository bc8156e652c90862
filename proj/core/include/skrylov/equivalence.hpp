#pragma once

#include <optional>

#include "skrylov/factorizations.hpp"

namespace skrylov {

/// Diagonal entries of the sign matrices relating the Saunders-Simon-Yip
/// bases to the Lanczos basis for skew A and c = b. Period-4 patterns
/// derived from the induction relations
///   u_{2j-1} = v_{2j-1} = (-1)^{j+1} w_{2j-1},  u_{2j} = -v_{2j} = (-1)^{j+1} w_{2j}.
/// k is 1-based.
inline double sign_d(int k) { return (k % 4 == 1 || k % 4 == 2) ? 1.0 : -1.0; }
inline double sign_d_tilde(int k) { return (k % 4 == 1 || k % 4 == 0) ? 1.0 : -1.0; }

/// One Golub-Kahan step on skew S equals two Lanczos steps:
///   beta_j = gamma_{2j-1}, alpha_j = gamma_{2j},
///   u_j = (-1)^{j-1} w_{2j-1}, v_j = (-1)^j w_{2j}.
struct GkLanczosReport {
    int steps = 0;  // GK steps actually compared
    double max_beta_dev = 0.0;
    double max_alpha_dev = 0.0;
    double max_u_dev = 0.0;
    double max_v_dev = 0.0;
    std::vector<double> per_step;  // worst deviation at each j
    double max_dev() const;
};
GkLanczosReport check_gk_lanczos_equivalence(const LinearOperator& s, const Vector& b, int steps,
                                             bool reorthogonalize = true);

/// SSY on skew S with c = b reduces to Lanczos:
///   theta_k = 0, alpha_k = beta_k = gamma_k, U = W D, V = W D~.
struct SsyLanczosReport {
    int steps = 0;
    double max_theta = 0.0;
    double max_alpha_dev = 0.0;
    double max_beta_dev = 0.0;
    double max_u_dev = 0.0;
    double max_v_dev = 0.0;
    std::vector<double> per_step;  // worst deviation at each k
    double max_dev() const;
};
SsyLanczosReport check_ssy_lanczos_equivalence(const LinearOperator& s, const Vector& b, int steps,
                                               bool reorthogonalize = true);

enum class Parity { even_in_range, odd_not_in_range };

/// Runs Lanczos on skew S to termination and classifies the grade parity.
/// At desk scale the classification is cross-checked against the dense
/// range-membership decision.
struct ParityReport {
    int ell = 0;
    Parity classification = Parity::even_in_range;
    std::optional<bool> oracle_consistent;  // set when the dense check ran
    std::optional<bool> agrees;             // classification vs oracle
};
ParityReport termination_parity(const LinearOperator& s, const Vector& b);

}  // namespace skrylov
