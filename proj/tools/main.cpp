// Command line front end: solve skew / shifted skew-symmetric systems, run
// the three reference experiments, and verify the solver equivalences.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>

#include "skrylov/csv.hpp"
#include "skrylov/equivalence.hpp"
#include "skrylov/experiments.hpp"
#include "skrylov/generators.hpp"
#include "skrylov/matrix_market.hpp"
#include "skrylov/oracle.hpp"
#include "skrylov/prng.hpp"
#include "skrylov/shifted_solvers.hpp"
#include "skrylov/skew_solvers.hpp"

namespace sk = skrylov;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitOutcome = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SystemFlags {
    std::string matrix_path;
    std::string gen;
    int m = 49;
    double sigma = 1.0;
    double sigma1 = 0.4;
    double sigma2 = 0.6;
    double alpha = 0.0;
    double skew_tol = 1e-12;
    std::string rhs_path;
    std::string rhs_kind = "consistent";
    std::uint64_t seed = 0;

    void add_to(CLI::App& cmd) {
        cmd.add_option("--matrix", matrix_path, "Matrix Market file holding S (or A when --alpha 0)");
        cmd.add_option("--gen", gen, "generator: tridiag or conv2d")
            ->check(CLI::IsMember({"tridiag", "conv2d"}));
        cmd.add_option("--m", m, "generator size parameter");
        cmd.add_option("--sigma", sigma, "tridiag superdiagonal value");
        cmd.add_option("--sigma1", sigma1, "conv2d first direction coefficient");
        cmd.add_option("--sigma2", sigma2, "conv2d second direction coefficient");
        cmd.add_option("--alpha", alpha, "shift: solve (alpha I + S) x = b; 0 means pure skew");
        cmd.add_option("--skew-tol", skew_tol, "relative tolerance for skew validation of files");
        cmd.add_option("--rhs", rhs_path, "right-hand side file, one value per line");
        cmd.add_option("--rhs-kind", rhs_kind, "consistent, inconsistent, or random")
            ->check(CLI::IsMember({"consistent", "inconsistent", "random"}));
        cmd.add_option("--seed", seed, "seed for the random right-hand side");
    }

    sk::LinearOperator build_operator() const {
        sk::LinearOperator s;
        if (!matrix_path.empty() && !gen.empty())
            throw UsageError("--matrix and --gen are mutually exclusive");
        if (!matrix_path.empty()) {
            sk::MatrixMarketOptions opts;
            opts.skew_tol = skew_tol;
            opts.require_skew = alpha != 0.0;  // the shift wrapper needs a skew S
            s = sk::load_matrix_market(matrix_path, opts);
        } else if (gen == "tridiag") {
            s = sk::make_tridiag_skew(m, sigma);
        } else if (gen == "conv2d") {
            s = sk::make_conv2d_skew(m, sigma1, sigma2);
        } else {
            throw UsageError("one of --matrix or --gen is required");
        }
        if (alpha != 0.0) {
            if (s.structure() != sk::Structure::skew)
                throw UsageError("--alpha requires a skew-symmetric S");
            return sk::LinearOperator::shifted(alpha, s);
        }
        return s;
    }

    sk::Vector build_rhs(int n) const {
        if (!rhs_path.empty()) {
            sk::Vector b = sk::load_vector(rhs_path);
            if (static_cast<int>(b.size()) != n)
                throw UsageError("--rhs length " + std::to_string(b.size()) +
                                 " does not match the operator dimension " + std::to_string(n));
            return b;
        }
        if (rhs_kind == "random") return sk::random_vector(static_cast<std::size_t>(n), seed);
        return sk::example_rhs(
            rhs_kind == "consistent" ? sk::RhsKind::consistent : sk::RhsKind::inconsistent, n);
    }

    std::vector<std::pair<std::string, std::string>> describe() const {
        std::vector<std::pair<std::string, std::string>> kv;
        if (!matrix_path.empty()) kv.push_back({"matrix", matrix_path});
        if (!gen.empty()) {
            kv.push_back({"gen", gen});
            kv.push_back({"m", std::to_string(m)});
            if (gen == "tridiag") kv.push_back({"sigma", sk::format_shortest(sigma)});
            if (gen == "conv2d") {
                kv.push_back({"sigma1", sk::format_shortest(sigma1)});
                kv.push_back({"sigma2", sk::format_shortest(sigma2)});
            }
        }
        kv.push_back({"alpha", sk::format_shortest(alpha)});
        if (!rhs_path.empty())
            kv.push_back({"rhs", rhs_path});
        else
            kv.push_back({"rhs-kind", rhs_kind});
        if (rhs_kind == "random") kv.push_back({"seed", std::to_string(seed)});
        return kv;
    }
};

bool solver_needs_shift(const std::string& name) {
    return name == "s3cg" || name == "s3mr" || name == "s3lq";
}

bool solver_needs_pure_skew(const std::string& name) {
    return name == "s2cg" || name == "s2mr";
}

sk::ConvergenceHistory run_solver(const std::string& name, const sk::LinearOperator& a,
                                  const sk::Vector& b, const sk::SolverConfig& cfg) {
    if (name == "s2cg") return sk::s2cg_solve(a, b, cfg);
    if (name == "s2mr") return sk::s2mr_solve(a, b, cfg);
    if (name == "craig") return sk::craig_solve(a, b, cfg);
    if (name == "lsqr") return sk::lsqr_solve(a, b, cfg);
    if (name == "s3cg") return sk::s3cg_solve(a, b, cfg);
    if (name == "s3mr") return sk::s3mr_solve(a, b, cfg);
    if (name == "s3lq") return sk::s3lq_solve(a, b, cfg, /*emit_cg_points=*/true);
    if (name == "usymqr") return sk::usymqr_solve(a, b, b, cfg);
    if (name == "usymlq") return sk::usymlq_solve(a, b, b, cfg);
    throw UsageError("unknown solver '" + name + "'");
}

// Dense reference solution for the error column, at desk scale only.
std::optional<sk::Vector> reference_solution(const sk::LinearOperator& a, const sk::Vector& b) {
    if (a.n() > sk::oracle::kMaxDenseDim) return std::nullopt;
    return sk::oracle::pseudoinverse_solution(sk::oracle::to_dense(a), b);
}

int cmd_solve(const SystemFlags& flags, const std::string& solver, double tol, int maxit,
              const std::string& out_path) {
    if (solver_needs_shift(solver) && flags.alpha == 0.0)
        throw UsageError(solver + " solves shifted systems: --alpha must be nonzero");
    if (solver_needs_pure_skew(solver) && flags.alpha != 0.0)
        throw UsageError(solver + " solves pure skew systems: --alpha must be 0");

    const sk::LinearOperator a = flags.build_operator();
    const sk::Vector b = flags.build_rhs(a.n());

    sk::SolverConfig cfg;
    cfg.tol = tol;
    cfg.max_iters = maxit;
    cfg.store_iterates = true;
    cfg.seed = flags.seed;

    sk::ConvergenceHistory history = run_solver(solver, a, b, cfg);
    if (auto ref = reference_solution(a, b)) sk::fill_error_norms(history, *ref);

    auto comments = flags.describe();
    comments.insert(comments.begin(), {"solver", solver});
    comments.push_back({"n", std::to_string(a.n())});
    comments.push_back({"tol", sk::format_shortest(tol)});
    if (!out_path.empty())
        sk::write_history_csv(std::filesystem::path(out_path), history, comments);
    else
        sk::write_history_csv(std::cout, history, comments);

    if (history.outcome == sk::Outcome::converged) {
        std::cerr << "converged: " << history.detail << " (iter " << history.final_iter() << ")\n";
        return kExitOk;
    }
    std::cerr << outcome_name(history.outcome) << ": " << history.detail << "\n";
    return kExitOutcome;
}

int cmd_experiment(const std::string& name, const std::string& outdir, std::uint64_t seed,
                   double tol) {
    std::filesystem::create_directories(outdir);
    sk::SolverConfig cfg;
    cfg.tol = tol;
    cfg.store_iterates = true;

    struct Job {
        std::string solver;
        sk::ExperimentSystem system;
        sk::Vector reference;
    };
    std::vector<Job> jobs;

    if (name == "fig1") {
        const sk::ExperimentSystem sys = sk::fig1_system();
        const sk::Vector ref = sk::fig1_reference();
        for (const char* s : {"s2cg", "craig", "s2mr", "lsqr"}) jobs.push_back({s, sys, ref});
    } else if (name == "fig2") {
        const sk::ExperimentSystem sys = sk::fig2_system();
        const sk::Vector ref =
            sk::oracle::pseudoinverse_solution(sk::oracle::to_dense(sys.a), sys.b);
        for (const char* s : {"s2mr", "lsqr"}) jobs.push_back({s, sys, ref});
    } else if (name == "fig3") {
        const sk::ExperimentSystem sys = sk::fig3_system(seed);
        const sk::Vector ref =
            sk::oracle::pseudoinverse_solution(sk::oracle::to_dense(sys.a), sys.b);
        for (const char* s : {"s3lq", "s3cg", "craig", "s3mr", "lsqr"})
            jobs.push_back({s, sys, ref});
    } else {
        throw UsageError("unknown experiment '" + name + "' (expected fig1, fig2, or fig3)");
    }

    for (Job& job : jobs) {
        sk::ConvergenceHistory history = run_solver(job.solver, job.system.a, job.system.b, cfg);
        sk::fill_error_norms(history, job.reference);
        std::vector<std::pair<std::string, std::string>> comments{
            {"experiment", name},
            {"solver", job.solver},
            {"n", std::to_string(job.system.a.n())},
            {"tol", sk::format_shortest(tol)},
        };
        if (name == "fig3") comments.push_back({"seed", std::to_string(seed)});
        const std::filesystem::path file =
            std::filesystem::path(outdir) / (name + "_" + job.solver + ".csv");
        sk::write_history_csv(file, history, comments);
        std::cout << file.string() << "\n";
    }
    return kExitOk;
}

double rel_dev(const sk::Vector& x, const sk::Vector& ref) {
    return sk::distance2(x, ref) / std::max(1.0, sk::norm2(ref));
}

int report_pass_fail(const std::vector<std::pair<int, double>>& devs, double threshold) {
    double worst = 0.0;
    for (const auto& [iter, dev] : devs) {
        std::printf("iter %4d  deviation %.3e\n", iter, dev);
        worst = std::max(worst, dev);
    }
    const bool pass = worst <= threshold;
    std::printf("max deviation %.3e  threshold %.1e  %s\n", worst, threshold,
                pass ? "PASS" : "FAIL");
    return pass ? kExitOk : kExitOutcome;
}

int cmd_equiv(const SystemFlags& flags, const std::string& check, int steps, double tol) {
    constexpr double kThreshold = 1e-9;
    const bool needs_skew = check == "gk-lanczos" || check == "ssy-lanczos" ||
                            check == "s2cg-craig" || check == "s2mr-lsqr" || check == "parity";
    const bool needs_shift = check == "s3cg-craig" || check == "s3lq-s3cg" ||
                             check == "s3mr-usymqr" || check == "s3lq-usymlq" ||
                             check == "appendix-gk";
    if (needs_skew && flags.alpha != 0.0)
        throw UsageError("check '" + check + "' requires --alpha 0");
    if (needs_shift && flags.alpha == 0.0)
        throw UsageError("check '" + check + "' requires a nonzero --alpha");

    const sk::LinearOperator a = flags.build_operator();
    const sk::Vector b = flags.build_rhs(a.n());

    sk::SolverConfig cfg;
    cfg.tol = tol;
    cfg.store_iterates = true;

    // Process-identity checks compare a desk-scale window by default; the
    // solver-pair checks below self-gate at solver convergence.
    const int process_steps = steps > 0 ? steps : 24;

    if (check == "gk-lanczos") {
        const auto report = sk::check_gk_lanczos_equivalence(a, b, process_steps);
        std::vector<std::pair<int, double>> devs;
        for (std::size_t j = 0; j < report.per_step.size(); ++j)
            devs.push_back({static_cast<int>(j + 1), report.per_step[j]});
        return report_pass_fail(devs, kThreshold);
    }
    if (check == "ssy-lanczos") {
        const auto report = sk::check_ssy_lanczos_equivalence(a, b, process_steps);
        std::vector<std::pair<int, double>> devs;
        for (std::size_t k = 0; k < report.per_step.size(); ++k)
            devs.push_back({static_cast<int>(k + 1), report.per_step[k]});
        return report_pass_fail(devs, kThreshold);
    }
    if (check == "parity") {
        const auto report = sk::termination_parity(a, b);
        std::printf("Lanczos grade l = %d (%s)\n", report.ell,
                    report.classification == sk::Parity::even_in_range
                        ? "even: b in ran(A)"
                        : "odd: b outside ran(A)");
        if (!report.agrees.has_value()) {
            std::printf("dense cross-check unavailable at this size\n");
            return kExitOutcome;
        }
        std::printf("dense range decision: %s  %s\n",
                    *report.oracle_consistent ? "b in ran(A)" : "b outside ran(A)",
                    *report.agrees ? "PASS" : "FAIL");
        return *report.agrees ? kExitOk : kExitOutcome;
    }
    if (check == "appendix-gk") {
        const auto report = sk::oracle::gk_shifted_properties_check(a, b);
        std::printf("steps compared: %d\n", report.steps);
        std::printf("alpha_j lower-bound violation: %.3e\n", report.max_alpha_lower_violation);
        std::printf("alpha_j > gamma_2j violation:  %.3e\n", report.max_alpha_gamma_violation);
        std::printf("beta identity deviation:       %.3e\n", report.max_beta_identity_dev);
        std::printf("u sign-pattern deviation:      %.3e\n", report.max_u_sign_dev);
        const bool pass = report.all_hold(kThreshold);
        std::printf("threshold %.1e  %s\n", kThreshold, pass ? "PASS" : "FAIL");
        return pass ? kExitOk : kExitOutcome;
    }

    // Solver-pair checks below compare stored iterates.
    auto capped = [steps](int iter) { return steps <= 0 || iter <= steps; };
    std::vector<std::pair<int, double>> devs;

    if (check == "s2cg-craig" || check == "s3cg-craig") {
        const auto cg = check == "s2cg-craig" ? sk::s2cg_solve(a, b, cfg)
                                              : sk::s3cg_solve(a, b, cfg);
        const auto craig = sk::craig_solve(a, b, cfg);
        std::map<int, std::size_t> cg_index;
        for (std::size_t i = 0; i < cg.records.size(); ++i) cg_index[cg.records[i].iter] = i;
        for (std::size_t j = 0; j < craig.records.size(); ++j) {
            const int iter = craig.records[j].iter;
            if (!capped(iter)) break;
            auto it = cg_index.find(2 * iter);
            if (it == cg_index.end()) break;
            devs.push_back({iter, rel_dev(cg.iterates[it->second], craig.iterates[j])});
        }
        return report_pass_fail(devs, kThreshold);
    }
    if (check == "s2mr-lsqr") {
        const auto mr = sk::s2mr_solve(a, b, cfg);
        const auto lsqr = sk::lsqr_solve(a, b, cfg);
        for (std::size_t j = 0; j < lsqr.records.size(); ++j) {
            const int iter = lsqr.records[j].iter;
            if (!capped(iter)) break;
            if (lsqr.records[j].estimate_norm <= 10.0 * cfg.tol * sk::norm2(b)) break;
            for (int off = 0; off <= 1; ++off) {
                const std::size_t idx = static_cast<std::size_t>(2 * iter + off) - 1;
                if (idx >= mr.iterates.size()) break;
                devs.push_back({iter, rel_dev(mr.iterates[idx], lsqr.iterates[j])});
            }
        }
        return report_pass_fail(devs, kThreshold);
    }
    if (check == "s3lq-s3cg") {
        const auto lq = sk::s3lq_solve(a, b, cfg);
        const auto cg = sk::s3cg_solve(a, b, cfg);
        std::map<int, std::size_t> lq_index;
        for (std::size_t i = 0; i < lq.records.size(); ++i) lq_index[lq.records[i].iter] = i;
        for (std::size_t i = 0; i < cg.records.size(); ++i) {
            const int iter = cg.records[i].iter;
            if (iter % 2 != 0 || !capped(iter)) continue;
            for (int off = 0; off <= 1; ++off) {
                auto it = lq_index.find(iter + off);
                if (it == lq_index.end()) continue;
                devs.push_back({iter, rel_dev(lq.iterates[it->second], cg.iterates[i])});
            }
        }
        return report_pass_fail(devs, kThreshold);
    }
    if (check == "s3mr-usymqr" || check == "s3lq-usymlq") {
        const bool mr_pair = check == "s3mr-usymqr";
        const auto lhs = mr_pair ? sk::s3mr_solve(a, b, cfg) : sk::s3lq_solve(a, b, cfg);
        const auto rhs = mr_pair ? sk::usymqr_solve(a, b, b, cfg) : sk::usymlq_solve(a, b, b, cfg);
        std::map<int, std::size_t> rhs_index;
        for (std::size_t i = 0; i < rhs.records.size(); ++i) rhs_index[rhs.records[i].iter] = i;
        for (std::size_t i = 0; i < lhs.records.size(); ++i) {
            const int iter = lhs.records[i].iter;
            if (!capped(iter)) break;
            auto it = rhs_index.find(iter);
            if (it == rhs_index.end()) continue;
            devs.push_back({iter, rel_dev(lhs.iterates[i], rhs.iterates[it->second])});
        }
        return report_pass_fail(devs, kThreshold);
    }
    throw UsageError("unknown check '" + check + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Krylov subspace solvers for skew-symmetric and shifted "
                 "skew-symmetric linear systems"};
    app.require_subcommand(1);

    // solve
    auto* solve = app.add_subcommand("solve", "run one solver and write a convergence CSV");
    SystemFlags solve_flags;
    solve_flags.add_to(*solve);
    std::string solver;
    double tol = 1e-10;
    int maxit = 0;
    std::string out_path;
    solve->add_option("--solver", solver, "solver name")
        ->required()
        ->check(CLI::IsMember(
            {"s2cg", "s2mr", "craig", "lsqr", "s3cg", "s3mr", "s3lq", "usymlq", "usymqr"}));
    solve->add_option("--tol", tol, "relative residual tolerance");
    solve->add_option("--maxit", maxit, "iteration cap (default 4n)");
    solve->add_option("--out", out_path, "output CSV path (default: stdout)");

    // experiment
    auto* experiment = app.add_subcommand("experiment", "reproduce a reference experiment");
    std::string experiment_name;
    std::string outdir = ".";
    std::uint64_t experiment_seed = 7;
    double experiment_tol = 1e-10;
    experiment->add_option("name", experiment_name, "fig1, fig2, or fig3")->required();
    experiment->add_option("--outdir", outdir, "directory for the CSV files");
    experiment->add_option("--seed", experiment_seed, "seed for the fig3 right-hand side");
    experiment->add_option("--tol", experiment_tol, "relative residual tolerance");

    // equiv
    auto* equiv = app.add_subcommand("equiv", "verify a solver or process equivalence");
    SystemFlags equiv_flags;
    equiv_flags.add_to(*equiv);
    std::string check;
    int equiv_steps = 0;
    double equiv_tol = 1e-10;
    equiv->add_option("--check", check, "which equivalence to verify")
        ->required()
        ->check(CLI::IsMember({"gk-lanczos", "ssy-lanczos", "s2cg-craig", "s2mr-lsqr",
                               "s3cg-craig", "s3lq-s3cg", "s3mr-usymqr", "s3lq-usymlq",
                               "appendix-gk", "parity"}));
    equiv->add_option("--steps", equiv_steps,
                      "cap on compared iterations (default: 24 for process checks, "
                      "solver-pair checks run to convergence)");
    equiv->add_option("--tol", equiv_tol, "solver tolerance used for the runs");

    try {
        app.parse(argc, argv);
        if (solve->parsed()) return cmd_solve(solve_flags, solver, tol, maxit, out_path);
        if (experiment->parsed())
            return cmd_experiment(experiment_name, outdir, experiment_seed, experiment_tol);
        if (equiv->parsed()) return cmd_equiv(equiv_flags, check, equiv_steps, equiv_tol);
        return kExitUsage;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitUsage;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const sk::ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
