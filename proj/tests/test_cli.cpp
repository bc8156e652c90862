#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

namespace fs = std::filesystem;

fs::path work_dir() {
    const auto dir = fs::temp_directory_path() / "skrylov_cli_test";
    fs::create_directories(dir);
    return dir;
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(SKRYLOV_CLI_PATH) + " " + args + " > " +
                            (work_dir() / "stdout.txt").string() + " 2> " +
                            (work_dir() / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> csv_rows(const fs::path& p) {
    std::ifstream in(p);
    std::vector<std::string> rows;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty() && line[0] != '#') rows.push_back(line);
    return rows;
}

std::string strip_timing(const std::string& csv_text) {
    std::stringstream in(csv_text);
    std::string line, out;
    while (std::getline(in, line)) {
        const auto pos = line.rfind(',');
        out += (pos == std::string::npos ? line : line.substr(0, pos)) + "\n";
    }
    return out;
}

}  // namespace

TEST_CASE("solve: consistent fig1 run converges at iteration 24 with exit 0") {
    const auto out = work_dir() / "s2mr.csv";
    const int code = run_cli(
        "solve --gen tridiag --m 49 --sigma 1 --alpha 0 --rhs-kind consistent "
        "--solver s2mr --out " + out.string());
    CHECK(code == 0);
    const auto rows = csv_rows(out);
    REQUIRE(rows.size() >= 2);
    CHECK(rows.front() == "iter,residual_norm,error_norm,estimate_norm,elapsed_ns");
    CHECK(rows.back().rfind("24,", 0) == 0);
}

TEST_CASE("solve: non-applicability exits 2 and names the outcome") {
    const int code = run_cli(
        "solve --gen tridiag --m 49 --sigma 1 --alpha 0 --rhs-kind inconsistent "
        "--solver s2cg --out " + (work_dir() / "na.csv").string());
    CHECK(code == 2);
    CHECK(read_file(work_dir() / "stderr.txt").find("not-applicable") != std::string::npos);
}

TEST_CASE("solve: usage errors exit 1") {
    CHECK(run_cli("solve --gen tridiag --m 8 --alpha 0 --solver nosuch") == 1);
    // Shifted-only solver with alpha = 0.
    CHECK(run_cli("solve --gen tridiag --m 8 --alpha 0 --solver s3mr") == 1);
    // Skew-only solver with a shift.
    CHECK(run_cli("solve --gen tridiag --m 8 --alpha 0.5 --solver s2mr") == 1);
    // Missing matrix source.
    CHECK(run_cli("solve --solver lsqr --rhs-kind random") == 1);
    // Unreadable matrix file.
    CHECK(run_cli("solve --matrix /nonexistent.mtx --solver lsqr") == 1);
}

TEST_CASE("solve: csv is deterministic apart from the timing column") {
    const auto a = work_dir() / "det_a.csv";
    const auto b = work_dir() / "det_b.csv";
    const std::string flags =
        "solve --gen conv2d --m 7 --sigma1 0.4 --sigma2 0.6 --alpha 0.8 "
        "--rhs-kind random --seed 11 --solver s3mr --out ";
    REQUIRE(run_cli(flags + a.string()) == 0);
    REQUIRE(run_cli(flags + b.string()) == 0);
    CHECK(strip_timing(read_file(a)) == strip_timing(read_file(b)));
    // The seed is recorded in the header comments.
    CHECK(read_file(a).find("# seed=11") != std::string::npos);
}

TEST_CASE("experiment fig1 writes one csv per solver") {
    const auto dir = work_dir() / "fig1";
    REQUIRE(run_cli("experiment fig1 --outdir " + dir.string()) == 0);
    for (const char* name : {"fig1_s2cg.csv", "fig1_craig.csv", "fig1_s2mr.csv",
                             "fig1_lsqr.csv"})
        CHECK(fs::exists(dir / name));
    // S2CG history ends at iterate 24 with a tiny error column.
    const auto rows = csv_rows(dir / "fig1_s2cg.csv");
    REQUIRE_FALSE(rows.empty());
    const std::string& last = rows.back();
    CHECK(last.rfind("24,", 0) == 0);
    std::stringstream ss(last);
    std::string field;
    std::getline(ss, field, ',');  // iter
    std::getline(ss, field, ',');  // residual
    std::getline(ss, field, ',');  // error
    CHECK(std::stod(field) <= 1e-8);
}

TEST_CASE("experiment fig2 and fig3 produce their csv sets") {
    const auto dir = work_dir() / "figs";
    REQUIRE(run_cli("experiment fig2 --outdir " + dir.string()) == 0);
    CHECK(fs::exists(dir / "fig2_s2mr.csv"));
    CHECK(fs::exists(dir / "fig2_lsqr.csv"));
    REQUIRE(run_cli("experiment fig3 --outdir " + dir.string() + " --seed 7") == 0);
    for (const char* name : {"fig3_s3lq.csv", "fig3_s3cg.csv", "fig3_craig.csv",
                             "fig3_s3mr.csv", "fig3_lsqr.csv"})
        CHECK(fs::exists(dir / name));
}

TEST_CASE("equiv: pass and usage paths") {
    CHECK(run_cli("equiv --gen tridiag --m 49 --sigma 1 --alpha 0 --rhs-kind consistent "
                  "--check s2cg-craig") == 0);
    CHECK(read_file(work_dir() / "stdout.txt").find("PASS") != std::string::npos);
    CHECK(run_cli("equiv --gen conv2d --m 15 --sigma1 0.4 --sigma2 0.6 --alpha 0.8 "
                  "--rhs-kind random --seed 7 --check s3lq-s3cg") == 0);
    CHECK(run_cli("equiv --gen tridiag --m 49 --sigma 1 --alpha 0 --rhs-kind inconsistent "
                  "--check parity") == 0);
    CHECK(run_cli("equiv --gen conv2d --m 15 --sigma1 0.4 --sigma2 0.6 --alpha 0.8 "
                  "--rhs-kind random --seed 7 --check appendix-gk") == 0);
    CHECK(run_cli("equiv --gen tridiag --m 49 --sigma 1 --alpha 0 --rhs-kind consistent "
                  "--check gk-lanczos --steps 12") == 0);
    CHECK(run_cli("equiv --gen tridiag --m 49 --sigma 1 --alpha 0 --rhs-kind consistent "
                  "--check ssy-lanczos") == 0);
    // Structure mismatch is a usage error.
    CHECK(run_cli("equiv --gen tridiag --m 8 --alpha 0.5 --check s2cg-craig") == 1);
    CHECK(run_cli("equiv --gen tridiag --m 8 --alpha 0 --check s3cg-craig") == 1);
}

TEST_CASE("solve: right-hand side from a vector file") {
    const auto rhs = work_dir() / "rhs.txt";
    {
        std::ofstream out(rhs);
        out << "0.70710678118654752\n0\n-0.70710678118654752\n";
    }
    const auto out = work_dir() / "rhs_solve.csv";
    const int code = run_cli("solve --gen tridiag --m 3 --sigma 1 --alpha 0 --rhs " +
                             rhs.string() + " --solver lsqr --out " + out.string());
    CHECK(code == 0);
    CHECK_FALSE(csv_rows(out).empty());
    // Length mismatch is a usage error.
    CHECK(run_cli("solve --gen tridiag --m 5 --sigma 1 --alpha 0 --rhs " + rhs.string() +
                  " --solver lsqr") == 1);
}

TEST_CASE("solve: matrix market input with shift") {
    // Write a small skew matrix, then solve the shifted system from file.
    const auto mtx = work_dir() / "small.mtx";
    {
        std::ofstream out(mtx);
        out << "%%MatrixMarket matrix coordinate real skew-symmetric\n"
            << "2 2 1\n"
            << "2 1 -1\n";
    }
    const auto out = work_dir() / "file_solve.csv";
    const int code = run_cli("solve --matrix " + mtx.string() +
                             " --alpha 1.0 --rhs-kind random --seed 3 --solver s3cg --out " +
                             out.string());
    CHECK(code == 0);
    CHECK_FALSE(csv_rows(out).empty());
}
