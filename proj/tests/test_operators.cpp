#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <random>

#include "skrylov/generators.hpp"
#include "skrylov/matrix_market.hpp"
#include "skrylov/operator.hpp"
#include "skrylov/prng.hpp"
#include "testutil.hpp"

using namespace skrylov;

namespace {

LinearOperator two_by_two_skew() { return make_tridiag_skew(2, 1.0); }

std::filesystem::path temp_file(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "skrylov_test";
    std::filesystem::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST_CASE("apply: 2x2 skew and shift examples") {
    const LinearOperator s = two_by_two_skew();
    CHECK(s.apply({1.0, 0.0}) == Vector{0.0, -1.0});

    const LinearOperator shifted = LinearOperator::shifted(0.8, make_tridiag_skew(2, 0.0));
    const Vector y = shifted.apply({1.0, 1.0});
    CHECK(y[0] == doctest::Approx(0.8));
    CHECK(y[1] == doctest::Approx(0.8));
}

TEST_CASE("apply_transpose: skew negation is exact, shifted uses alpha x - S x") {
    const LinearOperator s = two_by_two_skew();
    CHECK(s.apply_transpose({1.0, 0.0}) == Vector{0.0, 1.0});

    const LinearOperator a = LinearOperator::shifted(1.0, s);
    CHECK(a.apply_transpose({1.0, 0.0}) == Vector{1.0, 1.0});

    std::mt19937_64 rng(11);
    const LinearOperator skew = testutil::random_skew(17, rng);
    const Vector x = testutil::to_vector(testutil::random_unit(17, rng));
    const Vector fwd = skew.apply(x);
    const Vector bwd = skew.apply_transpose(x);
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(bwd[i] == -fwd[i]);
}

TEST_CASE("dimension mismatch names both sizes") {
    const LinearOperator s = two_by_two_skew();
    try {
        s.apply({1.0, 2.0, 3.0});
        FAIL("expected DimensionMismatch");
    } catch (const DimensionMismatch& e) {
        CHECK(e.expected == 2);
        CHECK(e.got == 3);
        CHECK(std::string(e.what()).find("2") != std::string::npos);
        CHECK(std::string(e.what()).find("3") != std::string::npos);
    }
}

TEST_CASE("tridiag generator matches the hand-built matrix") {
    const LinearOperator s = two_by_two_skew();
    const std::vector<double> d = s.dense_row_major();
    CHECK(d == std::vector<double>{0.0, 1.0, -1.0, 0.0});

    const LinearOperator one = make_tridiag_skew(1, 5.0);
    CHECK(one.n() == 1);
    CHECK(one.dense_row_major() == std::vector<double>{0.0});

    // Entrywise agreement with an independently assembled dense matrix.
    const int m = 49;
    const LinearOperator big = make_tridiag_skew(m, 1.0);
    const std::vector<double> bd = big.dense_row_major();
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            double expected = 0.0;
            if (j == i + 1) expected = 1.0;
            if (j == i - 1) expected = -1.0;
            CHECK(bd[static_cast<std::size_t>(i) * m + j] == expected);
        }
}

TEST_CASE("conv2d generator: degenerate cases and entrywise Kronecker check") {
    CHECK(make_conv2d_skew(1, 0.4, 0.6).dense_row_major() == std::vector<double>{0.0});

    // m=2, sigma2=0: block diagonal with two copies of the 2x2 block.
    const LinearOperator b2 = make_conv2d_skew(2, 1.0, 0.0);
    const std::vector<double> d2 = b2.dense_row_major();
    const std::vector<double> expected{0, 1, 0, 0, -1, 0, 0, 0, 0, 0, 0, 1, 0, 0, -1, 0};
    CHECK(d2 == expected);

    // Entrywise Kronecker assembly for the 225x225 operator.
    const int m = 15;
    const double s1 = 0.4, s2 = 0.6;
    const LinearOperator op = make_conv2d_skew(m, s1, s2);
    const int n = m * m;
    REQUIRE(op.n() == n);
    const std::vector<double> d = op.dense_row_major();
    auto tri = [](int i, int j, double sigma) {
        if (j == i + 1) return sigma;
        if (j == i - 1) return -sigma;
        return 0.0;
    };
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            const int i1 = r / m, j1 = r % m, i2 = c / m, j2 = c % m;
            double expected_entry = 0.0;
            if (i1 == i2) expected_entry += tri(j1, j2, s1);
            if (j1 == j2) expected_entry += tri(i1, i2, s2);
            if (d[static_cast<std::size_t>(r) * n + c] != expected_entry) {
                REQUIRE(d[static_cast<std::size_t>(r) * n + c] == expected_entry);
            }
        }
}

TEST_CASE("skew identity holds on 100 random pairs") {
    for (const LinearOperator& op :
         {make_tridiag_skew(49, 1.0), make_conv2d_skew(15, 0.4, 0.6)}) {
        CHECK(skew_defect_sampled(op, 100) <= 1e-12);
    }
}

TEST_CASE("shift decomposition is exact by construction") {
    const LinearOperator s = make_conv2d_skew(7, 0.4, 0.6);
    const LinearOperator a = LinearOperator::shifted(0.8, s);
    SplitMix64 rng(5);
    for (int t = 0; t < 20; ++t) {
        Vector x(static_cast<std::size_t>(a.n()));
        for (double& v : x) v = rng.next_symmetric();
        const Vector ax = a.apply(x);
        const Vector sx = s.apply(x);
        for (std::size_t i = 0; i < x.size(); ++i) CHECK(ax[i] == 0.8 * x[i] + sx[i]);
    }
}

TEST_CASE("example_rhs values and unit norm") {
    const Vector b = example_rhs(RhsKind::consistent, 49);
    CHECK(b[0] == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(b[48] == doctest::Approx(-1.0 / std::sqrt(2.0)));
    for (int i = 1; i < 48; ++i) CHECK(b[static_cast<std::size_t>(i)] == 0.0);

    const Vector bi = example_rhs(RhsKind::inconsistent, 49);
    CHECK(bi[48] == doctest::Approx(1.0 / std::sqrt(2.0)));

    for (int n : {2, 5, 49, 100}) {
        CHECK(norm2(example_rhs(RhsKind::consistent, n)) == doctest::Approx(1.0));
        CHECK(norm2(example_rhs(RhsKind::inconsistent, n)) == doctest::Approx(1.0));
    }
    CHECK_THROWS_AS(example_rhs(RhsKind::consistent, 1), std::invalid_argument);
}

TEST_CASE("matrix market: skew qualifier round trip") {
    const auto path = temp_file("skew2.mtx");
    {
        std::ofstream out(path);
        out << "%%MatrixMarket matrix coordinate real skew-symmetric\n"
            << "% strict lower triangle\n"
            << "2 2 1\n"
            << "2 1 -1\n";
    }
    const LinearOperator op = load_matrix_market(path);
    CHECK(op.structure() == Structure::skew);
    CHECK(op.apply({1.0, 0.0}) == Vector{0.0, -1.0});
}

TEST_CASE("matrix market: general file with skew entries is skew-flagged") {
    const auto path = temp_file("general_skew.mtx");
    {
        std::ofstream out(path);
        out << "%%MatrixMarket matrix coordinate real general\n"
            << "2 2 2\n"
            << "1 2 1\n"
            << "2 1 -1\n";
    }
    CHECK(load_matrix_market(path).structure() == Structure::skew);
}

TEST_CASE("matrix market: symmetric entries fail the skew requirement") {
    const auto path = temp_file("sym.mtx");
    {
        std::ofstream out(path);
        out << "%%MatrixMarket matrix coordinate real general\n"
            << "2 2 2\n"
            << "1 2 1\n"
            << "2 1 1\n";
    }
    CHECK(load_matrix_market(path).structure() == Structure::general);
    MatrixMarketOptions opts;
    opts.require_skew = true;
    CHECK_THROWS_AS(load_matrix_market(path, opts), ParseError);
}

TEST_CASE("matrix market: parse errors carry line numbers") {
    const auto path = temp_file("bad.mtx");
    {
        std::ofstream out(path);
        out << "%%MatrixMarket matrix coordinate real general\n"
            << "2 2 1\n"
            << "1 oops 1\n";
    }
    try {
        load_matrix_market(path);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 3);
    }

    const auto rect = temp_file("rect.mtx");
    {
        std::ofstream out(rect);
        out << "%%MatrixMarket matrix coordinate real general\n"
            << "2 3 1\n"
            << "1 1 1\n";
    }
    CHECK_THROWS_AS(load_matrix_market(rect), ParseError);
}

TEST_CASE("matrix market: generator/loader cross-check on the n=49 matrix") {
    const LinearOperator gen = make_tridiag_skew(49, 1.0);
    const auto path = temp_file("tridiag49.mtx");
    save_matrix_market(path, gen);
    const LinearOperator loaded = load_matrix_market(path);
    CHECK(loaded.structure() == Structure::skew);
    CHECK(loaded.dense_row_major() == gen.dense_row_major());
}

TEST_CASE("vector io round trip") {
    const auto path = temp_file("vec.txt");
    const Vector v{1.5, -2.25, 0.0, 1e-17, 3.0};
    save_vector(path, v);
    CHECK(load_vector(path) == v);
}

TEST_CASE("frobenius norm of shifted operator includes the diagonal") {
    const LinearOperator s = two_by_two_skew();
    const LinearOperator a = LinearOperator::shifted(1.0, s);
    // ||I + S||_F^2 = 2 + 2
    CHECK(a.frobenius_norm() == doctest::Approx(2.0));
}

TEST_CASE("negated operator flips both shift and skew part") {
    std::mt19937_64 rng(3);
    const LinearOperator a = testutil::random_shifted(9, 0.7, 1.3, rng);
    const LinearOperator na = a.negated();
    const Vector x = testutil::to_vector(testutil::random_unit(9, rng));
    const Vector ax = a.apply(x);
    const Vector nax = na.apply(x);
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(nax[i] == doctest::Approx(-ax[i]));
    CHECK(na.shift() == -0.7);
    CHECK(na.structure() == Structure::shifted_skew);
}

TEST_CASE("concurrent read-only application is consistent") {
    const LinearOperator op = make_conv2d_skew(15, 0.4, 0.6);
    const Vector x = random_vector(static_cast<std::size_t>(op.n()), 42);
    const Vector expected = op.apply(x);
    std::vector<std::future<Vector>> futures;
    for (int t = 0; t < 4; ++t)
        futures.push_back(std::async(std::launch::async, [&] { return op.apply(x); }));
    for (auto& f : futures) CHECK(f.get() == expected);
}

TEST_CASE("csr apply_transpose agrees with dense materialization") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<Triplet> t;
    for (int k = 0; k < 40; ++k)
        t.push_back({static_cast<int>(rng() % 9), static_cast<int>(rng() % 9), dist(rng)});
    const LinearOperator op =
        LinearOperator::sparse(CsrMatrix::from_triplets(9, 9, t), Structure::general);
    const std::vector<double> d = op.dense_row_major();
    const Vector x = testutil::to_vector(testutil::random_unit(9, rng));
    const Vector y = op.apply_transpose(x);
    for (int j = 0; j < 9; ++j) {
        double expected = 0.0;
        for (int i = 0; i < 9; ++i) expected += d[static_cast<std::size_t>(i) * 9 + j] * x[static_cast<std::size_t>(i)];
        CHECK(y[static_cast<std::size_t>(j)] == doctest::Approx(expected).epsilon(1e-12));
    }
}
