#include "skrylov/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

namespace skrylov {

ParseError::ParseError(const std::string& path_, long line_, const std::string& what_)
    : std::runtime_error(path_ + (line_ > 0 ? ":" + std::to_string(line_) : "") + ": " + what_),
      path(path_),
      line(line_) {}

namespace {

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

double parse_double(const std::string& path, long line, const std::string& tok) {
    double v = 0.0;
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    auto [p, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || p != last)
        throw ParseError(path, line, "bad numeric value '" + tok + "'");
    return v;
}

long parse_index(const std::string& path, long line, const std::string& tok) {
    long v = 0;
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    auto [p, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || p != last)
        throw ParseError(path, line, "bad integer value '" + tok + "'");
    return v;
}

}  // namespace

LinearOperator load_matrix_market(const std::filesystem::path& path,
                                  const MatrixMarketOptions& options) {
    std::ifstream in(path);
    const std::string name = path.string();
    if (!in) throw ParseError(name, 0, "cannot open file");

    std::string header;
    if (!std::getline(in, header)) throw ParseError(name, 1, "empty file");
    std::istringstream hs(header);
    std::string banner, object, format, field, symmetry;
    hs >> banner >> object >> format >> field >> symmetry;
    if (banner != "%%MatrixMarket" || lower(object) != "matrix")
        throw ParseError(name, 1, "not a Matrix Market matrix file");
    if (lower(format) != "coordinate")
        throw ParseError(name, 1, "only coordinate format is supported");
    if (lower(field) != "real" && lower(field) != "integer")
        throw ParseError(name, 1, "only real-valued matrices are supported");
    symmetry = lower(symmetry);
    if (symmetry != "general" && symmetry != "symmetric" && symmetry != "skew-symmetric")
        throw ParseError(name, 1, "unsupported symmetry qualifier '" + symmetry + "'");

    long line_no = 1;
    std::string line;
    // Size line, after comments.
    long rows = 0, cols = 0, nnz = 0;
    for (;;) {
        if (!std::getline(in, line)) throw ParseError(name, line_no, "missing size line");
        ++line_no;
        if (line.empty() || line[0] == '%') continue;
        std::istringstream ss(line);
        std::string a, b, c;
        if (!(ss >> a >> b >> c)) throw ParseError(name, line_no, "malformed size line");
        rows = parse_index(name, line_no, a);
        cols = parse_index(name, line_no, b);
        nnz = parse_index(name, line_no, c);
        break;
    }
    if (rows != cols) throw ParseError(name, line_no, "matrix is not square");
    if (rows < 0 || nnz < 0) throw ParseError(name, line_no, "negative dimensions");

    std::vector<Triplet> entries;
    entries.reserve(static_cast<std::size_t>(symmetry == "general" ? nnz : 2 * nnz));
    long seen = 0;
    while (seen < nnz) {
        if (!std::getline(in, line))
            throw ParseError(name, line_no, "unexpected end of file: expected " +
                                                std::to_string(nnz) + " entries, got " +
                                                std::to_string(seen));
        ++line_no;
        if (line.empty() || line[0] == '%') continue;
        std::istringstream ss(line);
        std::string a, b, c;
        if (!(ss >> a >> b >> c)) throw ParseError(name, line_no, "malformed entry line");
        const long i = parse_index(name, line_no, a);
        const long j = parse_index(name, line_no, b);
        const double v = parse_double(name, line_no, c);
        if (i < 1 || i > rows || j < 1 || j > cols)
            throw ParseError(name, line_no, "index out of range");
        const int r = static_cast<int>(i - 1);
        const int col = static_cast<int>(j - 1);
        if (symmetry == "skew-symmetric") {
            if (r == col) throw ParseError(name, line_no, "skew-symmetric file stores a diagonal entry");
            if (r < col)
                throw ParseError(name, line_no,
                                 "skew-symmetric file must store the strict lower triangle");
            entries.push_back({r, col, v});
            entries.push_back({col, r, -v});
        } else if (symmetry == "symmetric") {
            entries.push_back({r, col, v});
            if (r != col) entries.push_back({col, r, v});
        } else {
            entries.push_back({r, col, v});
        }
        ++seen;
    }

    CsrMatrix m = CsrMatrix::from_triplets(static_cast<int>(rows), static_cast<int>(cols),
                                           std::move(entries));
    Structure structure = Structure::general;
    if (symmetry == "skew-symmetric") {
        structure = Structure::skew;
    } else {
        const double defect = m.skew_defect();
        const double scale = m.max_abs();
        if (scale == 0.0 || defect <= options.skew_tol * scale) structure = Structure::skew;
    }
    if (options.require_skew && structure != Structure::skew)
        throw ParseError(name, 0,
                         "matrix failed skew-symmetry validation (max|A+A^T| = " +
                             std::to_string(m.skew_defect()) + ")");
    return LinearOperator::sparse(std::move(m), structure);
}

namespace {

std::string format_double(double v) {
    char buf[32];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, p);
}

}  // namespace

void save_matrix_market(const std::filesystem::path& path, const LinearOperator& op) {
    std::ofstream out(path);
    if (!out) throw ParseError(path.string(), 0, "cannot open file for writing");
    const int n = op.n();
    const std::vector<double> a = op.dense_row_major();
    const bool skew = op.structure() == Structure::skew;

    std::vector<std::pair<std::pair<int, int>, double>> entries;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double v = a[static_cast<std::size_t>(i) * n + j];
            if (v == 0.0) continue;
            if (skew && i <= j) continue;  // strict lower triangle only
            entries.push_back({{i, j}, v});
        }

    out << "%%MatrixMarket matrix coordinate real " << (skew ? "skew-symmetric" : "general")
        << "\n";
    out << n << " " << n << " " << entries.size() << "\n";
    for (const auto& [ij, v] : entries)
        out << ij.first + 1 << " " << ij.second + 1 << " " << format_double(v) << "\n";
    if (!out) throw ParseError(path.string(), 0, "write failure");
}

Vector load_vector(const std::filesystem::path& path) {
    std::ifstream in(path);
    const std::string name = path.string();
    if (!in) throw ParseError(name, 0, "cannot open file");
    Vector v;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        // Trim whitespace; skip blanks and comments.
        const auto begin = line.find_first_not_of(" \t\r");
        if (begin == std::string::npos) continue;
        const auto end = line.find_last_not_of(" \t\r");
        const std::string tok = line.substr(begin, end - begin + 1);
        if (tok[0] == '%' || tok[0] == '#') continue;
        v.push_back(parse_double(name, line_no, tok));
    }
    return v;
}

void save_vector(const std::filesystem::path& path, const Vector& v) {
    std::ofstream out(path);
    if (!out) throw ParseError(path.string(), 0, "cannot open file for writing");
    for (double x : v) out << format_double(x) << "\n";
    if (!out) throw ParseError(path.string(), 0, "write failure");
}

}  // namespace skrylov
