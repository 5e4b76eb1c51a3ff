#include "cutspec/matrix_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "cutspec/errors.hpp"

namespace cutspec {

namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

// Parses a signed decimal at the start of s. Returns characters consumed, 0 on failure.
std::size_t parse_double_prefix(std::string_view s, double& value) {
    std::size_t skip = 0;
    if (!s.empty() && s[0] == '+') skip = 1;
    if (skip == 1 && s.size() > 1 && (s[1] == '+' || s[1] == '-')) return 0;
    const char* begin = s.data() + skip;
    auto [ptr, ec] = std::from_chars(begin, s.data() + s.size(), value);
    if (ec != std::errc()) return 0;
    return static_cast<std::size_t>(ptr - s.data());
}

struct Token {
    std::string_view text;
    std::size_t line;
    std::size_t column;
};

/// Splits text into lines and whitespace-separated tokens, skipping '%' comments.
class MarketScanner {
public:
    explicit MarketScanner(std::string_view text) : text_(text) {}

    // Returns the next non-comment, non-blank line's tokens; false at end of input.
    bool next_line(std::vector<Token>& tokens) {
        tokens.clear();
        while (pos_ < text_.size()) {
            const std::size_t end = std::min(text_.find('\n', pos_), text_.size());
            std::string_view ln = text_.substr(pos_, end - pos_);
            ++line_;
            pos_ = end + 1;
            if (!ln.empty() && ln.back() == '\r') ln.remove_suffix(1);
            if (!ln.empty() && ln[0] == '%') continue;
            std::size_t i = 0;
            while (i < ln.size()) {
                while (i < ln.size() && std::isspace(static_cast<unsigned char>(ln[i]))) ++i;
                if (i >= ln.size()) break;
                const std::size_t start = i;
                while (i < ln.size() && !std::isspace(static_cast<unsigned char>(ln[i]))) ++i;
                tokens.push_back({ln.substr(start, i - start), line_, start + 1});
            }
            if (!tokens.empty()) return true;
        }
        return false;
    }

    std::size_t line() const { return line_; }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 0;
};

double number(const Token& t) {
    double v = 0.0;
    if (parse_double_prefix(t.text, v) != t.text.size()) {
        throw ParseError("non-numeric token '" + std::string(t.text) + "'", t.line, t.column);
    }
    return v;
}

std::size_t positive_integer(const Token& t, const char* what) {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc() || ptr != t.text.data() + t.text.size()) {
        throw ParseError(std::string("expected integer ") + what + ", got '" + std::string(t.text) + "'", t.line,
                         t.column);
    }
    return v;
}

Matrix parse_market(std::string_view text) {
    const std::size_t banner_end = std::min(text.find('\n'), text.size());
    std::string_view banner = text.substr(0, banner_end);
    if (!banner.empty() && banner.back() == '\r') banner.remove_suffix(1);
    std::istringstream hs{std::string(banner)};
    std::string magic, object, layout, field, symmetry;
    hs >> magic >> object >> layout >> field >> symmetry;
    if (magic != "%%MatrixMarket") throw ParseError("missing %%MatrixMarket banner", 1, 1);
    object = lower(object);
    layout = lower(layout);
    field = lower(field);
    symmetry = lower(symmetry);
    if (object != "matrix") throw ParseError("unsupported object '" + object + "'", 1, 16);
    if (layout != "array" && layout != "coordinate") throw ParseError("unsupported layout '" + layout + "'", 1, 23);
    if (field != "real" && field != "double" && field != "integer" && field != "complex" && field != "pattern") {
        throw ParseError("unsupported field '" + field + "'", 1, 1);
    }
    if (symmetry != "general" && symmetry != "symmetric" && symmetry != "skew-symmetric" &&
        symmetry != "hermitian") {
        throw ParseError("unsupported symmetry '" + symmetry + "'", 1, 1);
    }
    const bool is_array = layout == "array";
    const bool complex_field = field == "complex";
    const bool pattern = field == "pattern";
    if (is_array && pattern) throw ParseError("pattern field requires coordinate layout", 1, 1);
    if (symmetry == "hermitian" && !complex_field) {
        // Hermitian over a real field is plain symmetric.
        symmetry = "symmetric";
    }

    MarketScanner scan(text.substr(std::min(banner_end + 1, text.size())));
    std::vector<Token> tok;
    auto line_of = [&](std::size_t l) { return l + 1; };
    if (!scan.next_line(tok)) throw ParseError("missing size line", 2, 1);
    for (auto& t : tok) t.line = line_of(t.line);
    const std::size_t want = is_array ? 2 : 3;
    if (tok.size() != want) {
        throw ParseError("size line needs " + std::to_string(want) + " integers", tok[0].line, tok[0].column);
    }
    const std::size_t m = positive_integer(tok[0], "row count");
    const std::size_t n = positive_integer(tok[1], "column count");
    if (m == 0 || n == 0) throw DimensionError("matrix dimensions must be positive");
    const bool symmetric_kind = symmetry != "general";
    if (symmetric_kind && m != n) throw DimensionError("symmetric storage requires a square matrix");

    std::vector<Complex> e(m * n);
    const std::size_t per_entry = complex_field ? 2 : (pattern ? 0 : 1);

    auto read_value = [&](const std::vector<Token>& t, std::size_t offset) -> Complex {
        if (pattern) return Complex(1.0, 0.0);
        if (t.size() != offset + per_entry) {
            throw ParseError("expected " + std::to_string(offset + per_entry) + " tokens, found " +
                                 std::to_string(t.size()),
                             t[0].line, t[0].column);
        }
        const double re = number(t[offset]);
        const double im = complex_field ? number(t[offset + 1]) : 0.0;
        return {re, im};
    };
    auto mirror = [&](std::size_t i, std::size_t j, Complex v) {
        e[i * n + j] = v;
        if (i == j) {
            if (symmetry == "skew-symmetric" && v != Complex{}) {
                throw DimensionError("skew-symmetric matrix has a nonzero diagonal entry");
            }
            return;
        }
        if (symmetry == "symmetric") e[j * n + i] = v;
        if (symmetry == "skew-symmetric") e[j * n + i] = -v;
        if (symmetry == "hermitian") e[j * n + i] = std::conj(v);
    };

    if (is_array) {
        // Column-major; symmetric kinds store the lower triangle only.
        std::size_t count = 0;
        std::size_t expected = 0;
        if (!symmetric_kind) expected = m * n;
        else if (symmetry == "skew-symmetric") expected = n * (n - 1) / 2;
        else expected = n * (n + 1) / 2;
        std::size_t col = 0;
        std::size_t row = symmetry == "skew-symmetric" ? 1 : 0;
        while (scan.next_line(tok)) {
            for (auto& t : tok) t.line = line_of(t.line);
            if (count >= expected) throw ParseError("more entries than the size line allows", tok[0].line, tok[0].column);
            const Complex v = read_value(tok, 0);
            if (!symmetric_kind) {
                e[row * n + col] = v;
                if (++row == m) {
                    row = 0;
                    ++col;
                }
            } else {
                mirror(row, col, v);
                if (++row == n) {
                    ++col;
                    row = symmetry == "skew-symmetric" ? col + 1 : col;
                }
            }
            ++count;
        }
        if (count != expected) {
            throw DimensionError("expected " + std::to_string(expected) + " entries, found " + std::to_string(count));
        }
    } else {
        const std::size_t nnz = positive_integer(tok[2], "entry count");
        std::size_t count = 0;
        while (scan.next_line(tok)) {
            for (auto& t : tok) t.line = line_of(t.line);
            if (count >= nnz) throw ParseError("more entries than the size line allows", tok[0].line, tok[0].column);
            if (tok.size() < 2) throw ParseError("coordinate entry needs row and column", tok[0].line, tok[0].column);
            const std::size_t i = positive_integer(tok[0], "row index");
            const std::size_t j = positive_integer(tok[1], "column index");
            if (i < 1 || i > m || j < 1 || j > n) {
                throw ParseError("coordinate (" + std::to_string(i) + ", " + std::to_string(j) + ") out of range",
                                 tok[0].line, tok[0].column);
            }
            if (pattern && tok.size() != 2) {
                throw ParseError("pattern entries carry no value", tok[2].line, tok[2].column);
            }
            const Complex v = read_value(tok, 2);
            if (symmetric_kind) {
                if (j > i) throw ParseError("symmetric storage expects the lower triangle", tok[0].line, tok[0].column);
                mirror(i - 1, j - 1, v);
            } else {
                e[(i - 1) * n + (j - 1)] += v;
            }
            ++count;
        }
        if (count != nnz) {
            throw DimensionError("expected " + std::to_string(nnz) + " entries, found " + std::to_string(count));
        }
    }
    return Matrix(m, n, std::move(e), HermitianCheck::tolerant);
}

Matrix parse_csv(std::string_view text) {
    std::vector<Complex> e;
    std::size_t cols = 0;
    std::size_t rows = 0;
    std::size_t line = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const std::size_t end = std::min(text.find('\n', pos), text.size());
        std::string_view ln = text.substr(pos, end - pos);
        pos = end + 1;
        ++line;
        if (!ln.empty() && ln.back() == '\r') ln.remove_suffix(1);
        if (ln.find_first_not_of(" \t") == std::string_view::npos) continue;
        if (ln[ln.find_first_not_of(" \t")] == '#') continue;
        std::size_t count = 0;
        std::size_t start = 0;
        while (true) {
            const std::size_t comma = std::min(ln.find(',', start), ln.size());
            std::string_view cell = ln.substr(start, comma - start);
            std::size_t lead = 0;
            while (lead < cell.size() && std::isspace(static_cast<unsigned char>(cell[lead]))) ++lead;
            std::size_t trail = cell.size();
            while (trail > lead && std::isspace(static_cast<unsigned char>(cell[trail - 1]))) --trail;
            e.push_back(parse_complex_token(cell.substr(lead, trail - lead), line, start + lead + 1));
            ++count;
            if (comma >= ln.size()) break;
            start = comma + 1;
        }
        if (rows == 0) {
            cols = count;
        } else if (count != cols) {
            throw ParseError("row has " + std::to_string(count) + " fields, expected " + std::to_string(cols), line, 1);
        }
        ++rows;
    }
    if (rows == 0) throw DimensionError("CSV input contains no rows");
    return Matrix(rows, cols, std::move(e), HermitianCheck::tolerant);
}

}  // namespace

Complex parse_complex_token(std::string_view token, std::size_t line, std::size_t column) {
    auto fail = [&] { throw ParseError("non-numeric token '" + std::string(token) + "'", line, column); };
    if (token.empty()) fail();
    if (token.back() != 'i') {
        double re = 0.0;
        if (parse_double_prefix(token, re) != token.size()) fail();
        return {re, 0.0};
    }
    std::string_view body = token.substr(0, token.size() - 1);
    // Imaginary-only forms: "2i", "-i", "i".
    double im = 0.0;
    if (body.empty() || body == "+") return {0.0, 1.0};
    if (body == "-") return {0.0, -1.0};
    if (parse_double_prefix(body, im) == body.size()) return {0.0, im};
    double re = 0.0;
    const std::size_t used = parse_double_prefix(body, re);
    if (used == 0 || used >= body.size()) fail();
    std::string_view rest = body.substr(used);
    if (rest[0] != '+' && rest[0] != '-') fail();
    if (rest.size() == 1) return {re, rest[0] == '+' ? 1.0 : -1.0};
    const bool negative = rest[0] == '-';
    rest.remove_prefix(1);
    if (rest[0] == '+' || rest[0] == '-') fail();
    if (parse_double_prefix(rest, im) != rest.size()) fail();
    return {re, negative ? -im : im};
}

Matrix parse_matrix(std::string_view text, MatrixFormat format) {
    return format == MatrixFormat::matrix_market ? parse_market(text) : parse_csv(text);
}

Matrix load_matrix(std::istream& in, MatrixFormat format) {
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_matrix(buf.str(), format);
}

Matrix load_matrix_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw PreconditionError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    const std::string ext = lower(path.substr(path.find_last_of('.') == std::string::npos ? path.size()
                                                                                          : path.find_last_of('.')));
    MatrixFormat format = MatrixFormat::csv;
    if (ext == ".mtx" || ext == ".mm" || text.rfind("%%MatrixMarket", 0) == 0) format = MatrixFormat::matrix_market;
    return parse_matrix(text, format);
}

void write_matrix_market(std::ostream& out, const Matrix& a) {
    const bool real = a.is_real();
    out << "%%MatrixMarket matrix array " << (real ? "real" : "complex") << " general\n";
    out << a.rows() << ' ' << a.cols() << '\n';
    char buf[64];
    for (std::size_t j = 0; j < a.cols(); ++j) {
        for (std::size_t i = 0; i < a.rows(); ++i) {
            const Complex z = a(i, j);
            std::snprintf(buf, sizeof buf, "%.17g", z.real());
            out << buf;
            if (!real) {
                std::snprintf(buf, sizeof buf, "%.17g", z.imag());
                out << ' ' << buf;
            }
            out << '\n';
        }
    }
}

std::string to_matrix_market(const Matrix& a) {
    std::ostringstream out;
    write_matrix_market(out, a);
    return out.str();
}

void save_matrix_file(const std::string& path, const Matrix& a) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw PreconditionError("cannot write '" + path + "'");
    write_matrix_market(out, a);
    if (!out) throw PreconditionError("write to '" + path + "' failed");
}

}  // namespace cutspec
