#include "perron/specparse.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <utility>
#include <vector>

#include "perron/circulant.hpp"
#include "perron/karpelevic.hpp"
#include "perron/region4.hpp"
#include "perron/text.hpp"

namespace perron {

namespace {

std::string_view trim(std::string_view s, std::size_t* lead = nullptr) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    if (lead) *lead = b;
    return s.substr(b, e - b);
}

long long parse_int(std::string_view s, std::string_view what) {
    const std::string_view t = trim(s);
    long long value = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc{} || ptr != t.data() + t.size()) {
        throw ParseError(std::string(what) + " must be an integer", 0);
    }
    return value;
}

double parse_double(std::string_view s, std::string_view what) {
    const std::string_view t = trim(s);
    double value = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc{} || ptr != t.data() + t.size()) {
        throw ParseError(std::string(what) + " must be a number", 0);
    }
    return value;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

}  // namespace

ComplexVector parse_spectrum(std::string_view text) {
    if (trim(text).empty()) throw ParseError("spectrum is empty", 0);
    std::vector<Complex> values;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        if (i < text.size() && text[i] != ',') continue;
        std::size_t lead = 0;
        const std::string_view token = trim(text.substr(start, i - start), &lead);
        if (token.empty()) throw ParseError("empty spectrum entry", start + lead);
        values.push_back(parse_complex(token, start + lead));
        start = i + 1;
    }
    return ComplexVector(std::move(values));
}

ComplexMatrix parse_matrix_text(std::string_view text) {
    std::vector<std::vector<Complex>> rows;
    std::size_t line_start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        if (i < text.size() && text[i] != '\n') continue;
        std::size_t lead = 0;
        std::string_view line = trim(text.substr(line_start, i - line_start), &lead);
        const std::size_t line_offset = line_start + lead;
        line_start = i + 1;
        if (line.empty() || line.front() == '#') continue;
        std::vector<Complex> row;
        std::size_t pos = 0;
        while (pos < line.size()) {
            while (pos < line.size() &&
                   (line[pos] == ',' || std::isspace(static_cast<unsigned char>(line[pos])))) {
                ++pos;
            }
            if (pos >= line.size()) break;
            std::size_t end = pos;
            while (end < line.size() && line[end] != ',' &&
                   !std::isspace(static_cast<unsigned char>(line[end]))) {
                ++end;
            }
            row.push_back(parse_complex(line.substr(pos, end - pos), line_offset + pos));
            pos = end;
        }
        if (!row.empty()) rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError("matrix text holds no rows", 0);
    const std::size_t cols = rows.front().size();
    for (const auto& r : rows) {
        if (r.size() != cols) throw ParseError("matrix rows have uneven lengths", 0);
    }
    ComplexMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

ComplexMatrix load_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open matrix file: " + path, 0);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_matrix_text(buf.str());
}

namespace {

long long modular_inverse(long long a, long long m) {
    long long t = 0, new_t = 1;
    long long r = m, new_r = ((a % m) + m) % m;
    while (new_r != 0) {
        const long long quot = r / new_r;
        t -= quot * new_t;
        std::swap(t, new_t);
        r -= quot * new_r;
        std::swap(r, new_r);
    }
    if (r != 1) throw InvalidEndpoints("arc parameters must be coprime");
    return ((t % m) + m) % m;
}

PerronSimilarity vandermonde_from_spec(std::string_view args, const Tolerance& tol) {
    const std::vector<std::string_view> parts = split(args, ',');
    if (parts.size() != 3) {
        throw ParseError("vandermonde:typeI takes S,Q,ALPHA", 0);
    }
    const long long s = parse_int(parts[0], "S");
    const long long q = parse_int(parts[1], "Q");
    const double alpha = parse_double(parts[2], "ALPHA");
    if (s < 2 || q < 1 || q >= s) throw InvalidEndpoints("need 1 <= Q < S");
    if (q == 1) throw WrongArcType("Q = 1 names a type 0 arc, not type I");
    const long long p = modular_inverse(s, q);
    const long long r = (p * s - 1) / q;
    const ItoArc arc = classify_arc(static_cast<int>(s), FareyFraction{p, q}, FareyFraction{r, s});
    if (arc.type != ArcType::One) {
        throw WrongArcType("parameters do not name a type I arc");
    }
    const RootSet rs = roots(ito_polynomial(arc, alpha), tol);
    return vandermonde_similarity(rs.values, tol);
}

// kron sub-specifiers are comma separated, but sub-specifiers may hold
// commas of their own (vandermonde:typeI:5,4,0.5). A comma starts a new
// sub-specifier only when the piece after it introduces one.
std::vector<std::string_view> split_kron(std::string_view args) {
    std::vector<std::string_view> pieces = split(args, ',');
    std::vector<std::string_view> specs;
    auto introduces = [](std::string_view piece) {
        const std::string_view t = trim(piece);
        return t.find(':') != std::string_view::npos || t == "box3";
    };
    for (const std::string_view piece : pieces) {
        if (specs.empty() || introduces(piece)) {
            specs.push_back(piece);
        } else {
            const char* begin = specs.back().data();
            const char* end = piece.data() + piece.size();
            specs.back() = std::string_view(begin, static_cast<std::size_t>(end - begin));
        }
    }
    return specs;
}

}  // namespace

PerronSimilarity parse_similarity_spec(std::string_view spec, const Tolerance& tol) {
    const std::string_view s = trim(spec);
    if (s == "box3") return box_similarity();
    const std::size_t colon = s.find(':');
    if (colon == std::string_view::npos) {
        throw ParseError("unknown similarity specifier: " + std::string(s), 0);
    }
    const std::string_view head = s.substr(0, colon);
    const std::string_view args = s.substr(colon + 1);
    if (head == "dft") {
        const long long n = parse_int(args, "order");
        if (n < 1 || n > 4096) throw ParseError("order out of range", 0);
        return dft_similarity(static_cast<int>(n));
    }
    if (head == "walsh") {
        const long long k = parse_int(args, "exponent");
        if (k < 0 || k > 12) throw ParseError("exponent out of range", 0);
        return walsh_similarity(static_cast<int>(k));
    }
    if (head == "vandermonde") {
        constexpr std::string_view kind = "typeI:";
        if (args.substr(0, kind.size()) != kind) {
            throw ParseError("only vandermonde:typeI:... is supported", 0);
        }
        return vandermonde_from_spec(args.substr(kind.size()), tol);
    }
    if (head == "kron") {
        std::vector<ComplexMatrix> factors;
        for (const std::string_view sub : split_kron(args)) {
            factors.push_back(parse_similarity_spec(sub, tol).matrix());
        }
        return kron_similarity(factors, tol);
    }
    if (head == "file") {
        const ComplexMatrix m = load_matrix_file(std::string(trim(args)));
        if (!m.square()) throw ParseError("similarity matrix must be square", 0);
        return PerronSimilarity(m, tol);
    }
    throw ParseError("unknown similarity specifier: " + std::string(head), 0);
}

}  // namespace perron
