#include "perron/text.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace perron {

std::string format_real(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string format_complex(const Complex& z) {
    if (z.imag() == 0.0) return format_real(z.real());
    if (z.real() == 0.0) return format_real(z.imag()) + "i";
    std::string s = format_real(z.real());
    if (z.imag() >= 0.0) s += "+";
    s += format_real(z.imag());
    s += "i";
    return s;
}

namespace {

std::size_t skip_ws(std::string_view s, std::size_t i) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    return i;
}

// Parses a floating literal starting at i. A bare sign with no digits fails.
bool parse_number(std::string_view s, std::size_t& i, double& out) {
    const char* first = s.data() + i;
    const char* last = s.data() + s.size();
    auto res = std::from_chars(first, last, out);
    if (res.ec != std::errc{} || res.ptr == first) return false;
    if (!std::isfinite(out)) return false;
    i += static_cast<std::size_t>(res.ptr - first);
    return true;
}

}  // namespace

Complex parse_complex(std::string_view text, std::size_t offset_base) {
    std::size_t i = skip_ws(text, 0);
    if (i == text.size()) throw ParseError("empty complex literal", offset_base + i);
    if (text[i] == 'i') {
        throw ParseError("bare 'i' is not a literal, write '1i'", offset_base + i);
    }
    double first = 0;
    if (!parse_number(text, i, first)) {
        throw ParseError("expected a number", offset_base + i);
    }
    if (i < text.size() && text[i] == 'i') {
        ++i;
        i = skip_ws(text, i);
        if (i != text.size()) throw ParseError("trailing characters", offset_base + i);
        return {0.0, first};
    }
    std::size_t j = skip_ws(text, i);
    if (j == text.size()) return {first, 0.0};
    const char sign_ch = text[j];
    if (sign_ch != '+' && sign_ch != '-') {
        throw ParseError("expected '+', '-' or 'i'", offset_base + j);
    }
    ++j;
    j = skip_ws(text, j);
    if (j < text.size() && (text[j] == 'i')) {
        throw ParseError("imaginary unit needs a coefficient, write '1i'", offset_base + j);
    }
    if (j < text.size() && (text[j] == '+' || text[j] == '-')) {
        throw ParseError("doubled sign", offset_base + j);
    }
    double second = 0;
    if (!parse_number(text, j, second)) {
        throw ParseError("expected the imaginary coefficient", offset_base + j);
    }
    if (j >= text.size() || text[j] != 'i') {
        throw ParseError("expected 'i' after the imaginary coefficient", offset_base + j);
    }
    ++j;
    j = skip_ws(text, j);
    if (j != text.size()) throw ParseError("trailing characters", offset_base + j);
    return {first, sign_ch == '-' ? -second : second};
}

}  // namespace perron
