#pragma once

#include <string>
#include <string_view>

#include "perron/numerics.hpp"

namespace perron {

// Text form of a complex scalar, used by every textual interface:
//   "a"      real only
//   "bi"     imaginary only, the unit must carry a coefficient ("1i", not "i")
//   "a+bi" / "a-bi"
// printed with 17 significant digits.
std::string format_complex(const Complex& z);
std::string format_real(double x);

// Parses one complex literal. offset_base shifts positions reported in
// ParseError so callers embedding the token in a larger string can report
// absolute columns.
Complex parse_complex(std::string_view text, std::size_t offset_base = 0);

}  // namespace perron
