#pragma once

#include <string>
#include <string_view>

#include "perron/numerics.hpp"
#include "perron/similarity.hpp"

namespace perron {

// Comma separated complex entries, e.g. "1, -0.5+0.25i, -0.5-0.25i".
// ParseError positions refer to the full input string.
ComplexVector parse_spectrum(std::string_view text);

// One matrix row per line; entries split on commas or whitespace. Blank
// lines and lines starting with '#' are skipped.
ComplexMatrix parse_matrix_text(std::string_view text);
ComplexMatrix load_matrix_file(const std::string& path);

// Similarity specifiers:
//   dft:N                       Fourier matrix of order N
//   walsh:K                     K-fold Kronecker power of [[1,1],[1,-1]]
//   box3                        interval times triangle similarity
//   vandermonde:typeI:S,Q,ALPHA Vandermonde on the roots of t^S - b t^(S-Q) - a
//   kron:SPEC,SPEC,...          Kronecker product of sub-specifiers
//   file:PATH                   square matrix read from a text file
PerronSimilarity parse_similarity_spec(std::string_view spec, const Tolerance& tol = {});

}  // namespace perron
