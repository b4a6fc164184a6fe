#pragma once

// Shared helpers for the test suites: seeded random generators, a multiset
// comparison with greedy nearest matching, polynomial oracles built by
// convolution, a determinant-based characteristic polynomial probe, a
// bisection root finder, and a brute force Farey sequence oracle.

#include <perron/numerics.hpp>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

namespace testsupport {

using perron::Complex;
using perron::ComplexMatrix;
using perron::ComplexVector;

inline std::mt19937_64 make_rng(std::uint64_t seed) {
    return std::mt19937_64(seed);
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Complex random_complex(std::mt19937_64& rng, double scale = 1.0) {
    return Complex(uniform(rng, -scale, scale), uniform(rng, -scale, scale));
}

inline ComplexVector random_complex_vector(std::mt19937_64& rng, std::size_t n,
                                           double scale = 1.0) {
    ComplexVector v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = random_complex(rng, scale);
    return v;
}

inline ComplexVector random_nonneg_vector(std::mt19937_64& rng, std::size_t n,
                                          double scale = 1.0) {
    ComplexVector v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = Complex(uniform(rng, 0.0, scale), 0.0);
    return v;
}

// Nonnegative entries summing to one.
inline ComplexVector random_simplex_point(std::mt19937_64& rng, std::size_t n) {
    ComplexVector v = random_nonneg_vector(rng, n, 1.0);
    double total = 0;
    for (std::size_t i = 0; i < n; ++i) total += v[i].real();
    if (total <= 0) {
        v[0] = Complex(1.0, 0.0);
        total = 1.0;
    }
    for (std::size_t i = 0; i < n; ++i) v[i] = Complex(v[i].real() / total, 0.0);
    return v;
}

inline ComplexMatrix random_complex_matrix(std::mt19937_64& rng, std::size_t n,
                                           double scale = 1.0) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = random_complex(rng, scale);
    return m;
}

// True when the two vectors agree as multisets: every entry of a can be
// matched to a distinct entry of b within tol, greedily taking the nearest
// unused candidate.
inline bool multiset_close(const ComplexVector& a, const ComplexVector& b, double tol) {
    if (a.size() != b.size()) return false;
    std::vector<bool> used(b.size(), false);
    for (std::size_t i = 0; i < a.size(); ++i) {
        double best = tol;
        std::size_t pick = b.size();
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (used[j]) continue;
            double d = std::abs(a[i] - b[j]);
            if (d <= best) {
                best = d;
                pick = j;
            }
        }
        if (pick == b.size()) return false;
        used[pick] = true;
    }
    return true;
}

// Monic polynomial with the given roots, coefficients ascending by degree.
inline std::vector<Complex> poly_from_roots(const std::vector<Complex>& roots) {
    std::vector<Complex> c{Complex(1.0, 0.0)};
    for (const Complex& r : roots) {
        std::vector<Complex> next(c.size() + 1, Complex(0.0, 0.0));
        for (std::size_t k = 0; k < c.size(); ++k) {
            next[k + 1] += c[k];
            next[k] -= r * c[k];
        }
        c = std::move(next);
    }
    return c;
}

inline Complex eval_poly(const std::vector<Complex>& coeffs, Complex t) {
    Complex acc(0.0, 0.0);
    for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * t + coeffs[k];
    return acc;
}

// det(z I - M), an independent handle on the characteristic polynomial.
inline Complex char_poly_at(const ComplexMatrix& m, Complex z) {
    ComplexMatrix a(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            a(i, j) = (i == j ? z : Complex(0.0, 0.0)) - m(i, j);
    return perron::lu_determinant(a);
}

// Sign-change bisection; f(lo) and f(hi) must straddle zero.
inline double bisect(const std::function<double(double)>& f, double lo, double hi,
                     double tol) {
    double flo = f(lo);
    for (int it = 0; it < 200 && hi - lo > tol; ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = f(mid);
        if ((flo <= 0) == (fm <= 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// All reduced fractions p/q in [0, 1] with q <= n, ascending: the oracle
// against which the library's Farey enumeration is compared.
inline std::vector<std::pair<long long, long long>> brute_farey(int n) {
    std::vector<std::pair<long long, long long>> out;
    for (long long q = 1; q <= n; ++q)
        for (long long p = 0; p <= q; ++p)
            if (std::gcd(p, q) == 1) out.emplace_back(p, q);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return a.first * b.second < b.first * a.second;
    });
    return out;
}

}  // namespace testsupport
