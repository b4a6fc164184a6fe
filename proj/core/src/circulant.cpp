#include "perron/circulant.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "perron/similarity.hpp"

namespace perron {

ComplexMatrix dft_matrix(int n) {
    if (n < 1) throw DimensionMismatch("Fourier matrix needs positive order");
    ComplexMatrix f(n, n);
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
            f(j, k) = unit_root(static_cast<long long>(j) * k, n);
        }
    }
    return f;
}

ComplexMatrix dft_inverse(int n) {
    ComplexMatrix f = dft_matrix(n);
    const double scale = 1.0 / n;
    ComplexMatrix inv(n, n);
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) inv(j, k) = std::conj(f(j, k)) * scale;
    }
    return inv;
}

PerronSimilarity dft_similarity(int n) {
    return PerronSimilarity(dft_matrix(n), dft_inverse(n));
}

ComplexMatrix circulant(const ComplexVector& first_row) {
    const std::size_t n = first_row.size();
    if (n == 0) throw DimensionMismatch("circulant needs at least one entry");
    ComplexMatrix c(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            c(i, j) = first_row[(j + n - i) % n];
        }
    }
    return c;
}

bool symmetric_slots(const ComplexVector& x, const Tolerance& tol) {
    const std::size_t n = x.size();
    const double scale = std::max(1.0, x.inf_norm());
    for (std::size_t k = 0; k < n; ++k) {
        if (std::abs(x[(n - k) % n] - std::conj(x[k])) > tol.eps_eq * scale) return false;
    }
    return true;
}

CirculantCertificate circulant_realizable(const ComplexVector& x, const Tolerance& tol,
                                          bool inverse_ordering) {
    const std::size_t n = x.size();
    if (n == 0) throw LengthMismatch("spectrum must not be empty");
    CirculantCertificate cert;
    cert.reference = ComplexVector(n);
    for (std::size_t k = 0; k < n; ++k) {
        Complex acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            Complex w = unit_root(static_cast<long long>(j) * k, n);
            if (inverse_ordering) w = std::conj(w);
            acc += w * x[j];
        }
        cert.reference[k] = acc / static_cast<double>(n);
    }
    cert.realizer = ComplexMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            cert.realizer(i, j) = cert.reference[(i + n - j) % n];
        }
    }
    cert.realizable = is_nonneg(cert.reference, tol);
    return cert;
}

BlockCirculantCertificate block_circulant_realizable(const ComplexVector& x, int m, int n,
                                                     const Tolerance& tol) {
    if (m < 1 || n < 1) throw DimensionMismatch("block shape must be positive");
    if (x.size() != static_cast<std::size_t>(m) * static_cast<std::size_t>(n)) {
        throw LengthMismatch("spectrum length must equal the block shape product");
    }
    const ComplexMatrix w = kron(dft_matrix(m), dft_matrix(n));
    const ComplexMatrix winv = kron(dft_inverse(m), dft_inverse(n));
    BlockCirculantCertificate cert;
    cert.outer = m;
    cert.inner = n;
    const ComplexVector y = w * x;
    cert.reference = (Complex(1.0 / (static_cast<double>(m) * n))) * y;
    cert.realizer = w * diagonal_matrix(x) * winv;
    cert.realizable = is_nonneg(cert.reference, tol);
    return cert;
}

ComplexMatrix walsh(int k) {
    if (k < 0) throw DimensionMismatch("Walsh exponent must be nonnegative");
    if (k > 20) throw DimensionMismatch("Walsh exponent too large");
    const std::size_t size = std::size_t{1} << k;
    ComplexMatrix h(size, size);
    for (std::size_t a = 0; a < size; ++a) {
        for (std::size_t b = 0; b < size; ++b) {
            h(a, b) = (std::popcount(a & b) & 1) ? -1.0 : 1.0;
        }
    }
    return h;
}

PerronSimilarity walsh_similarity(int k) {
    const ComplexMatrix h = walsh(k);
    const double scale = 1.0 / static_cast<double>(std::size_t{1} << k);
    return PerronSimilarity(h, scale * h);
}

std::vector<std::vector<std::size_t>> klein_perms(int k) {
    if (k < 0) throw DimensionMismatch("Walsh exponent must be nonnegative");
    if (k > 20) throw DimensionMismatch("Walsh exponent too large");
    const std::size_t size = std::size_t{1} << k;
    std::vector<std::vector<std::size_t>> perms(size, std::vector<std::size_t>(size));
    for (std::size_t j = 0; j < size; ++j) {
        for (std::size_t a = 0; a < size; ++a) perms[j][a] = a ^ j;
    }
    return perms;
}

ComplexMatrix klein_matrix(const ComplexVector& coeffs, int k) {
    const std::size_t size = std::size_t{1} << k;
    if (k < 0 || coeffs.size() != size) {
        throw LengthMismatch("coefficient count must be 2^k");
    }
    ComplexMatrix out(size, size);
    for (std::size_t a = 0; a < size; ++a) {
        for (std::size_t b = 0; b < size; ++b) out(a, b) = coeffs[a ^ b];
    }
    return out;
}

KleinCertificate klein_realizable(const ComplexVector& x, int k, const Tolerance& tol) {
    const std::size_t size = std::size_t{1} << std::max(k, 0);
    if (k < 0 || x.size() != size) throw LengthMismatch("spectrum length must be 2^k");
    const ComplexMatrix h = walsh(k);
    KleinCertificate cert;
    cert.reference = (Complex(1.0 / static_cast<double>(size))) * (h * x);
    cert.realizer = klein_matrix(cert.reference, k);
    cert.realizable = is_nonneg(cert.reference, tol);
    return cert;
}

PerronSimilarity kron_similarity(const std::vector<ComplexMatrix>& factors,
                                 const Tolerance& tol) {
    if (factors.empty()) throw DimensionMismatch("need at least one factor");
    ComplexMatrix s;
    ComplexMatrix sinv;
    bool first = true;
    for (const ComplexMatrix& f : factors) {
        if (!is_perron_similarity(f, tol)) {
            throw NotPerronSimilarity("every factor must be a Perron similarity");
        }
        const ComplexMatrix finv = inverse(f, tol);
        if (first) {
            s = f;
            sinv = finv;
            first = false;
        } else {
            s = kron(s, f);
            sinv = kron(sinv, finv);
        }
    }
    return PerronSimilarity(s, sinv, tol);
}

}  // namespace perron
