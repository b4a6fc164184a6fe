#pragma once

#include <vector>

#include "perron/numerics.hpp"
#include "perron/similarity.hpp"

namespace perron {

// Fourier matrix F(j,k) = w^(jk) with w = e^(-2*pi*i/n). F is symmetric,
// F^(-1) = conj(F)/n, and entries at quadrant angles are exact.
ComplexMatrix dft_matrix(int n);
ComplexMatrix dft_inverse(int n);
PerronSimilarity dft_similarity(int n);

// Circulant from its first row: C(i,j) = c[(j - i) mod n].
ComplexMatrix circulant(const ComplexVector& first_row);

// True when slot k and slot n-k hold conjugate values, the arrangement
// under which the Fourier transform of the slots is real.
bool symmetric_slots(const ComplexVector& x, const Tolerance& tol = {});

struct CirculantCertificate {
    bool realizable = false;
    ComplexVector reference;  // Fx/n, the entries of the would-be realizer
    ComplexMatrix realizer;   // F diag(x) F^(-1); nonnegative iff realizable
};

// Decides whether the slot-ordered spectrum x is the eigenvalue vector of a
// nonnegative circulant. With inverse_ordering the slots are read against
// the opposite transform orientation (conj(F) x / n), which transposes the
// realizer and never changes the verdict.
CirculantCertificate circulant_realizable(const ComplexVector& x, const Tolerance& tol = {},
                                          bool inverse_ordering = false);

struct BlockCirculantCertificate {
    bool realizable = false;
    int outer = 0;  // number of blocks
    int inner = 0;  // block size
    ComplexVector reference;  // Wx/(mn) for W the two level Fourier matrix
    ComplexMatrix realizer;   // W diag(x) W^(-1)
};

// Same decision against W = F_m (x) F_n, the similarity whose nonnegative
// orbit is the block circulants with circulant blocks. x has length m*n.
BlockCirculantCertificate block_circulant_realizable(const ComplexVector& x, int m, int n,
                                                     const Tolerance& tol = {});

// k-fold Kronecker power of [[1, 1], [1, -1]]; order 2^k, inverse H/2^k.
ComplexMatrix walsh(int k);
PerronSimilarity walsh_similarity(int k);

// The permutations under which the Walsh similarity realizes: perm j sends
// index a to a XOR j. Matrices built on them have (a, b) entry c[a XOR b].
std::vector<std::vector<std::size_t>> klein_perms(int k);

// Group algebra element sum_j c[j] P_j, equivalently 2^(-k) H diag(Hc) H.
ComplexMatrix klein_matrix(const ComplexVector& coeffs, int k);

struct KleinCertificate {
    bool realizable = false;
    ComplexVector reference;  // Hx/2^k
    ComplexMatrix realizer;   // klein_matrix(reference, k)
};

KleinCertificate klein_realizable(const ComplexVector& x, int k, const Tolerance& tol = {});

// Kronecker product of the factors with the inverse assembled factorwise.
// Every factor must pass the Perron similarity test; NotPerronSimilarity
// otherwise.
PerronSimilarity kron_similarity(const std::vector<ComplexMatrix>& factors,
                                 const Tolerance& tol = {});

}  // namespace perron
