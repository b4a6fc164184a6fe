#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "perron/numerics.hpp"

namespace perron {

// A candidate spectrum. perron_index is the position of the entry of
// largest modulus, smallest index winning ties.
struct SpectrumVector {
    ComplexVector values;
    std::size_t perron_index = 0;

    static SpectrumVector make(ComplexVector v);
    std::size_t size() const { return values.size(); }
};

// An invertible matrix S together with its cached inverse. The spectracone
// of S is the set of x for which S diag(x) S^-1 is entrywise nonnegative;
// the spectratope additionally requires unit row sums. The normalized flag
// records whether S is in canonical form: first column all ones, remaining
// columns of unit infinity norm, real columns first, nonreal columns in
// adjacent conjugate pairs.
class PerronSimilarity {
public:
    explicit PerronSimilarity(ComplexMatrix s, Tolerance tol = {});
    PerronSimilarity(ComplexMatrix s, ComplexMatrix s_inv, Tolerance tol = {});

    const ComplexMatrix& matrix() const { return s_; }
    const ComplexMatrix& inverse() const { return sinv_; }
    std::size_t order() const { return s_.rows(); }
    bool normalized() const { return normalized_; }

    // LU growth estimate from inverting S (1 when the inverse was supplied).
    // Values above 1e8 deserve a warning.
    double growth() const { return growth_; }
    bool ill_conditioned() const { return growth_ > 1e8; }

private:
    ComplexMatrix s_, sinv_;
    double growth_ = 1.0;
    bool normalized_ = false;
};

bool is_normalized_form(const ComplexMatrix& s, const Tolerance& tol = {});

// S diag(x) S^-1.
ComplexMatrix realizing_matrix(const PerronSimilarity& s, const SpectrumVector& x);

bool in_spectracone(const PerronSimilarity& s, const SpectrumVector& x,
                    const Tolerance& tol = {});
bool in_spectratope(const PerronSimilarity& s, const SpectrumVector& x,
                    const Tolerance& tol = {});

// Coefficients y with x^T = y^T S, i.e. the expansion of x over the rows
// of S. x lies in the row cone when y is nonnegative.
ComplexVector row_cone_coefficients(const PerronSimilarity& s, const SpectrumVector& x,
                                    const Tolerance& tol = {});

// Detects whether some column k of S is a rotated positive vector while row
// k of S^-1 is too, with the two phases cancelling; that is the definition
// of a Perron similarity made checkable. Positivity means every entry
// strictly exceeds eps_nonneg after dividing out the phase of the first
// entry. Returns the unique such k (0-based) or nullopt.
std::optional<std::size_t> is_perron_similarity(const ComplexMatrix& s,
                                                const Tolerance& tol = {});

// result = P dv S dw Q where P maps row i to row row_perm[i] of S and Q
// places column j of S at position col_perm[j]. v must be strictly
// positive, w totally nonzero (InvalidScaling otherwise).
ComplexMatrix equivalence_transform(const ComplexMatrix& s,
                                    const std::vector<std::size_t>& row_perm,
                                    const ComplexVector& v, const ComplexVector& w,
                                    const std::vector<std::size_t>& col_perm,
                                    const Tolerance& tol = {});

struct EquivalenceTransform {
    std::vector<std::size_t> row_perm;
    ComplexVector v;
    ComplexVector w;
    std::vector<std::size_t> col_perm;
};

struct NormalizeResult {
    PerronSimilarity similarity;       // canonical form T
    EquivalenceTransform transform;    // S = P dv T dw Q
    std::size_t perron_column;         // column of S that became column 0
};

// Rescales and reorders columns of a Perron similarity into canonical form.
// Conjugate mates are matched greedily at 1e-8; a nonreal column without a
// mate raises PairingFailure.
NormalizeResult normalize(const ComplexMatrix& s, const Tolerance& tol = {});

// Closed half-space {x : Re<normal, x> >= offset}.
struct HalfSpace {
    ComplexVector normal;
    double offset = 0.0;
    bool contains(const ComplexVector& x, double eps) const;
};

struct HalfSpaceSystem {
    std::vector<HalfSpace> cone;  // 3 n^2 half-spaces cutting out the spectracone
    std::vector<HalfSpace> tope;  // 4 n more whose intersection pins row sums at one
};

HalfSpaceSystem halfspace_description(const PerronSimilarity& s);

bool in_halfspace_cone(const HalfSpaceSystem& h, const ComplexVector& x, double eps);
bool in_halfspace_tope(const HalfSpaceSystem& h, const ComplexVector& x, double eps);

// A similarity is ideal when its spectracone coincides with its row cone,
// equivalently when every row of S is realizable and the all-ones vector
// expands nonnegatively over the rows.
bool is_ideal(const PerronSimilarity& s, const Tolerance& tol = {});

struct ConditionViolation {
    std::string condition;  // "spectral_radius", "self_conjugate", "moments", "jll", "newton"
    int k = 0;
    int l = 0;
};

struct ConditionReport {
    bool spectral_radius_ok = false;
    bool self_conjugate_ok = false;
    bool moments_ok = false;
    bool jll_ok = false;
    bool newton_ok = false;
    int horizon = 0;
    std::optional<ConditionViolation> first_violation;
    bool all_ok() const {
        return spectral_radius_ok && self_conjugate_ok && moments_ok && jll_ok && newton_ok;
    }
};

// Classical necessary conditions for a spectrum to be realizable by a
// nonnegative matrix: spectral radius attained by a member, closure under
// conjugation, nonnegative power moments s_k up to the horizon, the
// moment inequalities s_k^l <= n^(l-1) s_kl, and Newton's inequalities on
// the spectrum shifted so the Perron entry maps to zero.
ConditionReport check_necessary_conditions(const SpectrumVector& x, int horizon = 8,
                                           const Tolerance& tol = {});

struct BrauerResult {
    ComplexMatrix matrix;            // A + x y*
    Complex shifted_eigenvalue;      // lambda + y* x
};

// Rank-one update moving a single eigenvalue. Requires A x = lambda x
// within tolerance (NotAnEigenvector otherwise).
BrauerResult brauer_perturb(const ComplexMatrix& a, const ComplexVector& x,
                            Complex lambda, const ComplexVector& y,
                            const Tolerance& tol = {});

enum class BlendMode {
    Identity,  // alpha A + (1-alpha) I, spectrum 1 and alpha x_i + (1-alpha)
    Uniform,   // alpha A + ((1-alpha)/n) ones, spectrum 1 and alpha x_i
};

ComplexMatrix stochastic_blend(const ComplexMatrix& a, double alpha, BlendMode mode,
                               const Tolerance& tol = {});

// arccos of the normalized real inner product, pi/2 when either argument
// is the zero vector. Lies in [0, pi/2] whenever x and y both sit in a
// common spectracone.
double angle(const ComplexVector& x, const ComplexVector& y);

}  // namespace perron
