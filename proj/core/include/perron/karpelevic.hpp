#pragma once

#include <vector>

#include "perron/numerics.hpp"
#include "perron/similarity.hpp"

namespace perron {

// Reduced fraction p/q with 0 <= p <= q, q >= 1.
struct FareyFraction {
    long long p = 0;
    long long q = 1;
    double value() const { return static_cast<double>(p) / static_cast<double>(q); }
    friend bool operator==(const FareyFraction&, const FareyFraction&) = default;
};

FareyFraction make_fraction(long long p, long long q);

// All reduced fractions in [0, 1] with denominator at most n, ascending.
std::vector<FareyFraction> farey_fractions(int n);

// The boundary of the region of eigenvalues of n by n stochastic matrices
// decomposes into arcs between unit circle points at consecutive Farey
// angles. Each arc carries a polynomial family in a parameter alpha
// (beta = 1 - alpha), in one of four reduced shapes keyed by floor(n/q)
// and the relation between s and q*floor(n/q).
enum class ArcType { Zero, One, Two, Three };

struct ItoArc {
    int n = 0;
    FareyFraction pq;    // endpoint with the smaller denominator
    FareyFraction rs;    // endpoint with the larger denominator
    ArcType type = ArcType::Zero;
    int floor_nq = 0;
};

// Endpoints must be adjacent in the circular Farey order of level n with
// pq.q <= rs.q; InvalidEndpoints otherwise.
ItoArc classify_arc(int n, const FareyFraction& pq, const FareyFraction& rs);

// Monic real polynomial in ascending coefficient order.
//   Type 0:   (t - b)^n - a^n
//   Type I:   t^s - b t^(s-q) - a
//   Type II:  (t^q - b)^m - a^m t^(qm-s)          (s < qm)
//   Type III: t^(s-qm) (t^q - b)^m - a^m          (s > qm)
// with m = floor(n/q). AlphaOutOfRange unless 0 <= alpha <= 1.
struct ItoPolynomial {
    ItoArc arc;
    double alpha = 0;
    double beta = 1;
    std::vector<Complex> coeffs;  // ascending, leading coefficient one

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    Complex eval(Complex t) const;
    std::vector<Complex> derivative() const;
};

ItoPolynomial ito_polynomial(const ItoArc& arc, double alpha);

// Residual of the unreduced defining equation
// t^s (t^q - b)^m - a^m t^(qm) at the point t.
double full_ito_residual(const ItoArc& arc, double alpha, Complex t);

struct RootSet {
    std::vector<Complex> values;
    std::vector<char> clustered;  // root sits within 1e-7 of another root
    bool has_cluster = false;
    int iterations = 0;
};

// All roots at once. Type 0 factors in closed form; the other types run
// simultaneous Durand-Kerner iteration from a circle of initial guesses
// followed by Newton polishing. NoConvergence after 500 sweeps.
RootSet roots(const ItoPolynomial& p, const Tolerance& tol = {});

// Multiple root test. The t^n - b t - a family (Type I with q = s-1) and
// Type 0 use closed forms; everything else goes through the Sylvester
// matrix of (f, f') with a scale-relative minimum pivot test.
bool has_multiple_root(const ItoPolynomial& p, const Tolerance& tol = {});

// The general path by itself, exposed for cross-checking. Returns the
// resultant value; the verdict out-parameter reports the pivot test.
Complex sylvester_resultant(const ItoPolynomial& p, bool* multiple = nullptr);

// Companion realizer for a Type I arc: shifted identity on top, last row
// alpha, then beta at position s - q. Its characteristic polynomial is the
// arc polynomial, and it is stochastic. WrongArcType for other arcs.
ComplexMatrix type1_companion(const ItoArc& arc, double alpha);

// Circulant realizer (b, a, 0, ..., 0) for a Type 0 arc of level n.
ComplexMatrix type0_circulant(int n, double alpha);

// Vandermonde similarity on the given nodes: column j holds the powers of
// root j, the root closest to 1 moved first. MultipleRoots when any pair of
// nodes is closer than 1e-7 or no node is near 1.
PerronSimilarity vandermonde_similarity(const std::vector<Complex>& nodes,
                                        const Tolerance& tol = {});

struct ThetaBoundary {
    struct Sample {
        Complex z;
        double alpha = 0;
        ItoArc arc;
    };
    int n = 0;
    std::vector<Sample> samples;  // closed polyline in circular order
};

// Traces every arc by sweeping alpha from 1 to 0 with nearest-root
// continuation (the alpha = 1 endpoint is always a simple root). Endpoint
// samples are exact unit circle points. BranchTrackingFailure when
// consecutive samples jump farther than 0.2.
ThetaBoundary theta_boundary(int n, int samples_per_arc, const Tolerance& tol = {});

// Even-odd ray test against the boundary polyline; points within tol of
// the polyline count as inside.
bool theta_contains(Complex lambda, const ThetaBoundary& boundary, double tol);

// Probes (1 + 10 tol) lambda; extremal points leave the region under that
// push. Zero is non-extremal by convention. NotInRegion when lambda is not
// contained to begin with.
bool is_extremal_in_theta(Complex lambda, const ThetaBoundary& boundary, double tol);

}  // namespace perron
