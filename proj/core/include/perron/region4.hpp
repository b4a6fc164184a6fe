#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "perron/karpelevic.hpp"
#include "perron/numerics.hpp"
#include "perron/similarity.hpp"

namespace perron {

// Sampling of the order four stochastic spectra region: the set of
// (lambda, alpha, omega) for which {1, lambda, alpha + i omega,
// alpha - i omega} is the spectrum of a 4 by 4 stochastic matrix.

// Lattice weights on the standard simplex: every nonnegative integer
// composition of `resolution` into `m` parts, divided by `resolution`.
std::vector<std::vector<double>> simplex_grid(int m, int resolution);

enum class RegionSource { TypeISweep, Box };

struct RegionPoint {
    double lambda = 0;       // spectrum value at the second real eigenvalue
    double alpha_coord = 0;  // real part of the nonreal pair
    double omega_coord = 0;  // imaginary part of the nonreal pair
    RegionSource source = RegionSource::TypeISweep;
    double sweep_alpha = 0;  // arc parameter that produced the point (sweep only)
    bool conjugated = false; // mirrored copy with the pair conjugated
};

struct RegionSamples {
    std::vector<RegionPoint> points;
    std::vector<std::string> warnings;
};

// The arc of the order four boundary whose polynomial is t^4 - b t - a.
ItoArc region_arc();

// Convex combinations over the rows of the Vandermonde similarity on the
// roots of t^4 - b t - a, for alpha_samples evenly spaced arc parameters.
// Each sampled spectrum is realized by a polynomial in the arc companion
// matrix, hence stochastic. Both the point and its mirror image are kept.
// Parameters flagged as carrying a multiple root are skipped with a warning.
RegionSamples sample_typeI_region(int alpha_samples = 64, int simplex_resolution = 12,
                                  const Tolerance& tol = {});

// Similarity whose stochastic spectra form the product of an interval and
// the order three circulant triangle: first row (1, 1, 0, 0), Fourier
// matrix of order three in the lower right block. Exact inverse.
PerronSimilarity box_similarity();

// Spectra (x1, 1, z, conj z) with x1 on a grid over [0, 1] and z running
// over lattice points of the triangle with vertices 1, e^(2*pi*i/3),
// e^(-2*pi*i/3). The grid is conjugation symmetric on its own.
RegionSamples sample_box_region(int x1_samples = 32, int simplex_resolution = 12,
                                const Tolerance& tol = {});

// Rebuilds a stochastic matrix realizing the spectrum of a sampled point.
// NotInRegion when the reconstruction fails to be stochastic within tol.
ComplexMatrix region_point_witness(const RegionPoint& p, const Tolerance& tol = {});

// Marker radius, in data units, used by the SVG exports. Kept as part of
// the interface so raster checks can mirror exactly what the plot draws.
inline constexpr double kSvgMarkerRadius = 0.032;

enum class ExportFormat { Csv, Json, SvgAlphaOmega, SvgLambdaAlpha, SvgLambdaOmega };

void export_points(const std::vector<RegionPoint>& points, ExportFormat format,
                   std::ostream& out);

}  // namespace perron
