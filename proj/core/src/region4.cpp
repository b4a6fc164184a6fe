#include "perron/region4.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

namespace perron {

std::vector<std::vector<double>> simplex_grid(int m, int resolution) {
    if (m < 1 || resolution < 1) throw DimensionMismatch("grid shape must be positive");
    std::vector<std::vector<double>> out;
    std::vector<int> counts(m, 0);
    const double step = 1.0 / resolution;
    auto recurse = [&](auto&& self, int slot, int remaining) -> void {
        if (slot == m - 1) {
            counts[slot] = remaining;
            std::vector<double> w(m);
            for (int i = 0; i < m; ++i) w[i] = counts[i] * step;
            out.push_back(std::move(w));
            return;
        }
        for (int c = 0; c <= remaining; ++c) {
            counts[slot] = c;
            self(self, slot + 1, remaining - c);
        }
    };
    recurse(recurse, 0, resolution);
    return out;
}

ItoArc region_arc() {
    return classify_arc(4, FareyFraction{1, 3}, FareyFraction{1, 4});
}

namespace {

// Roots of the arc polynomial arranged as (1, real root, pair member with
// positive imaginary part, its conjugate).
std::vector<Complex> ordered_region_nodes(const RootSet& rs) {
    std::vector<Complex> nodes = rs.values;
    if (nodes.size() != 4) throw DimensionMismatch("expected a quartic");
    auto near_one = std::min_element(nodes.begin(), nodes.end(),
                                     [](Complex a, Complex b) {
                                         return std::abs(a - 1.0) < std::abs(b - 1.0);
                                     });
    std::swap(*nodes.begin(), *near_one);
    std::vector<Complex> rest(nodes.begin() + 1, nodes.end());
    std::vector<Complex> reals;
    std::vector<Complex> uppers;
    for (Complex z : rest) {
        if (std::abs(z.imag()) <= 1e-8) {
            reals.push_back(Complex(z.real(), 0.0));
        } else if (z.imag() > 0.0) {
            uppers.push_back(z);
        }
    }
    if (reals.size() != 1 || uppers.size() != 1) {
        throw PairingFailure("quartic roots did not split into a real root and a pair");
    }
    return {nodes[0], reals[0], uppers[0], std::conj(uppers[0])};
}

RegionPoint sweep_point(const std::vector<Complex>& nodes, const std::vector<double>& w,
                        double alpha, bool mirrored) {
    Complex at_real = 0.0;
    Complex at_pair = 0.0;
    Complex pr = 1.0;
    Complex pz = 1.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        at_real += w[i] * pr;
        at_pair += w[i] * pz;
        pr *= nodes[1];
        pz *= nodes[2];
    }
    RegionPoint p;
    p.lambda = at_real.real();
    p.alpha_coord = at_pair.real();
    p.omega_coord = mirrored ? -at_pair.imag() : at_pair.imag();
    p.source = RegionSource::TypeISweep;
    p.sweep_alpha = alpha;
    p.conjugated = mirrored;
    return p;
}

}  // namespace

RegionSamples sample_typeI_region(int alpha_samples, int simplex_resolution,
                                  const Tolerance& tol) {
    if (alpha_samples < 2) throw DimensionMismatch("need at least two parameter samples");
    const ItoArc arc = region_arc();
    const std::vector<std::vector<double>> weights = simplex_grid(4, simplex_resolution);
    RegionSamples out;
    out.points.reserve(static_cast<std::size_t>(alpha_samples) * weights.size() * 2);
    for (int k = 0; k < alpha_samples; ++k) {
        const double alpha = static_cast<double>(k) / (alpha_samples - 1);
        const ItoPolynomial poly = ito_polynomial(arc, alpha);
        if (has_multiple_root(poly, tol)) {
            char buf[96];
            std::snprintf(buf, sizeof buf, "skipped alpha %.17g: multiple root", alpha);
            out.warnings.push_back(buf);
            continue;
        }
        const std::vector<Complex> nodes = ordered_region_nodes(roots(poly, tol));
        for (const std::vector<double>& w : weights) {
            out.points.push_back(sweep_point(nodes, w, alpha, false));
            out.points.push_back(sweep_point(nodes, w, alpha, true));
        }
    }
    return out;
}

PerronSimilarity box_similarity() {
    ComplexMatrix s(4, 4);
    s(0, 0) = 1.0;
    s(0, 1) = 1.0;
    for (int j = 0; j < 3; ++j) {
        for (int k = 0; k < 3; ++k) {
            s(1 + j, 1 + k) = unit_root(static_cast<long long>(j) * k, 3);
        }
    }
    ComplexMatrix sinv(4, 4);
    sinv(0, 0) = 1.0;
    for (int k = 0; k < 3; ++k) sinv(0, 1 + k) = -1.0 / 3.0;
    for (int j = 0; j < 3; ++j) {
        for (int k = 0; k < 3; ++k) {
            sinv(1 + j, 1 + k) = std::conj(unit_root(static_cast<long long>(j) * k, 3)) / 3.0;
        }
    }
    return PerronSimilarity(s, sinv);
}

RegionSamples sample_box_region(int x1_samples, int simplex_resolution, const Tolerance&) {
    if (x1_samples < 2) throw DimensionMismatch("need at least two grid samples");
    const std::vector<std::vector<double>> weights = simplex_grid(3, simplex_resolution);
    const Complex w1 = unit_root(1, 3);
    const Complex w2 = unit_root(2, 3);
    RegionSamples out;
    out.points.reserve(static_cast<std::size_t>(x1_samples) * weights.size());
    for (int k = 0; k < x1_samples; ++k) {
        const double x1 = static_cast<double>(k) / (x1_samples - 1);
        for (const std::vector<double>& w : weights) {
            const Complex z = w[0] + w[1] * w1 + w[2] * w2;
            RegionPoint p;
            p.lambda = x1;
            p.alpha_coord = z.real();
            p.omega_coord = z.imag();
            p.source = RegionSource::Box;
            out.points.push_back(p);
        }
    }
    return out;
}

ComplexMatrix region_point_witness(const RegionPoint& p, const Tolerance& tol) {
    // The stored coordinates fix the pair only as a set {a + iw, a - iw};
    // which member sat at the upper half plane node is not recorded, so try
    // both assignments and keep the one that realizes.
    const bool sweep = p.source == RegionSource::TypeISweep;
    PerronSimilarity sim = sweep
        ? vandermonde_similarity(
              ordered_region_nodes(roots(ito_polynomial(region_arc(), p.sweep_alpha), tol)),
              tol)
        : box_similarity();
    for (const double w : {p.omega_coord, -p.omega_coord}) {
        const Complex pair(p.alpha_coord, w);
        const ComplexVector values =
            sweep ? ComplexVector{Complex(1.0), Complex(p.lambda), pair, std::conj(pair)}
                  : ComplexVector{Complex(p.lambda), Complex(1.0), pair, std::conj(pair)};
        const ComplexMatrix witness = realizing_matrix(sim, SpectrumVector::make(values));
        if (is_stochastic(witness, tol)) return witness;
    }
    throw NotInRegion("reconstruction is not stochastic; point is outside the samples");
}

namespace {

const char* source_name(RegionSource s) {
    return s == RegionSource::TypeISweep ? "sweep" : "box";
}

void write_svg(const std::vector<RegionPoint>& points, std::ostream& out,
               double RegionPoint::*xm, double RegionPoint::*ym) {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" "
           "viewBox=\"-1.05 -1.05 2.1 2.1\" width=\"640\" height=\"640\">\n";
    out << "<rect x=\"-1.05\" y=\"-1.05\" width=\"2.1\" height=\"2.1\" fill=\"white\"/>\n";
    char buf[160];
    for (const RegionPoint& p : points) {
        const char* fill = p.source == RegionSource::Box ? "#e07a5f" : "#2a6f97";
        std::snprintf(buf, sizeof buf,
                      "<circle cx=\"%.6g\" cy=\"%.6g\" r=\"%.6g\" fill=\"%s\" "
                      "fill-opacity=\"0.35\"/>\n",
                      p.*xm, -(p.*ym), kSvgMarkerRadius, fill);
        out << buf;
    }
    out << "</svg>\n";
}

}  // namespace

void export_points(const std::vector<RegionPoint>& points, ExportFormat format,
                   std::ostream& out) {
    char buf[256];
    switch (format) {
        case ExportFormat::Csv:
            out << "lambda,alpha,omega,source\n";
            for (const RegionPoint& p : points) {
                std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%s\n", p.lambda,
                              p.alpha_coord, p.omega_coord, source_name(p.source));
                out << buf;
            }
            break;
        case ExportFormat::Json: {
            out << "{\"schema\":1,\"points\":[";
            bool first = true;
            for (const RegionPoint& p : points) {
                std::snprintf(buf, sizeof buf,
                              "%s{\"lambda\":%.17g,\"alpha\":%.17g,\"omega\":%.17g,"
                              "\"source\":\"%s\"}",
                              first ? "" : ",", p.lambda, p.alpha_coord, p.omega_coord,
                              source_name(p.source));
                out << buf;
                first = false;
            }
            out << "]}\n";
            break;
        }
        case ExportFormat::SvgAlphaOmega:
            write_svg(points, out, &RegionPoint::alpha_coord, &RegionPoint::omega_coord);
            break;
        case ExportFormat::SvgLambdaAlpha:
            write_svg(points, out, &RegionPoint::lambda, &RegionPoint::alpha_coord);
            break;
        case ExportFormat::SvgLambdaOmega:
            write_svg(points, out, &RegionPoint::lambda, &RegionPoint::omega_coord);
            break;
    }
}

}  // namespace perron
