// Command line front end: realizability certificates for structured
// nonnegative matrices, arc polynomials of the stochastic eigenvalue
// region, and samplers for the order four region.
//
// Exit codes: 0 when a result was computed (including negative verdicts),
// 2 for usage and input errors, 3 when a numerical procedure failed.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "perron/circulant.hpp"
#include "perron/karpelevic.hpp"
#include "perron/numerics.hpp"
#include "perron/region4.hpp"
#include "perron/similarity.hpp"
#include "perron/specparse.hpp"
#include "perron/text.hpp"

using nlohmann::ordered_json;
using namespace perron;

namespace {

int g_exit_code = 0;

struct GlobalOpts {
    Tolerance tol;
    std::uint64_t seed = 0xC0FFEE;
};

ordered_json to_json(const ComplexVector& v) {
    ordered_json out = ordered_json::array();
    for (const Complex& z : v) out.push_back(format_complex(z));
    return out;
}

ordered_json to_json(const ComplexMatrix& m) {
    ordered_json out = ordered_json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(format_complex(m(i, j)));
        out.push_back(std::move(row));
    }
    return out;
}

ordered_json to_json(const std::vector<Complex>& v) {
    ordered_json out = ordered_json::array();
    for (const Complex& z : v) out.push_back(format_complex(z));
    return out;
}

void emit(const ordered_json& j) { std::cout << j.dump(2) << "\n"; }

void warn_conditioning(const PerronSimilarity& s) {
    if (s.ill_conditioned()) {
        std::cerr << "warning: similarity inversion growth " << s.growth()
                  << " exceeds 1e8; verdicts may be unreliable\n";
    }
}

FareyFraction parse_fraction(const std::string& text) {
    const std::size_t slash = text.find('/');
    if (slash == std::string::npos) {
        throw ParseError("fraction must look like P/Q", 0);
    }
    long long p = 0, q = 0;
    try {
        p = std::stoll(text.substr(0, slash));
        q = std::stoll(text.substr(slash + 1));
    } catch (const std::exception&) {
        throw ParseError("fraction must hold two integers", 0);
    }
    return make_fraction(p, q);
}

const char* arc_type_name(ArcType t) {
    switch (t) {
        case ArcType::Zero: return "0";
        case ArcType::One: return "I";
        case ArcType::Two: return "II";
        case ArcType::Three: return "III";
    }
    return "?";
}

struct OutputTarget {
    std::ofstream file;
    std::ostream* os = &std::cout;
    bool to_file = false;

    explicit OutputTarget(const std::string& path) {
        if (!path.empty()) {
            file.open(path);
            if (!file) throw ParseError("cannot open output file: " + path, 0);
            os = &file;
            to_file = true;
        }
    }
};

// ------------------------------------------------------------------
// Structure certificates
// ------------------------------------------------------------------

void setup_check_circulant(CLI::App& app, const GlobalOpts& g) {
    auto cmd = app.add_subcommand("check-circulant",
                                  "Decide realizability by a nonnegative circulant");
    auto spectrum = std::make_shared<std::string>();
    auto inverse_ordering = std::make_shared<bool>(false);
    cmd->add_option("spectrum", *spectrum, "comma separated complex eigenvalues, slot order")
        ->required();
    cmd->add_flag("--inverse-ordering", *inverse_ordering,
                  "read slots against the opposite transform orientation");
    cmd->callback([&g, spectrum, inverse_ordering] {
        const ComplexVector x = parse_spectrum(*spectrum);
        const CirculantCertificate cert = circulant_realizable(x, g.tol, *inverse_ordering);
        ordered_json j;
        j["schema"] = 1;
        j["order"] = x.size();
        j["verdict"] = cert.realizable ? "realizable" : "not_realizable";
        j["symmetric_slots"] = symmetric_slots(x, g.tol);
        j["certificate_reference_vector"] = to_json(cert.reference);
        j["realizer_matrix"] = to_json(cert.realizer);
        emit(j);
    });
}

void setup_check_block(CLI::App& app, const GlobalOpts& g) {
    auto cmd = app.add_subcommand(
        "check-block", "Decide realizability by a block circulant with circulant blocks");
    auto spectrum = std::make_shared<std::string>();
    auto outer = std::make_shared<int>(0);
    auto inner = std::make_shared<int>(0);
    cmd->add_option("spectrum", *spectrum, "comma separated complex eigenvalues")->required();
    cmd->add_option("--outer", *outer, "number of blocks")->required();
    cmd->add_option("--inner", *inner, "block size")->required();
    cmd->callback([&g, spectrum, outer, inner] {
        const ComplexVector x = parse_spectrum(*spectrum);
        const BlockCirculantCertificate cert =
            block_circulant_realizable(x, *outer, *inner, g.tol);
        ordered_json j;
        j["schema"] = 1;
        j["outer"] = cert.outer;
        j["inner"] = cert.inner;
        j["verdict"] = cert.realizable ? "realizable" : "not_realizable";
        j["certificate_reference_vector"] = to_json(cert.reference);
        j["realizer_matrix"] = to_json(cert.realizer);
        emit(j);
    });
}

void setup_check_klein(CLI::App& app, const GlobalOpts& g) {
    auto cmd = app.add_subcommand("check-klein",
                                  "Decide realizability in the XOR permutation algebra");
    auto spectrum = std::make_shared<std::string>();
    auto k = std::make_shared<int>(-1);
    cmd->add_option("spectrum", *spectrum, "comma separated real eigenvalues, slot order")
        ->required();
    cmd->add_option("--k", *k, "Walsh exponent; order is 2^k")->required();
    cmd->callback([&g, spectrum, k] {
        const ComplexVector x = parse_spectrum(*spectrum);
        const KleinCertificate cert = klein_realizable(x, *k, g.tol);
        ordered_json j;
        j["schema"] = 1;
        j["k"] = *k;
        j["verdict"] = cert.realizable ? "realizable" : "not_realizable";
        j["certificate_reference_vector"] = to_json(cert.reference);
        j["realizer_matrix"] = to_json(cert.realizer);
        emit(j);
    });
}

// ------------------------------------------------------------------
// Similarity centred commands
// ------------------------------------------------------------------

void setup_membership(CLI::App& app, const GlobalOpts& g) {
    auto cmd = app.add_subcommand(
        "membership", "Test a spectrum against the cone and polytope of a similarity");
    auto spectrum = std::make_shared<std::string>();
    auto spec = std::make_shared<std::string>();
    cmd->add_option("spectrum", *spectrum, "comma separated complex eigenvalues")->required();
    cmd->add_option("--similarity", *spec, "similarity specifier (see README)")->required();
    cmd->callback([&g, spectrum, spec] {
        const ComplexVector xv = parse_spectrum(*spectrum);
        const PerronSimilarity s = parse_similarity_spec(*spec, g.tol);
        warn_conditioning(s);
        if (xv.size() != s.order()) {
            throw LengthMismatch("spectrum length must match the similarity order");
        }
        const SpectrumVector x = SpectrumVector::make(xv);
        const bool cone = in_spectracone(s, x, g.tol);
        const bool tope = in_spectratope(s, x, g.tol);
        ordered_json j;
        j["schema"] = 1;
        j["verdict"] = tope ? "tope" : (cone ? "cone" : "outside");
        j["cone"] = cone;
        j["tope"] = tope;
        j["realizing_matrix"] = to_json(realizing_matrix(s, x));
        j["row_coefficients"] = to_json(row_cone_coefficients(s, x, g.tol));
        emit(j);
    });
}

void setup_realize(CLI::App& app, const GlobalOpts& g) {
    auto cmd = app.add_subcommand("realize",
                                  "Build S diag(x) S^-1 and report its nonnegativity");
    auto spectrum = std::make_shared<std::string>();
    auto spec = std::make_shared<std::string>();
    cmd->add_option("spectrum", *spectrum, "comma separated complex eigenvalues")->required();
    cmd->add_option("--similarity", *spec, "similarity specifier")->required();
    cmd->callback([&g, spectrum, spec] {
        const ComplexVector xv = parse_spectrum(*spectrum);
        const PerronSimilarity s = parse_similarity_spec(*spec, g.tol);
        warn_conditioning(s);
        if (xv.size() != s.order()) {
            throw LengthMismatch("spectrum length must match the similarity order");
        }
        const SpectrumVector x = SpectrumVector::make(xv);
        const ComplexMatrix m = realizing_matrix(s, x);
        ordered_json j;
        j["schema"] = 1;
        j["realizing_matrix"] = to_json(m);
        j["nonnegative"] = is_nonneg(m, g.tol);
        j["stochastic"] = is_stochastic(m, g.tol);
        emit(j);
    });
}

void setup_ideal(CLI::App& app, const GlobalOpts& g) {
    auto cmd = app.add_subcommand(
        "ideal", "Check whether the spectracone of a similarity equals its row cone");
    auto spec = std::make_shared<std::string>();
    cmd->add_option("--similarity", *spec, "similarity specifier")->required();
    cmd->callback([&g, spec] {
        const PerronSimilarity s = parse_similarity_spec(*spec, g.tol);
        warn_conditioning(s);
        ordered_json j;
        j["schema"] = 1;
        j["order"] = s.order();
        j["ideal"] = is_ideal(s, g.tol);
        ordered_json rows = ordered_json::array();
        for (std::size_t i = 0; i < s.order(); ++i) {
            rows.push_back(in_spectracone(s, SpectrumVector::make(s.matrix().row(i)), g.tol));
        }
        j["rows_realizable"] = rows;
        try {
            j["ones_coefficients"] = to_json(
                row_cone_coefficients(s, SpectrumVector::make(ones(s.order())), g.tol));
        } catch (const SingularMatrix&) {
            j["ones_coefficients"] = nullptr;
        }
        emit(j);
    });
}

void setup_normalize(CLI::App& app, const GlobalOpts& g) {
    auto cmd = app.add_subcommand(
        "normalize", "Rescale and reorder a Perron similarity into canonical form");
    auto spec = std::make_shared<std::string>();
    cmd->add_option("--similarity", *spec, "similarity specifier")->required();
    cmd->callback([&g, spec] {
        const PerronSimilarity s = parse_similarity_spec(*spec, g.tol);
        warn_conditioning(s);
        const NormalizeResult r = normalize(s.matrix(), g.tol);
        ordered_json j;
        j["schema"] = 1;
        j["already_normalized"] = is_normalized_form(s.matrix(), g.tol);
        j["normalized_matrix"] = to_json(r.similarity.matrix());
        j["perron_column"] = r.perron_column;
        ordered_json t;
        t["row_perm"] = r.transform.row_perm;
        t["v"] = to_json(r.transform.v);
        t["w"] = to_json(r.transform.w);
        t["col_perm"] = r.transform.col_perm;
        j["transform"] = std::move(t);
        emit(j);
    });
}

void setup_conditions(CLI::App& app, const GlobalOpts& g) {
    auto cmd = app.add_subcommand(
        "conditions", "Run the classical necessary conditions on a spectrum");
    auto spectrum = std::make_shared<std::string>();
    auto horizon = std::make_shared<int>(8);
    cmd->add_option("spectrum", *spectrum, "comma separated complex eigenvalues")->required();
    cmd->add_option("--horizon", *horizon, "largest moment index examined")
        ->default_val(8);
    cmd->callback([&g, spectrum, horizon] {
        const SpectrumVector x = SpectrumVector::make(parse_spectrum(*spectrum));
        const ConditionReport rep = check_necessary_conditions(x, *horizon, g.tol);
        ordered_json j;
        j["schema"] = 1;
        j["verdict"] = rep.all_ok() ? "pass" : "fail";
        j["spectral_radius_ok"] = rep.spectral_radius_ok;
        j["self_conjugate_ok"] = rep.self_conjugate_ok;
        j["moments_ok"] = rep.moments_ok;
        j["jll_ok"] = rep.jll_ok;
        j["newton_ok"] = rep.newton_ok;
        j["horizon"] = rep.horizon;
        if (rep.first_violation) {
            ordered_json v;
            v["condition"] = rep.first_violation->condition;
            v["k"] = rep.first_violation->k;
            v["l"] = rep.first_violation->l;
            j["first_violation"] = std::move(v);
        } else {
            j["first_violation"] = nullptr;
        }
        emit(j);
    });
}

// ------------------------------------------------------------------
// Arc and boundary commands
// ------------------------------------------------------------------

void setup_karc(CLI::App& app, const GlobalOpts& g) {
    auto cmd = app.add_subcommand(
        "karc", "Classify a boundary arc and expand its polynomial family");
    auto level = std::make_shared<int>(0);
    auto from = std::make_shared<std::string>();
    auto to = std::make_shared<std::string>();
    auto alpha = std::make_shared<double>(-1.0);
    cmd->add_option("--level", *level, "matrix order n")->required();
    cmd->add_option("--from", *from, "first endpoint P/Q")->required();
    cmd->add_option("--to", *to, "second endpoint R/S")->required();
    cmd->add_option("--alpha", *alpha, "evaluate the family at this parameter");
    cmd->callback([&g, level, from, to, alpha] {
        const ItoArc arc = classify_arc(*level, parse_fraction(*from), parse_fraction(*to));
        ordered_json j;
        j["schema"] = 1;
        j["level"] = arc.n;
        j["from"] = std::to_string(arc.pq.p) + "/" + std::to_string(arc.pq.q);
        j["to"] = std::to_string(arc.rs.p) + "/" + std::to_string(arc.rs.q);
        j["type"] = arc_type_name(arc.type);
        j["floor_nq"] = arc.floor_nq;
        if (*alpha >= 0.0) {
            const ItoPolynomial poly = ito_polynomial(arc, *alpha);
            j["alpha"] = *alpha;
            j["beta"] = poly.beta;
            ordered_json coeffs = ordered_json::array();
            for (const Complex& c : poly.coeffs) coeffs.push_back(format_real(c.real()));
            j["polynomial"] = std::move(coeffs);
            j["degree"] = poly.degree();
            j["multiple_root"] = has_multiple_root(poly, g.tol);
            const RootSet rs = roots(poly, g.tol);
            j["roots"] = to_json(rs.values);
            j["iterations"] = rs.iterations;
            j["has_cluster"] = rs.has_cluster;
            if (arc.type == ArcType::One) {
                const ComplexMatrix c = type1_companion(arc, *alpha);
                j["realizer_kind"] = "companion";
                j["realizer"] = to_json(c);
                j["realizer_stochastic"] = is_stochastic(c, g.tol);
            } else if (arc.type == ArcType::Zero) {
                const ComplexMatrix c = type0_circulant(arc.n, *alpha);
                j["realizer_kind"] = "circulant";
                j["realizer"] = to_json(c);
                j["realizer_stochastic"] = is_stochastic(c, g.tol);
            } else {
                j["realizer_kind"] = nullptr;
                j["realizer"] = nullptr;
            }
        }
        emit(j);
    });
}

void setup_theta_boundary(CLI::App& app, const GlobalOpts& g) {
    auto cmd = app.add_subcommand(
        "theta-boundary", "Trace the boundary of the stochastic eigenvalue region");
    auto level = std::make_shared<int>(0);
    auto samples = std::make_shared<int>(64);
    auto format = std::make_shared<std::string>("csv");
    auto output = std::make_shared<std::string>();
    cmd->add_option("--level", *level, "matrix order n")->required();
    cmd->add_option("--samples-per-arc", *samples, "samples along each arc")->default_val(64);
    cmd->add_option("--format", *format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--output", *output, "write to a file instead of stdout");
    cmd->callback([&g, level, samples, format, output] {
        const ThetaBoundary tb = theta_boundary(*level, *samples, g.tol);
        OutputTarget target(*output);
        if (*format == "csv") {
            *target.os << "re,im,arc_p,arc_q,arc_r,arc_s,alpha\n";
            char buf[192];
            for (const auto& s : tb.samples) {
                std::snprintf(buf, sizeof buf, "%.17g,%.17g,%lld,%lld,%lld,%lld,%.17g\n",
                              s.z.real(), s.z.imag(), s.arc.pq.p, s.arc.pq.q, s.arc.rs.p,
                              s.arc.rs.q, s.alpha);
                *target.os << buf;
            }
        } else {
            ordered_json j;
            j["schema"] = 1;
            j["level"] = tb.n;
            ordered_json arr = ordered_json::array();
            for (const auto& s : tb.samples) {
                ordered_json e;
                e["z"] = format_complex(s.z);
                e["alpha"] = s.alpha;
                e["arc"] = {{"p", s.arc.pq.p},
                            {"q", s.arc.pq.q},
                            {"r", s.arc.rs.p},
                            {"s", s.arc.rs.q},
                            {"type", arc_type_name(s.arc.type)}};
                arr.push_back(std::move(e));
            }
            j["samples"] = std::move(arr);
            *target.os << j.dump(2) << "\n";
        }
        if (target.to_file) {
            ordered_json summary;
            summary["schema"] = 1;
            summary["level"] = tb.n;
            summary["samples"] = tb.samples.size();
            summary["output"] = *output;
            emit(summary);
        }
    });
}

void setup_extremal(CLI::App& app, const GlobalOpts& g) {
    auto cmd = app.add_subcommand(
        "extremal", "Containment and extremality of a point in the eigenvalue region");
    auto level = std::make_shared<int>(0);
    auto point = std::make_shared<std::string>();
    auto samples = std::make_shared<int>(600);
    auto tol = std::make_shared<double>(1e-6);
    cmd->add_option("point", *point, "complex point, e.g. 0.3+0.4i")->required();
    cmd->add_option("--level", *level, "matrix order n")->required();
    cmd->add_option("--samples-per-arc", *samples, "boundary resolution")->default_val(600);
    cmd->add_option("--tol", *tol, "containment thickness")->default_val(1e-6);
    cmd->callback([&g, level, point, samples, tol] {
        const Complex z = parse_complex(*point);
        const ThetaBoundary tb = theta_boundary(*level, *samples, g.tol);
        const bool contained = theta_contains(z, tb, *tol);
        ordered_json j;
        j["schema"] = 1;
        j["level"] = *level;
        j["point"] = format_complex(z);
        j["contained"] = contained;
        j["extremal"] = contained ? is_extremal_in_theta(z, tb, *tol) : false;
        emit(j);
    });
}

// ------------------------------------------------------------------
// Region sampling
// ------------------------------------------------------------------

void setup_region4(CLI::App& app, const GlobalOpts& g) {
    auto cmd = app.add_subcommand(
        "region4", "Sample the order four stochastic spectra region");
    auto alpha_samples = std::make_shared<int>(64);
    auto simplex_resolution = std::make_shared<int>(12);
    auto x1_samples = std::make_shared<int>(32);
    auto skip_sweep = std::make_shared<bool>(false);
    auto skip_box = std::make_shared<bool>(false);
    auto format = std::make_shared<std::string>("csv");
    auto output = std::make_shared<std::string>();
    cmd->add_option("--alpha-samples", *alpha_samples, "arc parameters sampled")
        ->default_val(64);
    cmd->add_option("--simplex-resolution", *simplex_resolution, "weight lattice resolution")
        ->default_val(12);
    cmd->add_option("--x1-samples", *x1_samples, "grid for the box interval")->default_val(32);
    cmd->add_flag("--skip-sweep", *skip_sweep, "leave out the arc sweep family");
    cmd->add_flag("--skip-box", *skip_box, "leave out the box family");
    cmd->add_option("--format", *format, "csv, json, svg-alpha-omega, svg-lambda-alpha, svg-lambda-omega")
        ->check(CLI::IsMember({"csv", "json", "svg-alpha-omega", "svg-lambda-alpha",
                               "svg-lambda-omega"}));
    cmd->add_option("--output", *output, "write to a file instead of stdout");
    cmd->callback([&g, alpha_samples, simplex_resolution, x1_samples, skip_sweep, skip_box,
                   format, output] {
        std::vector<RegionPoint> points;
        std::vector<std::string> warnings;
        std::size_t sweep_count = 0, box_count = 0;
        if (!*skip_sweep) {
            RegionSamples s = sample_typeI_region(*alpha_samples, *simplex_resolution, g.tol);
            sweep_count = s.points.size();
            points.insert(points.end(), s.points.begin(), s.points.end());
            warnings.insert(warnings.end(), s.warnings.begin(), s.warnings.end());
        }
        if (!*skip_box) {
            RegionSamples b = sample_box_region(*x1_samples, *simplex_resolution, g.tol);
            box_count = b.points.size();
            points.insert(points.end(), b.points.begin(), b.points.end());
            warnings.insert(warnings.end(), b.warnings.begin(), b.warnings.end());
        }
        for (const std::string& w : warnings) std::cerr << "warning: " << w << "\n";
        ExportFormat f = ExportFormat::Csv;
        if (*format == "json") f = ExportFormat::Json;
        else if (*format == "svg-alpha-omega") f = ExportFormat::SvgAlphaOmega;
        else if (*format == "svg-lambda-alpha") f = ExportFormat::SvgLambdaAlpha;
        else if (*format == "svg-lambda-omega") f = ExportFormat::SvgLambdaOmega;
        OutputTarget target(*output);
        export_points(points, f, *target.os);
        if (target.to_file) {
            ordered_json summary;
            summary["schema"] = 1;
            summary["points"] = points.size();
            summary["sweep_points"] = sweep_count;
            summary["box_points"] = box_count;
            summary["warnings"] = warnings;
            summary["output"] = *output;
            emit(summary);
        }
    });
}

void setup_walsh(CLI::App& app, const GlobalOpts&) {
    auto cmd = app.add_subcommand("walsh", "Print the Walsh matrix and its permutations");
    auto k = std::make_shared<int>(0);
    cmd->add_option("k", *k, "exponent; order is 2^k")->required();
    cmd->callback([k] {
        ordered_json j;
        j["schema"] = 1;
        j["k"] = *k;
        j["matrix"] = to_json(walsh(*k));
        j["perms"] = klein_perms(*k);
        emit(j);
    });
}

// ------------------------------------------------------------------
// Self test
// ------------------------------------------------------------------

struct SelfTest {
    std::mt19937_64 rng;
    Tolerance tol;
    int failures = 0;

    void report(const std::string& name, bool ok, const std::string& detail = "") {
        std::cout << "selftest " << name << ": " << (ok ? "ok" : "FAIL") << detail << "\n";
        if (!ok) ++failures;
    }

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    }
    int uniform_int(int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(rng);
    }

    void circulant_round_trip(int trials) {
        for (int t = 0; t < trials; ++t) {
            const int n = uniform_int(2, 8);
            ComplexVector c(n);
            for (int i = 0; i < n; ++i) c[i] = uniform(0.0, 1.0);
            ComplexVector x(n);
            for (int k = 0; k < n; ++k) {
                Complex acc = 0;
                for (int j = 0; j < n; ++j) {
                    acc += c[j] * unit_circle_point(static_cast<long long>(j) * k, n);
                }
                x[k] = acc;
            }
            const CirculantCertificate cert = circulant_realizable(x, tol);
            if (!cert.realizable || max_abs_diff(cert.reference, c) > 1e-10) {
                report("circulant_round_trip", false, " at trial " + std::to_string(t));
                return;
            }
            const ConditionReport rep =
                check_necessary_conditions(SpectrumVector::make(x), 8, tol);
            if (!rep.all_ok()) {
                report("circulant_round_trip", false,
                       " necessary conditions failed on a realizable spectrum");
                return;
            }
        }
        report("circulant_round_trip", true);
    }

    void klein_round_trip(int trials) {
        for (int t = 0; t < trials; ++t) {
            const int k = uniform_int(1, 3);
            const std::size_t size = std::size_t{1} << k;
            ComplexVector z(size);
            for (std::size_t i = 0; i < size; ++i) z[i] = uniform(0.0, 1.0);
            const ComplexVector x = walsh(k) * z;
            const KleinCertificate cert = klein_realizable(x, k, tol);
            if (!cert.realizable || max_abs_diff(cert.reference, z) > 1e-10 ||
                max_abs_diff(cert.realizer, klein_matrix(z, k)) > 1e-10) {
                report("klein_round_trip", false, " at trial " + std::to_string(t));
                return;
            }
        }
        report("klein_round_trip", true);
    }

    void halfspace_agreement(int trials) {
        for (int t = 0; t < trials; ++t) {
            const int n = uniform_int(2, 6);
            const PerronSimilarity s = dft_similarity(n);
            const HalfSpaceSystem hs = halfspace_description(s);
            ComplexVector x(n);
            const bool planted = uniform_int(0, 1) == 1;
            if (planted) {
                ComplexVector y(n);
                for (int i = 0; i < n; ++i) y[i] = uniform(0.0, 1.0);
                x = s.inverse() * y;
                for (int i = 0; i < n; ++i) x[i] *= static_cast<double>(n);
            } else {
                for (int i = 0; i < n; ++i) x[i] = Complex(uniform(-1, 1), uniform(-1, 1));
            }
            const SpectrumVector sx = SpectrumVector::make(x);
            if (in_spectracone(s, sx, tol) != in_halfspace_cone(hs, x, tol.eps_nonneg) ||
                in_spectratope(s, sx, tol) != in_halfspace_tope(hs, x, tol.eps_nonneg)) {
                report("halfspace_agreement", false, " at trial " + std::to_string(t));
                return;
            }
        }
        report("halfspace_agreement", true);
    }

    void arc_root_residuals(int trials) {
        for (int t = 0; t < trials; ++t) {
            const int n = uniform_int(3, 8);
            const auto farey = farey_fractions(n);
            const int i = uniform_int(0, static_cast<int>(farey.size()) - 2);
            const ItoArc arc = classify_arc(n, farey[i], farey[i + 1]);
            const double alpha = uniform(0.05, 0.95);
            const ItoPolynomial p = ito_polynomial(arc, alpha);
            const RootSet rs = roots(p, tol);
            if (static_cast<int>(rs.values.size()) != p.degree()) {
                report("arc_root_residuals", false, " root count mismatch");
                return;
            }
            for (const Complex& z : rs.values) {
                if (std::abs(p.eval(z)) > 1e-10 || full_ito_residual(arc, alpha, z) > 1e-8) {
                    report("arc_root_residuals", false,
                           " residual too large at trial " + std::to_string(t));
                    return;
                }
            }
        }
        report("arc_root_residuals", true);
    }

    void normalize_round_trip(int trials) {
        for (int t = 0; t < trials; ++t) {
            PerronSimilarity base = [&] {
                switch (uniform_int(0, 2)) {
                    case 0: return dft_similarity(uniform_int(2, 6));
                    case 1: return walsh_similarity(uniform_int(1, 3));
                    default: {
                        const ItoArc arc = classify_arc(4, {1, 3}, {1, 4});
                        const RootSet rs =
                            roots(ito_polynomial(arc, uniform(0.2, 0.9)), tol);
                        return vandermonde_similarity(rs.values, tol);
                    }
                }
            }();
            const std::size_t n = base.order();
            std::vector<std::size_t> row_perm(n), col_perm(n);
            for (std::size_t i = 0; i < n; ++i) row_perm[i] = col_perm[i] = i;
            std::shuffle(row_perm.begin(), row_perm.end(), rng);
            std::shuffle(col_perm.begin(), col_perm.end(), rng);
            ComplexVector v(n), w(n);
            for (std::size_t i = 0; i < n; ++i) {
                v[i] = uniform(0.25, 4.0);
                const double phi = uniform(-M_PI, M_PI);
                w[i] = uniform(0.25, 4.0) * Complex(std::cos(phi), std::sin(phi));
            }
            const ComplexMatrix scrambled =
                equivalence_transform(base.matrix(), row_perm, v, w, col_perm, tol);
            const NormalizeResult r = normalize(scrambled, tol);
            if (!is_normalized_form(r.similarity.matrix(), tol)) {
                report("normalize_round_trip", false, " result not canonical");
                return;
            }
            const ComplexMatrix rebuilt = equivalence_transform(
                r.similarity.matrix(), r.transform.row_perm, r.transform.v, r.transform.w,
                r.transform.col_perm, tol);
            if (max_abs_diff(rebuilt, scrambled) > 1e-9) {
                report("normalize_round_trip", false,
                       " reconstruction drifted at trial " + std::to_string(t));
                return;
            }
        }
        report("normalize_round_trip", true);
    }

    void farey_adjacency(int trials) {
        for (int t = 0; t < trials; ++t) {
            const int n = uniform_int(2, 30);
            const auto farey = farey_fractions(n);
            std::size_t expected = 1;
            for (int q = 1; q <= n; ++q) {
                int phi = 0;
                for (int p = 1; p <= q; ++p) {
                    int a = p, b = q;
                    while (b) {
                        const int r = a % b;
                        a = b;
                        b = r;
                    }
                    if (a == 1) ++phi;
                }
                expected += static_cast<std::size_t>(phi);
            }
            if (farey.size() != expected) {
                report("farey_adjacency", false, " count mismatch at n=" + std::to_string(n));
                return;
            }
            for (std::size_t i = 0; i + 1 < farey.size(); ++i) {
                const auto& a = farey[i];
                const auto& b = farey[i + 1];
                if (a.p * b.q - a.q * b.p != -1 || a.q + b.q <= n) {
                    report("farey_adjacency", false, " neighbour rule failed");
                    return;
                }
            }
        }
        report("farey_adjacency", true);
    }

    void brauer_identity(int trials) {
        for (int t = 0; t < trials; ++t) {
            const int n = uniform_int(2, 6);
            ComplexVector c(n);
            double sum = 0;
            for (int i = 0; i < n; ++i) {
                c[i] = uniform(0.05, 1.0);
                sum += c[i].real();
            }
            for (int i = 0; i < n; ++i) c[i] /= sum;
            const ComplexMatrix a = circulant(c);
            ComplexVector y(n);
            for (int i = 0; i < n; ++i) y[i] = uniform(0.0, 0.5);
            const BrauerResult br = brauer_perturb(a, ones(n), Complex(1.0), y, tol);
            const ComplexVector lhs = br.matrix * ones(n);
            double worst = 0;
            for (int i = 0; i < n; ++i) {
                worst = std::max(worst, std::abs(lhs[i] - br.shifted_eigenvalue));
            }
            if (worst > 1e-10) {
                report("brauer_identity", false, " at trial " + std::to_string(t));
                return;
            }
        }
        report("brauer_identity", true);
    }
};

void setup_selftest(CLI::App& app, const GlobalOpts& g) {
    auto cmd = app.add_subcommand("selftest", "Seeded property checks of the library");
    auto trials = std::make_shared<int>(25);
    cmd->add_option("--trials", *trials, "trials per property")->default_val(25);
    cmd->callback([&g, trials] {
        SelfTest st{std::mt19937_64(g.seed), g.tol, 0};
        st.circulant_round_trip(*trials);
        st.klein_round_trip(*trials);
        st.halfspace_agreement(*trials);
        st.arc_root_residuals(*trials);
        st.normalize_round_trip(*trials);
        st.farey_adjacency(*trials);
        st.brauer_identity(*trials);
        std::cout << (st.failures == 0 ? "selftest: all ok" : "selftest: FAILURES") << "\n";
        if (st.failures != 0) g_exit_code = 1;
    });
}

int classify_exit(const Error& e) {
    if (dynamic_cast<const SingularMatrix*>(&e) != nullptr ||
        dynamic_cast<const NoConvergence*>(&e) != nullptr ||
        dynamic_cast<const BranchTrackingFailure*>(&e) != nullptr ||
        dynamic_cast<const MultipleRoots*>(&e) != nullptr) {
        return 3;
    }
    return 2;
}

const char* error_kind(const Error& e) {
    if (dynamic_cast<const ParseError*>(&e)) return "parse_error";
    if (dynamic_cast<const SingularMatrix*>(&e)) return "singular_matrix";
    if (dynamic_cast<const DimensionMismatch*>(&e)) return "dimension_mismatch";
    if (dynamic_cast<const LengthMismatch*>(&e)) return "length_mismatch";
    if (dynamic_cast<const NonFiniteValue*>(&e)) return "non_finite_value";
    if (dynamic_cast<const NoConvergence*>(&e)) return "no_convergence";
    if (dynamic_cast<const NotPerronSimilarity*>(&e)) return "not_perron_similarity";
    if (dynamic_cast<const PairingFailure*>(&e)) return "pairing_failure";
    if (dynamic_cast<const NotStochastic*>(&e)) return "not_stochastic";
    if (dynamic_cast<const NotAnEigenvector*>(&e)) return "not_an_eigenvector";
    if (dynamic_cast<const InvalidScaling*>(&e)) return "invalid_scaling";
    if (dynamic_cast<const InvalidEndpoints*>(&e)) return "invalid_endpoints";
    if (dynamic_cast<const WrongArcType*>(&e)) return "wrong_arc_type";
    if (dynamic_cast<const AlphaOutOfRange*>(&e)) return "alpha_out_of_range";
    if (dynamic_cast<const MultipleRoots*>(&e)) return "multiple_roots";
    if (dynamic_cast<const BranchTrackingFailure*>(&e)) return "branch_tracking_failure";
    if (dynamic_cast<const NotInRegion*>(&e)) return "not_in_region";
    return "error";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral cones and polytopes of structured nonnegative matrices"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOpts g;
    app.add_option("--eps-nonneg", g.tol.eps_nonneg, "nonnegativity slack")
        ->default_val(1e-9);
    app.add_option("--eps-eq", g.tol.eps_eq, "equality comparison slack")->default_val(1e-9);
    app.add_option("--eps-root", g.tol.eps_root, "root residual target")->default_val(1e-12);
    app.add_option("--seed", g.seed, "seed for randomized commands")
        ->default_val(std::uint64_t{0xC0FFEE});

    setup_check_circulant(app, g);
    setup_check_block(app, g);
    setup_check_klein(app, g);
    setup_membership(app, g);
    setup_realize(app, g);
    setup_ideal(app, g);
    setup_normalize(app, g);
    setup_conditions(app, g);
    setup_karc(app, g);
    setup_theta_boundary(app, g);
    setup_extremal(app, g);
    setup_region4(app, g);
    setup_walsh(app, g);
    setup_selftest(app, g);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const ParseError& e) {
        ordered_json j;
        j["schema"] = 1;
        j["error"] = {{"type", "parse_error"}, {"message", e.what()}, {"position", e.position}};
        std::cerr << j.dump(2) << "\n";
        return 2;
    } catch (const Error& e) {
        ordered_json j;
        j["schema"] = 1;
        j["error"] = {{"type", error_kind(e)}, {"message", e.what()}};
        std::cerr << j.dump(2) << "\n";
        return classify_exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return g_exit_code;
}
