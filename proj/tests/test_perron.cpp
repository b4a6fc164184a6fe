#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <perron/circulant.hpp>
#include <perron/karpelevic.hpp>
#include <perron/region4.hpp>
#include <perron/similarity.hpp>

#include <cmath>
#include <numeric>
#include <vector>

#include "support.hpp"

using namespace perron;
using namespace testsupport;

namespace {

SpectrumVector spec(std::initializer_list<Complex> xs) {
    return SpectrumVector::make(ComplexVector(xs));
}

// Random member of the row cone of S, the image of a nonnegative vector
// under S transposed. For ideal S this covers the whole spectracone.
ComplexVector random_cone_member(std::mt19937_64& rng, const PerronSimilarity& s) {
    ComplexVector y = random_nonneg_vector(rng, s.order());
    return s.matrix().transpose() * y;
}

}  // namespace

TEST_CASE("realizing matrix on hand checked inputs") {
    PerronSimilarity h2(walsh(1));
    ComplexMatrix m = realizing_matrix(h2, spec({1, -1}));
    CHECK(max_abs_diff(m, ComplexMatrix{{0, 1}, {1, 0}}) <= 1e-12);

    PerronSimilarity f4 = dft_similarity(4);
    ComplexVector y({0, 1, 0, 0});
    ComplexVector x = f4.matrix() * y;
    ComplexMatrix mx = realizing_matrix(f4, SpectrumVector::make(x));
    CHECK(max_abs_diff(mx, circulant(y)) <= 1e-10);

    CHECK(max_abs_diff(realizing_matrix(f4, spec({1, 1, 1, 1})),
                       ComplexMatrix::identity(4)) <= 1e-12);

    CHECK_THROWS_AS(realizing_matrix(f4, spec({1, 2})), DimensionMismatch);
}

TEST_CASE("membership on hand checked inputs") {
    PerronSimilarity f2 = dft_similarity(2);
    CHECK_FALSE(in_spectracone(f2, spec({1, 2})));
    ComplexMatrix bad = realizing_matrix(f2, spec({1, 2}));
    CHECK(max_abs_diff(bad, ComplexMatrix{{1.5, -0.5}, {-0.5, 1.5}}) <= 1e-12);

    CHECK(in_spectracone(f2, spec({1, 0.5})));
    ComplexMatrix good = realizing_matrix(f2, spec({1, 0.5}));
    CHECK(max_abs_diff(good, ComplexMatrix{{0.75, 0.25}, {0.25, 0.75}}) <= 1e-12);

    CHECK(in_spectratope(f2, spec({1, 0.5})));
    CHECK_FALSE(in_spectratope(f2, spec({1, 1.5})));

    PerronSimilarity f3 = dft_similarity(3);
    SpectrumVector row2 = SpectrumVector::make(f3.matrix().row(1));
    CHECK(in_spectratope(f3, row2));
    CHECK(max_abs_diff(realizing_matrix(f3, row2), circulant(ComplexVector({0, 1, 0}))) <= 1e-10);

    CHECK(in_spectratope(f3, spec({1, 1, 1})));
}

TEST_CASE("row cone coefficients invert the row expansion") {
    PerronSimilarity h2(walsh(1));
    ComplexVector y = row_cone_coefficients(h2, spec({1, -1}));
    CHECK(std::abs(y[0]) <= 1e-12);
    CHECK(std::abs(y[1] - Complex(1, 0)) <= 1e-12);

    PerronSimilarity f4 = dft_similarity(4);
    for (std::size_t k = 0; k < 4; ++k) {
        ComplexVector yk =
            row_cone_coefficients(f4, SpectrumVector::make(f4.matrix().row(k)));
        CHECK(max_abs_diff(yk, unit_vector(4, k)) <= 1e-10);
    }

    ComplexVector q({0.25, 0.25, 0.25, 0.25});
    ComplexVector x = f4.matrix().transpose() * q;
    CHECK(max_abs_diff(row_cone_coefficients(f4, SpectrumVector::make(x)), q) <= 1e-10);
}

TEST_CASE("perron similarity detection") {
    CHECK(is_perron_similarity(dft_matrix(2)) == 0);
    CHECK(is_perron_similarity(dft_matrix(4)) == 0);
    CHECK_FALSE(is_perron_similarity(ComplexMatrix::identity(2)).has_value());
    CHECK(is_perron_similarity(walsh(3)) == 0);

    ComplexMatrix swapped(4, 4);
    ComplexMatrix f = dft_matrix(4);
    for (std::size_t i = 0; i < 4; ++i) {
        swapped(i, 0) = f(i, 1);
        swapped(i, 1) = f(i, 0);
        swapped(i, 2) = f(i, 2);
        swapped(i, 3) = f(i, 3);
    }
    CHECK(is_perron_similarity(swapped) == 1);
}

TEST_CASE("hadamard product closes the spectracone") {
    auto rng = make_rng(201);
    for (const PerronSimilarity& s : {dft_similarity(4), walsh_similarity(2), dft_similarity(6)}) {
        for (int trial = 0; trial < 50; ++trial) {
            ComplexVector x = random_cone_member(rng, s);
            ComplexVector y = random_cone_member(rng, s);
            REQUIRE(in_spectracone(s, SpectrumVector::make(x)));
            REQUIRE(in_spectracone(s, SpectrumVector::make(y)));
            ComplexVector xy = hadamard_product(x, y);
            CHECK(in_spectracone(s, SpectrumVector::make(xy)));

            ComplexMatrix lhs = realizing_matrix(s, SpectrumVector::make(xy));
            ComplexMatrix rhs = realizing_matrix(s, SpectrumVector::make(x)) *
                                realizing_matrix(s, SpectrumVector::make(y));
            CHECK(max_abs_diff(lhs, rhs) <= 1e-8 * std::max(1.0, rhs.max_abs()));
        }
    }
}

TEST_CASE("spectracone is a convex cone") {
    auto rng = make_rng(202);
    PerronSimilarity s = dft_similarity(5);
    for (int trial = 0; trial < 100; ++trial) {
        ComplexVector x = random_cone_member(rng, s);
        ComplexVector y = random_cone_member(rng, s);
        Complex a(uniform(rng, 0.0, 3.0), 0.0);
        Complex b(uniform(rng, 0.0, 3.0), 0.0);
        CHECK(in_spectracone(s, SpectrumVector::make(a * x + b * y)));
    }
}

TEST_CASE("membership is invariant under equivalence transforms") {
    auto rng = make_rng(203);
    ComplexMatrix f = dft_matrix(4);
    PerronSimilarity base(f);

    std::vector<std::size_t> id{0, 1, 2, 3};
    std::vector<std::size_t> cyc{1, 2, 3, 0};
    ComplexVector e = ones(4);
    ComplexVector v({1.0, 2.0, 0.5, 3.0});
    ComplexVector w({2.0, -1.0, 0.5, -3.0});
    ComplexVector wc({1.0, Complex(0, 1), -1.0, 2.0});

    PerronSimilarity rowperm(equivalence_transform(f, cyc, e, e, id));
    PerronSimilarity rowscale(equivalence_transform(f, id, v, e, id));
    PerronSimilarity colscale(equivalence_transform(f, id, e, w, id));
    PerronSimilarity colscale_cx(equivalence_transform(f, id, e, wc, id));
    PerronSimilarity scaled(Complex(2.5, 0.0) * f);
    PerronSimilarity conj_s(f.conjugate());

    for (int trial = 0; trial < 200; ++trial) {
        ComplexVector x = trial % 2 == 0 ? random_complex_vector(rng, 4)
                                         : random_cone_member(rng, base);
        SpectrumVector sx = SpectrumVector::make(x);
        bool verdict = in_spectracone(base, sx);
        CHECK(in_spectracone(rowperm, sx) == verdict);
        CHECK(in_spectracone(rowscale, sx) == verdict);
        CHECK(in_spectracone(colscale, sx) == verdict);
        CHECK(in_spectracone(colscale_cx, sx) == verdict);
        CHECK(in_spectracone(scaled, sx) == verdict);

        ComplexVector xc(4);
        for (std::size_t i = 0; i < 4; ++i) xc[i] = std::conj(x[i]);
        CHECK(in_spectracone(conj_s, SpectrumVector::make(xc)) == verdict);
    }
}

TEST_CASE("inverse and transpose cut out the same cone") {
    auto rng = make_rng(204);
    ItoPolynomial p = ito_polynomial(region_arc(), 0.45);
    RootSet r = roots(p);
    PerronSimilarity s = vandermonde_similarity(r.values);
    const ComplexMatrix sinv = s.inverse();
    const ComplexMatrix st = s.matrix().transpose();
    const ComplexMatrix stinv = inverse(st);
    for (int trial = 0; trial < 100; ++trial) {
        ComplexVector x = random_complex_vector(rng, 4);
        ComplexMatrix a = sinv * diagonal_matrix(x) * s.matrix();
        ComplexMatrix b = st * diagonal_matrix(x) * stinv;
        CHECK(is_nonneg(a) == is_nonneg(b));
        CHECK(max_abs_diff(a, b.transpose()) <= 1e-8 * std::max(1.0, a.max_abs()));
    }
}

TEST_CASE("equivalence transforms compose into a single transform") {
    auto rng = make_rng(205);
    ComplexMatrix s = random_complex_matrix(rng, 4);
    std::vector<std::size_t> s1{2, 0, 3, 1}, g1{1, 3, 0, 2};
    std::vector<std::size_t> s2{3, 1, 0, 2}, g2{0, 2, 3, 1};
    ComplexVector v1({1.0, 2.0, 0.5, 1.5}), w1({2.0, -1.0, 3.0, 0.5});
    ComplexVector v2({0.25, 1.0, 4.0, 2.0}), w2({-0.5, 1.0, -2.0, 1.0});

    ComplexMatrix second = equivalence_transform(equivalence_transform(s, s1, v1, w1, g1),
                                                 s2, v2, w2, g2);

    std::vector<std::size_t> sc(4), gc(4);
    ComplexVector vc(4), wc(4);
    for (std::size_t i = 0; i < 4; ++i) {
        sc[i] = s1[s2[i]];
        vc[i] = v2[i] * v1[s2[i]];
        wc[i] = w1[i] * w2[g1[i]];
        gc[i] = g2[g1[i]];
    }
    ComplexMatrix composed = equivalence_transform(s, sc, vc, wc, gc);
    CHECK(max_abs_diff(second, composed) <= 1e-12 * std::max(1.0, composed.max_abs()));
}

TEST_CASE("equivalence transform rejects bad scalings") {
    ComplexMatrix s = dft_matrix(3);
    std::vector<std::size_t> id{0, 1, 2};
    ComplexVector e = ones(3);
    CHECK(max_abs_diff(equivalence_transform(s, id, e, e, id), s) == 0.0);

    CHECK_THROWS_AS(equivalence_transform(s, id, ComplexVector({1, -1, 1}), e, id),
                    InvalidScaling);
    CHECK_THROWS_AS(equivalence_transform(s, id, e, ComplexVector({1, 0, 1}), id),
                    InvalidScaling);
    CHECK_THROWS_AS(equivalence_transform(s, {0, 0, 1}, e, e, id), InvalidScaling);
    CHECK_THROWS_AS(equivalence_transform(s, id, ComplexVector({1, 1}), e, id),
                    DimensionMismatch);
}

TEST_CASE("angle stays within the quarter turn on cone pairs") {
    // acos loses half the digits next to its endpoints, so a vector paired
    // with itself reads as a few times 1e-8 rather than zero
    CHECK(angle(ComplexVector({1, 2}), ComplexVector({1, 2})) <= 1e-7);
    CHECK(angle(ComplexVector({0, 0}), ComplexVector({1, 0})) ==
          doctest::Approx(std::acos(0.0)));
    CHECK(angle(ComplexVector({1, 0}), ComplexVector({0, 1})) ==
          doctest::Approx(std::acos(0.0)));

    auto rng = make_rng(206);
    const double quarter = std::acos(0.0);
    for (int n : {3, 5, 8}) {
        PerronSimilarity s = dft_similarity(n);
        for (int trial = 0; trial < 70; ++trial) {
            ComplexVector x = random_cone_member(rng, s);
            ComplexVector y = random_cone_member(rng, s);
            CHECK(angle(x, y) <= quarter + 1e-9);
        }
    }
}

TEST_CASE("three membership routes agree on ideal similarities") {
    auto rng = make_rng(207);
    std::vector<PerronSimilarity> sims;
    for (int n = 2; n <= 8; ++n) sims.push_back(dft_similarity(n));
    for (int k = 1; k <= 3; ++k) sims.push_back(walsh_similarity(k));

    Tolerance tol;
    for (const PerronSimilarity& s : sims) {
        REQUIRE(is_ideal(s));
        HalfSpaceSystem sys = halfspace_description(s);
        REQUIRE(sys.cone.size() == 3 * s.order() * s.order());
        REQUIRE(sys.tope.size() == 4 * s.order());
        const std::size_t n = s.order();
        for (int trial = 0; trial < 1000; ++trial) {
            ComplexVector x;
            if (trial % 3 == 0) {
                x = random_complex_vector(rng, n);
            } else if (trial % 3 == 1) {
                x = random_cone_member(rng, s);
            } else {
                x = random_cone_member(rng, s);
                x = x + random_complex_vector(rng, n, 1e-2);
            }
            SpectrumVector sx = SpectrumVector::make(x);
            bool direct = in_spectracone(s, sx, tol);
            bool half = in_halfspace_cone(sys, x, tol.eps_nonneg);
            ComplexVector y = row_cone_coefficients(s, sx, tol);
            bool row = is_nonneg(y, tol);
            CHECK(direct == half);
            CHECK(direct == row);
        }
    }
}

TEST_CASE("ideal similarities have matching polytopes") {
    auto rng = make_rng(208);
    for (const PerronSimilarity& s : {dft_similarity(4), walsh_similarity(2), dft_similarity(6)}) {
        HalfSpaceSystem sys = halfspace_description(s);
        const std::size_t n = s.order();
        for (int trial = 0; trial < 200; ++trial) {
            ComplexVector q = random_simplex_point(rng, n);
            ComplexVector x = s.matrix().transpose() * q;
            SpectrumVector sx = SpectrumVector::make(x);
            CHECK(in_spectratope(s, sx));
            CHECK(in_halfspace_tope(sys, x, 1e-9));

            ComplexVector y = row_cone_coefficients(s, sx);
            Complex total(0, 0);
            for (const auto& c : y) total += c;
            CHECK(std::abs(total - Complex(1, 0)) <= 1e-9);
        }
    }
}

TEST_CASE("one dimensional halfspace description pins the real axis") {
    PerronSimilarity s(ComplexMatrix{{1}});
    HalfSpaceSystem sys = halfspace_description(s);
    CHECK(sys.cone.size() == 3);
    CHECK(in_halfspace_cone(sys, ComplexVector({5}), 1e-9));
    CHECK_FALSE(in_halfspace_cone(sys, ComplexVector({-3}), 1e-9));
    CHECK_FALSE(in_halfspace_cone(sys, ComplexVector({Complex(2, 2)}), 1e-9));
}

TEST_CASE("ideal detection on the standard families") {
    for (int n = 2; n <= 8; ++n) CHECK(is_ideal(dft_similarity(n)));
    for (int k = 1; k <= 3; ++k) CHECK(is_ideal(walsh_similarity(k)));

    ItoPolynomial p = ito_polynomial(region_arc(), 0.5);
    RootSet r = roots(p);
    CHECK(is_ideal(vandermonde_similarity(r.values)));

    // rows (1, 1) and (1, -2): the second row breaks spectral radius
    // dominance, so its own spectrum is unrealizable and S is not ideal
    PerronSimilarity lopsided(ComplexMatrix{{1, 1}, {1, -2}});
    CHECK_FALSE(is_ideal(lopsided));

    // for such a similarity the row cone is strictly bigger than the cone
    SpectrumVector row1 = SpectrumVector::make(ComplexVector({1, -2}));
    CHECK(is_nonneg(row_cone_coefficients(lopsided, row1)));
    CHECK_FALSE(in_spectracone(lopsided, row1));
}

TEST_CASE("normalization of already canonical and scaled similarities") {
    CHECK(is_normalized_form(dft_matrix(3)));
    CHECK(is_normalized_form(walsh(2)));

    NormalizeResult rh = normalize(walsh(2));
    CHECK(rh.perron_column == 0);
    CHECK(max_abs_diff(rh.similarity.matrix(), walsh(2)) <= 1e-12);
    CHECK(rh.transform.row_perm == std::vector<std::size_t>{0, 1, 2, 3});
    CHECK(rh.transform.col_perm == std::vector<std::size_t>{0, 1, 2, 3});
    CHECK(max_abs_diff(rh.transform.v, ones(4)) <= 1e-12);
    CHECK(max_abs_diff(rh.transform.w, ones(4)) <= 1e-12);

    // the canonical order swaps the conjugate pair so positive imaginary
    // parts lead, but the matrix stays in normalized form either way
    NormalizeResult rf = normalize(dft_matrix(3));
    CHECK(rf.perron_column == 0);
    CHECK(rf.similarity.normalized());
    CHECK(rf.transform.col_perm == std::vector<std::size_t>{0, 2, 1});
    CHECK(max_abs_diff(rf.similarity.matrix(), dft_matrix(3).conjugate()) <= 1e-12);

    ComplexMatrix scaled = dft_matrix(3);
    ComplexVector factors({2.0, Complex(0, 3), -1.0});
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) scaled(i, j) *= factors[j];
    NormalizeResult rs = normalize(scaled);
    CHECK(rs.similarity.normalized());
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(std::abs(rs.similarity.matrix()(i, 0) - Complex(1, 0)) <= 1e-12);
    ComplexMatrix rebuilt =
        equivalence_transform(rs.similarity.matrix(), rs.transform.row_perm, rs.transform.v,
                              rs.transform.w, rs.transform.col_perm);
    CHECK(max_abs_diff(rebuilt, scaled) <= 1e-10);

    ComplexMatrix perm(4, 4);
    ComplexMatrix f4 = dft_matrix(4);
    for (std::size_t i = 0; i < 4; ++i) {
        perm(i, 0) = f4(i, 1);
        perm(i, 1) = f4(i, 0);
        perm(i, 2) = f4(i, 2);
        perm(i, 3) = f4(i, 3);
    }
    NormalizeResult rp = normalize(perm);
    CHECK(rp.perron_column == 1);
    for (std::size_t i = 0; i < 4; ++i)
        CHECK(std::abs(rp.similarity.matrix()(i, 0) - Complex(1, 0)) <= 1e-12);
}

TEST_CASE("normalization failure modes") {
    CHECK_THROWS_AS(normalize(ComplexMatrix::identity(3)), NotPerronSimilarity);

    // third column mixes the conjugate pair, leaving no matching mate
    ComplexMatrix f = dft_matrix(3);
    ComplexMatrix mixed = f;
    for (std::size_t i = 0; i < 3; ++i) mixed(i, 2) = f(i, 2) + 0.35 * f(i, 1);
    CHECK_THROWS_AS(normalize(mixed), PairingFailure);
}

TEST_CASE("necessary conditions on hand checked spectra") {
    ConditionReport ok = check_necessary_conditions(spec({1, 1, 1}));
    CHECK(ok.all_ok());
    CHECK_FALSE(ok.first_violation.has_value());

    ConditionReport trace = check_necessary_conditions(spec({1, -1, -1}));
    CHECK_FALSE(trace.moments_ok);
    REQUIRE(trace.first_violation.has_value());
    CHECK(trace.first_violation->condition == "moments");
    CHECK(trace.first_violation->k == 1);

    ConditionReport conj = check_necessary_conditions(spec({1, Complex(0, 1)}));
    CHECK_FALSE(conj.self_conjugate_ok);
    REQUIRE(conj.first_violation.has_value());
    CHECK(conj.first_violation->condition == "self_conjugate");
    CHECK(conj.first_violation->k == 2);

    ConditionReport rho = check_necessary_conditions(spec({0.5, -1, 0.5}));
    CHECK_FALSE(rho.spectral_radius_ok);
    REQUIRE(rho.first_violation.has_value());
    CHECK(rho.first_violation->condition == "spectral_radius");

    CHECK_THROWS_AS(check_necessary_conditions(spec({1, 1}), 0), AlphaOutOfRange);
}

TEST_CASE("constructed realizable spectra pass the necessary conditions") {
    auto rng = make_rng(209);
    for (int n : {3, 4, 6}) {
        PerronSimilarity s = dft_similarity(n);
        for (int trial = 0; trial < 50; ++trial) {
            ComplexVector x = random_cone_member(rng, s);
            ConditionReport rep = check_necessary_conditions(SpectrumVector::make(x));
            CHECK(rep.all_ok());
        }
    }
}

TEST_CASE("brauer rank one update moves a single eigenvalue") {
    ComplexMatrix a = circulant(ComplexVector({0.2, 0.5, 0.3}));
    BrauerResult keep = brauer_perturb(a, ones(3), Complex(1, 0), ComplexVector(3));
    CHECK(max_abs_diff(keep.matrix, a) == 0.0);
    CHECK(keep.shifted_eigenvalue == Complex(1, 0));

    // uniform blend written as a rank one update of the scaled matrix
    double alpha = 0.6;
    ComplexMatrix scaled = Complex(alpha, 0.0) * a;
    ComplexVector y(3);
    for (std::size_t i = 0; i < 3; ++i) y[i] = Complex((1 - alpha) / 3.0, 0.0);
    BrauerResult blend = brauer_perturb(scaled, ones(3), Complex(alpha, 0.0), y);
    CHECK(std::abs(blend.shifted_eigenvalue - Complex(1, 0)) <= 1e-12);
    CHECK(max_abs_diff(blend.matrix, stochastic_blend(a, alpha, BlendMode::Uniform)) <= 1e-12);

    // complex eigenpair of a circulant, random update direction
    auto rng = make_rng(210);
    ComplexVector c = random_nonneg_vector(rng, 3);
    ComplexMatrix m = circulant(c);
    Complex z = unit_circle_point(1, 3);
    ComplexVector x({1.0, z, z * z});
    Complex lambda = c[0] + c[1] * z + c[2] * z * z;
    ComplexVector dir = random_complex_vector(rng, 3);
    BrauerResult moved = brauer_perturb(m, x, lambda, dir);
    Complex shifted = moved.shifted_eigenvalue;
    CHECK(std::abs(char_poly_at(moved.matrix, shifted)) <= 1e-8);
    // the untouched eigenvalues stay put
    Complex z2 = unit_circle_point(2, 3);
    Complex lambda2 = c[0] + c[1] * z2 + c[2] * z2 * z2;
    CHECK(std::abs(char_poly_at(moved.matrix, lambda2)) <= 1e-8);

    CHECK_THROWS_AS(brauer_perturb(m, x, lambda + Complex(0.5, 0), dir), NotAnEigenvector);
}

TEST_CASE("stochastic blends keep predicted spectra") {
    ComplexMatrix a = circulant(ComplexVector({0, 1, 0}));
    CHECK(max_abs_diff(stochastic_blend(a, 1.0, BlendMode::Identity), a) <= 1e-12);
    CHECK(max_abs_diff(stochastic_blend(a, 0.0, BlendMode::Identity),
                       ComplexMatrix::identity(3)) <= 1e-12);

    ComplexMatrix half = stochastic_blend(a, 0.5, BlendMode::Uniform);
    CHECK(is_stochastic(half));
    Complex w3 = unit_circle_point(1, 3);
    for (Complex root : {Complex(1, 0), 0.5 * w3, 0.5 * std::conj(w3)}) {
        CHECK(std::abs(char_poly_at(half, root)) <= 1e-10);
    }

    ComplexMatrix idblend = stochastic_blend(a, 0.25, BlendMode::Identity);
    CHECK(is_stochastic(idblend));
    for (Complex root : {Complex(1, 0), 0.25 * w3 + 0.75, 0.25 * std::conj(w3) + 0.75}) {
        CHECK(std::abs(char_poly_at(idblend, root)) <= 1e-10);
    }

    CHECK_THROWS_AS(stochastic_blend(a, 1.2, BlendMode::Identity), AlphaOutOfRange);
    CHECK_THROWS_AS(stochastic_blend(a, -0.1, BlendMode::Uniform), AlphaOutOfRange);
    ComplexMatrix notstoch{{1, 1}, {0, 1}};
    CHECK_THROWS_AS(stochastic_blend(notstoch, 0.5, BlendMode::Identity), NotStochastic);
}
