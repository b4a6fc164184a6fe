#include "perron/karpelevic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace perron {

namespace {

constexpr double kClusterTol = 1e-7;

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    k = std::min(k, n - k);
    double out = 1.0;
    for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
    return out;
}

Complex int_pow(Complex base, long long e) {
    Complex out = 1.0;
    while (e > 0) {
        if (e & 1) out *= base;
        base *= base;
        e >>= 1;
    }
    return out;
}

}  // namespace

FareyFraction make_fraction(long long p, long long q) {
    if (q <= 0) throw InvalidEndpoints("fraction denominator must be positive");
    if (p < 0 || p > q) throw InvalidEndpoints("fraction must lie in [0, 1]");
    const long long g = std::gcd(p == 0 ? q : p, q);
    return FareyFraction{p / g, q / g};
}

std::vector<FareyFraction> farey_fractions(int n) {
    if (n < 1) throw InvalidEndpoints("Farey level must be at least 1");
    std::vector<FareyFraction> out;
    for (long long q = 1; q <= n; ++q) {
        for (long long p = 0; p <= q; ++p) {
            if (std::gcd(p == 0 ? q : p, q) == 1) out.push_back({p, q});
        }
    }
    std::sort(out.begin(), out.end(), [](const FareyFraction& a, const FareyFraction& b) {
        return a.p * b.q < b.p * a.q;
    });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

ItoArc classify_arc(int n, const FareyFraction& first, const FareyFraction& second) {
    if (n < 1) throw InvalidEndpoints("arc level must be at least 1");
    for (const FareyFraction& f : {first, second}) {
        if (f.q < 1 || f.p < 0 || f.p > f.q) throw InvalidEndpoints("endpoint is not a fraction in [0, 1]");
        if (std::gcd(f.p == 0 ? f.q : f.p, f.q) != 1) throw InvalidEndpoints("endpoint fraction is not reduced");
        if (f.q > n) throw InvalidEndpoints("endpoint denominator exceeds the level");
    }
    FareyFraction pq = first;
    FareyFraction rs = second;
    if (pq.q > rs.q) std::swap(pq, rs);
    const long long cross = pq.p * rs.q - pq.q * rs.p;
    if (cross != 1 && cross != -1) throw InvalidEndpoints("endpoints are not Farey neighbours");
    if (pq.q + rs.q <= n) throw InvalidEndpoints("a level fraction separates the endpoints");
    ItoArc arc;
    arc.n = n;
    arc.pq = pq;
    arc.rs = rs;
    arc.floor_nq = static_cast<int>(n / pq.q);
    if (pq.q == 1) {
        arc.type = ArcType::Zero;
    } else if (arc.floor_nq == 1) {
        arc.type = ArcType::One;
    } else if (rs.q < pq.q * static_cast<long long>(arc.floor_nq)) {
        arc.type = ArcType::Two;
    } else {
        arc.type = ArcType::Three;
    }
    return arc;
}

Complex ItoPolynomial::eval(Complex t) const {
    Complex out = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 0;) out = out * t + coeffs[k];
    return out;
}

std::vector<Complex> ItoPolynomial::derivative() const {
    std::vector<Complex> d(coeffs.size() > 1 ? coeffs.size() - 1 : 1, Complex(0.0));
    for (std::size_t k = 1; k < coeffs.size(); ++k) {
        d[k - 1] = static_cast<double>(k) * coeffs[k];
    }
    return d;
}

ItoPolynomial ito_polynomial(const ItoArc& arc, double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw AlphaOutOfRange("alpha must lie in [0, 1]");
    ItoPolynomial poly;
    poly.arc = arc;
    poly.alpha = alpha;
    poly.beta = 1.0 - alpha;
    const double a = alpha;
    const double b = poly.beta;
    const long long q = arc.pq.q;
    const long long s = arc.rs.q;
    const long long m = arc.floor_nq;
    switch (arc.type) {
        case ArcType::Zero: {
            const long long n = arc.n;
            poly.coeffs.assign(n + 1, Complex(0.0));
            for (long long k = 0; k <= n; ++k) {
                poly.coeffs[k] = binomial(static_cast<int>(n), static_cast<int>(k)) *
                                 std::pow(-b, static_cast<double>(n - k));
            }
            poly.coeffs[0] -= std::pow(a, static_cast<double>(n));
            break;
        }
        case ArcType::One: {
            poly.coeffs.assign(s + 1, Complex(0.0));
            poly.coeffs[s] = 1.0;
            poly.coeffs[s - q] -= b;
            poly.coeffs[0] -= a;
            break;
        }
        case ArcType::Two: {
            poly.coeffs.assign(q * m + 1, Complex(0.0));
            for (long long j = 0; j <= m; ++j) {
                poly.coeffs[q * j] += binomial(static_cast<int>(m), static_cast<int>(j)) *
                                      std::pow(-b, static_cast<double>(m - j));
            }
            poly.coeffs[q * m - s] -= std::pow(a, static_cast<double>(m));
            break;
        }
        case ArcType::Three: {
            poly.coeffs.assign(s + 1, Complex(0.0));
            const long long shift = s - q * m;
            for (long long j = 0; j <= m; ++j) {
                poly.coeffs[shift + q * j] += binomial(static_cast<int>(m), static_cast<int>(j)) *
                                              std::pow(-b, static_cast<double>(m - j));
            }
            poly.coeffs[0] -= std::pow(a, static_cast<double>(m));
            break;
        }
    }
    return poly;
}

double full_ito_residual(const ItoArc& arc, double alpha, Complex t) {
    const double b = 1.0 - alpha;
    const long long q = arc.pq.q;
    const long long s = arc.rs.q;
    const long long m = arc.floor_nq;
    const Complex lhs = int_pow(t, s) * int_pow(int_pow(t, q) - b, m);
    const Complex rhs = std::pow(alpha, static_cast<double>(m)) * int_pow(t, q * m);
    return std::abs(lhs - rhs);
}

namespace {

double eval_scale(const std::vector<Complex>& coeffs, Complex z) {
    double scale = 0.0;
    double zp = 1.0;
    const double az = std::abs(z);
    for (const Complex& c : coeffs) {
        scale += std::abs(c) * zp;
        zp *= az;
    }
    return std::max(scale, 1.0);
}

Complex eval_poly(const std::vector<Complex>& coeffs, Complex t) {
    Complex out = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 0;) out = out * t + coeffs[k];
    return out;
}

void mark_clusters(RootSet& rs) {
    const std::size_t d = rs.values.size();
    rs.clustered.assign(d, 0);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i + 1; j < d; ++j) {
            if (std::abs(rs.values[i] - rs.values[j]) < kClusterTol) {
                rs.clustered[i] = 1;
                rs.clustered[j] = 1;
                rs.has_cluster = true;
            }
        }
    }
}

}  // namespace

RootSet roots(const ItoPolynomial& p, const Tolerance& tol) {
    RootSet out;
    if (p.arc.type == ArcType::Zero) {
        const int n = p.arc.n;
        out.values.reserve(n);
        for (int k = 0; k < n; ++k) {
            out.values.push_back(p.beta + p.alpha * unit_circle_point(k, n));
        }
        mark_clusters(out);
        return out;
    }
    const int d = p.degree();
    if (d < 1) throw NoConvergence("cannot iterate on a constant polynomial");
    std::vector<Complex> c = p.coeffs;
    const Complex lead = c.back();
    for (Complex& v : c) v /= lead;

    double radius = 0.0;
    for (int k = 0; k < d; ++k) radius = std::max(radius, std::abs(c[k]));
    radius += 1.0;
    std::vector<Complex> z(d);
    for (int i = 0; i < d; ++i) {
        const double theta = 2.0 * M_PI * i / d + 0.4;
        z[i] = radius * Complex(std::cos(theta), std::sin(theta));
    }

    constexpr int kMaxSweeps = 500;
    int sweep = 0;
    for (; sweep < kMaxSweeps; ++sweep) {
        bool converged = true;
        for (int i = 0; i < d; ++i) {
            Complex den = 1.0;
            for (int j = 0; j < d; ++j) {
                if (j != i) den *= z[i] - z[j];
            }
            if (den == Complex(0.0)) {
                z[i] += Complex(1e-8 * (1.0 + std::abs(z[i])), 1e-8);
                converged = false;
                continue;
            }
            const Complex num = eval_poly(c, z[i]);
            z[i] -= num / den;
            if (std::abs(num) > tol.eps_root * eval_scale(c, z[i])) converged = false;
        }
        if (converged) break;
    }
    if (sweep == kMaxSweeps) throw NoConvergence("root iteration exhausted its sweep budget");
    out.iterations = sweep + 1;

    const std::vector<Complex> dc = p.derivative();
    std::vector<Complex> dcs(dc);
    for (Complex& v : dcs) v /= lead;
    for (int i = 0; i < d; ++i) {
        Complex best = z[i];
        double best_res = std::abs(eval_poly(c, best));
        Complex cur = best;
        for (int step = 0; step < 3; ++step) {
            const Complex fp = eval_poly(dcs, cur);
            if (fp == Complex(0.0)) break;
            cur -= eval_poly(c, cur) / fp;
            const double res = std::abs(eval_poly(c, cur));
            if (res < best_res) {
                best = cur;
                best_res = res;
            }
        }
        z[i] = best;
    }
    out.values = std::move(z);
    mark_clusters(out);
    return out;
}

bool has_multiple_root(const ItoPolynomial& p, const Tolerance&) {
    const ItoArc& arc = p.arc;
    if (arc.type == ArcType::Zero) {
        return p.alpha * 2.0 * std::sin(M_PI / arc.n) < kClusterTol;
    }
    if (arc.type == ArcType::One && arc.rs.q - arc.pq.q == 1) {
        // t^s - b t - a: for even s the critical point never reaches the
        // curve; for odd s a double root appears exactly when
        // s^s a^(s-1) = (s-1)^(s-1) b^s.
        const long long s = arc.rs.q;
        if (s % 2 == 0) return false;
        const double lhs = std::pow(static_cast<double>(s), static_cast<double>(s)) *
                           std::pow(p.alpha, static_cast<double>(s - 1));
        const double rhs = std::pow(static_cast<double>(s - 1), static_cast<double>(s - 1)) *
                           std::pow(p.beta, static_cast<double>(s));
        if (p.alpha >= p.beta) return false;
        return std::abs(lhs - rhs) < 1e-9 * std::max({1.0, lhs, rhs});
    }
    bool multiple = false;
    sylvester_resultant(p, &multiple);
    return multiple;
}

Complex sylvester_resultant(const ItoPolynomial& p, bool* multiple) {
    const int d = p.degree();
    if (d < 1) throw DimensionMismatch("resultant needs degree at least one");
    if (d == 1) {
        if (multiple) *multiple = false;
        return Complex(1.0);
    }
    const std::vector<Complex>& f = p.coeffs;
    const std::vector<Complex> g = p.derivative();
    const int rows = 2 * d - 1;
    ComplexMatrix syl(rows, rows);
    for (int r = 0; r < d - 1; ++r) {
        for (int k = 0; k <= d; ++k) syl(r, r + k) = f[d - k];
    }
    for (int r = 0; r < d; ++r) {
        for (int k = 0; k <= d - 1; ++k) syl(d - 1 + r, r + k) = g[d - 1 - k];
    }
    double ratio = 0.0;
    const Complex det = lu_determinant(syl, &ratio);
    if (multiple) *multiple = ratio < 1e-10;
    return det;
}

ComplexMatrix type1_companion(const ItoArc& arc, double alpha) {
    if (arc.type != ArcType::One) throw WrongArcType("companion form needs a type I arc");
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw AlphaOutOfRange("alpha must lie in [0, 1]");
    const long long s = arc.rs.q;
    const long long q = arc.pq.q;
    ComplexMatrix out(s, s);
    for (long long i = 0; i + 1 < s; ++i) out(i, i + 1) = 1.0;
    out(s - 1, 0) = alpha;
    out(s - 1, s - q) += 1.0 - alpha;
    return out;
}

ComplexMatrix type0_circulant(int n, double alpha) {
    if (n < 1) throw DimensionMismatch("circulant size must be at least 1");
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw AlphaOutOfRange("alpha must lie in [0, 1]");
    ComplexMatrix out(n, n);
    for (int i = 0; i < n; ++i) {
        out(i, i) += 1.0 - alpha;
        out(i, (i + 1) % n) += alpha;
    }
    return out;
}

PerronSimilarity vandermonde_similarity(const std::vector<Complex>& nodes, const Tolerance& tol) {
    const std::size_t d = nodes.size();
    if (d == 0) throw DimensionMismatch("need at least one node");
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i + 1; j < d; ++j) {
            if (std::abs(nodes[i] - nodes[j]) < kClusterTol) {
                throw MultipleRoots("nodes too close for a well conditioned similarity");
            }
        }
    }
    std::size_t front = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < d; ++j) {
        const double dist = std::abs(nodes[j] - Complex(1.0));
        if (dist < best) {
            best = dist;
            front = j;
        }
    }
    if (best > 1e-6) throw MultipleRoots("no node near one to head the similarity");
    std::vector<Complex> ordered;
    ordered.push_back(nodes[front]);
    for (std::size_t j = 0; j < d; ++j) {
        if (j != front) ordered.push_back(nodes[j]);
    }
    ComplexMatrix s(d, d);
    for (std::size_t j = 0; j < d; ++j) {
        Complex power = 1.0;
        for (std::size_t i = 0; i < d; ++i) {
            s(i, j) = power;
            power *= ordered[j];
        }
    }
    return PerronSimilarity(s, tol);
}

namespace {

std::vector<ThetaBoundary::Sample> sweep_arc(const ItoArc& arc, int samples_per_arc,
                                             const Tolerance& tol) {
    std::vector<ThetaBoundary::Sample> out;
    out.reserve(samples_per_arc);
    const Complex start = unit_circle_point(arc.rs.p, arc.rs.q);
    const Complex finish = unit_circle_point(arc.pq.p, arc.pq.q);
    out.push_back({start, 1.0, arc});
    Complex prev = start;
    constexpr double kJumpTol = 0.2;
    for (int k = 1; k + 1 < samples_per_arc; ++k) {
        const double alpha = 1.0 - static_cast<double>(k) / (samples_per_arc - 1);
        const RootSet rs = roots(ito_polynomial(arc, alpha), tol);
        Complex pick = rs.values.front();
        double best = std::abs(pick - prev);
        for (const Complex& z : rs.values) {
            const double dist = std::abs(z - prev);
            if (dist < best) {
                best = dist;
                pick = z;
            }
        }
        // Where the tracked branch meets another root the two continuations
        // sit at the same distance from the previous sample and nearest-root
        // selection degenerates to rounding luck. Among near ties, continue
        // toward the arc's destination; away from collisions the runner-up
        // is separated by the root spacing and the tie break never fires.
        const double tie_cutoff = best * 1.1 + 1e-6;
        for (const Complex& z : rs.values) {
            if (std::abs(z - prev) <= tie_cutoff &&
                std::abs(z - finish) < std::abs(pick - finish)) {
                pick = z;
            }
        }
        if (best > kJumpTol) throw BranchTrackingFailure("tracked root jumped between samples");
        out.push_back({pick, alpha, arc});
        prev = pick;
    }
    if (std::abs(finish - prev) > kJumpTol) {
        throw BranchTrackingFailure("tracked root did not reach the far endpoint");
    }
    out.push_back({finish, 0.0, arc});
    // Sweep order runs from the larger denominator endpoint down to the
    // smaller; flip when that is against ascending fraction order.
    if (arc.rs.p * arc.pq.q > arc.pq.p * arc.rs.q) {
        std::reverse(out.begin(), out.end());
    }
    return out;
}

}  // namespace

ThetaBoundary theta_boundary(int n, int samples_per_arc, const Tolerance& tol) {
    if (n < 2) throw InvalidEndpoints("boundary needs level at least 2");
    if (samples_per_arc < 2) throw InvalidEndpoints("need at least two samples per arc");
    const std::vector<FareyFraction> farey = farey_fractions(n);
    ThetaBoundary boundary;
    boundary.n = n;
    for (std::size_t i = 0; i + 1 < farey.size(); ++i) {
        const ItoArc arc = classify_arc(n, farey[i], farey[i + 1]);
        std::vector<ThetaBoundary::Sample> part = sweep_arc(arc, samples_per_arc, tol);
        std::size_t begin = 0;
        if (!boundary.samples.empty() &&
            std::abs(boundary.samples.back().z - part.front().z) < 1e-12) {
            begin = 1;
        }
        boundary.samples.insert(boundary.samples.end(), part.begin() + begin, part.end());
    }
    while (boundary.samples.size() > 1 &&
           std::abs(boundary.samples.back().z - boundary.samples.front().z) < 1e-12) {
        boundary.samples.pop_back();
    }
    return boundary;
}

namespace {

double segment_distance(Complex p, Complex a, Complex b) {
    const Complex ab = b - a;
    const double len2 = std::norm(ab);
    if (len2 == 0.0) return std::abs(p - a);
    double t = ((p.real() - a.real()) * ab.real() + (p.imag() - a.imag()) * ab.imag()) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(p - (a + t * ab));
}

}  // namespace

bool theta_contains(Complex lambda, const ThetaBoundary& boundary, double tol) {
    const std::size_t m = boundary.samples.size();
    if (m < 3) return std::abs(lambda - boundary.samples.front().z) <= tol;
    for (std::size_t i = 0; i < m; ++i) {
        const Complex a = boundary.samples[i].z;
        const Complex b = boundary.samples[(i + 1) % m].z;
        if (segment_distance(lambda, a, b) <= tol) return true;
    }
    bool inside = false;
    const double x = lambda.real();
    const double y = lambda.imag();
    for (std::size_t i = 0, j = m - 1; i < m; j = i++) {
        const Complex pi = boundary.samples[i].z;
        const Complex pj = boundary.samples[j].z;
        if ((pi.imag() > y) != (pj.imag() > y)) {
            const double cross = (pj.real() - pi.real()) * (y - pi.imag()) /
                                     (pj.imag() - pi.imag()) +
                                 pi.real();
            if (x < cross) inside = !inside;
        }
    }
    return inside;
}

bool is_extremal_in_theta(Complex lambda, const ThetaBoundary& boundary, double tol) {
    if (!theta_contains(lambda, boundary, tol)) {
        throw NotInRegion("point lies outside the region");
    }
    if (std::abs(lambda) <= tol) return false;
    return !theta_contains(lambda * (1.0 + 10.0 * tol), boundary, tol);
}

}  // namespace perron
