#include "perron/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace perron {

SpectrumVector SpectrumVector::make(ComplexVector v) {
    SpectrumVector s{std::move(v), 0};
    double best = -1.0;
    for (std::size_t i = 0; i < s.values.size(); ++i) {
        const double m = std::abs(s.values[i]);
        if (m > best) {
            best = m;
            s.perron_index = i;
        }
    }
    return s;
}

PerronSimilarity::PerronSimilarity(ComplexMatrix s, Tolerance tol) : s_(std::move(s)) {
    if (!s_.square()) throw DimensionMismatch("similarity matrix must be square");
    sinv_ = perron::inverse(s_, tol, &growth_);
    normalized_ = is_normalized_form(s_, tol);
}

PerronSimilarity::PerronSimilarity(ComplexMatrix s, ComplexMatrix s_inv, Tolerance tol)
    : s_(std::move(s)), sinv_(std::move(s_inv)) {
    if (!s_.square() || !sinv_.square() || s_.rows() != sinv_.rows())
        throw DimensionMismatch("similarity and inverse shapes differ");
    const double err = max_abs_diff(s_ * sinv_, ComplexMatrix::identity(s_.rows()));
    if (err > 1e-8 * std::max(1.0, s_.max_abs())) {
        throw SingularMatrix("supplied inverse does not invert the similarity");
    }
    normalized_ = is_normalized_form(s_, tol);
}

bool is_normalized_form(const ComplexMatrix& s, const Tolerance& tol) {
    if (!s.square() || s.rows() == 0) return false;
    const std::size_t n = s.rows();
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(s(i, 0) - Complex{1.0}) > tol.eps_eq) return false;
    }
    auto col_is_real = [&](std::size_t j) {
        for (std::size_t i = 0; i < n; ++i)
            if (std::abs(s(i, j).imag()) > tol.eps_eq) return false;
        return true;
    };
    std::size_t j = 1;
    for (; j < n; ++j) {
        double m = 0;
        for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(s(i, j)));
        if (std::abs(m - 1.0) > tol.eps_eq) return false;
        if (!col_is_real(j)) break;
    }
    // from j on, columns must come in adjacent conjugate pairs
    for (; j < n; j += 2) {
        if (j + 1 >= n) return false;
        if (col_is_real(j) || col_is_real(j + 1)) return false;
        for (std::size_t i = 0; i < n; ++i) {
            if (std::abs(s(i, j) - std::conj(s(i, j + 1))) > tol.eps_eq) return false;
        }
        double m = 0;
        for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(s(i, j + 1)));
        if (std::abs(m - 1.0) > tol.eps_eq) return false;
    }
    return true;
}

ComplexMatrix realizing_matrix(const PerronSimilarity& s, const SpectrumVector& x) {
    if (x.size() != s.order()) throw DimensionMismatch("spectrum length differs from order");
    return s.matrix() * diagonal_matrix(x.values) * s.inverse();
}

bool in_spectracone(const PerronSimilarity& s, const SpectrumVector& x, const Tolerance& tol) {
    return is_nonneg(realizing_matrix(s, x), tol);
}

bool in_spectratope(const PerronSimilarity& s, const SpectrumVector& x, const Tolerance& tol) {
    return is_stochastic(realizing_matrix(s, x), tol);
}

ComplexVector row_cone_coefficients(const PerronSimilarity& s, const SpectrumVector& x,
                                    const Tolerance& tol) {
    if (x.size() != s.order()) throw DimensionMismatch("spectrum length differs from order");
    ComplexMatrix rhs(x.size(), 1);
    for (std::size_t i = 0; i < x.size(); ++i) rhs(i, 0) = x.values[i];
    const ComplexMatrix y = lu_solve(s.matrix().transpose(), rhs, tol);
    return y.col(0);
}

namespace {

// Divides out the phase of the first entry with nonnegligible modulus and
// reports whether the result is a strictly positive real vector.
bool strictly_positive_after_phase(const ComplexVector& v, const Tolerance& tol,
                                   Complex* phase_out) {
    const double scale = v.inf_norm();
    if (scale == 0.0) return false;
    Complex lead{};
    for (const auto& z : v) {
        if (std::abs(z) > tol.eps_nonneg * scale) { lead = z; break; }
    }
    if (lead == Complex{}) return false;
    const Complex phase = lead / std::abs(lead);
    for (const auto& z : v) {
        const Complex w = z / phase;
        if (w.real() <= tol.eps_nonneg) return false;
        if (std::abs(w.imag()) > tol.eps_nonneg * std::max(1.0, scale)) return false;
    }
    if (phase_out) *phase_out = phase;
    return true;
}

}  // namespace

std::optional<std::size_t> is_perron_similarity(const ComplexMatrix& s, const Tolerance& tol) {
    if (!s.square()) throw DimensionMismatch("similarity matrix must be square");
    ComplexMatrix sinv;
    try {
        sinv = inverse(s, tol);
    } catch (const SingularMatrix&) {
        return std::nullopt;
    }
    std::optional<std::size_t> found;
    for (std::size_t k = 0; k < s.cols(); ++k) {
        Complex pc{}, pr{};
        if (!strictly_positive_after_phase(s.col(k), tol, &pc)) continue;
        if (!strictly_positive_after_phase(sinv.row(k), tol, &pr)) continue;
        const Complex prod = pc * pr;  // phases of alpha and beta must cancel
        if (std::abs(prod.imag()) > tol.eps_eq || prod.real() <= 0.0) continue;
        if (found) return std::nullopt;  // not unique
        found = k;
    }
    return found;
}

ComplexMatrix equivalence_transform(const ComplexMatrix& s,
                                    const std::vector<std::size_t>& row_perm,
                                    const ComplexVector& v, const ComplexVector& w,
                                    const std::vector<std::size_t>& col_perm,
                                    const Tolerance& tol) {
    const std::size_t n = s.rows();
    if (!s.square()) throw DimensionMismatch("similarity matrix must be square");
    if (row_perm.size() != n || col_perm.size() != n || v.size() != n || w.size() != n)
        throw DimensionMismatch("transform component length mismatch");
    auto check_perm = [n](const std::vector<std::size_t>& p) {
        std::vector<bool> seen(n, false);
        for (std::size_t i : p) {
            if (i >= n || seen[i]) throw InvalidScaling("not a permutation");
            seen[i] = true;
        }
    };
    check_perm(row_perm);
    check_perm(col_perm);
    for (const auto& z : v) {
        if (std::abs(z.imag()) > tol.eps_eq || z.real() <= 0.0)
            throw InvalidScaling("left scaling must be strictly positive");
    }
    for (const auto& z : w) {
        if (std::abs(z) == 0.0) throw InvalidScaling("right scaling must be totally nonzero");
    }
    ComplexMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t si = row_perm[i];
        for (std::size_t j = 0; j < n; ++j) {
            out(i, col_perm[j]) = v[i] * s(si, j) * w[j];
        }
    }
    return out;
}

namespace {

constexpr double kPairTol = 1e-8;

}  // namespace

NormalizeResult normalize(const ComplexMatrix& s, const Tolerance& tol) {
    const auto k = is_perron_similarity(s, tol);
    if (!k) throw NotPerronSimilarity("no unique Perron column");
    const std::size_t n = s.rows();

    // Row scaling turning the Perron column into a constant vector.
    const ComplexVector perron_col = s.col(*k);
    Complex phase{};
    strictly_positive_after_phase(perron_col, tol, &phase);
    ComplexVector v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = 1.0 / (perron_col[i] / phase).real();

    // Scale each column: the Perron column by the exact residual entry so it
    // becomes the all-ones vector, the others by their largest entry, which
    // gives unit infinity norm with a canonical phase.
    ComplexMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = v[i] * s(i, j);
    ComplexVector b(n);
    for (std::size_t j = 0; j < n; ++j) {
        if (j == *k) {
            b[j] = 1.0 / a(0, j);
            continue;
        }
        std::size_t arg = 0;
        double best = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double m = std::abs(a(i, j));
            if (m > best + 1e-15 * std::max(best, 0.0)) { best = m; arg = i; }
        }
        if (best == 0.0) throw SingularMatrix("zero column cannot be normalized");
        b[j] = 1.0 / a(arg, j);
    }
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) a(i, j) *= b[j];

    // Order: Perron column, real columns, then conjugate pairs.
    auto col_is_real = [&](std::size_t j) {
        for (std::size_t i = 0; i < n; ++i)
            if (std::abs(a(i, j).imag()) > kPairTol) return false;
        return true;
    };
    std::vector<std::size_t> order;
    order.push_back(*k);
    std::vector<std::size_t> nonreal;
    for (std::size_t j = 0; j < n; ++j) {
        if (j == *k) continue;
        if (col_is_real(j)) order.push_back(j);
        else nonreal.push_back(j);
    }
    std::vector<bool> used(nonreal.size(), false);
    for (std::size_t ii = 0; ii < nonreal.size(); ++ii) {
        if (used[ii]) continue;
        used[ii] = true;
        double best = std::numeric_limits<double>::infinity();
        std::size_t mate = nonreal.size();
        for (std::size_t jj = ii + 1; jj < nonreal.size(); ++jj) {
            if (used[jj]) continue;
            double d = 0;
            for (std::size_t i = 0; i < n; ++i)
                d = std::max(d, std::abs(a(i, nonreal[ii]) - std::conj(a(i, nonreal[jj]))));
            if (d < best) { best = d; mate = jj; }
        }
        if (mate == nonreal.size() || best > kPairTol)
            throw PairingFailure("nonreal column has no conjugate mate");
        used[mate] = true;
        // positive imaginary part of the first nonreal entry goes first
        std::size_t first = nonreal[ii], second = nonreal[mate];
        for (std::size_t i = 0; i < n; ++i) {
            const double im = a(i, first).imag();
            if (std::abs(im) > kPairTol) {
                if (im < 0) std::swap(first, second);
                break;
            }
        }
        order.push_back(first);
        order.push_back(second);
    }

    ComplexMatrix t(n, n);
    for (std::size_t pos = 0; pos < n; ++pos)
        for (std::size_t i = 0; i < n; ++i) t(i, pos) = a(i, order[pos]);

    //

    // Transform reported in the direction S = P dv T dw Q.
    EquivalenceTransform tr;
    tr.row_perm.resize(n);
    std::iota(tr.row_perm.begin(), tr.row_perm.end(), std::size_t{0});
    tr.v = ComplexVector(n);
    for (std::size_t i = 0; i < n; ++i) tr.v[i] = 1.0 / v[i];
    tr.w = ComplexVector(n);
    tr.col_perm.resize(n);
    for (std::size_t pos = 0; pos < n; ++pos) {
        tr.w[pos] = 1.0 / b[order[pos]];
        tr.col_perm[pos] = order[pos];
    }
    return NormalizeResult{PerronSimilarity(t, tol), std::move(tr), *k};
}

bool HalfSpace::contains(const ComplexVector& x, double eps) const {
    if (x.size() != normal.size()) throw DimensionMismatch("half-space dimension mismatch");
    double re = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        re += (std::conj(normal[i]) * x[i]).real();
    }
    return re >= offset - eps;
}

HalfSpaceSystem halfspace_description(const PerronSimilarity& s) {
    const std::size_t n = s.order();
    const ComplexMatrix& m = s.matrix();
    const ComplexMatrix& minv = s.inverse();
    HalfSpaceSystem sys;
    sys.cone.reserve(3 * n * n);
    const Complex iu{0.0, 1.0};
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            ComplexVector a(n);
            for (std::size_t t = 0; t < n; ++t) a[t] = std::conj(m(i, t) * minv(t, j));
            sys.cone.push_back({a, 0.0});
            ComplexVector ia(n), nia(n);
            for (std::size_t t = 0; t < n; ++t) {
                ia[t] = iu * a[t];
                nia[t] = -iu * a[t];
            }
            sys.cone.push_back({ia, 0.0});
            sys.cone.push_back({nia, 0.0});
        }
    }
    // Row sum constraints: with u = S^-1 e, the i-th row sum of the
    // realizing matrix is <x, conj(s_i o u)>. Pinning it at 1 takes the
    // offset +1 and -1 pair plus the two imaginary cuts.
    const ComplexVector u = minv * ones(n);
    sys.tope.reserve(4 * n);
    for (std::size_t i = 0; i < n; ++i) {
        ComplexVector a(n);
        for (std::size_t t = 0; t < n; ++t) a[t] = std::conj(m(i, t) * u[t]);
        ComplexVector na(n), ia(n), nia(n);
        for (std::size_t t = 0; t < n; ++t) {
            na[t] = -a[t];
            ia[t] = iu * a[t];
            nia[t] = -iu * a[t];
        }
        sys.tope.push_back({a, 1.0});
        sys.tope.push_back({na, -1.0});
        sys.tope.push_back({ia, 0.0});
        sys.tope.push_back({nia, 0.0});
    }
    return sys;
}

bool in_halfspace_cone(const HalfSpaceSystem& h, const ComplexVector& x, double eps) {
    for (const auto& hs : h.cone)
        if (!hs.contains(x, eps)) return false;
    return true;
}

bool in_halfspace_tope(const HalfSpaceSystem& h, const ComplexVector& x, double eps) {
    if (!in_halfspace_cone(h, x, eps)) return false;
    for (const auto& hs : h.tope)
        if (!hs.contains(x, eps)) return false;
    return true;
}

bool is_ideal(const PerronSimilarity& s, const Tolerance& tol) {
    const auto e = SpectrumVector::make(ones(s.order()));
    ComplexVector y;
    try {
        y = row_cone_coefficients(s, e, tol);
    } catch (const SingularMatrix&) {
        return false;
    }
    if (!is_nonneg(y, tol)) return false;
    for (std::size_t i = 0; i < s.order(); ++i) {
        if (!in_spectracone(s, SpectrumVector::make(s.matrix().row(i)), tol)) return false;
    }
    return true;
}

namespace {

double binomial(int n, int k) {
    double r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

ConditionReport check_necessary_conditions(const SpectrumVector& x, int horizon,
                                           const Tolerance& tol) {
    if (horizon < 1) throw AlphaOutOfRange("horizon must be at least 1");
    const std::size_t n = x.size();
    if (n == 0) throw DimensionMismatch("empty spectrum");
    ConditionReport rep;
    rep.horizon = horizon;
    const double scale = std::max(1.0, x.values.inf_norm());

    // spectral radius attained by an element of the spectrum
    double rho = 0;
    for (const auto& z : x.values) rho = std::max(rho, std::abs(z));
    rep.spectral_radius_ok = false;
    for (const auto& z : x.values) {
        if (std::abs(z - Complex{rho}) <= tol.eps_eq * scale) {
            rep.spectral_radius_ok = true;
            break;
        }
    }
    if (!rep.spectral_radius_ok && !rep.first_violation)
        rep.first_violation = ConditionViolation{"spectral_radius", 0, 0};

    // multiset closed under conjugation, greedy matching
    {
        std::vector<bool> used(n, false);
        rep.self_conjugate_ok = true;
        int bad_index = -1;
        for (std::size_t i = 0; i < n && rep.self_conjugate_ok; ++i) {
            if (used[i]) continue;
            if (std::abs(x.values[i].imag()) <= tol.eps_eq * scale) {
                used[i] = true;
                continue;
            }
            bool matched = false;
            for (std::size_t j = i + 1; j < n; ++j) {
                if (used[j]) continue;
                if (std::abs(x.values[j] - std::conj(x.values[i])) <= 2 * tol.eps_eq * scale) {
                    used[i] = used[j] = true;
                    matched = true;
                    break;
                }
            }
            if (!matched) {
                rep.self_conjugate_ok = false;
                bad_index = static_cast<int>(i);
            }
        }
        if (!rep.self_conjugate_ok && !rep.first_violation)
            rep.first_violation = ConditionViolation{"self_conjugate", bad_index + 1, 0};
    }

    // power moments up to the horizon
    std::vector<double> s(horizon + 1, 0.0);
    rep.moments_ok = true;
    {
        int bad_k = 0;
        std::vector<Complex> pw(n, Complex{1.0});
        for (int k = 1; k <= horizon; ++k) {
            Complex sk = 0;
            for (std::size_t i = 0; i < n; ++i) {
                pw[i] *= x.values[i];
                sk += pw[i];
            }
            s[k] = sk.real();
            const double pscale = std::pow(scale, k) * n;
            const bool ok = sk.real() >= -tol.eps_nonneg * pscale &&
                            std::abs(sk.imag()) <= tol.eps_nonneg * pscale;
            if (!ok && rep.moments_ok) {
                rep.moments_ok = false;
                bad_k = k;
            }
        }
        if (!rep.moments_ok && !rep.first_violation)
            rep.first_violation = ConditionViolation{"moments", bad_k, 0};
    }

    // s_k^l <= n^(l-1) s_kl for all k, l >= 2 with k l within the horizon
    rep.jll_ok = true;
    {
        int bad_k = 0, bad_l = 0;
        for (int k = 1; k <= horizon && rep.jll_ok; ++k) {
            for (int l = 2; k * l <= horizon; ++l) {
                const double lhs = std::pow(s[k], l);
                const double rhs = std::pow(static_cast<double>(n), l - 1) * s[k * l];
                const double jscale = std::max(1.0, std::pow(scale, k * l)) * n * n;
                if (lhs > rhs + tol.eps_nonneg * jscale) {
                    rep.jll_ok = false;
                    bad_k = k;
                    bad_l = l;
                    break;
                }
            }
        }
        if (!rep.jll_ok && !rep.first_violation)
            rep.first_violation = ConditionViolation{"jll", bad_k, bad_l};
    }

    // Newton's inequalities on {0, lam1 - lam2, ..., lam1 - lamn} where lam1
    // is the Perron entry
    rep.newton_ok = true;
    {
        const Complex lam1 = x.values[x.perron_index];
        std::vector<Complex> mu;
        mu.push_back(Complex{0.0});
        for (std::size_t i = 0; i < n; ++i) {
            if (i == x.perron_index) continue;
            mu.push_back(lam1 - x.values[i]);
        }
        // elementary symmetric functions via the product recurrence
        std::vector<Complex> e(n + 1, Complex{0.0});
        e[0] = 1.0;
        std::size_t used = 0;
        for (const auto& m : mu) {
            ++used;
            for (std::size_t k = used; k-- > 1;) e[k] = e[k] + m * e[k - 1];
        }
        std::vector<double> p(n + 1, 0.0);
        for (std::size_t k = 0; k <= n; ++k)
            p[k] = e[k].real() / binomial(static_cast<int>(n), static_cast<int>(k));
        int bad_k = 0;
        for (std::size_t k = 1; k + 1 <= n; ++k) {
            const double nscale =
                std::max({1.0, std::abs(p[k]) * std::abs(p[k]),
                          std::abs(p[k - 1]) * std::abs(p[k + 1])});
            if (p[k] * p[k] < p[k - 1] * p[k + 1] - tol.eps_nonneg * nscale) {
                rep.newton_ok = false;
                bad_k = static_cast<int>(k);
                break;
            }
        }
        if (!rep.newton_ok && !rep.first_violation)
            rep.first_violation = ConditionViolation{"newton", bad_k, 0};
    }

    return rep;
}

BrauerResult brauer_perturb(const ComplexMatrix& a, const ComplexVector& x,
                            Complex lambda, const ComplexVector& y, const Tolerance& tol) {
    if (!a.square() || a.rows() != x.size() || x.size() != y.size())
        throw DimensionMismatch("brauer_perturb shape mismatch");
    const ComplexVector ax = a * x;
    const double scale = std::max(1.0, a.inf_norm()) * std::max(1.0, x.inf_norm());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (std::abs(ax[i] - lambda * x[i]) > 1e-8 * scale)
            throw NotAnEigenvector("x is not an eigenvector for lambda");
    }
    (void)tol;
    ComplexMatrix out = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) += x[i] * std::conj(y[j]);
    Complex shift = 0;
    for (std::size_t i = 0; i < x.size(); ++i) shift += std::conj(y[i]) * x[i];
    return {std::move(out), lambda + shift};
}

ComplexMatrix stochastic_blend(const ComplexMatrix& a, double alpha, BlendMode mode,
                               const Tolerance& tol) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw AlphaOutOfRange("blend weight outside [0,1]");
    if (!is_stochastic(a, tol)) throw NotStochastic("blend input must be stochastic");
    const std::size_t n = a.rows();
    ComplexMatrix out(n, n);
    const double beta = 1.0 - alpha;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Complex v = alpha * a(i, j);
            if (mode == BlendMode::Identity) {
                if (i == j) v += beta;
            } else {
                v += beta / static_cast<double>(n);
            }
            out(i, j) = v;
        }
    return out;
}

double angle(const ComplexVector& x, const ComplexVector& y) {
    if (x.size() != y.size()) throw LengthMismatch("angle length mismatch");
    const double nx = x.two_norm(), ny = y.two_norm();
    if (nx == 0.0 || ny == 0.0) return M_PI / 2.0;
    double re = 0;
    for (std::size_t i = 0; i < x.size(); ++i) re += (std::conj(y[i]) * x[i]).real();
    const double c = std::clamp(re / (nx * ny), -1.0, 1.0);
    return std::acos(c);
}

}  // namespace perron
