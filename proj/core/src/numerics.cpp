#include "perron/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace perron {

namespace {

void require_finite(const Complex& z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw NonFiniteValue("non-finite value rejected");
    }
}

}  // namespace

ComplexVector::ComplexVector(std::initializer_list<Complex> xs) : v_(xs) {
    for (const auto& z : v_) require_finite(z);
}

ComplexVector::ComplexVector(std::vector<Complex> xs) : v_(std::move(xs)) {
    for (const auto& z : v_) require_finite(z);
}

double ComplexVector::inf_norm() const {
    double m = 0;
    for (const auto& z : v_) m = std::max(m, std::abs(z));
    return m;
}

double ComplexVector::two_norm() const {
    double s = 0;
    for (const auto& z : v_) s += std::norm(z);
    return std::sqrt(s);
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> data)
    : r_(rows), c_(cols), d_(std::move(data)) {
    if (d_.size() != r_ * c_) throw DimensionMismatch("matrix data size mismatch");
    for (const auto& z : d_) require_finite(z);
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
    r_ = rows.size();
    c_ = r_ ? rows.begin()->size() : 0;
    d_.reserve(r_ * c_);
    for (const auto& row : rows) {
        if (row.size() != c_) throw DimensionMismatch("ragged matrix initializer");
        for (const auto& z : row) {
            require_finite(z);
            d_.push_back(z);
        }
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexVector ComplexMatrix::row(std::size_t i) const {
    ComplexVector v(c_);
    for (std::size_t j = 0; j < c_; ++j) v[j] = (*this)(i, j);
    return v;
}

ComplexVector ComplexMatrix::col(std::size_t j) const {
    ComplexVector v(r_);
    for (std::size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
    return v;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix t(c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

ComplexMatrix ComplexMatrix::conjugate() const {
    ComplexMatrix t(r_, c_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < c_; ++j) t(i, j) = std::conj((*this)(i, j));
    return t;
}

ComplexMatrix ComplexMatrix::conj_transpose() const { return transpose().conjugate(); }

double ComplexMatrix::max_abs() const {
    double m = 0;
    for (const auto& z : d_) m = std::max(m, std::abs(z));
    return m;
}

double ComplexMatrix::inf_norm() const {
    double m = 0;
    for (std::size_t i = 0; i < r_; ++i) {
        double s = 0;
        for (std::size_t j = 0; j < c_; ++j) s += std::abs((*this)(i, j));
        m = std::max(m, s);
    }
    return m;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionMismatch("matrix product shape mismatch");
    ComplexMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

ComplexVector operator*(const ComplexMatrix& a, const ComplexVector& x) {
    if (a.cols() != x.size()) throw DimensionMismatch("matrix-vector shape mismatch");
    ComplexVector y(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Complex s = 0;
        for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionMismatch("matrix sum shape mismatch");
    ComplexMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
    return c;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionMismatch("matrix difference shape mismatch");
    ComplexMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
    return c;
}

ComplexMatrix operator*(Complex s, const ComplexMatrix& a) {
    ComplexMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = s * a(i, j);
    return c;
}

ComplexVector operator*(Complex s, const ComplexVector& x) {
    ComplexVector y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = s * x[i];
    return y;
}

ComplexVector operator+(const ComplexVector& a, const ComplexVector& b) {
    if (a.size() != b.size()) throw LengthMismatch("vector sum length mismatch");
    ComplexVector y(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) y[i] = a[i] + b[i];
    return y;
}

ComplexVector operator-(const ComplexVector& a, const ComplexVector& b) {
    if (a.size() != b.size()) throw LengthMismatch("vector difference length mismatch");
    ComplexVector y(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) y[i] = a[i] - b[i];
    return y;
}

ComplexMatrix diagonal_matrix(const ComplexVector& d) {
    ComplexMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

ComplexVector ones(std::size_t n) {
    ComplexVector v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = 1.0;
    return v;
}

ComplexVector unit_vector(std::size_t n, std::size_t k) {
    ComplexVector v(n);
    v[k] = 1.0;
    return v;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionMismatch("matrix comparison shape mismatch");
    double m = 0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
}

double max_abs_diff(const ComplexVector& a, const ComplexVector& b) {
    if (a.size() != b.size()) throw LengthMismatch("vector comparison length mismatch");
    double m = 0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

// ============================================================
// LU factorization
// ============================================================

namespace {

struct Lu {
    ComplexMatrix lu;
    std::vector<std::size_t> perm;  // row i of U comes from row perm[i] of A
    int sign = 1;
    double scale = 0;       // max |entry| of the input
    double min_pivot = 0;   // smallest |pivot| seen
    double max_u = 0;       // largest |entry| during elimination
};

Lu factor(const ComplexMatrix& a) {
    if (!a.square()) throw DimensionMismatch("lu_solve needs a square matrix");
    const std::size_t n = a.rows();
    Lu f{a, std::vector<std::size_t>(n), 1, a.max_abs(), 0, a.max_abs()};
    std::iota(f.perm.begin(), f.perm.end(), std::size_t{0});
    f.min_pivot = std::numeric_limits<double>::infinity();
    auto& m = f.lu;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(m(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double v = std::abs(m(i, k));
            if (v > best) { best = v; piv = i; }
        }
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(piv, j));
            std::swap(f.perm[k], f.perm[piv]);
            f.sign = -f.sign;
        }
        f.min_pivot = std::min(f.min_pivot, best);
        if (best == 0.0) continue;  // exactly singular, callers test min_pivot
        const Complex d = m(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const Complex factor = m(i, k) / d;
            m(i, k) = factor;
            for (std::size_t j = k + 1; j < n; ++j) {
                m(i, j) -= factor * m(k, j);
                f.max_u = std::max(f.max_u, std::abs(m(i, j)));
            }
        }
    }
    if (n == 0) f.min_pivot = 0;
    return f;
}

}  // namespace

ComplexMatrix lu_solve(const ComplexMatrix& a, const ComplexMatrix& b,
                       const Tolerance& tol, double* growth) {
    if (a.rows() != b.rows()) throw DimensionMismatch("lu_solve right-hand side mismatch");
    const std::size_t n = a.rows();
    Lu f = factor(a);
    if (f.scale == 0.0 || f.min_pivot < tol.eps_eq * f.scale) {
        throw SingularMatrix("pivot below eps_eq times matrix scale");
    }
    if (growth) *growth = f.scale > 0 ? f.max_u / f.scale : 1.0;
    const std::size_t m = b.cols();
    ComplexMatrix x(n, m);
    // forward substitution on permuted rows, then back substitution
    for (std::size_t c = 0; c < m; ++c) {
        std::vector<Complex> y(n);
        for (std::size_t i = 0; i < n; ++i) {
            Complex s = b(f.perm[i], c);
            for (std::size_t j = 0; j < i; ++j) s -= f.lu(i, j) * y[j];
            y[i] = s;
        }
        for (std::size_t ii = n; ii-- > 0;) {
            Complex s = y[ii];
            for (std::size_t j = ii + 1; j < n; ++j) s -= f.lu(ii, j) * x(j, c);
            x(ii, c) = s / f.lu(ii, ii);
        }
    }
    return x;
}

ComplexMatrix inverse(const ComplexMatrix& a, const Tolerance& tol, double* growth) {
    return lu_solve(a, ComplexMatrix::identity(a.rows()), tol, growth);
}

Complex lu_determinant(const ComplexMatrix& a, double* min_pivot_ratio) {
    Lu f = factor(a);
    if (min_pivot_ratio) {
        *min_pivot_ratio = f.scale > 0 ? f.min_pivot / f.scale : 0.0;
    }
    Complex det = static_cast<double>(f.sign);
    for (std::size_t k = 0; k < a.rows(); ++k) det *= f.lu(k, k);
    return det;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix c(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Complex aij = a(i, j);
            if (aij == Complex{}) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    c(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return c;
}

ComplexVector hadamard_product(const ComplexVector& x, const ComplexVector& y) {
    if (x.size() != y.size()) throw LengthMismatch("hadamard product length mismatch");
    ComplexVector z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] * y[i];
    return z;
}

bool is_nonneg(const ComplexVector& x, const Tolerance& tol) {
    for (const auto& z : x) {
        if (z.real() < -tol.eps_nonneg) return false;
        if (std::abs(z.imag()) > tol.eps_nonneg) return false;
    }
    return true;
}

bool is_nonneg(const ComplexMatrix& m, const Tolerance& tol) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const Complex z = m(i, j);
            if (z.real() < -tol.eps_nonneg) return false;
            if (std::abs(z.imag()) > tol.eps_nonneg) return false;
        }
    return true;
}

bool is_stochastic(const ComplexMatrix& m, const Tolerance& tol) {
    if (!m.square() || !is_nonneg(m, tol)) return false;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Complex s = 0;
        for (std::size_t j = 0; j < m.cols(); ++j) s += m(i, j);
        if (std::abs(s - Complex{1.0}) > tol.eps_eq) return false;
    }
    return true;
}

Complex unit_root(long long k, long long n) {
    if (n <= 0) throw DimensionMismatch("unit_root order must be positive");
    k %= n;
    if (k < 0) k += n;
    if ((4 * k) % n == 0) {
        switch ((4 * k / n) % 4) {
            case 0: return {1.0, 0.0};
            case 1: return {0.0, -1.0};
            case 2: return {-1.0, 0.0};
            default: return {0.0, 1.0};
        }
    }
    const double th = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(n);
    return {std::cos(th), -std::sin(th)};
}

Complex unit_circle_point(long long k, long long n) { return std::conj(unit_root(k, n)); }

}  // namespace perron
