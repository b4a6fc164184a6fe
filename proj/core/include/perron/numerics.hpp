#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace perron {

using Complex = std::complex<double>;

// Tolerances used throughout. eps_nonneg bounds how far below zero a real
// part may dip (and how large an imaginary part may be) while an entry still
// counts as nonnegative. eps_eq is for equality-style comparisons such as
// row sums and pivot thresholds. eps_root scales polynomial root residuals.
struct Tolerance {
    double eps_nonneg = 1e-9;
    double eps_eq = 1e-9;
    double eps_root = 1e-12;
};

// ============================================================
// Error taxonomy
// ============================================================

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SingularMatrix : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct LengthMismatch : Error { using Error::Error; };
struct NonFiniteValue : Error { using Error::Error; };
struct NoConvergence : Error { using Error::Error; };
struct NotPerronSimilarity : Error { using Error::Error; };
struct PairingFailure : Error { using Error::Error; };
struct NotStochastic : Error { using Error::Error; };
struct NotAnEigenvector : Error { using Error::Error; };
struct InvalidScaling : Error { using Error::Error; };
struct InvalidEndpoints : Error { using Error::Error; };
struct WrongArcType : Error { using Error::Error; };
struct AlphaOutOfRange : Error { using Error::Error; };
struct MultipleRoots : Error { using Error::Error; };
struct BranchTrackingFailure : Error { using Error::Error; };
struct NotInRegion : Error { using Error::Error; };

struct ParseError : Error {
    std::size_t position;
    ParseError(const std::string& what, std::size_t pos)
        : Error(what), position(pos) {}
};

// ============================================================
// Dense complex vector and matrix
// ============================================================

// Constructors reject NaN and infinity; every value entering through the
// public construction paths is finite.
class ComplexVector {
public:
    ComplexVector() = default;
    explicit ComplexVector(std::size_t n) : v_(n) {}
    ComplexVector(std::initializer_list<Complex> xs);
    explicit ComplexVector(std::vector<Complex> xs);

    std::size_t size() const { return v_.size(); }
    bool empty() const { return v_.empty(); }
    Complex& operator[](std::size_t i) { return v_[i]; }
    const Complex& operator[](std::size_t i) const { return v_[i]; }
    auto begin() { return v_.begin(); }
    auto end() { return v_.end(); }
    auto begin() const { return v_.begin(); }
    auto end() const { return v_.end(); }
    const std::vector<Complex>& data() const { return v_; }

    double inf_norm() const;
    double two_norm() const;

private:
    std::vector<Complex> v_;
};

// Row-major dense storage, orders up to a few dozen.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : r_(rows), c_(cols), d_(rows * cols) {}
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> data);
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static ComplexMatrix identity(std::size_t n);

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    bool square() const { return r_ == c_; }

    Complex& operator()(std::size_t i, std::size_t j) { return d_[i * c_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return d_[i * c_ + j]; }

    ComplexVector row(std::size_t i) const;
    ComplexVector col(std::size_t j) const;

    ComplexMatrix transpose() const;
    ComplexMatrix conjugate() const;
    ComplexMatrix conj_transpose() const;

    double max_abs() const;   // largest |entry|
    double inf_norm() const;  // max absolute row sum

private:
    std::size_t r_ = 0, c_ = 0;
    std::vector<Complex> d_;
};

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector operator*(const ComplexMatrix& a, const ComplexVector& x);
ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex s, const ComplexMatrix& a);
ComplexVector operator*(Complex s, const ComplexVector& x);
ComplexVector operator+(const ComplexVector& a, const ComplexVector& b);
ComplexVector operator-(const ComplexVector& a, const ComplexVector& b);

ComplexMatrix diagonal_matrix(const ComplexVector& d);
ComplexVector ones(std::size_t n);
ComplexVector unit_vector(std::size_t n, std::size_t k);

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
double max_abs_diff(const ComplexVector& a, const ComplexVector& b);

// ============================================================
// Operations
// ============================================================

// Solves A X = B by LU with partial pivoting. Throws SingularMatrix when a
// pivot falls below eps_eq times the largest entry of A. If growth is
// non-null it receives max|U| / max|A|, a cheap stability estimate; callers
// are expected to warn (not fail) when it exceeds 1e8.
ComplexMatrix lu_solve(const ComplexMatrix& a, const ComplexMatrix& b,
                       const Tolerance& tol = {}, double* growth = nullptr);

ComplexMatrix inverse(const ComplexMatrix& a, const Tolerance& tol = {},
                      double* growth = nullptr);

// Determinant through the same pivoted LU. min_pivot_ratio, when non-null,
// receives min|pivot| / max|A|, which is the scale-relative singularity
// measure used by the multiple-root test.
Complex lu_determinant(const ComplexMatrix& a, double* min_pivot_ratio = nullptr);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Entrywise product; LengthMismatch when sizes differ.
ComplexVector hadamard_product(const ComplexVector& x, const ComplexVector& y);

// A complex entry counts as nonnegative when Re >= -eps_nonneg and
// |Im| <= eps_nonneg.
bool is_nonneg(const ComplexVector& x, const Tolerance& tol = {});
bool is_nonneg(const ComplexMatrix& m, const Tolerance& tol = {});

// Nonnegative with every row sum within eps_eq of one.
bool is_stochastic(const ComplexMatrix& m, const Tolerance& tol = {});

// e^(-2*pi*i*k/n), the clockwise convention used by the DFT matrix.
// Quadrant multiples (angles that are multiples of pi/2) are returned
// exactly so small DFT matrices have entries in {1, -1, i, -i} with no
// rounding residue.
Complex unit_root(long long k, long long n);

// e^(+2*pi*i*k/n), counterclockwise, same exactness guarantee. Unit circle
// landmarks such as Farey points live on this orientation.
Complex unit_circle_point(long long k, long long n);

}  // namespace perron
