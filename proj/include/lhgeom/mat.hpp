#pragma once

#include <complex>
#include <vector>

#include "lhgeom/errors.hpp"

namespace lhgeom {

using Vec = std::vector<double>;

// Dense real square matrix of runtime dimension, row-major storage.
class Mat {
public:
    Mat() = default;
    explicit Mat(int n) : n_(n), a_(static_cast<size_t>(n) * n, 0.0) {
        if (n < 1) throw std::invalid_argument("Mat: dimension must be >= 1");
    }

    static Mat identity(int n);
    static Mat diag(const Vec& d);

    int dim() const { return n_; }

    double& operator()(int i, int j) { return a_[static_cast<size_t>(i) * n_ + j]; }
    double operator()(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }

    Mat& operator+=(const Mat& b);
    Mat& operator-=(const Mat& b);
    Mat& operator*=(double s);

    Mat transposed() const;
    double trace() const;

    // max |a_ij|
    double max_abs() const;
    // Frobenius norm
    double norm() const;

    bool is_finite() const;
    // Throws NumericError naming `what` if any entry is NaN/Inf.
    void ensure_finite(const char* what) const;

private:
    int n_ = 0;
    std::vector<double> a_;
};

Mat operator+(Mat a, const Mat& b);
Mat operator-(Mat a, const Mat& b);
Mat operator*(double s, Mat a);
Mat operator*(const Mat& a, const Mat& b);
Vec operator*(const Mat& a, const Vec& x);

// Eigenvalues of a general real matrix, with algebraic multiplicity,
// sorted by descending real part, ties by descending imaginary part.
struct ComplexSpectrum {
    std::vector<std::complex<double>> eigenvalues;
    double max_real_part() const;
};

// Balancing + Householder Hessenberg reduction + Francis double-shift QR.
// `tol` guards the result: if the computed spectrum fails the trace residual
// |sum(lambda) - tr(A)| <= max(tol, 1e3*eps) * (1 + ||A||_F), throws NumericError.
// Iteration budget exceeded also throws (never returns silent garbage).
ComplexSpectrum eigenvalues(const Mat& a, double tol = 1e-10);

} // namespace lhgeom
