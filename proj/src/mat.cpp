#include "lhgeom/mat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lhgeom {

namespace {
void require_same_dim(const Mat& a, const Mat& b, const char* op) {
    if (a.dim() != b.dim())
        throw std::invalid_argument(std::string(op) + ": dimension mismatch (" +
                                    std::to_string(a.dim()) + " vs " + std::to_string(b.dim()) + ")");
}
} // namespace

Mat Mat::identity(int n) {
    Mat m(n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Mat Mat::diag(const Vec& d) {
    Mat m(static_cast<int>(d.size()));
    for (int i = 0; i < m.dim(); ++i) m(i, i) = d[static_cast<size_t>(i)];
    return m;
}

Mat& Mat::operator+=(const Mat& b) {
    require_same_dim(*this, b, "mat_add");
    for (size_t k = 0; k < a_.size(); ++k) a_[k] += b.a_[k];
    return *this;
}

Mat& Mat::operator-=(const Mat& b) {
    require_same_dim(*this, b, "mat_sub");
    for (size_t k = 0; k < a_.size(); ++k) a_[k] -= b.a_[k];
    return *this;
}

Mat& Mat::operator*=(double s) {
    for (double& v : a_) v *= s;
    return *this;
}

Mat Mat::transposed() const {
    Mat t(n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

double Mat::trace() const {
    double s = 0.0;
    for (int i = 0; i < n_; ++i) s += (*this)(i, i);
    return s;
}

double Mat::max_abs() const {
    double m = 0.0;
    for (double v : a_) m = std::max(m, std::abs(v));
    return m;
}

double Mat::norm() const {
    double s = 0.0;
    for (double v : a_) s += v * v;
    return std::sqrt(s);
}

bool Mat::is_finite() const {
    return std::all_of(a_.begin(), a_.end(), [](double v) { return std::isfinite(v); });
}

void Mat::ensure_finite(const char* what) const {
    if (!is_finite())
        throw NumericError(std::string(what) + ": non-finite matrix entry");
}

Mat operator+(Mat a, const Mat& b) { a += b; return a; }
Mat operator-(Mat a, const Mat& b) { a -= b; return a; }
Mat operator*(double s, Mat a) { a *= s; return a; }

Mat operator*(const Mat& a, const Mat& b) {
    require_same_dim(a, b, "mat_mul");
    const int n = a.dim();
    Mat c(n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

Vec operator*(const Mat& a, const Vec& x) {
    if (static_cast<int>(x.size()) != a.dim())
        throw std::invalid_argument("mat_vec: dimension mismatch");
    const int n = a.dim();
    Vec y(static_cast<size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) s += a(i, j) * x[static_cast<size_t>(j)];
        y[static_cast<size_t>(i)] = s;
    }
    return y;
}

double ComplexSpectrum::max_real_part() const {
    double m = -std::numeric_limits<double>::infinity();
    for (const auto& z : eigenvalues) m = std::max(m, z.real());
    return m;
}

} // namespace lhgeom
