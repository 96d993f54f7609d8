#include "lhgeom/mat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace lhgeom {

namespace {

// Iterative radix-2 scaling so that row and column norms become comparable.
// A similarity transform, so the spectrum is unchanged; scaling by exact
// powers of two keeps every entry bit-exact up to the exponent field.
void balance(Mat& a) {
    const double radix = 2.0;
    const double sqrdx = radix * radix;
    const int n = a.dim();
    bool done = false;
    while (!done) {
        done = true;
        for (int i = 0; i < n; ++i) {
            double r = 0.0;
            double c = 0.0;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                c += std::fabs(a(j, i));
                r += std::fabs(a(i, j));
            }
            if (c == 0.0 || r == 0.0) continue;
            double g = r / radix;
            double f = 1.0;
            const double s = c + r;
            while (c < g) {
                f *= radix;
                c *= sqrdx;
            }
            g = r * radix;
            while (c > g) {
                f /= radix;
                c /= sqrdx;
            }
            if ((c + r) / f < 0.95 * s) {
                done = false;
                g = 1.0 / f;
                for (int j = 0; j < n; ++j) a(i, j) *= g;
                for (int j = 0; j < n; ++j) a(j, i) *= f;
            }
        }
    }
}

// Householder reduction to upper Hessenberg form, in place. The
// transformations are not accumulated since only eigenvalues are wanted.
void hessenberg(Mat& h) {
    const int n = h.dim();
    const int low = 0;
    const int high = n - 1;
    std::vector<double> ort(static_cast<size_t>(n), 0.0);

    for (int m = low + 1; m <= high - 1; ++m) {
        double scale = 0.0;
        for (int i = m; i <= high; ++i) scale += std::fabs(h(i, m - 1));
        if (scale == 0.0) continue;

        double hh = 0.0;
        for (int i = high; i >= m; --i) {
            ort[static_cast<size_t>(i)] = h(i, m - 1) / scale;
            hh += ort[static_cast<size_t>(i)] * ort[static_cast<size_t>(i)];
        }
        double g = std::sqrt(hh);
        if (ort[static_cast<size_t>(m)] > 0.0) g = -g;
        hh -= ort[static_cast<size_t>(m)] * g;
        ort[static_cast<size_t>(m)] -= g;

        // Apply the similarity (I - u u^T / hh) H (I - u u^T / hh).
        for (int j = m; j < n; ++j) {
            double f = 0.0;
            for (int i = high; i >= m; --i) f += ort[static_cast<size_t>(i)] * h(i, j);
            f /= hh;
            for (int i = m; i <= high; ++i) h(i, j) -= f * ort[static_cast<size_t>(i)];
        }
        for (int i = 0; i <= high; ++i) {
            double f = 0.0;
            for (int j = high; j >= m; --j) f += ort[static_cast<size_t>(j)] * h(i, j);
            f /= hh;
            for (int j = m; j <= high; ++j) h(i, j) -= f * ort[static_cast<size_t>(j)];
        }
        h(m, m - 1) = scale * g;
    }

    // The entries below the subdiagonal are dead storage after the
    // reduction; clear them so the QR iteration sees a true Hessenberg form.
    for (int i = 2; i < n; ++i)
        for (int j = 0; j <= i - 2; ++j) h(i, j) = 0.0;
}

// Francis implicit double-shift QR on an upper Hessenberg matrix,
// eigenvalues only. Classic formulation: machine-epsilon deflation tests
// written as floating-point equality of accumulated sums, exceptional
// ad-hoc shifts after 10 and 20 stalled iterations, and a hard failure
// once the global iteration budget is spent.
void francis_qr(Mat& h, std::vector<double>& wr, std::vector<double>& wi) {
    const int n = h.dim();
    const int low = 0;
    const int high = n - 1;

    double norm = 0.0;
    {
        int k = 0;
        for (int i = 0; i < n; ++i) {
            for (int j = k; j < n; ++j) norm += std::fabs(h(i, j));
            k = i;
        }
    }

    int en = high;
    int itn = 30 * n;
    double t = 0.0;
    double p = 0.0, q = 0.0, r = 0.0, s = 0.0, w = 0.0, x = 0.0, y = 0.0, z = 0.0;

    while (en >= low) {
        int its = 0;
        const int na = en - 1;
        const int enm2 = na - 1;
        bool two_roots = false;
        int l = low;

        for (;;) {
            // Look for a single negligible subdiagonal element, top down.
            for (l = en; l > low; --l) {
                s = std::fabs(h(l - 1, l - 1)) + std::fabs(h(l, l));
                if (s == 0.0) s = norm;
                const double tst1 = s;
                const double tst2 = tst1 + std::fabs(h(l, l - 1));
                if (tst2 == tst1) break;
            }

            x = h(en, en);
            if (l == en) break; // one root isolated
            y = h(na, na);
            w = h(en, na) * h(na, en);
            if (l == na) {
                two_roots = true;
                break;
            }
            if (itn == 0)
                throw NumericError("eigenvalues: QR iteration failed to converge (budget " +
                                   std::to_string(30 * n) + " exhausted at index " +
                                   std::to_string(en) + ")");

            if (its == 10 || its == 20) {
                // Exceptional shift to break symmetric stalls.
                t += x;
                for (int i = low; i <= en; ++i) h(i, i) -= x;
                s = std::fabs(h(en, na)) + std::fabs(h(na, enm2));
                x = 0.75 * s;
                y = x;
                w = -0.4375 * s * s;
            }
            ++its;
            --itn;

            // Look for two consecutive small subdiagonal elements.
            int m;
            for (m = enm2; m >= l; --m) {
                z = h(m, m);
                r = x - z;
                s = y - z;
                p = (r * s - w) / h(m + 1, m) + h(m, m + 1);
                q = h(m + 1, m + 1) - z - r - s;
                r = h(m + 2, m + 1);
                s = std::fabs(p) + std::fabs(q) + std::fabs(r);
                p /= s;
                q /= s;
                r /= s;
                if (m == l) break;
                const double tst1 =
                    std::fabs(p) * (std::fabs(h(m - 1, m - 1)) + std::fabs(z) + std::fabs(h(m + 1, m + 1)));
                const double tst2 = tst1 + std::fabs(h(m, m - 1)) * (std::fabs(q) + std::fabs(r));
                if (tst2 == tst1) break;
            }

            for (int i = m + 2; i <= en; ++i) {
                h(i, i - 2) = 0.0;
                if (i != m + 2) h(i, i - 3) = 0.0;
            }

            // Double QR sweep on rows l..en, columns m..en.
            for (int k = m; k <= na; ++k) {
                const bool notlast = (k != na);
                if (k != m) {
                    p = h(k, k - 1);
                    q = h(k + 1, k - 1);
                    r = notlast ? h(k + 2, k - 1) : 0.0;
                    x = std::fabs(p) + std::fabs(q) + std::fabs(r);
                    if (x == 0.0) continue;
                    p /= x;
                    q /= x;
                    r /= x;
                }
                s = std::sqrt(p * p + q * q + r * r);
                if (p < 0.0) s = -s;
                if (k != m)
                    h(k, k - 1) = -s * x;
                else if (l != m)
                    h(k, k - 1) = -h(k, k - 1);
                p += s;
                x = p / s;
                y = q / s;
                z = r / s;
                q /= p;
                r /= p;

                if (notlast) {
                    for (int j = k; j <= en; ++j) {
                        p = h(k, j) + q * h(k + 1, j) + r * h(k + 2, j);
                        h(k, j) -= p * x;
                        h(k + 1, j) -= p * y;
                        h(k + 2, j) -= p * z;
                    }
                    const int stop = std::min(en, k + 3);
                    for (int i = l; i <= stop; ++i) {
                        p = x * h(i, k) + y * h(i, k + 1) + z * h(i, k + 2);
                        h(i, k) -= p;
                        h(i, k + 1) -= p * q;
                        h(i, k + 2) -= p * r;
                    }
                } else {
                    for (int j = k; j <= en; ++j) {
                        p = h(k, j) + q * h(k + 1, j);
                        h(k, j) -= p * x;
                        h(k + 1, j) -= p * y;
                    }
                    const int stop = std::min(en, k + 3);
                    for (int i = l; i <= stop; ++i) {
                        p = x * h(i, k) + y * h(i, k + 1);
                        h(i, k) -= p;
                        h(i, k + 1) -= p * q;
                    }
                }
            }
        }

        if (two_roots) {
            p = (y - x) / 2.0;
            q = p * p + w;
            z = std::sqrt(std::fabs(q));
            x += t;
            if (q >= 0.0) {
                // Real pair; the larger root by the stable formula, the
                // other via the product to avoid cancellation.
                z = (p >= 0.0) ? (p + z) : (p - z);
                wr[static_cast<size_t>(na)] = x + z;
                wr[static_cast<size_t>(en)] = wr[static_cast<size_t>(na)];
                if (z != 0.0) wr[static_cast<size_t>(en)] = x - w / z;
                wi[static_cast<size_t>(na)] = 0.0;
                wi[static_cast<size_t>(en)] = 0.0;
            } else {
                // Complex conjugate pair, exact by construction.
                wr[static_cast<size_t>(na)] = x + p;
                wr[static_cast<size_t>(en)] = x + p;
                wi[static_cast<size_t>(na)] = z;
                wi[static_cast<size_t>(en)] = -z;
            }
            en = enm2;
        } else {
            wr[static_cast<size_t>(en)] = x + t;
            wi[static_cast<size_t>(en)] = 0.0;
            en = na;
        }
    }
}

} // namespace

ComplexSpectrum eigenvalues(const Mat& a, double tol) {
    a.ensure_finite("eigenvalues: input matrix");
    const int n = a.dim();

    Mat h = a;
    balance(h);
    if (n > 2) hessenberg(h);

    std::vector<double> wr(static_cast<size_t>(n), 0.0);
    std::vector<double> wi(static_cast<size_t>(n), 0.0);
    francis_qr(h, wr, wi);

    // Similarity transforms preserve the trace, so the eigenvalue sum must
    // reproduce it up to roundoff. This catches silent convergence to wrong
    // values, which an iteration count alone cannot.
    double sum_re = 0.0;
    for (double v : wr) sum_re += v;
    const double eps = std::numeric_limits<double>::epsilon();
    const double bound = std::max(tol, 1e3 * eps) * (1.0 + a.norm());
    const double resid = std::fabs(sum_re - a.trace());
    if (resid > bound)
        throw NumericError("eigenvalues: trace residual " + std::to_string(resid) +
                           " exceeds bound " + std::to_string(bound));

    ComplexSpectrum spec;
    spec.eigenvalues.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        spec.eigenvalues.emplace_back(wr[static_cast<size_t>(i)], wi[static_cast<size_t>(i)]);
    std::sort(spec.eigenvalues.begin(), spec.eigenvalues.end(),
              [](const std::complex<double>& u, const std::complex<double>& v) {
                  if (u.real() != v.real()) return u.real() > v.real();
                  return u.imag() > v.imag();
              });
    return spec;
}

} // namespace lhgeom
