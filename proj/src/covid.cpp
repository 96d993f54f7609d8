#include "lhgeom/covid.hpp"

#include <cmath>
#include <string>

namespace lhgeom {

const std::array<const char*, kCovidDim> kCompartmentNames = {"S", "E", "Is", "Ia", "Ih", "R"};

namespace {

void require_rate(double v, const char* name) {
    if (!std::isfinite(v))
        throw std::invalid_argument(std::string("params.") + name + " must be finite");
    if (v < 0.0)
        throw std::invalid_argument(std::string("params.") + name + " must be >= 0, got " +
                                    std::to_string(v));
}

// Checks the state and returns N. Field evaluation is undefined for a
// non-positive total population.
double checked_total(const Vec& x, const char* op) {
    if (x.size() != static_cast<size_t>(kCovidDim))
        throw std::invalid_argument(std::string(op) + ": state must have 6 components, got " +
                                    std::to_string(x.size()));
    double n = 0.0;
    for (double v : x) {
        if (!std::isfinite(v)) throw NumericError(std::string(op) + ": non-finite state component");
        n += v;
    }
    if (n <= 0.0)
        throw NumericError(std::string(op) + ": degenerate population, N = " + std::to_string(n) +
                           " <= 0");
    return n;
}

} // namespace

void ModelParams::validate() const {
    require_rate(beta_s, "beta_s");
    require_rate(beta_a, "beta_a");
    require_rate(beta_h, "beta_h");
    require_rate(sigma, "sigma");
    require_rate(gamma_s, "gamma_s");
    require_rate(gamma_a, "gamma_a");
    require_rate(gamma_h, "gamma_h");
    require_rate(phi_s, "phi_s");
    require_rate(delta_s, "delta_s");
    require_rate(delta_h, "delta_h");
    if (!std::isfinite(r) || r <= 0.0 || r > 1.0)
        throw std::invalid_argument("params.r must satisfy 0 < r <= 1, got " + std::to_string(r));
}

double covid_total(const Vec& x) {
    double n = 0.0;
    for (double v : x) n += v;
    return n;
}

void require_nonnegative_state(const Vec& x) {
    if (x.size() != static_cast<size_t>(kCovidDim))
        throw std::invalid_argument("state must have 6 components, got " + std::to_string(x.size()));
    for (int i = 0; i < kCovidDim; ++i) {
        const double v = x[static_cast<size_t>(i)];
        if (!std::isfinite(v) || v < 0.0)
            throw std::invalid_argument(std::string("state.") + kCompartmentNames[static_cast<size_t>(i)] +
                                        " must be finite and >= 0, got " + std::to_string(v));
    }
}

Vec covid_field(const ModelParams& p, const Vec& x) {
    const double n = checked_total(x, "covid_field");
    const double s = x[0], e = x[1], is = x[2], ia = x[3], ih = x[4];
    const double lambda = (p.beta_s * is + p.beta_a * ia + p.beta_h * ih) / n;
    const double infection = lambda * s;
    Vec f(static_cast<size_t>(kCovidDim));
    f[0] = -infection;
    f[1] = infection - p.sigma * e;
    f[2] = (1.0 - p.r) * p.sigma * e - (p.phi_s + p.gamma_s + p.delta_s) * is;
    f[3] = p.r * p.sigma * e - p.gamma_a * ia;
    f[4] = p.phi_s * is - (p.gamma_h + p.delta_h) * ih;
    f[5] = p.gamma_s * is + p.gamma_a * ia + p.gamma_h * ih;
    return f;
}

double deceased_rate(const ModelParams& p, const Vec& x) {
    if (x.size() != static_cast<size_t>(kCovidDim))
        throw std::invalid_argument("deceased_rate: state must have 6 components");
    return p.delta_s * x[2] + p.delta_h * x[4];
}

Mat covid_jacobian(const ModelParams& p, const Vec& x) {
    const double n = checked_total(x, "covid_jacobian");
    const double s = x[0];
    // u is the numerator of the force of infection; b_j = du/dx_j.
    const double u = p.beta_s * x[2] + p.beta_a * x[3] + p.beta_h * x[4];
    const std::array<double, 6> b = {0.0, 0.0, p.beta_s, p.beta_a, p.beta_h, 0.0};

    Mat j(kCovidDim);
    // X^1 = -u * S / N with u and N both functions of x:
    // dX^1/dx_j = -b_j*S/N - (u/N) [j==1] + u*S/N^2.
    for (int col = 0; col < kCovidDim; ++col) {
        double v = -b[static_cast<size_t>(col)] * s / n + u * s / (n * n);
        if (col == 0) v -= u / n;
        j(0, col) = v;
        // X^2 = -X^1 - sigma*E.
        j(1, col) = -v - (col == 1 ? p.sigma : 0.0);
    }
    j(2, 1) = (1.0 - p.r) * p.sigma;
    j(2, 2) = -(p.phi_s + p.gamma_s + p.delta_s);
    j(3, 1) = p.r * p.sigma;
    j(3, 3) = -p.gamma_a;
    j(4, 2) = p.phi_s;
    j(4, 4) = -(p.gamma_h + p.delta_h);
    j(5, 2) = p.gamma_s;
    j(5, 3) = p.gamma_a;
    j(5, 4) = p.gamma_h;
    return j;
}

std::vector<Mat> covid_hessians(const ModelParams& p, const Vec& x) {
    const double n = checked_total(x, "covid_hessians");
    const double s = x[0];
    const double u = p.beta_s * x[2] + p.beta_a * x[3] + p.beta_h * x[4];
    const std::array<double, 6> b = {0.0, 0.0, p.beta_s, p.beta_a, p.beta_h, 0.0};

    std::vector<Mat> h(static_cast<size_t>(kCovidDim), Mat(kCovidDim));
    const double n2 = n * n;
    const double n3 = n2 * n;
    // Second derivatives of X^1 = -u*S/N:
    // d2X^1/dx_j dx_k = -(b_j [k==1] + b_k [j==1])/N + (b_j + b_k)*S/N^2
    //                   + ([j==1] + [k==1])*u/N^2 - 2*u*S/N^3.
    for (int jj = 0; jj < kCovidDim; ++jj) {
        for (int kk = jj; kk < kCovidDim; ++kk) {
            const double bj = b[static_cast<size_t>(jj)], bk = b[static_cast<size_t>(kk)];
            const double dj = (jj == 0) ? 1.0 : 0.0, dk = (kk == 0) ? 1.0 : 0.0;
            const double v =
                -(bj * dk + bk * dj) / n + (bj + bk) * s / n2 + (dj + dk) * u / n2 - 2.0 * u * s / n3;
            h[0](jj, kk) = v;
            h[0](kk, jj) = v;
            h[1](jj, kk) = -v;
            h[1](kk, jj) = -v;
        }
    }
    // X^3..X^6 are linear: Hessians stay zero.
    return h;
}

VectorField covid_vector_field(const ModelParams& p) {
    p.validate();
    VectorField f;
    f.dim = kCovidDim;
    f.eval = [p](const Vec& x) { return covid_field(p, x); };
    f.jac = [p](const Vec& x) { return covid_jacobian(p, x); };
    f.hess = [p](const Vec& x) { return covid_hessians(p, x); };
    return f;
}

} // namespace lhgeom
