#pragma once

#include <array>

#include "lhgeom/field.hpp"
#include "lhgeom/mat.hpp"

namespace lhgeom {

inline constexpr int kCovidDim = 6;

// Compartment order is fixed everywhere: (S, E, Is, Ia, Ih, R).
extern const std::array<const char*, kCovidDim> kCompartmentNames;

struct ModelParams {
    double beta_s = 0.0;   // transmission via symptomatic contacts
    double beta_a = 0.0;   // transmission via asymptomatic contacts
    double beta_h = 0.0;   // transmission via hospitalized contacts
    double sigma = 0.0;    // incubation exit rate
    double r = 1.0;        // asymptomatic fraction, 0 < r <= 1
    double gamma_s = 0.0;  // recovery rate, symptomatic
    double gamma_a = 0.0;  // recovery rate, asymptomatic
    double gamma_h = 0.0;  // recovery rate, hospitalized
    double phi_s = 0.0;    // hospitalization rate
    double delta_s = 0.0;  // death rate, symptomatic
    double delta_h = 0.0;  // death rate, hospitalized

    // Throws std::invalid_argument naming the offending field:
    // every rate must be finite and >= 0, and 0 < r <= 1.
    void validate() const;
};

// Sum of the six compartments. Field and derivative evaluation require it
// to be strictly positive.
double covid_total(const Vec& x);

// Throws std::invalid_argument naming the compartment if any entry is
// negative or non-finite. Opt-in check for user-supplied states; the field
// itself only requires a positive total, because adaptive integrators may
// probe slightly negative trial states.
void require_nonnegative_state(const Vec& x);

// Right-hand side of the compartmental system. The force of infection
// (beta_s*Is + beta_a*Ia + beta_h*Ih)/N is computed once and shared by the
// S and E components so the two appear with exactly opposite values.
Vec covid_field(const ModelParams& p, const Vec& x);

// dD/dt = delta_s*Is + delta_h*Ih, the outflow into the deceased count.
double deceased_rate(const ModelParams& p, const Vec& x);

// Analytic Jacobian dX^i/dx^j. N is treated as the plain coordinate sum
// when differentiating (it is not held constant).
Mat covid_jacobian(const ModelParams& p, const Vec& x);

// Analytic Hessians H_k of each component X^k. X^3..X^6 are linear, so
// H_3..H_6 are exactly zero; X^1 + X^2 differs by a linear term only, so
// H_2 = -H_1 exactly.
std::vector<Mat> covid_hessians(const ModelParams& p, const Vec& x);

// The model packaged with its analytic derivatives.
VectorField covid_vector_field(const ModelParams& p);

} // namespace lhgeom
