// coefficients.hpp — Reservoir parameters and the time-dependent diffusion/dissipation coefficients
//
// Units: hbar = 1, every time is tau = omega_c * t and every rate is in units of omega_c.
// The oscillator frequency is then omega_0 = 1 / r.
//
//   Delta(tau)       = 2 g^2 (kT/wc) r^2/(1+r^2) { 1 - e^{-tau} [cos(tau/r) - sin(tau/r)/r] }
//   gamma(tau)       = g^2 r/(1+r^2) [ 1 - e^{-tau} cos(tau/r) - r e^{-tau} sin(tau/r) ]
//   Gamma(tau)       = 2 int_0^tau gamma
//   Delta_Gamma(tau) = e^{-Gamma(tau)} int_0^tau e^{Gamma(s)} Delta(s) ds
//
// The high-temperature validity condition (kT >> omega_c, omega_0) is not enforced.

#pragma once

#include <cstddef>
#include <numbers>
#include <utility>
#include <vector>

namespace qbm {

// omega_c / (2 pi kT) = 3e-5, the reservoir temperature used for the reference runs.
inline constexpr double kReferenceKtOverWc = 1.0 / (2.0 * std::numbers::pi * 3e-5);

struct PhysicalParams {
    double g{0.1};     // system-reservoir coupling constant
    double r{0.05};    // omega_c / omega_0
    double kt_over_wc{kReferenceKtOverWc};  // kT / (hbar omega_c)

    double omega0() const noexcept { return 1.0 / r; }

    // Converts the omega_c / (2 pi kT) convention into kt_over_wc.
    static double kt_from_wc_over_2pikt(double wc_over_2pikt);

    // Throws DomainError unless r > 0, kt_over_wc > 0, g >= 0 and all are finite.
    // g = 0 is accepted as the decoupled limit.
    void validate() const;
};

struct CoefficientSample {
    double tau{0.0};
    double delta{0.0};
    double gamma{0.0};
    double big_gamma{0.0};
    double delta_gamma{0.0};
};

inline constexpr double kDefaultDeltaGammaTol = 1e-10;

double delta_coeff(const PhysicalParams& p, double tau);
double gamma_coeff(const PhysicalParams& p, double tau);

// tau -> infinity limits of the two rates.
double delta_asymptotic(const PhysicalParams& p);
double gamma_asymptotic(const PhysicalParams& p);

// Closed-form antiderivative, no quadrature.
double big_gamma(const PhysicalParams& p, double tau);

// Adaptive quadrature of e^{Gamma} Delta with the closed-form Gamma.
// Throws NumericalError if the quadrature does not converge to `tol`.
double delta_big_gamma(const PhysicalParams& p, double tau, double tol = kDefaultDeltaGammaTol);

CoefficientSample sample_coefficients(const PhysicalParams& p, double tau,
                                      double tol = kDefaultDeltaGammaTol);

// Samples on a strictly increasing grid. Delta_Gamma is carried forward through the raw
// integral I(tau) = int_0^tau e^{Gamma} Delta, so each grid interval is integrated once.
std::vector<CoefficientSample> sample_coefficients(const PhysicalParams& p,
                                                   const std::vector<double>& taus,
                                                   double tol = kDefaultDeltaGammaTol);

// Integrated coefficients of the constant-rate (Markovian) channel obtained by freezing
// Delta and gamma at their asymptotic values.
double markov_big_gamma(const PhysicalParams& p, double tau);
double markov_delta_big_gamma(const PhysicalParams& p, double tau);

using Interval = std::pair<double, double>;

struct LindbladClassification {
    bool is_lindblad_type{true};
    std::vector<Interval> plus_negative;   // where Delta + gamma < 0
    std::vector<Interval> minus_negative;  // where Delta - gamma < 0
};

// Uniform sign scan of Delta +/- gamma on [0, tau_max] with bisection refinement of every
// sign change down to a 1e-9 bracket. A value of exactly zero counts as non-negative.
LindbladClassification classify_lindblad(const PhysicalParams& p, double tau_max,
                                         std::size_t n_samples);

}  // namespace qbm
