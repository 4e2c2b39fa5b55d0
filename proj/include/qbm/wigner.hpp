// wigner.hpp — Wigner functions of evolved Gaussian states on phase-space grids
//
// Grids live in alpha coordinates (alpha_x, alpha_y) = (x, y)/sqrt(2) and are normalised so
// that the integral over d^2 alpha is one; the vacuum peaks at 2/pi.

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "qbm/coefficients.hpp"
#include "qbm/gaussian.hpp"

namespace qbm {

// Cell-centred rectangular grid: point (i, j) sits at
//   alpha_x = x_min + (i + 1/2) (x_max - x_min)/nx,  alpha_y = y_min + (j + 1/2) (y_max - y_min)/ny.
struct GridSpec {
    double x_min{-5.0};
    double x_max{5.0};
    double y_min{-5.0};
    double y_max{5.0};
    std::size_t nx{401};
    std::size_t ny{401};

    double dx() const noexcept { return (x_max - x_min) / static_cast<double>(nx); }
    double dy() const noexcept { return (y_max - y_min) / static_cast<double>(ny); }
    double x(std::size_t i) const noexcept { return x_min + (static_cast<double>(i) + 0.5) * dx(); }
    double y(std::size_t j) const noexcept { return y_min + (static_cast<double>(j) + 0.5) * dy(); }
    void validate() const;

    // Box of +/- n_sigma standard deviations (per alpha component) around the state's mean.
    static GridSpec covering(const GaussianState& state, double n_sigma = 6.0, std::size_t n = 401);
};

struct WignerGrid {
    GridSpec spec;
    std::vector<double> values;  // row-major: values[j * nx + i]

    double at(std::size_t i, std::size_t j) const { return values[j * spec.nx + i]; }
    double& at(std::size_t i, std::size_t j) { return values[j * spec.nx + i]; }

    // Midpoint-rule integral over the grid.
    double integral() const;
    // First and second moments by midpoint quadrature, returned in quadrature coordinates.
    GaussianState moments() const;
    double min_value() const;
};

// Point value of the Gaussian Wigner function. Throws DomainError for det(cov) <= 0.
double wigner_gaussian_at(const GaussianState& state, std::complex<double> alpha);

WignerGrid wigner_gaussian(const GaussianState& state, const GridSpec& spec);

// Transition density W_t(alpha | alpha0) = exp(-|b|^2 / Delta_Gamma) / (pi Delta_Gamma),
// b = alpha - alpha0 e^{-Gamma/2} e^{-i omega_0 tau}; integrates to one over alpha.
// Rejects tau <= 0 and non-positive Delta_Gamma.
double propagator(const PhysicalParams& p, double tau, std::complex<double> alpha,
                  std::complex<double> alpha0, double tol = kDefaultDeltaGammaTol);

// Brute-force transport of the initial Wigner function through the propagator, summed with
// the midpoint rule over `inner` (which should cover the initial state to >= 6 sigma).
// When Delta_Gamma vanishes (g = 0) the propagator is a delta and the initial Wigner function
// is evaluated at the back-rotated point instead.
WignerGrid wigner_by_convolution(const GaussianState& state0, const PhysicalParams& p, double tau,
                                 const GridSpec& outer, const GridSpec& inner,
                                 double tol = kDefaultDeltaGammaTol);

// Evolved coherent state: isotropic Gaussian
//   W = exp(-|alpha - c|^2 / w) / (pi w),  c = alpha0 e^{-Gamma/2} e^{-i omega_0 tau},
//   w = Delta_Gamma + e^{-Gamma}/2.
WignerGrid wigner_coherent_closed(std::complex<double> alpha0, const PhysicalParams& p, double tau,
                                  const GridSpec& spec, double tol = kDefaultDeltaGammaTol);

}  // namespace qbm
