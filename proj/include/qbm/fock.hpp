// fock.hpp — Truncated number-basis integrator of the master equation (test oracle)
//
//   d rho/d tau = -(Delta+gamma)/2 [a^dag a rho - 2 a rho a^dag + rho a^dag a]
//                 -(Delta-gamma)/2 [a a^dag rho - 2 a^dag rho a + rho a a^dag]
//
// There is no Hamiltonian term: states evolve in the frame co-rotating with omega_0, so
// moments compare directly with Frame::rotating Gaussian trajectories.
// a, a^dag are the truncated N x N ladder matrices (a|n> = sqrt(n)|n-1>), which keeps the
// generator exactly trace preserving.

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "qbm/coefficients.hpp"
#include "qbm/gaussian.hpp"
#include "qbm/wigner.hpp"

namespace qbm::fock {

using Matrix = Eigen::MatrixXcd;

struct FockState {
    Matrix rho;

    std::size_t dim() const noexcept { return static_cast<std::size_t>(rho.rows()); }
    double trace() const { return rho.trace().real(); }
    double hermiticity_error() const { return (rho - rho.adjoint()).cwiseAbs().maxCoeff(); }
    double min_eigenvalue() const;
};

Matrix annihilation(std::size_t dim);

FockState number_state(std::size_t dim, std::size_t n);
// Pure states are built from their exact amplitudes and renormalised after truncation.
FockState coherent(std::size_t dim, std::complex<double> alpha);
// S(s)|0> with s >= 0 real: squeezes x, amplitudes (-tanh s)^m sqrt((2m)!)/(2^m m!)/sqrt(cosh s).
FockState squeezed_vacuum(std::size_t dim, double s);

// d rho / d tau for the given instantaneous rates. Throws DomainError on a non-square rho
// or non-finite rates.
Matrix me_rhs(const FockState& state, double delta, double gamma);

double mean_number(const FockState& state);
// First and second quadrature moments packed as a GaussianState.
GaussianState moments(const FockState& state);

struct FockTrajectory {
    std::vector<double> times;
    std::vector<FockState> states;
    double max_trace_drift{0.0};  // largest per-step |tr rho - 1| before renormalisation
};

struct IntegrateOptions {
    std::size_t record_every{1};     // keep every k-th step (the final step is always kept)
    Dynamics dynamics{Dynamics::non_markovian};
    bool check_positivity{true};     // eigenvalue check at every recorded step
    double negativity_tol{1e-7};
    double trace_drift_abort{1e-6};
};

// Classical RK4 with fixed step. dt is shrunk so that an integer number of steps ends exactly on
// tau_max; coefficients are sampled at the RK substep times. Stable for dt <= 1e-3 min(1, r).
// Throws NumericalError on trace drift beyond trace_drift_abort or negativity beyond
// negativity_tol.
FockTrajectory integrate_me(const FockState& state0, const PhysicalParams& p, double tau_max,
                            double dt, const IntegrateOptions& opts = {});

// Number-basis Laguerre expansion of the Wigner function, normalised like the wigner module.
double wigner_at(const FockState& state, std::complex<double> alpha);
WignerGrid to_wigner(const FockState& state, const GridSpec& spec);

}  // namespace qbm::fock
