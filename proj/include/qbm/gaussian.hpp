// gaussian.hpp — Gaussian states in phase space and their exact propagation
//
// Quadratures x = (a + a^dag)/sqrt(2), y = -i (a - a^dag)/sqrt(2); alpha = (x + i y)/sqrt(2).
// The vacuum has covariance diag(1/2, 1/2).
//
// The channel generated by the master equation acts on first and second moments as
//     mean(tau) = e^{-Gamma/2} R(-omega_0 tau) mean(0)
//     cov(tau)  = e^{-Gamma} R(-omega_0 tau) cov(0) R(-omega_0 tau)^T + Delta_Gamma I
// where R(theta) is the counter-clockwise rotation by theta.

#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "qbm/coefficients.hpp"

namespace qbm {

struct Covariance {
    double xx{0.5};
    double xy{0.0};
    double yy{0.5};

    double det() const noexcept { return xx * yy - xy * xy; }
    double trace() const noexcept { return xx + yy; }
};

struct GaussianState {
    std::array<double, 2> mean{0.0, 0.0};  // (<x>, <y>)
    Covariance cov{};

    std::complex<double> alpha() const noexcept;
    // Uncertainty relation det(cov) >= 1/4 within `tol`, with positive variances.
    bool is_physical(double tol = 1e-9) const noexcept;
};

inline constexpr double kVacuumVariance = 0.5;

GaussianState make_vacuum();
GaussianState make_coherent(std::complex<double> alpha0);

// Squeezed coherent state. phi = 0 squeezes x: cov = diag(e^{-2s}/2, e^{2s}/2); a general
// phi rotates that covariance by phi/2. Requires s >= 0.
GaussianState make_squeezed(std::complex<double> alpha0, double s, double phi);

// sigma^2 = e^{-2s}, so sigma^2 < 1 squeezes x.
double squeeze_from_sigma2(double sigma2);

// Rotation of the phase-space vector by `theta` (counter-clockwise), applied to mean and covariance.
GaussianState rotate(const GaussianState& state, double theta);

enum class Dynamics {
    non_markovian,  // time-dependent Delta(tau), gamma(tau)
    markovian,      // coefficients frozen at their asymptotic values
};

enum class Frame {
    lab,       // includes the free rotation e^{-i omega_0 tau}
    rotating,  // frame co-rotating with omega_0
};

struct ChannelCoefficients {
    double big_gamma{0.0};
    double delta_gamma{0.0};
    double angle{0.0};  // rotation applied to the phase-space vector (-omega_0 tau in the lab frame)
};

GaussianState apply_channel(const GaussianState& state, const ChannelCoefficients& ch);

// Lab-frame propagation. Throws NumericalError if the Delta_Gamma quadrature fails.
GaussianState propagate(const GaussianState& state0, const PhysicalParams& p, double tau,
                        Dynamics dynamics = Dynamics::non_markovian,
                        double tol = kDefaultDeltaGammaTol);

// Undo the free rotation: R(+omega_0 tau) applied to a lab-frame state.
GaussianState to_rotating_frame(const GaussianState& lab_state, const PhysicalParams& p, double tau);

// <n> = [(dx)^2 + (dy)^2 + <x>^2 + <y>^2 - 1] / 2
double mean_quanta(const GaussianState& state);

struct Trajectory {
    std::vector<double> times;
    std::vector<GaussianState> states;
    std::vector<double> n_mean;
    std::vector<CoefficientSample> coeffs;
    Frame frame{Frame::rotating};

    std::size_t size() const noexcept { return times.size(); }
};

struct TrajectoryOptions {
    Frame frame{Frame::rotating};
    Dynamics dynamics{Dynamics::non_markovian};
    double tol{kDefaultDeltaGammaTol};
};

// n_steps grid points, uniformly spaced on [0, tau_max] (n_steps >= 2, tau_max > 0).
Trajectory evolve_trajectory(const GaussianState& state0, const PhysicalParams& p, double tau_max,
                             std::size_t n_steps, const TrajectoryOptions& opts = {});

enum class Axis { x, y };

// Maximal runs where the variance along `axis` is strictly below 1/2. Crossings are placed by
// linear interpolation between neighbouring samples; runs touching the ends are clipped there.
std::vector<Interval> detect_squeezing_intervals(const Trajectory& traj, Axis axis);

// Mean spacing of successive downward zero crossings of the signal after subtracting a centred
// moving average whose window is one third of the sampled span. Empty if fewer than two crossings.
std::optional<double> oscillation_period(std::span<const std::pair<double, double>> samples);

}  // namespace qbm
