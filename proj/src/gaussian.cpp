// gaussian.cpp — Gaussian state constructors, channel propagation and trajectory analysis

#include "qbm/gaussian.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "qbm/errors.hpp"

namespace qbm {

std::complex<double> GaussianState::alpha() const noexcept {
    return {mean[0] / std::numbers::sqrt2, mean[1] / std::numbers::sqrt2};
}

bool GaussianState::is_physical(double tol) const noexcept {
    return cov.xx > 0.0 && cov.yy > 0.0 && cov.det() >= 0.25 - tol;
}

GaussianState make_vacuum() { return GaussianState{}; }

GaussianState make_coherent(std::complex<double> alpha0) {
    GaussianState s;
    s.mean = {std::numbers::sqrt2 * alpha0.real(), std::numbers::sqrt2 * alpha0.imag()};
    return s;
}

GaussianState make_squeezed(std::complex<double> alpha0, double s, double phi) {
    if (!(s >= 0.0) || !std::isfinite(s)) throw DomainError("make_squeezed: s must be finite and >= 0");
    GaussianState st = make_coherent(alpha0);
    const Covariance diag{0.5 * std::exp(-2.0 * s), 0.0, 0.5 * std::exp(2.0 * s)};
    const double c = std::cos(0.5 * phi);
    const double sn = std::sin(0.5 * phi);
    st.cov.xx = c * c * diag.xx + sn * sn * diag.yy;
    st.cov.yy = sn * sn * diag.xx + c * c * diag.yy;
    st.cov.xy = c * sn * (diag.xx - diag.yy);
    return st;
}

double squeeze_from_sigma2(double sigma2) {
    if (!(sigma2 > 0.0) || !(sigma2 <= 1.0))
        throw DomainError("squeeze_from_sigma2: sigma^2 must lie in (0, 1]");
    return -0.5 * std::log(sigma2);
}

GaussianState rotate(const GaussianState& state, double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    GaussianState out;
    out.mean = {c * state.mean[0] - s * state.mean[1], s * state.mean[0] + c * state.mean[1]};
    // R C R^T
    const auto& C = state.cov;
    out.cov.xx = c * c * C.xx - 2.0 * c * s * C.xy + s * s * C.yy;
    out.cov.yy = s * s * C.xx + 2.0 * c * s * C.xy + c * c * C.yy;
    out.cov.xy = c * s * (C.xx - C.yy) + (c * c - s * s) * C.xy;
    return out;
}

GaussianState apply_channel(const GaussianState& state, const ChannelCoefficients& ch) {
    GaussianState out = rotate(state, ch.angle);
    const double damp = std::exp(-ch.big_gamma);
    const double amp = std::exp(-0.5 * ch.big_gamma);
    out.mean = {amp * out.mean[0], amp * out.mean[1]};
    out.cov.xx = damp * out.cov.xx + ch.delta_gamma;
    out.cov.yy = damp * out.cov.yy + ch.delta_gamma;
    out.cov.xy = damp * out.cov.xy;
    return out;
}

namespace {

ChannelCoefficients channel_at(const PhysicalParams& p, double tau, Dynamics dynamics, double tol) {
    if (dynamics == Dynamics::markovian)
        return {markov_big_gamma(p, tau), markov_delta_big_gamma(p, tau), -p.omega0() * tau};
    return {big_gamma(p, tau), delta_big_gamma(p, tau, tol), -p.omega0() * tau};
}

}  // namespace

GaussianState propagate(const GaussianState& state0, const PhysicalParams& p, double tau,
                        Dynamics dynamics, double tol) {
    if (tau == 0.0) return state0;
    return apply_channel(state0, channel_at(p, tau, dynamics, tol));
}

GaussianState to_rotating_frame(const GaussianState& lab_state, const PhysicalParams& p, double tau) {
    return rotate(lab_state, p.omega0() * tau);
}

double mean_quanta(const GaussianState& state) {
    return 0.5 * (state.cov.trace() + state.mean[0] * state.mean[0] +
                  state.mean[1] * state.mean[1] - 1.0);
}

Trajectory evolve_trajectory(const GaussianState& state0, const PhysicalParams& p, double tau_max,
                             std::size_t n_steps, const TrajectoryOptions& opts) {
    if (n_steps < 2) throw DomainError("evolve_trajectory: n_steps must be >= 2");
    if (!(tau_max > 0.0) || !std::isfinite(tau_max))
        throw DomainError("evolve_trajectory: tau_max must be finite and > 0");

    Trajectory traj;
    traj.frame = opts.frame;
    traj.times.resize(n_steps);
    const double step = tau_max / static_cast<double>(n_steps - 1);
    for (std::size_t i = 0; i < n_steps; ++i)
        traj.times[i] = i + 1 == n_steps ? tau_max : step * static_cast<double>(i);

    if (opts.dynamics == Dynamics::markovian) {
        traj.coeffs.reserve(n_steps);
        for (double tau : traj.times)
            traj.coeffs.push_back({tau, delta_asymptotic(p), gamma_asymptotic(p),
                                   markov_big_gamma(p, tau), markov_delta_big_gamma(p, tau)});
    } else {
        traj.coeffs = sample_coefficients(p, traj.times, opts.tol);
    }

    traj.states.reserve(n_steps);
    traj.n_mean.reserve(n_steps);
    for (const auto& c : traj.coeffs) {
        const double angle = opts.frame == Frame::lab ? -p.omega0() * c.tau : 0.0;
        const GaussianState s = apply_channel(state0, {c.big_gamma, c.delta_gamma, angle});
        traj.states.push_back(s);
        traj.n_mean.push_back(mean_quanta(s));
    }
    return traj;
}

std::vector<Interval> detect_squeezing_intervals(const Trajectory& traj, Axis axis) {
    if (traj.times.empty()) throw DomainError("detect_squeezing_intervals: empty trajectory");
    const auto var = [&](std::size_t i) {
        return axis == Axis::x ? traj.states[i].cov.xx : traj.states[i].cov.yy;
    };
    const auto crossing = [&](std::size_t i) {
        const double v0 = var(i) - kVacuumVariance;
        const double v1 = var(i + 1) - kVacuumVariance;
        return traj.times[i] + (traj.times[i + 1] - traj.times[i]) * v0 / (v0 - v1);
    };

    std::vector<Interval> out;
    bool inside = var(0) < kVacuumVariance;
    double start = traj.times.front();
    for (std::size_t i = 0; i + 1 < traj.size(); ++i) {
        const bool next = var(i + 1) < kVacuumVariance;
        if (next && !inside) {
            start = crossing(i);
            inside = true;
        } else if (!next && inside) {
            out.emplace_back(start, crossing(i));
            inside = false;
        }
    }
    if (inside) out.emplace_back(start, traj.times.back());
    return out;
}

std::optional<double> oscillation_period(std::span<const std::pair<double, double>> samples) {
    const std::size_t n = samples.size();
    if (n < 3) throw DomainError("oscillation_period: need at least 3 samples");

    const double half_window = (samples.back().first - samples.front().first) / 6.0;
    std::vector<double> prefix(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + samples[i].second;

    std::vector<double> residual(n);
    std::size_t lo = 0;
    std::size_t hi = 0;  // window is [lo, hi)
    for (std::size_t i = 0; i < n; ++i) {
        const double t = samples[i].first;
        while (samples[lo].first < t - half_window) ++lo;
        while (hi < n && samples[hi].first <= t + half_window) ++hi;
        const double avg = (prefix[hi] - prefix[lo]) / static_cast<double>(hi - lo);
        residual[i] = samples[i].second - avg;
    }

    // Flat signals leave only rounding noise in the residual.
    double scale = 0.0;
    for (const auto& s : samples) scale = std::max(scale, std::abs(s.second));
    const double noise = 1e-12 * std::max(scale, 1.0);

    std::vector<double> crossings;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (residual[i] >= 0.0 && residual[i + 1] < 0.0 && residual[i] - residual[i + 1] > noise) {
            const double t0 = samples[i].first;
            const double t1 = samples[i + 1].first;
            crossings.push_back(t0 + (t1 - t0) * residual[i] / (residual[i] - residual[i + 1]));
        }
    }
    if (crossings.size() < 2) return std::nullopt;
    return (crossings.back() - crossings.front()) / static_cast<double>(crossings.size() - 1);
}

}  // namespace qbm
