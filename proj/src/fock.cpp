// fock.cpp — Number-basis master-equation oracle

#include "qbm/fock.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "qbm/errors.hpp"

namespace qbm::fock {

namespace {

FockState from_amplitudes(const Eigen::VectorXcd& psi) {
    const Eigen::VectorXcd unit = psi / psi.norm();
    return FockState{unit * unit.adjoint()};
}

// out = L[rho] elementwise; the truncated a a^dag is diag(1, ..., N-1, 0).
void rhs_into(const Matrix& rho, double delta, double gamma, Matrix& out) {
    const Eigen::Index n = rho.rows();
    const double down = 0.5 * (delta + gamma);  // coefficient of the a . a^dag dissipator
    const double up = 0.5 * (delta - gamma);    // coefficient of the a^dag . a dissipator
    out.resize(n, n);
    for (Eigen::Index col = 0; col < n; ++col) {
        const double ec = col + 1 < n ? static_cast<double>(col + 1) : 0.0;
        for (Eigen::Index row = 0; row < n; ++row) {
            const double er = row + 1 < n ? static_cast<double>(row + 1) : 0.0;
            const std::complex<double> r = rho(row, col);
            std::complex<double> loss = static_cast<double>(row + col) * r;
            if (row + 1 < n && col + 1 < n)
                loss -= 2.0 * std::sqrt(static_cast<double>((row + 1) * (col + 1))) * rho(row + 1, col + 1);
            std::complex<double> gain = (er + ec) * r;
            if (row > 0 && col > 0)
                gain -= 2.0 * std::sqrt(static_cast<double>(row * col)) * rho(row - 1, col - 1);
            out(row, col) = -down * loss - up * gain;
        }
    }
}

struct Rates {
    double delta, gamma;
};

Rates rates_at(const PhysicalParams& p, double tau, Dynamics dynamics) {
    if (dynamics == Dynamics::markovian) return {delta_asymptotic(p), gamma_asymptotic(p)};
    return {delta_coeff(p, tau), gamma_coeff(p, tau)};
}

// (-1)^n e^{-u/2} u^{k/2} sqrt(n!/(n+k)!) L_n^{(k)}(u) for n = 0..count-1, via the three-term
// recurrence carried in normalised form.
std::vector<double> laguerre_functions(std::size_t k, double u, std::size_t count) {
    std::vector<double> out(count, 0.0);
    if (count == 0) return out;
    double l0;
    if (u == 0.0)
        l0 = k == 0 ? 1.0 : 0.0;
    else
        l0 = std::exp(0.5 * static_cast<double>(k) * std::log(u) - 0.5 * u -
                      0.5 * std::lgamma(static_cast<double>(k) + 1.0));
    const double kd = static_cast<double>(k);
    double prev2 = 0.0;
    double prev = l0;
    out[0] = l0;
    if (count > 1) {
        prev2 = l0;
        prev = l0 * (1.0 + kd - u) / std::sqrt(kd + 1.0);
        out[1] = -prev;
    }
    for (std::size_t m = 2; m < count; ++m) {
        const double n = static_cast<double>(m);
        const double cur = ((2.0 * n - 1.0 + kd - u) * std::sqrt(n / (n + kd)) * prev -
                            (n - 1.0 + kd) * std::sqrt(n * (n - 1.0) / ((n + kd) * (n + kd - 1.0))) * prev2) /
                           n;
        prev2 = prev;
        prev = cur;
        out[m] = (m % 2 == 0) ? cur : -cur;
    }
    return out;
}

}  // namespace

double FockState::min_eigenvalue() const {
    const Matrix herm = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(herm, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

Matrix annihilation(std::size_t dim) {
    Matrix a = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t n = 1; n < dim; ++n)
        a(static_cast<Eigen::Index>(n - 1), static_cast<Eigen::Index>(n)) = std::sqrt(static_cast<double>(n));
    return a;
}

FockState number_state(std::size_t dim, std::size_t n) {
    if (n >= dim) throw DomainError("number_state: n must be < dim");
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));
    psi(static_cast<Eigen::Index>(n)) = 1.0;
    return from_amplitudes(psi);
}

FockState coherent(std::size_t dim, std::complex<double> alpha) {
    if (dim < 1) throw DomainError("coherent: dim must be >= 1");
    Eigen::VectorXcd psi(static_cast<Eigen::Index>(dim));
    psi(0) = std::exp(-0.5 * std::norm(alpha));
    for (std::size_t n = 1; n < dim; ++n)
        psi(static_cast<Eigen::Index>(n)) =
            psi(static_cast<Eigen::Index>(n - 1)) * alpha / std::sqrt(static_cast<double>(n));
    return from_amplitudes(psi);
}

FockState squeezed_vacuum(std::size_t dim, double s) {
    if (dim < 1) throw DomainError("squeezed_vacuum: dim must be >= 1");
    if (!(s >= 0.0)) throw DomainError("squeezed_vacuum: s must be >= 0");
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));
    const double t = -std::tanh(s);
    double c = 1.0 / std::sqrt(std::cosh(s));
    for (std::size_t m = 0; 2 * m < dim; ++m) {
        if (m > 0) {
            const double md = static_cast<double>(m);
            c *= t * std::sqrt((2.0 * md - 1.0) / (2.0 * md));
        }
        psi(static_cast<Eigen::Index>(2 * m)) = c;
    }
    return from_amplitudes(psi);
}

Matrix me_rhs(const FockState& state, double delta, double gamma) {
    if (state.rho.rows() != state.rho.cols() || state.rho.rows() == 0)
        throw DomainError("me_rhs: density matrix must be square and non-empty");
    if (!std::isfinite(delta) || !std::isfinite(gamma)) throw DomainError("me_rhs: rates must be finite");
    Matrix out;
    rhs_into(state.rho, delta, gamma, out);
    return out;
}

double mean_number(const FockState& state) {
    double n = 0.0;
    for (Eigen::Index k = 0; k < state.rho.rows(); ++k) n += static_cast<double>(k) * state.rho(k, k).real();
    return n;
}

GaussianState moments(const FockState& state) {
    const Eigen::Index dim = state.rho.rows();
    std::complex<double> a1 = 0.0;  // <a>
    std::complex<double> a2 = 0.0;  // <a^2>
    for (Eigen::Index k = 0; k + 1 < dim; ++k) a1 += std::sqrt(static_cast<double>(k + 1)) * state.rho(k + 1, k);
    for (Eigen::Index k = 0; k + 2 < dim; ++k)
        a2 += std::sqrt(static_cast<double>((k + 1) * (k + 2))) * state.rho(k + 2, k);
    const double n = mean_number(state);

    GaussianState out;
    out.mean = {std::numbers::sqrt2 * a1.real(), std::numbers::sqrt2 * a1.imag()};
    const double xx = a2.real() + n + 0.5;
    const double yy = -a2.real() + n + 0.5;
    const double xy = a2.imag();
    out.cov = {xx - out.mean[0] * out.mean[0], xy - out.mean[0] * out.mean[1], yy - out.mean[1] * out.mean[1]};
    return out;
}

FockTrajectory integrate_me(const FockState& state0, const PhysicalParams& p, double tau_max,
                            double dt, const IntegrateOptions& opts) {
    if (!(tau_max > 0.0) || !(dt > 0.0)) throw DomainError("integrate_me: tau_max and dt must be > 0");
    if (opts.record_every < 1) throw DomainError("integrate_me: record_every must be >= 1");
    if (state0.rho.rows() != state0.rho.cols()) throw DomainError("integrate_me: rho must be square");

    const auto steps = static_cast<std::size_t>(std::ceil(tau_max / dt - 1e-9));
    const double h = tau_max / static_cast<double>(steps);

    FockTrajectory traj;
    traj.times.push_back(0.0);
    traj.states.push_back(state0);

    Matrix rho = state0.rho;
    Matrix k1, k2, k3, k4, tmp;
    for (std::size_t step = 1; step <= steps; ++step) {
        const double t = h * static_cast<double>(step - 1);
        const Rates r0 = rates_at(p, t, opts.dynamics);
        const Rates rm = rates_at(p, t + 0.5 * h, opts.dynamics);
        const Rates r1 = rates_at(p, t + h, opts.dynamics);

        rhs_into(rho, r0.delta, r0.gamma, k1);
        tmp = rho + (0.5 * h) * k1;
        rhs_into(tmp, rm.delta, rm.gamma, k2);
        tmp = rho + (0.5 * h) * k2;
        rhs_into(tmp, rm.delta, rm.gamma, k3);
        tmp = rho + h * k3;
        rhs_into(tmp, r1.delta, r1.gamma, k4);
        rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

        const double tr = rho.trace().real();
        const double drift = std::abs(tr - 1.0);
        traj.max_trace_drift = std::max(traj.max_trace_drift, drift);
        if (!(drift <= opts.trace_drift_abort)) {
            std::ostringstream os;
            os << "integrate_me: trace drift " << drift << " at tau = " << t + h << " (step " << step << ")";
            throw NumericalError(os.str());
        }
        rho /= tr;

        if (step % opts.record_every == 0 || step == steps) {
            FockState s{rho};
            if (opts.check_positivity) {
                const double lam = s.min_eigenvalue();
                if (lam < -opts.negativity_tol) {
                    std::ostringstream os;
                    os << "integrate_me: eigenvalue " << lam << " at tau = " << t + h;
                    throw NumericalError(os.str());
                }
            }
            traj.times.push_back(step == steps ? tau_max : t + h);
            traj.states.push_back(std::move(s));
        }
    }
    return traj;
}

double wigner_at(const FockState& state, std::complex<double> alpha) {
    const auto dim = state.dim();
    const double u = 4.0 * std::norm(alpha);
    const double theta = std::arg(alpha);
    double w = 0.0;
    for (std::size_t k = 0; k < dim; ++k) {
        const auto ell = laguerre_functions(k, u, dim - k);  // index n: pair (n + k, n)
        const std::complex<double> phase = std::polar(1.0, -static_cast<double>(k) * theta);
        for (std::size_t n = 0; n + k < dim; ++n) {
            const auto rho = state.rho(static_cast<Eigen::Index>(n + k), static_cast<Eigen::Index>(n));
            const double term = (rho * phase).real() * ell[n];
            w += k == 0 ? term : 2.0 * term;
        }
    }
    return 2.0 / std::numbers::pi * w;
}

WignerGrid to_wigner(const FockState& state, const GridSpec& spec) {
    spec.validate();
    WignerGrid grid{spec, std::vector<double>(spec.nx * spec.ny)};
    for (std::size_t j = 0; j < spec.ny; ++j)
        for (std::size_t i = 0; i < spec.nx; ++i) grid.at(i, j) = wigner_at(state, {spec.x(i), spec.y(j)});
    return grid;
}

}  // namespace qbm::fock
