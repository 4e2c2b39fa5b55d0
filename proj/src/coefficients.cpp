// coefficients.cpp — Delta, gamma, their integrated forms and the Lindblad-type sign scan

#include "qbm/coefficients.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "qbm/errors.hpp"
#include "qbm/quadrature.hpp"

namespace qbm {

namespace {

void require_time(double tau, const char* who) {
    if (!(tau >= 0.0) || !std::isfinite(tau)) {
        std::ostringstream os;
        os << who << ": tau must be finite and >= 0 (got " << tau << ")";
        throw DomainError(os.str());
    }
}

double delta_prefactor(const PhysicalParams& p) {
    const double r2 = p.r * p.r;
    return 2.0 * p.g * p.g * p.kt_over_wc * r2 / (1.0 + r2);
}

double gamma_prefactor(const PhysicalParams& p) {
    return p.g * p.g * p.r / (1.0 + p.r * p.r);
}

}  // namespace

double PhysicalParams::kt_from_wc_over_2pikt(double wc_over_2pikt) {
    if (!(wc_over_2pikt > 0.0) || !std::isfinite(wc_over_2pikt))
        throw DomainError("wc_over_2pikt must be finite and > 0");
    return 1.0 / (2.0 * std::numbers::pi * wc_over_2pikt);
}

void PhysicalParams::validate() const {
    if (!std::isfinite(g) || g < 0.0) throw DomainError("g must be finite and >= 0");
    if (!std::isfinite(r) || !(r > 0.0)) throw DomainError("r must be finite and > 0");
    if (!std::isfinite(kt_over_wc) || !(kt_over_wc > 0.0))
        throw DomainError("kt_over_wc must be finite and > 0");
}

double delta_coeff(const PhysicalParams& p, double tau) {
    require_time(tau, "delta_coeff");
    const double w = p.omega0();
    const double bracket =
        1.0 - std::exp(-tau) * (std::cos(w * tau) - std::sin(w * tau) / p.r);
    return delta_prefactor(p) * bracket;
}

double gamma_coeff(const PhysicalParams& p, double tau) {
    require_time(tau, "gamma_coeff");
    const double w = p.omega0();
    const double decay = std::exp(-tau);
    const double bracket = 1.0 - decay * std::cos(w * tau) - p.r * decay * std::sin(w * tau);
    return gamma_prefactor(p) * bracket;
}

double delta_asymptotic(const PhysicalParams& p) { return delta_prefactor(p); }

double gamma_asymptotic(const PhysicalParams& p) { return gamma_prefactor(p); }

double big_gamma(const PhysicalParams& p, double tau) {
    require_time(tau, "big_gamma");
    // int_0^tau e^{-s} cos(ws) ds + r int_0^tau e^{-s} sin(ws) ds
    //   = r^2/(1+r^2) [2 - e^{-tau} (2 cos(w tau) - (w - r) sin(w tau))]   with r w = 1
    const double w = p.omega0();
    const double r2 = p.r * p.r;
    const double transient =
        r2 / (1.0 + r2) *
        (2.0 - std::exp(-tau) * (2.0 * std::cos(w * tau) - (w - p.r) * std::sin(w * tau)));
    return 2.0 * gamma_prefactor(p) * (tau - transient);
}

double delta_big_gamma(const PhysicalParams& p, double tau, double tol) {
    require_time(tau, "delta_big_gamma");
    if (!(tol > 0.0)) throw DomainError("delta_big_gamma: tol must be > 0");
    if (tau == 0.0) return 0.0;

    const auto integrand = [&p](double s) { return std::exp(big_gamma(p, s)) * delta_coeff(p, s); };
    quad::AdaptiveOptions opts;
    opts.rel_tol = tol;
    const auto res = quad::integrate_adaptive(integrand, 0.0, tau, opts);
    if (!res.converged) {
        std::ostringstream os;
        os.precision(17);
        os << "delta_big_gamma: quadrature did not converge at tau = " << tau
           << " (error estimate " << res.error_estimate << ")";
        throw NumericalError(os.str());
    }
    return std::exp(-big_gamma(p, tau)) * res.value;
}

CoefficientSample sample_coefficients(const PhysicalParams& p, double tau, double tol) {
    return CoefficientSample{tau, delta_coeff(p, tau), gamma_coeff(p, tau), big_gamma(p, tau),
                             delta_big_gamma(p, tau, tol)};
}

std::vector<CoefficientSample> sample_coefficients(const PhysicalParams& p,
                                                   const std::vector<double>& taus, double tol) {
    if (!(tol > 0.0)) throw DomainError("sample_coefficients: tol must be > 0");
    std::vector<CoefficientSample> out;
    out.reserve(taus.size());

    const auto integrand = [&p](double s) { return std::exp(big_gamma(p, s)) * delta_coeff(p, s); };
    double raw = 0.0;  // int_0^{tau_prev} e^{Gamma} Delta
    double prev = 0.0;
    for (std::size_t i = 0; i < taus.size(); ++i) {
        const double tau = taus[i];
        require_time(tau, "sample_coefficients");
        if (i > 0 && !(tau > prev)) throw DomainError("sample_coefficients: grid must be strictly increasing");
        if (tau > prev) {
            quad::AdaptiveOptions opts;
            opts.rel_tol = tol;
            opts.abs_floor = std::max(tol * std::abs(raw), 1e-14);
            const auto res = quad::integrate_adaptive(integrand, prev, tau, opts);
            if (!res.converged) {
                std::ostringstream os;
                os.precision(17);
                os << "sample_coefficients: quadrature did not converge on [" << prev << ", " << tau << "]";
                throw NumericalError(os.str());
            }
            raw += res.value;
        }
        prev = tau;
        const double gam = big_gamma(p, tau);
        out.push_back({tau, delta_coeff(p, tau), gamma_coeff(p, tau), gam, std::exp(-gam) * raw});
    }
    return out;
}

double markov_big_gamma(const PhysicalParams& p, double tau) {
    require_time(tau, "markov_big_gamma");
    return 2.0 * gamma_asymptotic(p) * tau;
}

double markov_delta_big_gamma(const PhysicalParams& p, double tau) {
    require_time(tau, "markov_delta_big_gamma");
    const double rate = 2.0 * gamma_asymptotic(p);
    if (rate == 0.0) return delta_asymptotic(p) * tau;
    return -delta_asymptotic(p) * std::expm1(-rate * tau) / rate;
}

namespace {

constexpr double kBracketWidth = 1e-9;

// Returns the boundary between the non-negative point `ok` and the negative point `bad`.
double refine_sign_change(const std::function<double(double)>& h, double ok, double bad) {
    while (std::abs(bad - ok) > kBracketWidth) {
        const double mid = 0.5 * (ok + bad);
        if (h(mid) < 0.0)
            bad = mid;
        else
            ok = mid;
    }
    return 0.5 * (ok + bad);
}

std::vector<Interval> negative_intervals(const std::function<double(double)>& h, double tau_max,
                                         std::size_t n) {
    std::vector<Interval> out;
    const double step = tau_max / static_cast<double>(n - 1);
    auto at = [&](std::size_t i) { return i + 1 == n ? tau_max : step * static_cast<double>(i); };

    bool inside = h(0.0) < 0.0;
    double start = 0.0;
    double prev_tau = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
        const double tau = at(i);
        const bool neg = h(tau) < 0.0;
        if (neg && !inside) {
            start = refine_sign_change(h, prev_tau, tau);
            inside = true;
        } else if (!neg && inside) {
            out.emplace_back(start, refine_sign_change(h, tau, prev_tau));
            inside = false;
        }
        prev_tau = tau;
    }
    if (inside) out.emplace_back(start, tau_max);
    return out;
}

}  // namespace

LindbladClassification classify_lindblad(const PhysicalParams& p, double tau_max,
                                         std::size_t n_samples) {
    if (!(tau_max > 0.0) || !std::isfinite(tau_max))
        throw DomainError("classify_lindblad: tau_max must be finite and > 0");
    if (n_samples < 2) throw DomainError("classify_lindblad: n_samples must be >= 2");

    const auto plus = [&p](double t) { return delta_coeff(p, t) + gamma_coeff(p, t); };
    const auto minus = [&p](double t) { return delta_coeff(p, t) - gamma_coeff(p, t); };

    LindbladClassification out;
    out.plus_negative = negative_intervals(plus, tau_max, n_samples);
    out.minus_negative = negative_intervals(minus, tau_max, n_samples);
    out.is_lindblad_type = out.plus_negative.empty() && out.minus_negative.empty();
    return out;
}

}  // namespace qbm
