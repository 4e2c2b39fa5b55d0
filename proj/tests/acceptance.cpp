// acceptance.cpp — End-to-end acceptance checks, one PASS/FAIL line per criterion

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qbm/coefficients.hpp"
#include "qbm/errors.hpp"
#include "qbm/fock.hpp"
#include "qbm/gaussian.hpp"
#include "qbm/quadrature.hpp"
#include "qbm/wigner.hpp"

using namespace qbm;

namespace {

struct Outcome {
    bool pass{false};
    std::string detail;
};

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_{std::chrono::steady_clock::now()};
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

const PhysicalParams kParams{};
const double kSigma2 = 0.1;

GaussianState coherent_n3_state() { return make_coherent(std::sqrt(3.0)); }
GaussianState squeezed_state() { return make_squeezed(0.0, squeeze_from_sigma2(kSigma2), 0.0); }

GaussianState rotating_state(const GaussianState& s0, double tau, Dynamics dyn = Dynamics::non_markovian) {
    return to_rotating_frame(propagate(s0, kParams, tau, dyn), kParams, tau);
}

// Coherent <n> = 3 run: the mean quantum number oscillates with the reservoir period 2 pi r.
Outcome period_of_mean_number() {
    const Stopwatch sw;
    const auto traj = evolve_trajectory(coherent_n3_state(), kParams, 1.0, 2001);
    std::vector<std::pair<double, double>> samples;
    for (std::size_t i = 0; i < traj.size(); ++i) samples.emplace_back(traj.times[i], traj.n_mean[i]);
    const auto period = oscillation_period(samples);
    const double secs = sw.seconds();
    const double expect = 2.0 * std::numbers::pi * kParams.r;
    if (!period) return {false, "no oscillation detected"};
    const double rel = std::abs(*period - expect) / expect;
    return {rel <= 0.02 && secs < 5.0,
            fmt("period %.5f vs 2 pi r = %.5f (rel %.2e, limit 2e-2); %.3f s (limit 5 s)", *period, expect, rel, secs)};
}

// Squeezed sigma^2 = 0.1 run: squeezed at 0 and 0.15, not squeezed at 0.3 and 0.45.
Outcome squeezing_pattern() {
    const Stopwatch sw;
    const auto traj = evolve_trajectory(squeezed_state(), kParams, 1.0, 2001);
    const double v0 = traj.states.front().cov.xx;
    const double v15 = rotating_state(squeezed_state(), 0.15).cov.xx;
    const double v30 = rotating_state(squeezed_state(), 0.30).cov.xx;
    const double v45 = rotating_state(squeezed_state(), 0.45).cov.xx;
    const double secs = sw.seconds();
    const bool ok0 = std::abs(v0 - 0.05) <= 1e-15;
    const bool ok15 = v15 < 0.5;
    const bool ok30 = v30 > 0.5;
    const bool ok45 = v45 > 0.5;
    auto mark = [](bool b) { return b ? "ok" : "MISS"; };
    return {ok0 && ok15 && ok30 && ok45 && secs < 5.0,
            fmt("(dx)^2: tau=0 %.6f (=0.05 %s), tau=0.15 %.4f (<0.5 %s), tau=0.3 %.4f (>0.5 %s), "
                "tau=0.45 %.4f (>0.5 %s); %.3f s",
                v0, mark(ok0), v15, mark(ok15), v30, mark(ok30), v45, mark(ok45), secs)};
}

Outcome non_lindblad_classification() {
    const auto cls = classify_lindblad(kParams, 1.0, 1000);
    std::size_t inside = 0;
    for (const auto* list : {&cls.plus_negative, &cls.minus_negative})
        for (const auto& [a, b] : *list)
            if (a > 0.0 && b < 1.0 + 1e-12) ++inside;
    std::string first = "none";
    if (!cls.plus_negative.empty())
        first = fmt("[%.4f, %.4f]", cls.plus_negative.front().first, cls.plus_negative.front().second);
    return {!cls.is_lindblad_type && inside > 0,
            fmt("is_lindblad_type=%s, %zu negativity intervals in (0,1), first Delta+gamma interval %s",
                cls.is_lindblad_type ? "true" : "false", inside, first.c_str())};
}

// Fock-basis integration of the master equation against Gaussian propagation, both reference
// configurations, with an N-doubling check.
Outcome fock_oracle_equivalence() {
    const Stopwatch sw;
    const double dt = 1e-3 * std::min(1.0, kParams.r);
    const fock::IntegrateOptions opts{.record_every = 200};

    struct Config {
        const char* name;
        std::function<fock::FockState(std::size_t)> build;
        GaussianState gauss0;
        std::size_t dim;
    };
    const double s = squeeze_from_sigma2(kSigma2);
    const std::vector<Config> configs{
        {"coherent <n>=3", [](std::size_t n) { return fock::coherent(n, std::sqrt(3.0)); }, coherent_n3_state(), 60},
        {"squeezed sigma^2=0.1", [s](std::size_t n) { return fock::squeezed_vacuum(n, s); }, squeezed_state(), 80},
    };

    std::ostringstream detail;
    bool ok = true;
    for (const auto& c : configs) {
        try {
            const auto traj = fock::integrate_me(c.build(c.dim), kParams, 1.0, dt, opts);
            double worst = 0.0;
            for (std::size_t k = 0; k < traj.times.size(); ++k) {
                const auto g = rotating_state(c.gauss0, traj.times[k]);
                worst = std::max({worst, std::abs(fock::mean_number(traj.states[k]) - mean_quanta(g)),
                                  std::abs(fock::moments(traj.states[k]).cov.xx - g.cov.xx)});
            }
            const auto wide = fock::integrate_me(c.build(2 * c.dim), kParams, 1.0, dt, opts);
            double doubling = 0.0;
            for (std::size_t k = 0; k < traj.times.size(); ++k)
                doubling = std::max({doubling,
                                     std::abs(fock::mean_number(traj.states[k]) - fock::mean_number(wide.states[k])),
                                     std::abs(fock::moments(traj.states[k]).cov.xx -
                                              fock::moments(wide.states[k]).cov.xx)});
            ok = ok && worst <= 1e-3 && doubling < 1e-6;
            detail << c.name << " N=" << c.dim << ": max dev " << worst << ", doubling " << doubling << "; ";
        } catch (const std::exception& e) {
            ok = false;
            detail << c.name << " N=" << c.dim << ": aborted (" << e.what() << "); ";
        }
    }
    const double secs = sw.seconds();
    detail << fmt("%.1f s (limit 120 s)", secs);
    return {ok && secs < 120.0, detail.str()};
}

double max_abs_diff(const WignerGrid& a, const WignerGrid& b) {
    double d = 0.0;
    for (std::size_t k = 0; k < a.values.size(); ++k) d = std::max(d, std::abs(a.values[k] - b.values[k]));
    return d;
}

double moment_deviation(const GaussianState& a, const GaussianState& b) {
    return std::max({std::abs(a.mean[0] - b.mean[0]), std::abs(a.mean[1] - b.mean[1]), std::abs(a.cov.xx - b.cov.xx),
                     std::abs(a.cov.xy - b.cov.xy), std::abs(a.cov.yy - b.cov.yy)});
}

std::vector<WignerGrid> g_closed_grids;  // kept for the physicality check

// Closed-form grids against brute-force propagator convolution.
Outcome wigner_consistency() {
    double conv_dev = 0.0, integral_dev = 0.0, moment_dev = 0.0;
    for (const auto& s0 : {squeezed_state(), coherent_n3_state()}) {
        const GridSpec inner = GridSpec::covering(s0, 6.0, 201);
        for (double tau : {0.15, 0.3, 0.45}) {
            const auto evolved = propagate(s0, kParams, tau);
            const GridSpec outer = GridSpec::covering(evolved, 6.0, 121);
            const auto closed = wigner_gaussian(evolved, outer);
            const auto conv = wigner_by_convolution(s0, kParams, tau, outer, inner);
            conv_dev = std::max(conv_dev, max_abs_diff(closed, conv));
            integral_dev = std::max({integral_dev, std::abs(closed.integral() - 1.0), std::abs(conv.integral() - 1.0)});
            moment_dev = std::max(moment_dev, moment_deviation(closed.moments(), evolved));
            g_closed_grids.push_back(closed);
        }
    }
    return {conv_dev <= 1e-4 && integral_dev <= 1e-6 && moment_dev <= 1e-4,
            fmt("max |closed - convolution| %.2e (limit 1e-4), max |integral - 1| %.2e (limit 1e-6), "
                "max moment dev %.2e (limit 1e-4)",
                conv_dev, integral_dev, moment_dev)};
}

Outcome calculus_identities() {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> pick(0.01, 5.0);
    const double d_scale = delta_asymptotic(kParams);
    double worst_g = 0.0, worst_d = 0.0, worst_q = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double tau = pick(rng);
        const double h = 1e-5;
        const double dG = (big_gamma(kParams, tau + h) - big_gamma(kParams, tau - h)) / (2 * h);
        worst_g = std::max(worst_g, std::abs(dG - 2 * gamma_coeff(kParams, tau)) / std::abs(2 * gamma_coeff(kParams, tau)));

        const double hd = 1e-4;
        const double dDG =
            (delta_big_gamma(kParams, tau + hd, 1e-13) - delta_big_gamma(kParams, tau - hd, 1e-13)) / (2 * hd);
        const double expect =
            delta_coeff(kParams, tau) - 2 * gamma_coeff(kParams, tau) * delta_big_gamma(kParams, tau, 1e-13);
        worst_d = std::max(worst_d, std::abs(dDG - expect) / std::max(std::abs(expect), d_scale));

        const auto q =
            quad::integrate_adaptive([](double t) { return 2 * gamma_coeff(kParams, t); }, 0.0, tau, 1e-13);
        worst_q = std::max(worst_q, std::abs(big_gamma(kParams, tau) - q.value) / std::abs(q.value));
    }
    return {worst_g <= 1e-5 && worst_d <= 1e-5 && worst_q <= 1e-10,
            fmt("dGamma/dtau rel %.2e, dDelta_Gamma/dtau rel %.2e (limit 1e-5), closed-form Gamma vs quadrature "
                "rel %.2e (limit 1e-10)",
                worst_g, worst_d, worst_q)};
}

Outcome physicality() {
    double min_det = INFINITY;
    double min_w = INFINITY;
    for (const auto& s0 : {coherent_n3_state(), squeezed_state()}) {
        const auto traj = evolve_trajectory(s0, kParams, 1.0, 2001);
        for (const auto& s : traj.states) min_det = std::min(min_det, s.cov.det());
        for (double tau : {0.0, 0.15, 0.3, 0.45, 1.0}) {
            const auto st = rotating_state(s0, tau);
            min_w = std::min(min_w, wigner_gaussian(st, GridSpec::covering(st, 6.0, 201)).min_value());
        }
    }
    for (const auto& g : g_closed_grids) min_w = std::min(min_w, g.min_value());
    return {min_det >= 0.25 - 1e-9 && min_w >= 0.0,
            fmt("min det(cov) %.6f (limit 0.25 - 1e-9), min Wigner value %.3e", min_det, min_w)};
}

// Sign changes of successive differences; zero means monotone.
std::size_t turning_points(const std::vector<double>& v) {
    std::size_t turns = 0;
    int last = 0;
    for (std::size_t i = 1; i < v.size(); ++i) {
        const double d = v[i] - v[i - 1];
        const int sgn = (d > 0) - (d < 0);
        if (sgn != 0 && last != 0 && sgn != last) ++turns;
        if (sgn != 0) last = sgn;
    }
    return turns;
}

Outcome markovian_contrast() {
    const TrajectoryOptions markov{Frame::rotating, Dynamics::markovian, kDefaultDeltaGammaTol};
    const auto m1 = evolve_trajectory(coherent_n3_state(), kParams, 1.0, 2001, markov);
    const auto m2 = evolve_trajectory(squeezed_state(), kParams, 1.0, 2001, markov);
    const auto t1 = evolve_trajectory(coherent_n3_state(), kParams, 1.0, 2001);
    const auto t2 = evolve_trajectory(squeezed_state(), kParams, 1.0, 2001);

    auto var_x = [](const Trajectory& t) {
        std::vector<double> v;
        for (const auto& s : t.states) v.push_back(s.cov.xx);
        return v;
    };
    // Fixed points of the frozen-coefficient dynamics.
    const double d_inf = delta_asymptotic(kParams), g_inf = gamma_asymptotic(kParams);
    const double n_star = (d_inf - g_inf) / (2 * g_inf);
    const double v_star = d_inf / (2 * g_inf);

    const auto mn = m1.n_mean, mv = var_x(m2);
    const bool toward_n = (mn.back() - mn.front()) * (n_star - mn.front()) > 0;
    const bool toward_v = (mv.back() - mv.front()) * (v_star - mv.front()) > 0;
    const std::size_t mt = turning_points(mn) + turning_points(mv);
    const std::size_t tt_n = turning_points(t1.n_mean), tt_v = turning_points(var_x(t2));
    return {mt == 0 && toward_n && toward_v && tt_n > 0 && tt_v > 0,
            fmt("Markovian turning points %zu (toward fixed points: <n> %s, (dx)^2 %s); time-dependent turning "
                "points <n> %zu, (dx)^2 %zu",
                mt, toward_n ? "yes" : "no", toward_v ? "yes" : "no", tt_n, tt_v)};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, Outcome (*)()>> criteria{
        {"1 mean-number oscillation period", period_of_mean_number},
        {"2 squeezing pattern of (dx)^2", squeezing_pattern},
        {"3 non-Lindblad classification", non_lindblad_classification},
        {"4 Fock oracle equivalence", fock_oracle_equivalence},
        {"5 Wigner consistency", wigner_consistency},
        {"6 calculus identities", calculus_identities},
        {"7 physicality", physicality},
        {"8 Markovian contrast", markovian_contrast},
    };
    int failed = 0;
    for (const auto& [name, check] : criteria) {
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("%s criterion %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
        std::fflush(stdout);
        if (!o.pass) ++failed;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
