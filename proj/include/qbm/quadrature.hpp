// quadrature.hpp — Adaptive Gauss–Kronrod integration and a fixed-grid Simpson oracle

#pragma once

#include <cstddef>
#include <functional>

namespace qbm::quad {

struct QuadratureResult {
    double value{0.0};
    double error_estimate{0.0};
    std::size_t evaluations{0};
    bool converged{false};
};

struct AdaptiveOptions {
    double rel_tol{1e-10};
    double abs_floor{1e-14};          // absolute tolerance used when the integral is near zero
    int max_depth{50};                // bisection levels per subinterval
    std::size_t max_evaluations{1'000'000};
};

using Integrand = std::function<double(double)>;

// Globally adaptive 7/15-point Gauss–Kronrod. The subinterval with the largest
// error estimate is bisected until
//     sum(err) <= max(rel_tol * |value|, abs_floor)
// or the depth/evaluation caps are hit (converged = false, best estimate kept).
// Throws NumericalError if f returns a non-finite value.
QuadratureResult integrate_adaptive(const Integrand& f, double a, double b,
                                    const AdaptiveOptions& opts = {});

// Convenience overload matching the (tol, max_subdiv) calling style.
QuadratureResult integrate_adaptive(const Integrand& f, double a, double b,
                                    double rel_tol, int max_subdiv = 50);

// Composite Simpson rule on a uniform grid. Odd panel counts are rounded up.
double integrate_fixed(const Integrand& f, double a, double b, std::size_t panels);

}  // namespace qbm::quad
