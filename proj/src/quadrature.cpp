// quadrature.cpp — Gauss–Kronrod 7/15 adaptive integrator and composite Simpson

#include "qbm/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <sstream>
#include <vector>

#include "qbm/errors.hpp"

namespace qbm::quad {

namespace {

// Kronrod abscissae on [-1, 1] (non-negative half); odd indices are the Gauss-7 nodes.
constexpr std::array<double, 8> kXgk{
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg{
    0.129484966168869693270611432679082, 0.279705391489276667901467768523884,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

double checked_eval(const Integrand& f, double x) {
    const double y = f(x);
    if (!std::isfinite(y)) {
        std::ostringstream os;
        os.precision(17);
        os << "integrand is not finite at x = " << x << " (value " << y << ")";
        throw NumericalError(os.str());
    }
    return y;
}

struct Segment {
    double a, b;
    double value, error;
    int depth;
    bool operator<(const Segment& other) const { return error < other.error; }
};

Segment gk15(const Integrand& f, double a, double b, int depth) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = checked_eval(f, center);
    double kronrod = fc * kWgk[7];
    double gauss = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double f1 = checked_eval(f, center - dx);
        const double f2 = checked_eval(f, center + dx);
        kronrod += kWgk[j] * (f1 + f2);
        if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
    }
    return Segment{a, b, kronrod * half, std::abs((kronrod - gauss) * half), depth};
}

}  // namespace

QuadratureResult integrate_adaptive(const Integrand& f, double a, double b,
                                    const AdaptiveOptions& opts) {
    if (!(a <= b)) throw DomainError("integrate_adaptive: requires a <= b");
    if (!(opts.rel_tol > 0.0)) throw DomainError("integrate_adaptive: tolerance must be positive");

    QuadratureResult out;
    if (a == b) {
        out.converged = true;
        return out;
    }

    std::priority_queue<Segment> heap;
    heap.push(gk15(f, a, b, 0));
    out.evaluations = 15;
    double total = heap.top().value;
    double total_err = heap.top().error;
    std::vector<Segment> frozen;  // segments that hit the depth cap

    auto target = [&] { return std::max(opts.rel_tol * std::abs(total), opts.abs_floor); };

    while (total_err > target()) {
        if (heap.empty() || out.evaluations + 30 > opts.max_evaluations) break;
        const Segment worst = heap.top();
        heap.pop();
        if (worst.depth >= opts.max_depth) {
            frozen.push_back(worst);
            continue;
        }
        const double mid = 0.5 * (worst.a + worst.b);
        const Segment left = gk15(f, worst.a, mid, worst.depth + 1);
        const Segment right = gk15(f, mid, worst.b, worst.depth + 1);
        out.evaluations += 30;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }

    // Re-sum from the pieces to shed the rounding accumulated by incremental updates.
    double value = 0.0;
    double error = 0.0;
    for (const auto& s : frozen) {
        value += s.value;
        error += s.error;
    }
    while (!heap.empty()) {
        value += heap.top().value;
        error += heap.top().error;
        heap.pop();
    }
    out.value = value;
    out.error_estimate = error;
    out.converged = error <= std::max(opts.rel_tol * std::abs(value), opts.abs_floor);
    return out;
}

QuadratureResult integrate_adaptive(const Integrand& f, double a, double b, double rel_tol,
                                    int max_subdiv) {
    AdaptiveOptions opts;
    opts.rel_tol = rel_tol;
    opts.max_depth = max_subdiv;
    return integrate_adaptive(f, a, b, opts);
}

double integrate_fixed(const Integrand& f, double a, double b, std::size_t panels) {
    if (panels < 1) throw DomainError("integrate_fixed: panels must be >= 1");
    if (!(a <= b)) throw DomainError("integrate_fixed: requires a <= b");
    if (panels % 2 == 1) ++panels;
    if (a == b) return 0.0;

    const double h = (b - a) / static_cast<double>(panels);
    double odd = 0.0;
    double even = 0.0;
    for (std::size_t i = 1; i < panels; ++i) {
        const double y = checked_eval(f, a + static_cast<double>(i) * h);
        (i % 2 == 1 ? odd : even) += y;
    }
    const double ends = checked_eval(f, a) + checked_eval(f, b);
    return h / 3.0 * (ends + 4.0 * odd + 2.0 * even);
}

}  // namespace qbm::quad
