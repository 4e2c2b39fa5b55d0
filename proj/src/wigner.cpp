// wigner.cpp — Gaussian Wigner grids, the transition propagator and its convolution oracle

#include "qbm/wigner.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qbm/errors.hpp"

namespace qbm {

using std::numbers::pi;

void GridSpec::validate() const {
    if (nx < 1 || ny < 1) throw DomainError("grid: nx and ny must be >= 1");
    if (!std::isfinite(x_min) || !std::isfinite(x_max) || !std::isfinite(y_min) ||
        !std::isfinite(y_max) || !(x_max > x_min) || !(y_max > y_min))
        throw DomainError("grid: extents must be finite with max > min");
}

GridSpec GridSpec::covering(const GaussianState& state, double n_sigma, std::size_t n) {
    const auto centre = state.alpha();
    const double hx = n_sigma * std::sqrt(state.cov.xx / 2.0);
    const double hy = n_sigma * std::sqrt(state.cov.yy / 2.0);
    return GridSpec{centre.real() - hx, centre.real() + hx, centre.imag() - hy,
                    centre.imag() + hy, n, n};
}

double WignerGrid::integral() const {
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum * spec.dx() * spec.dy();
}

GaussianState WignerGrid::moments() const {
    double mass = 0.0, mx = 0.0, my = 0.0;
    for (std::size_t j = 0; j < spec.ny; ++j)
        for (std::size_t i = 0; i < spec.nx; ++i) {
            const double w = at(i, j);
            mass += w;
            mx += w * spec.x(i);
            my += w * spec.y(j);
        }
    mx /= mass;
    my /= mass;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t j = 0; j < spec.ny; ++j)
        for (std::size_t i = 0; i < spec.nx; ++i) {
            const double w = at(i, j);
            const double ux = spec.x(i) - mx;
            const double uy = spec.y(j) - my;
            sxx += w * ux * ux;
            sxy += w * ux * uy;
            syy += w * uy * uy;
        }
    // x = sqrt(2) alpha_x
    GaussianState out;
    out.mean = {std::numbers::sqrt2 * mx, std::numbers::sqrt2 * my};
    out.cov = {2.0 * sxx / mass, 2.0 * sxy / mass, 2.0 * syy / mass};
    return out;
}

double WignerGrid::min_value() const { return *std::min_element(values.begin(), values.end()); }

namespace {

struct GaussianKernel {
    double mx, my;        // mean in alpha coordinates
    double ixx, ixy, iyy; // inverse covariance in alpha coordinates
    double norm;

    explicit GaussianKernel(const GaussianState& s) {
        const double det = s.cov.det();
        if (!(det > 0.0) || !std::isfinite(det))
            throw DomainError("wigner: covariance is singular or not finite");
        // alpha covariance is cov / 2
        const double adet = det / 4.0;
        ixx = s.cov.yy / 2.0 / adet;
        iyy = s.cov.xx / 2.0 / adet;
        ixy = -s.cov.xy / 2.0 / adet;
        norm = 1.0 / (2.0 * pi * std::sqrt(adet));
        const auto a = s.alpha();
        mx = a.real();
        my = a.imag();
    }

    double operator()(double ax, double ay) const {
        const double ux = ax - mx;
        const double uy = ay - my;
        return norm * std::exp(-0.5 * (ixx * ux * ux + 2.0 * ixy * ux * uy + iyy * uy * uy));
    }
};

WignerGrid fill(const GridSpec& spec, const auto& density) {
    spec.validate();
    WignerGrid grid{spec, std::vector<double>(spec.nx * spec.ny)};
    for (std::size_t j = 0; j < spec.ny; ++j) {
        const double ay = spec.y(j);
        for (std::size_t i = 0; i < spec.nx; ++i) grid.at(i, j) = density(spec.x(i), ay);
    }
    return grid;
}

struct Drift {
    std::complex<double> factor;  // e^{-Gamma/2} e^{-i omega_0 tau}
    double width;                 // Delta_Gamma
};

Drift drift_at(const PhysicalParams& p, double tau, double tol) {
    const double gam = big_gamma(p, tau);
    return {std::exp(-0.5 * gam) * std::polar(1.0, -p.omega0() * tau), delta_big_gamma(p, tau, tol)};
}

}  // namespace

double wigner_gaussian_at(const GaussianState& state, std::complex<double> alpha) {
    return GaussianKernel(state)(alpha.real(), alpha.imag());
}

WignerGrid wigner_gaussian(const GaussianState& state, const GridSpec& spec) {
    const GaussianKernel kernel(state);
    return fill(spec, kernel);
}

double propagator(const PhysicalParams& p, double tau, std::complex<double> alpha,
                  std::complex<double> alpha0, double tol) {
    if (!(tau > 0.0)) throw DomainError("propagator: tau must be > 0 (tau = 0 is a delta function)");
    const Drift d = drift_at(p, tau, tol);
    if (!(d.width > 0.0)) throw DomainError("propagator: Delta_Gamma <= 0, transition density undefined");
    const std::complex<double> b = alpha - alpha0 * d.factor;
    return std::exp(-std::norm(b) / d.width) / (pi * d.width);
}

WignerGrid wigner_by_convolution(const GaussianState& state0, const PhysicalParams& p, double tau,
                                 const GridSpec& outer, const GridSpec& inner, double tol) {
    if (!(tau > 0.0)) throw DomainError("wigner_by_convolution: tau must be > 0");
    outer.validate();
    inner.validate();
    const GaussianKernel initial(state0);
    const Drift d = drift_at(p, tau, tol);

    if (d.width == 0.0) {
        const std::complex<double> inv = 1.0 / d.factor;
        const double jac = std::norm(inv);
        return fill(outer, [&](double ax, double ay) {
            const auto back = std::complex<double>(ax, ay) * inv;
            return jac * initial(back.real(), back.imag());
        });
    }
    if (!(d.width > 0.0)) throw DomainError("wigner_by_convolution: Delta_Gamma < 0");

    // |alpha - k R alpha0|^2 = |R^{-1} alpha - k alpha0|^2, so rotate each output point back
    // and the kernel factorises over the inner tensor grid.
    const double k = std::abs(d.factor);
    const std::complex<double> unrotate = std::conj(d.factor) / k;
    const double norm = inner.dx() * inner.dy() / (pi * d.width);

    std::vector<double> w0(inner.nx * inner.ny);
    for (std::size_t j = 0; j < inner.ny; ++j)
        for (std::size_t i = 0; i < inner.nx; ++i) w0[j * inner.nx + i] = initial(inner.x(i), inner.y(j));

    std::vector<double> ex(inner.nx), ey(inner.ny);
    return fill(outer, [&](double ax, double ay) {
        const auto beta = std::complex<double>(ax, ay) * unrotate;
        for (std::size_t i = 0; i < inner.nx; ++i) {
            const double u = beta.real() - k * inner.x(i);
            ex[i] = std::exp(-u * u / d.width);
        }
        for (std::size_t j = 0; j < inner.ny; ++j) {
            const double u = beta.imag() - k * inner.y(j);
            ey[j] = std::exp(-u * u / d.width);
        }
        double sum = 0.0;
        for (std::size_t j = 0; j < inner.ny; ++j) {
            if (ey[j] == 0.0) continue;
            const double* row = &w0[j * inner.nx];
            double acc = 0.0;
            for (std::size_t i = 0; i < inner.nx; ++i) acc += ex[i] * row[i];
            sum += ey[j] * acc;
        }
        return norm * sum;
    });
}

WignerGrid wigner_coherent_closed(std::complex<double> alpha0, const PhysicalParams& p, double tau,
                                  const GridSpec& spec, double tol) {
    const Drift d = tau == 0.0 ? Drift{1.0, 0.0} : drift_at(p, tau, tol);
    const std::complex<double> centre = alpha0 * d.factor;
    // The vacuum part of the width decays with the mean: |factor|^2 = e^{-Gamma}.
    const double width = d.width + 0.5 * std::norm(d.factor);
    return fill(spec, [&](double ax, double ay) {
        return std::exp(-std::norm(centre - std::complex<double>(ax, ay)) / width) / (pi * width);
    });
}

}  // namespace qbm
