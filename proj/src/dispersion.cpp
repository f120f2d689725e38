// Copyright 2026 The nrtransport Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nrt/dispersion.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

namespace nrt {

namespace {

complex sqrt_upper(complex z)
{
    complex s = std::sqrt(z);
    return s.imag() < 0.0 ? -s : s;
}

// Projection of the drift velocity on the propagation direction; the
// material sees the frequency omega - k * doppler.
double doppler_factor(const DrudeMaterial& m, double phi)
{
    if (m.drift_velocity == 0.0)
        return 0.0;
    return std::cos(phi) * m.drift_velocity;
}

// Lossless surface condition on the real axis beyond the light line,
// divided by i. Positive where no bound root can sit.
double lossless_condition(const DrudeMaterial& m, double omega, double k, double doppler)
{
    DrudeMaterial lossless = m;
    lossless.damping = 0.0;
    const double eps = permittivity(lossless, omega - k * doppler).real();
    if (eps >= 0.0)
        return 1.0;
    const double k0 = free_space_wavenumber(omega);
    return eps * std::sqrt(k * k - k0 * k0) + std::sqrt(k * k - eps * k0 * k0);
}

std::optional<double> bracket_lossless_root(const DrudeMaterial& m, double omega, double doppler)
{
    const double k0 = free_space_wavenumber(omega);
    double k_hi = 1e4 * k0;
    if (doppler > 0.0)
        k_hi = std::min(k_hi, 0.999 * omega / doppler);
    if (!(k_hi > k0))
        return std::nullopt;

    // Log grid in the distance from the light line; low-frequency plasmons
    // sit just beyond k0.
    constexpr int n = 800;
    const double u_lo = std::log(1e-12), u_hi = std::log(k_hi / k0 - 1.0);
    auto k_at = [&](int i) { return k0 * (1.0 + std::exp(u_lo + (u_hi - u_lo) * i / (n - 1))); };

    double a = k_at(0);
    double fa = lossless_condition(m, omega, a, doppler);
    for (int i = 1; i < n; ++i) {
        double b = k_at(i);
        double fb = lossless_condition(m, omega, b, doppler);
        if (fa > 0.0 && fb <= 0.0) {
            if (fb == 0.0)
                return b;
            // Illinois variant of the bracketed secant.
            int side = 0;
            for (int it = 0; it < 200; ++it) {
                const double c = (a * fb - b * fa) / (fb - fa);
                const double fc = lossless_condition(m, omega, c, doppler);
                if (std::abs(b - a) <= 1e-15 * std::abs(c) || fc == 0.0)
                    return c;
                if ((fc > 0.0) == (fa > 0.0)) {
                    a = c;
                    fa = fc;
                    if (side == -1)
                        fb *= 0.5;
                    side = -1;
                } else {
                    b = c;
                    fb = fc;
                    if (side == 1)
                        fa *= 0.5;
                    side = 1;
                }
            }
            throw RootFindError("bracketed secant did not converge on the lossless surface-plasmon root");
        }
        a = b;
        fa = fb;
    }
    return std::nullopt;
}

struct Condition
{
    complex value;
    complex derivative;
    complex scale;
};

Condition full_condition(const DrudeMaterial& m, double omega, complex k, double doppler)
{
    const double k0 = free_space_wavenumber(omega);
    const double wp2 = m.plasma_frequency * m.plasma_frequency;
    const complex w = omega - k * doppler;
    const complex eps = permittivity(m, w);
    const complex denom = w * w + I * m.damping * w;
    const complex deps_dk = -doppler * wp2 * (2.0 * w + I * m.damping) / (denom * denom);
    const complex kz = sqrt_upper(k0 * k0 - k * k);
    const complex kz2 = sqrt_upper(eps * k0 * k0 - k * k);
    const complex dkz = -k / kz;
    const complex dkz2 = (deps_dk * k0 * k0 - 2.0 * k) / (2.0 * kz2);
    return {eps * kz + kz2, deps_dk * kz + eps * dkz + dkz2, std::abs(eps * kz) + std::abs(kz2)};
}

std::optional<DispersionPoint> solve_full(const DrudeMaterial& m, double omega, double phi)
{
    const double doppler = doppler_factor(m, phi);
    const auto seed = bracket_lossless_root(m, omega, doppler);
    if (!seed)
        return std::nullopt;

    complex k = *seed;
    if (m.damping > 0.0) {
        bool converged = false;
        for (int it = 0; it < 100; ++it) {
            const Condition c = full_condition(m, omega, k, doppler);
            const complex step = c.value / c.derivative;
            k -= step;
            if (std::abs(step) <= 1e-14 * std::abs(k)) {
                converged = true;
                break;
            }
        }
        if (!converged)
            throw RootFindError("Newton polish of the surface-plasmon root did not converge");
        const Condition c = full_condition(m, omega, k, doppler);
        if (!(std::abs(c.value) < 1e-8 * c.scale.real()))
            throw RootFindError("Newton polish left a residual above tolerance");
    }
    if (!(k.real() > 0.0))
        return std::nullopt;
    return DispersionPoint{omega, k, phi};
}

std::optional<DispersionPoint> solve_quasistatic(const DrudeMaterial& m, double omega, double phi)
{
    const double doppler = doppler_factor(m, phi);
    if (doppler == 0.0)
        return std::nullopt;
    // eps(w) = -1 for the Drude form: w^2 + i gamma w - wp^2 / 2 = 0.
    const double wp = m.plasma_frequency, g = m.damping;
    const complex w = 0.5 * (-I * g + std::sqrt(complex(2.0 * wp * wp - g * g, 0.0)));
    const complex k = (omega - w) / doppler;
    if (!(k.real() > 0.0))
        return std::nullopt;
    return DispersionPoint{omega, k, phi};
}

}  // namespace

std::optional<DispersionPoint> solve_spp(const DrudeMaterial& m, double omega, double phi, DispersionModel model)
{
    validate(m);
    if (!(omega > 0.0))
        throw DomainError("frequency must be positive");
    return model == DispersionModel::full ? solve_full(m, omega, phi) : solve_quasistatic(m, omega, phi);
}

FrequencyWindow nonreciprocal_window(const DrudeMaterial& m, DispersionModel model, const WindowScan& scan)
{
    validate(m);
    if (m.drift_velocity == 0.0)
        return {};
    const double co = m.drift_velocity < 0.0 ? pi : 0.0;
    const double counter = m.drift_velocity < 0.0 ? 0.0 : pi;
    auto inside = [&](double w) {
        return solve_spp(m, w, co, model).has_value() && !solve_spp(m, w, counter, model).has_value();
    };

    const int n = static_cast<int>(std::floor((scan.omega_max - scan.omega_min) / scan.coarse_step)) + 1;
    auto grid = [&](int i) { return std::min(scan.omega_max, scan.omega_min + i * scan.coarse_step); };
    std::vector<char> flag(n);
    for (int i = 0; i < n; ++i)
        flag[i] = inside(grid(i));

    int best_lo = -1, best_hi = -2;
    for (int i = 0; i < n;) {
        if (!flag[i]) {
            ++i;
            continue;
        }
        int j = i;
        while (j + 1 < n && flag[j + 1])
            ++j;
        if (j - i > best_hi - best_lo) {
            best_lo = i;
            best_hi = j;
        }
        i = j + 1;
    }
    if (best_lo < 0)
        return {};

    auto bisect = [&](double in, double out) {
        while (std::abs(out - in) > scan.resolution) {
            const double mid = 0.5 * (in + out);
            (inside(mid) ? in : out) = mid;
        }
        return in;
    };
    FrequencyWindow w;
    w.lo = best_lo == 0 ? grid(0) : bisect(grid(best_lo), grid(best_lo - 1));
    w.hi = best_hi == n - 1 ? grid(n - 1) : bisect(grid(best_hi), grid(best_hi + 1));
    return w;
}

IsoFrequencyContour trace_isofrequency(const DrudeMaterial& m, double omega, int n_samples, DispersionModel model)
{
    if (n_samples < 8)
        throw DomainError("iso-frequency contour needs at least 8 azimuths");
    IsoFrequencyContour c;
    c.omega = omega;
    c.closed = true;
    c.phi.reserve(n_samples);
    c.k.reserve(n_samples);
    for (int i = 0; i < n_samples; ++i) {
        const double phi = -pi + 2.0 * pi * i / n_samples;
        const auto p = solve_spp(m, omega, phi, model);
        c.phi.push_back(phi);
        c.k.push_back(p ? std::optional<complex>(p->k) : std::nullopt);
        c.closed = c.closed && p.has_value();
    }
    return c;
}

namespace {

void log_log_fit(ScalingFit& fit)
{
    const Eigen::Index n = static_cast<Eigen::Index>(fit.peak_r.size());
    Eigen::MatrixXd a(n, 2);
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        a(i, 0) = std::log(fit.peak_r[i]);
        a(i, 1) = 1.0;
        y(i) = std::log(fit.peak_value[i]);
    }
    const Eigen::Vector2d coef = a.colPivHouseholderQr().solve(y);
    fit.exponent = coef(0);
    fit.prefactor = std::exp(coef(1));
}

void check_series(std::span<const double> r, std::span<const double> y)
{
    if (r.size() != y.size())
        throw DomainError("distance and coupling series differ in length");
    for (std::size_t i = 1; i < r.size(); ++i)
        if (!(r[i] > r[i - 1]) || !(r[i - 1] > 0.0))
            throw DomainError("distances must be positive and strictly increasing");
}

}  // namespace

ScalingFit fit_envelope(std::span<const double> r, std::span<const double> gamma)
{
    check_series(r, gamma);
    if (r.size() < 10)
        throw InsufficientDataError("envelope fit needs at least 10 samples");

    ScalingFit fit;
    for (std::size_t i = 1; i + 1 < r.size(); ++i) {
        const double a = std::abs(gamma[i - 1]), b = std::abs(gamma[i]), c = std::abs(gamma[i + 1]);
        if (!(b > a && b >= c))
            continue;
        // Vertex of the parabola through the three samples.
        const double x0 = r[i - 1], x1 = r[i], x2 = r[i + 1];
        const double d01 = (b - a) / (x1 - x0), d12 = (c - b) / (x2 - x1);
        const double curv = (d12 - d01) / (x2 - x0);
        double xv = x1, yv = b;
        if (curv < 0.0) {
            const double slope1 = d01 + curv * (x1 - x0);
            xv = x1 - 0.5 * slope1 / curv;
            yv = b - 0.25 * slope1 * slope1 / curv;
            if (xv < x0 || xv > x2) {
                xv = x1;
                yv = b;
            }
        }
        if (yv > 0.0) {
            fit.peak_r.push_back(xv);
            fit.peak_value.push_back(yv);
        }
    }
    if (fit.peak_r.size() < 3)
        throw InsufficientDataError("envelope fit needs at least 3 local maxima");

    log_log_fit(fit);
    return fit;
}

ScalingFit fit_power_law(std::span<const double> r, std::span<const double> envelope)
{
    check_series(r, envelope);
    if (r.size() < 3)
        throw InsufficientDataError("power-law fit needs at least 3 samples");
    ScalingFit fit;
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (!(envelope[i] > 0.0))
            throw DomainError("envelope samples must be positive");
        fit.peak_r.push_back(r[i]);
        fit.peak_value.push_back(envelope[i]);
    }
    log_log_fit(fit);
    return fit;
}

}  // namespace nrt
