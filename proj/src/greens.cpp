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

#include "nrt/greens.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace nrt {

namespace {

/// Square root on the branch with non-negative imaginary part.
complex sqrt_upper(complex z)
{
    complex s = std::sqrt(z);
    return s.imag() < 0.0 ? -s : s;
}

}  // namespace

void validate(const HalfSpaceScene& scene)
{
    if (!(scene.omega > 0.0))
        throw DomainError("transition frequency must be positive");
    if (scene.material) {
        validate(*scene.material);
        if (!(scene.z1 > 0.0) || !(scene.z2 > 0.0))
            throw DomainError("emitters must sit above the interface (z > 0)");
    }
}

HalfSpaceScene make_scene(std::optional<DrudeMaterial> material, double omega, double height_in_wavelengths)
{
    HalfSpaceScene scene;
    scene.material = material;
    scene.omega = omega;
    scene.z1 = scene.z2 = height_in_wavelengths * wavelength(omega);
    return scene;
}

complex vacuum_gzz(const Eigen::Vector3d& r1, const Eigen::Vector3d& r2, double omega)
{
    const double k = free_space_wavenumber(omega);
    const Eigen::Vector3d sep = r1 - r2;
    const double r = sep.norm();
    if (r == 0.0)
        return {0.0, k / (6.0 * pi)};

    const double kr = k * r;
    const double cz = sep.z() / r;
    const complex transverse = 1.0 + (I * kr - 1.0) / (kr * kr);
    const complex longitudinal = (3.0 - 3.0 * I * kr - kr * kr) / (kr * kr);
    return (transverse + longitudinal * cz * cz) * std::exp(I * kr) / (4.0 * pi * r);
}

FresnelP fresnel_p(const DrudeMaterial& m, double omega, complex k_rho, double cos_phi)
{
    const double k0 = free_space_wavenumber(omega);
    const complex shifted = omega - k_rho * cos_phi * m.drift_velocity;
    if (shifted == 0.0)
        throw DomainError("Doppler-shifted frequency hits the Drude pole");
    const complex eps = permittivity(m, shifted);
    const complex k2 = k_rho * k_rho;
    const complex kz = sqrt_upper(k0 * k0 - k2);
    const complex kz2 = sqrt_upper(eps * k0 * k0 - k2);
    return {eps * kz - kz2, eps * kz + kz2, kz, kz2};
}

double spectral_cutoff(const HalfSpaceScene& scene, const GreensOptions& opt)
{
    const double k0 = free_space_wavenumber(scene.omega);
    return std::max(20.0 * k0, opt.cutoff_decay / (scene.z1 + scene.z2));
}

quad::Result<complex> scattered_gzz_detailed(const HalfSpaceScene& scene, double dx, double dy,
                                             const GreensOptions& opt)
{
    validate(scene);
    if (!scene.material)
        return {};
    const DrudeMaterial& m = *scene.material;
    if (!(m.damping > 0.0))
        throw DomainError("angular-spectrum quadrature needs damping > 0 to keep poles off the real axis");

    const double omega = scene.omega;
    const double k0 = free_space_wavenumber(omega);
    const double height = scene.z1 + scene.z2;
    const double k_max = spectral_cutoff(scene, opt);
    if (std::abs(m.drift_velocity) * k_max >= omega)
        throw DomainError("Doppler shift exceeds the working frequency inside the spectral cutoff");

    // k_rho = k0 sin t on the propagating side (dk_rho / kz = dt) and
    // k_rho = k0 cosh u on the evanescent side (dk_rho / kz = -i du); both
    // substitutions remove the inverse square-root branch point at k0.
    const double d = opt.branch_delta;
    const std::array<double, 3> t_breaks{0.0, std::asin(1.0 - d), 0.5 * pi};
    const std::array<double, 3> u_breaks{0.0, std::acosh(1.0 + d), std::acosh(k_max / k0)};

    auto spectral_term = [&](double k_rho, complex kz, double cos_phi, double sin_phi, double ox, double oy) {
        const complex rp = fresnel_p(m, omega, k_rho, cos_phi).value();
        const double k3 = k_rho * k_rho * k_rho / (k0 * k0);
        const double lateral = oy == 0.0 ? 1.0 : std::cos(k_rho * sin_phi * oy);
        return k3 * rp * lateral * std::exp(I * (k_rho * cos_phi * ox + kz * height));
    };

    auto radial_integral = [&](double phi, const quad::Options& inner, double ox, double oy) {
        const double c = std::cos(phi), s = std::sin(phi);
        auto propagating = [&](double t) {
            return spectral_term(k0 * std::sin(t), complex(k0 * std::cos(t), 0.0), c, s, ox, oy);
        };
        auto evanescent = [&](double u) {
            return -I * spectral_term(k0 * std::cosh(u), complex(0.0, k0 * std::sinh(u)), c, s, ox, oy);
        };
        auto a = quad::integrate<complex>(propagating, std::span<const double>(t_breaks), inner);
        auto b = quad::integrate<complex>(evanescent, std::span<const double>(u_breaks), inner);
        return quad::Result<complex>{a.value + b.value, a.error + b.error, a.evaluations + b.evaluations};
    };

    // Magnitude reference from the drift-free azimuth at coincidence; it sets
    // the absolute floors so that near-zero azimuthal slices terminate.
    quad::Options coarse;
    coarse.rel_tol = 1e-3;
    coarse.max_intervals = opt.max_intervals;
    coarse.allow_unconverged = true;
    const double reference = std::abs(radial_integral(0.5 * pi, coarse, 0.0, 0.0).value);

    quad::Options inner;
    inner.rel_tol = 0.1 * opt.rel_tol;
    inner.abs_tol = 1e-3 * opt.rel_tol * reference;
    inner.max_intervals = opt.max_intervals;

    double worst_inner_error = 0.0;
    std::size_t evaluations = 0;
    auto azimuthal = [&](double phi) {
        auto r = radial_integral(phi, inner, dx, dy);
        worst_inner_error = std::max(worst_inner_error, r.error);
        evaluations += r.evaluations;
        return r.value;
    };

    quad::PeriodicOptions outer;
    outer.rel_tol = opt.rel_tol;
    outer.abs_tol = 1e-2 * opt.rel_tol * 2.0 * pi * reference;
    auto total = quad::integrate_periodic_even<complex>(azimuthal, outer);

    const complex prefactor = I / (8.0 * pi * pi);
    const double error = (total.error + 2.0 * pi * worst_inner_error) / (8.0 * pi * pi);
    return {prefactor * total.value, error, evaluations};
}

GreensSample gzz_total(const HalfSpaceScene& scene, double dx, double dy, const GreensOptions& opt)
{
    validate(scene);
    const Eigen::Vector3d r1(dx, dy, scene.z1);
    const Eigen::Vector3d r2(0.0, 0.0, scene.z2);
    GreensSample s;
    s.dx = dx;
    s.dy = dy;
    s.vacuum = vacuum_gzz(r1, r2, scene.omega);
    if (scene.material) {
        auto r = scattered_gzz_detailed(scene, dx, dy, opt);
        s.scattered = r.value;
        s.error = r.error;
    }
    s.value = s.vacuum + s.scattered;
    return s;
}

}  // namespace nrt
