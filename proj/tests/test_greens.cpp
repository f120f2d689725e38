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


#include <doctest.h>

#include <cmath>
#include <complex>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "nrt/greens.hpp"

using nrt::complex;
using nrt::DrudeMaterial;
using nrt::pi;

namespace {

// Real and imaginary parts integrated separately with adaptive G-K 61.
template <class F>
complex gk(F f, double a, double b, double tol = 1e-11)
{
    using boost::math::quadrature::gauss_kronrod;
    const double re = gauss_kronrod<double, 61>::integrate([&](double x) { return f(x).real(); }, a, b, 25, tol);
    const double im = gauss_kronrod<double, 61>::integrate([&](double x) { return f(x).imag(); }, a, b, 25, tol);
    return {re, im};
}

complex sqrt_upper(complex z)
{
    complex s = std::sqrt(z);
    return s.imag() < 0.0 ? -s : s;
}

complex reflection(const DrudeMaterial& m, double w, complex krho, double cos_phi)
{
    const complex shifted = w - krho * cos_phi * m.drift_velocity;
    const complex eps = 1.0 - 1.0 / (shifted * shifted) / (1.0 + complex(0.0, m.damping) / shifted);
    const complex kz = sqrt_upper(w * w - krho * krho);
    const complex kz2 = sqrt_upper(eps * w * w - krho * krho);
    return (eps * kz - kz2) / (eps * kz + kz2);
}

// Sommerfeld form of the reflected G_zz of a reciprocal half-space:
// i / (4 pi k0^2) int krho^3 / kz r_p J0(krho rho) exp(i kz h) dkrho, h = z1 + z2.
// The propagating part uses krho = k0 sin t, the evanescent part krho = k0 cosh u.
complex sommerfeld_gzz(const DrudeMaterial& m, double w, double rho, double h, double u_split, double u_max)
{
    const double k0 = w;
    auto propagating = [&](double t) {
        const double kr = k0 * std::sin(t);
        return std::pow(k0 * std::sin(t), 3) * reflection(m, w, kr, 0.0) * std::cyl_bessel_j(0.0, kr * rho)
               * std::exp(complex(0.0, k0 * std::cos(t) * h));
    };
    auto evanescent = [&](double u) {
        const double kr = k0 * std::cosh(u);
        return complex(0.0, -1.0) * std::pow(kr, 3) * reflection(m, w, kr, 0.0) * std::cyl_bessel_j(0.0, kr * rho)
               * std::exp(-k0 * std::sinh(u) * h);
    };
    const complex s = gk(propagating, 0.0, pi / 2) + gk(evanescent, 0.0, u_split) + gk(evanescent, u_split, u_max);
    return complex(0.0, 1.0) / (4.0 * pi * k0 * k0) * s;
}

}  // namespace

TEST_SUITE("greens")
{
    TEST_CASE("vacuum G_zz at coincidence is i omega / (6 pi)")
    {
        for (double w : {0.3, 0.6, 0.74, 1.7}) {
            const complex g = nrt::vacuum_gzz(Eigen::Vector3d(0.1, 0.2, 0.3), Eigen::Vector3d(0.1, 0.2, 0.3), w);
            CHECK(g.real() == 0.0);
            CHECK(g.imag() == doctest::Approx(w / (6.0 * pi)).epsilon(1e-12));
        }
    }

    TEST_CASE("vacuum G_zz off coincidence matches the transverse and longitudinal closed forms")
    {
        const double w = 0.74;
        for (double r : {0.05, 0.7, 3.0, 25.0}) {
            const double kr = w * r;
            const complex phase = std::exp(complex(0.0, kr)) / (4.0 * pi * r);
            const complex transverse = phase * (1.0 + complex(0.0, 1.0) / kr - 1.0 / (kr * kr));
            const complex longitudinal = phase * (2.0 / (kr * kr) - complex(0.0, 2.0) / kr);
            const complex gx = nrt::vacuum_gzz(Eigen::Vector3d(r, 0, 1), Eigen::Vector3d(0, 0, 1), w);
            const complex gz = nrt::vacuum_gzz(Eigen::Vector3d(0, 0, 1 + r), Eigen::Vector3d(0, 0, 1), w);
            CHECK(std::abs(gx - transverse) < 1e-12 * std::abs(transverse));
            CHECK(std::abs(gz - longitudinal) < 1e-12 * std::abs(longitudinal));
        }
    }

    TEST_CASE("reflected G_zz of the unbiased interface matches the Sommerfeld integral")
    {
        const DrudeMaterial m{1.0, 0.05, 0.0};
        const double w = 0.6;
        const auto scene = nrt::make_scene(m, w, 1.0 / 40.0);
        const double h = scene.z1 + scene.z2;
        const double k_spp = std::real(w * std::sqrt(nrt::permittivity(m, w) / (nrt::permittivity(m, w) + 1.0)));
        const double u_split = std::acosh(k_spp / w);
        const double u_max = std::acosh(60.0 / h / w);
        for (double rho_l : {0.0, 0.1, 0.5, 1.3}) {
            const double rho = rho_l * nrt::wavelength(w);
            const complex ref = sommerfeld_gzz(m, w, rho, h, u_split, u_max);
            const complex got = nrt::scattered_gzz(scene, rho, 0.0);
            CAPTURE(rho_l);
            CHECK(std::abs(got - ref) < 1e-5 * std::abs(ref));
        }
    }

    TEST_CASE("reflected G_zz of the biased interface matches a direct polar double integral")
    {
        const DrudeMaterial m{1.0, 0.05, -0.008};
        const double w = 0.74, k0 = w;
        const auto scene = nrt::make_scene(m, w, 1.0 / 40.0);
        const double h = scene.z1 + scene.z2;
        const double u_max = std::acosh(80.0 / k0);
        for (double dx_l : {-0.25, 0.25}) {
            const double dx = dx_l * nrt::wavelength(w);
            auto inner = [&](double phi) {
                const double c = std::cos(phi);
                auto prop = [&](double t) {
                    const double kr = k0 * std::sin(t);
                    return std::pow(kr, 3) * reflection(m, w, kr, c)
                           * std::exp(complex(0.0, kr * c * dx + k0 * std::cos(t) * h));
                };
                auto evan = [&](double u) {
                    const double kr = k0 * std::cosh(u);
                    return complex(0.0, -1.0) * std::pow(kr, 3) * reflection(m, w, kr, c)
                           * std::exp(complex(-k0 * std::sinh(u) * h, kr * c * dx));
                };
                return gk(prop, 0.0, pi / 2, 1e-10) + gk(evan, 0.0, 2.0, 1e-10) + gk(evan, 2.0, u_max, 1e-10);
            };
            const complex s = gk(inner, 0.0, 2.0 * pi, 1e-9);
            const complex ref = complex(0.0, 1.0) / (8.0 * pi * pi * k0 * k0) * s;
            const complex got = nrt::scattered_gzz(scene, dx, 0.0);
            CAPTURE(dx_l);
            CHECK(std::abs(got - ref) < 1e-5 * std::abs(ref));
        }
    }

    TEST_CASE("unbiased reflection is even in dx; drift reversal mirrors it")
    {
        const DrudeMaterial b{1.0, 1e-3, -0.008};
        const auto s = nrt::make_scene(b, 0.74, 1.0 / 40.0);
        const auto r = nrt::make_scene(b.reversed(), 0.74, 1.0 / 40.0);
        const auto u = nrt::make_scene(DrudeMaterial{1.0, 1e-3, 0.0}, 0.6, 1.0 / 40.0);
        const double dx = 0.4 * nrt::wavelength(0.74);
        const complex gp = nrt::scattered_gzz(s, dx, 0.0), gm = nrt::scattered_gzz(s, -dx, 0.0);
        CHECK(std::abs(gp - gm) > 0.1 * std::abs(gm));
        CHECK(std::abs(nrt::scattered_gzz(r, dx, 0.0) - gm) < 1e-6 * std::abs(gm));
        const double du = 0.4 * nrt::wavelength(0.6);
        const complex up = nrt::scattered_gzz(u, du, 0.0), um = nrt::scattered_gzz(u, -du, 0.0);
        CHECK(std::abs(up - um) < 1e-7 * std::abs(up));
        // Azimuthal symmetry of the unbiased interface.
        CHECK(std::abs(nrt::scattered_gzz(u, 0.0, du) - up) < 1e-7 * std::abs(up));
    }

    TEST_CASE("free space has no reflected part and invalid scenes throw")
    {
        auto vac = nrt::make_scene(std::nullopt, 0.74, 1.0 / 40.0);
        const auto g = nrt::gzz_total(vac, 1.0, 0.0);
        CHECK(g.scattered == complex(0.0, 0.0));
        CHECK(g.value == g.vacuum);
        auto bad = nrt::make_scene(DrudeMaterial{}, 0.74, 1.0 / 40.0);
        bad.z1 = -0.1;
        CHECK_THROWS_AS(nrt::scattered_gzz(bad, 0.0, 0.0), nrt::DomainError);
        auto still = nrt::make_scene(DrudeMaterial{}, 0.74, 1.0 / 40.0);
        still.omega = 0.0;
        CHECK_THROWS_AS(nrt::scattered_gzz(still, 0.0, 0.0), nrt::DomainError);
    }

    TEST_CASE("spectral cutoff follows the emitter height")
    {
        auto s = nrt::make_scene(DrudeMaterial{}, 0.74, 1.0 / 40.0);
        CHECK(nrt::spectral_cutoff(s) == doctest::Approx(std::max(20.0 * 0.74, 35.0 / (s.z1 + s.z2))));
        s.z1 = s.z2 = 10.0;
        CHECK(nrt::spectral_cutoff(s) == doctest::Approx(20.0 * 0.74));
    }
}
