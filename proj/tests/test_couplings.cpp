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
#include <numbers>

#include "nrt/couplings.hpp"
#include "nrt/errors.hpp"

using nrt::DrudeMaterial;
using nrt::pi;

TEST_SUITE("couplings")
{
    TEST_CASE("free-space spontaneous rate in SI units")
    {
        // Dipole 1e-29 C m; plasma frequency of a doped semiconductor, 2e13 rad/s.
        auto scene = nrt::make_scene(std::nullopt, 0.74, 1.0 / 40.0);
        scene.dipole_moment = 1e-29;
        scene.plasma_frequency_si = 2e13;
        const double w = 0.74 * 2e13;
        const double ref = std::pow(w, 3) * 1e-58 / (3.0 * pi * nrt::si::epsilon0 * nrt::si::hbar * std::pow(nrt::si::c, 3));
        CHECK(nrt::spontaneous_rate(scene) == doctest::Approx(ref).epsilon(1e-12));

        scene.plasma_frequency_si.reset();
        CHECK_THROWS_AS(nrt::rate_factor(scene), nrt::ValidationError);
        scene.dipole_moment.reset();
        CHECK(nrt::rate_factor(scene) == doctest::Approx(2.0 * 0.74 * 0.74));
    }

    TEST_CASE("free-space pair rates match the transverse dipole closed form")
    {
        const double w = 0.74;
        const auto scene = nrt::make_scene(std::nullopt, w, 1.0 / 40.0);
        for (double r_l : {0.1, 0.5, 0.9, 2.3}) {
            const double x = 2.0 * pi * r_l;
            const double gam = 1.5 / x * (std::sin(x) + std::cos(x) / x - std::sin(x) / (x * x));
            const double coh = 0.75 / x * (std::cos(x) - std::sin(x) / x - std::cos(x) / (x * x));
            const auto s = nrt::normalized(nrt::coupling_rates(scene, r_l * nrt::wavelength(w)));
            CHECK(s.gamma(0, 1) == doctest::Approx(gam).epsilon(1e-12));
            CHECK(s.gamma(1, 0) == doctest::Approx(gam).epsilon(1e-12));
            CHECK(s.g(0, 1) == doctest::Approx(coh).epsilon(1e-12));
            CHECK(s.g(1, 0) == doctest::Approx(coh).epsilon(1e-12));
            CHECK(s.g(0, 0) == 0.0);
        }
    }

    TEST_CASE("coincident emitters share the local density of states")
    {
        const auto scene = nrt::make_scene(DrudeMaterial{1.0, 1e-3, -0.008}, 0.74, 1.0 / 40.0);
        const auto s = nrt::coupling_rates(scene, 0.0);
        CHECK(s.gamma(0, 1) == s.gamma(0, 0));
        CHECK(nrt::r_limit_margin(s) == 1.0);
        CHECK(s.gamma(0, 0) == doctest::Approx(nrt::spontaneous_rate(scene)).epsilon(1e-12));
        CHECK_THROWS_AS(nrt::coupling_rates(scene, -1.0), nrt::DomainError);
    }

    TEST_CASE("the biased interface breaks the R-limit but respects the NR-limit")
    {
        const auto scene = nrt::make_scene(DrudeMaterial{1.0, 1e-3, -0.008}, 0.74, 1.0 / 40.0);
        const auto s = nrt::normalized(nrt::coupling_rates(scene, 0.5 * nrt::wavelength(0.74)));
        CHECK(s.gamma(1, 0) > 1.0);
        CHECK(std::abs(s.gamma(0, 1)) < 1e-2);
        CHECK(nrt::r_limit_margin(s) > 1.0);
        CHECK(nrt::nr_limit_margin(s) < 1.0);
    }

    TEST_CASE("slope of the cross rate at the source")
    {
        const auto u = nrt::make_scene(DrudeMaterial{1.0, 1e-3, 0.0}, 0.6, 1.0 / 40.0);
        const auto b = nrt::make_scene(DrudeMaterial{1.0, 1e-3, -0.008}, 0.74, 1.0 / 40.0);
        CHECK(std::abs(nrt::slope_at_source(u)) < 1e-6);
        const double sb = nrt::slope_at_source(b);
        CHECK(std::abs(sb) > 0.1);
        CHECK(nrt::slope_at_source(nrt::make_scene(DrudeMaterial{1.0, 1e-3, 0.008}, 0.74, 1.0 / 40.0))
              == doctest::Approx(-sb).epsilon(1e-6));
    }

    TEST_CASE("margins, potentials and golden-rule rate on explicit sets")
    {
        const auto s = nrt::two_atom_set(2.0, 0.5, 3.0, -0.4, 1.0);
        CHECK(nrt::r_limit_margin(s) == doctest::Approx(1.5));
        CHECK(nrt::nr_limit_margin(s) == doctest::Approx(std::hypot(1.5, 1.0) / std::numbers::e));
        const auto p = nrt::dipole_potential(s, 0, 1);
        CHECK(p.half_gamma == 1.5);
        CHECK(p.g == 1.0);
        CHECK(p.value == nrt::complex(1.0, 1.5));
        CHECK(nrt::fermi_transfer_rate(p) == doctest::Approx(2.0 * pi * 3.25));
        CHECK(nrt::dipole_potential(s, 1, 0).value == nrt::complex(-0.4, 0.25));
        CHECK_THROWS_AS(nrt::dipole_potential(s, 1, 1), nrt::DomainError);
        CHECK_THROWS_AS(nrt::dipole_potential(s, 0, 2), nrt::DomainError);

        const auto n = nrt::normalized(nrt::two_atom_set(2.0, 0.5, 3.0, -0.4, 1.0, 0.4, 0.2));
        CHECK(n.gamma(0, 0) == 1.0);
        CHECK(n.gamma(1, 0) == 1.5);
        CHECK(n.g(0, 1) == -0.2);
        CHECK(n.gamma_in == 0.2);
        CHECK(n.gamma_out == 0.1);
    }

    TEST_CASE("invalid sets")
    {
        CHECK_THROWS_AS(nrt::validate(nrt::two_atom_set(0.0, 0.0, 0.0, 0.0, 0.0)), nrt::ValidationError);
        CHECK_THROWS_AS(nrt::validate(nrt::two_atom_set(1.0, 0.0, 0.0, 0.0, 0.0, -0.1)), nrt::ValidationError);
        nrt::CouplingSet ragged = nrt::two_atom_set(1.0, 0.0, 0.0, 0.0, 0.0);
        ragged.g.resize(3, 3);
        CHECK_THROWS_AS(nrt::validate(ragged), nrt::ValidationError);
    }
}
