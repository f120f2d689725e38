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

#include "nrt/couplings.hpp"

#include <cmath>
#include <numbers>

#include "nrt/errors.hpp"

namespace nrt {

void validate(const CouplingSet& set)
{
    const Eigen::Index n = set.gamma.rows();
    if (n < 1 || set.gamma.cols() != n || set.g.rows() != n || set.g.cols() != n)
        throw ValidationError("coupling matrices must be square and of equal size");
    if (!(set.gamma_in >= 0.0) || !(set.gamma_out >= 0.0))
        throw ValidationError("pump and extraction rates must be non-negative");
    for (Eigen::Index i = 0; i < n; ++i)
        if (!(set.gamma(i, i) > 0.0))
            throw ValidationError("spontaneous emission rates must be positive");
}

CouplingSet normalized(const CouplingSet& set)
{
    validate(set);
    const double s = set.gamma(0, 0);
    return {set.gamma / s, set.g / s, set.gamma_in / s, set.gamma_out / s};
}

CouplingSet two_atom_set(double gamma11, double gamma12, double gamma21, double g12, double g21,
                         double gamma_in, double gamma_out)
{
    CouplingSet s;
    s.gamma.resize(2, 2);
    s.gamma << gamma11, gamma12, gamma21, gamma11;
    s.g.resize(2, 2);
    s.g << 0.0, g12, g21, 0.0;
    s.gamma_in = gamma_in;
    s.gamma_out = gamma_out;
    return s;
}

double rate_factor(const HalfSpaceScene& scene)
{
    if (scene.dipole_moment.has_value() != scene.plasma_frequency_si.has_value())
        throw ValidationError("absolute rates need both the dipole moment and the SI plasma frequency");
    if (!scene.dipole_moment)
        return 2.0 * scene.omega * scene.omega;

    const double wp = *scene.plasma_frequency_si;
    const double mu = *scene.dipole_moment;
    const double w = scene.omega * wp;
    // Internal Green's functions are in units of wp / c.
    return 2.0 * w * w * mu * mu / (si::hbar * si::epsilon0 * si::c * si::c) * (wp / si::c);
}

namespace {

double self_rate(HalfSpaceScene scene, double height, const GreensOptions& opt)
{
    scene.z1 = scene.z2 = height;
    const double im = gzz_total(scene, 0.0, 0.0, opt).value.imag();
    if (!(im > 0.0))
        throw DomainError("local density of states is not positive");
    return rate_factor(scene) * im;
}

}  // namespace

double spontaneous_rate(const HalfSpaceScene& scene, const GreensOptions& opt)
{
    return self_rate(scene, scene.z1, opt);
}

CouplingSet coupling_rates(const HalfSpaceScene& scene, double dx, const GreensOptions& opt)
{
    if (!(dx >= 0.0))
        throw DomainError("spacing must be non-negative");
    validate(scene);
    const double factor = rate_factor(scene);

    complex g12, g21;
    double gamma11, gamma22;
    if (dx == 0.0 && scene.z1 == scene.z2) {
        const complex g0 = gzz_total(scene, 0.0, 0.0, opt).value;
        g12 = g21 = g0;
        gamma11 = gamma22 = factor * g0.imag();
        if (!(gamma11 > 0.0))
            throw DomainError("local density of states is not positive");
    } else {
        gamma11 = self_rate(scene, scene.z1, opt);
        gamma22 = self_rate(scene, scene.z2, opt);
        g12 = gzz_total(scene, dx, 0.0, opt).value;
        HalfSpaceScene swapped = scene;
        std::swap(swapped.z1, swapped.z2);
        g21 = gzz_total(swapped, -dx, 0.0, opt).value;
    }

    CouplingSet s;
    s.gamma.resize(2, 2);
    s.gamma << gamma11, factor * g12.imag(), factor * g21.imag(), gamma22;
    s.g.resize(2, 2);
    s.g << 0.0, 0.5 * factor * g12.real(), 0.5 * factor * g21.real(), 0.0;
    return s;
}

DipolePotential dipole_potential(const CouplingSet& set, Eigen::Index from, Eigen::Index to)
{
    const Eigen::Index n = set.size();
    if (from == to || from < 0 || to < 0 || from >= n || to >= n)
        throw DomainError("dipole potential needs two distinct emitter indices");
    DipolePotential p;
    p.half_gamma = 0.5 * set.gamma(to, from);
    p.g = set.g(to, from);
    p.value = complex(p.g, p.half_gamma);
    return p;
}

double fermi_transfer_rate(const DipolePotential& pot)
{
    return 2.0 * pi * std::norm(pot.value);
}

double r_limit_margin(const CouplingSet& set)
{
    validate(set);
    double m = 0.0;
    for (Eigen::Index i = 0; i < set.size(); ++i)
        for (Eigen::Index j = 0; j < set.size(); ++j)
            if (i != j)
                m = std::max(m, std::abs(set.gamma(i, j)) / set.gamma(i, i));
    return m;
}

double nr_limit_margin(const CouplingSet& set)
{
    validate(set);
    double m = 0.0;
    for (Eigen::Index i = 0; i < set.size(); ++i)
        for (Eigen::Index j = 0; j < set.size(); ++j)
            if (i != j) {
                const double num = std::abs(complex(0.5 * set.gamma(i, j), set.g(i, j)));
                m = std::max(m, num / (std::numbers::e * 0.5 * set.gamma(i, i)));
            }
    return m;
}

double slope_at_source(const HalfSpaceScene& scene, const GreensOptions& opt)
{
    validate(scene);
    const double lambda = wavelength(scene.omega);
    const double h = lambda / 200.0;
    const double plus = gzz_total(scene, h, 0.0, opt).value.imag();
    const double minus = gzz_total(scene, -h, 0.0, opt).value.imag();
    HalfSpaceScene s = scene;
    s.z2 = s.z1;
    const double self = gzz_total(s, 0.0, 0.0, opt).value.imag();
    return (plus - minus) / (2.0 * h) * lambda / self;
}

}  // namespace nrt
