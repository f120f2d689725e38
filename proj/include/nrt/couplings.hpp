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

#pragma once

#include <Eigen/Core>

#include "nrt/greens.hpp"
#include "nrt/units.hpp"

namespace nrt {

/**
 * Rates of an emitter chain. gamma(i, j) and g(i, j) are built from
 * G(r_i, r_j): emitter i observes the field of emitter j. Neither matrix is
 * symmetric in general. The diagonal of g is zero (the self energy is
 * absorbed into the transition frequency).
 *
 * Rates are in rad/s when the scene carries SI data, otherwise in the
 * internal unit 2 omega^2 Im G; see normalized().
 */
struct CouplingSet
{
    Eigen::MatrixXd gamma;
    Eigen::MatrixXd g;
    double gamma_in = 0.0;
    double gamma_out = 0.0;

    Eigen::Index size() const noexcept { return gamma.rows(); }
};

/// Throws ValidationError on shape mismatch, negative pump rates or a
/// non-positive spontaneous rate.
void validate(const CouplingSet& set);

/// Copy with every rate divided by gamma(0, 0).
CouplingSet normalized(const CouplingSet& set);

/// Two-emitter set assembled from explicit rates (gamma11 = gamma22).
CouplingSet two_atom_set(double gamma11, double gamma12, double gamma21, double g12, double g21,
                         double gamma_in = 0.0, double gamma_out = 0.0);

/// Rate per unit Im G_zz, 2 omega^2 mu^2 / (hbar eps0 c^2), so that gamma = factor Im G.
double rate_factor(const HalfSpaceScene& scene);

/// Spontaneous emission rate of an emitter at height z1.
double spontaneous_rate(const HalfSpaceScene& scene, const GreensOptions& opt = {});

/// Rates for emitter 1 at (dx, 0, z1) and emitter 2 at (0, 0, z2).
CouplingSet coupling_rates(const HalfSpaceScene& scene, double dx, const GreensOptions& opt = {});

/// Complex dipole-dipole interaction for transfer from emitter `from` to
/// emitter `to`: value = i gamma(to, from) / 2 + g(to, from).
struct DipolePotential
{
    complex value;
    double g = 0.0;
    double half_gamma = 0.0;
};

DipolePotential dipole_potential(const CouplingSet& set, Eigen::Index from, Eigen::Index to);

/// Golden-rule transfer rate 2 pi |M|^2 (hbar = 1 in rate units).
double fermi_transfer_rate(const DipolePotential& pot);

/// max_{i != j} |gamma(i, j)| / gamma(i, i).
double r_limit_margin(const CouplingSet& set);

/// max_{i != j} |gamma(i, j) / 2 + i g(i, j)| / (e gamma(i, i) / 2).
double nr_limit_margin(const CouplingSet& set);

/// d gamma12 / d dx at dx = 0 by central difference with step lambda / 200,
/// in units of gamma11 / lambda.
double slope_at_source(const HalfSpaceScene& scene, const GreensOptions& opt = {});

}  // namespace nrt
