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

#include <optional>

#include <Eigen/Core>

#include "nrt/materials.hpp"
#include "nrt/quadrature.hpp"
#include "nrt/units.hpp"

namespace nrt {

/**
 * Two vertically polarised emitters above a planar conductor/vacuum
 * interface at z = 0. Heights are measured from the interface into the
 * vacuum half-space. Without a material the emitters sit in free space.
 *
 * The dipole moment (C m) and the SI plasma frequency (rad/s) are needed
 * only for absolute rates; everything else is dimensionless.
 */
struct HalfSpaceScene
{
    std::optional<DrudeMaterial> material = DrudeMaterial{};
    double z1 = 0.0;
    double z2 = 0.0;
    double omega = 0.0;
    std::optional<double> dipole_moment;
    std::optional<double> plasma_frequency_si;

    bool has_interface() const noexcept { return material.has_value(); }
};

void validate(const HalfSpaceScene& scene);

/// Scene with both emitters at `height_in_wavelengths` x lambda above the interface.
HalfSpaceScene make_scene(std::optional<DrudeMaterial> material, double omega, double height_in_wavelengths);

/// Tuning of the angular-spectrum quadrature.
struct GreensOptions
{
    double rel_tol = 1e-6;
    /// Half-width (relative to k0) of the segment isolating the branch point.
    double branch_delta = 0.05;
    /// k_max = max(20 k0, cutoff_decay / (z1 + z2)).
    double cutoff_decay = 35.0;
    std::size_t max_intervals = 6000;
};

/// zz element of the homogeneous-space dyadic Green's function for
/// (curl curl - k^2) G = I delta. At coincidence only the finite imaginary
/// part omega / (6 pi c) is returned.
complex vacuum_gzz(const Eigen::Vector3d& r1, const Eigen::Vector3d& r2, double omega);

/// p-polarised Fresnel coefficient of the (Doppler-shifted) interface, kept
/// as numerator and denominator so that mode solvers can test the pole.
struct FresnelP
{
    complex numerator;
    complex denominator;
    complex kz;   // vacuum normal wavenumber, Im >= 0
    complex kz2;  // conductor normal wavenumber, Im >= 0

    complex value() const { return numerator / denominator; }
};

FresnelP fresnel_p(const DrudeMaterial& m, double omega, complex k_rho, double cos_phi);

/// Largest in-plane wavenumber kept in the angular-spectrum integral.
double spectral_cutoff(const HalfSpaceScene& scene, const GreensOptions& opt = {});

/// Reflected part of G_zz(r1, r2) with r1 - r2 = (dx, dy, z1 - z2). The
/// phase convention is exp(i (kx dx + ky dy)), so dx is observer minus source.
quad::Result<complex> scattered_gzz_detailed(const HalfSpaceScene& scene, double dx, double dy,
                                             const GreensOptions& opt = {});

inline complex scattered_gzz(const HalfSpaceScene& scene, double dx, double dy,
                             const GreensOptions& opt = {})
{
    return scattered_gzz_detailed(scene, dx, dy, opt).value;
}

struct GreensSample
{
    complex value;
    complex vacuum;
    complex scattered;
    double error = 0.0;
    double dx = 0.0;
    double dy = 0.0;
};

/// Vacuum plus reflected G_zz; the reflected part vanishes without an interface.
GreensSample gzz_total(const HalfSpaceScene& scene, double dx, double dy, const GreensOptions& opt = {});

}  // namespace nrt
