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
#include <span>
#include <vector>

#include "nrt/materials.hpp"
#include "nrt/units.hpp"

namespace nrt {

enum class DispersionModel
{
    /// Pole of the p-polarised reflection coefficient, eps kz + kz2 = 0.
    full,
    /// Non-retarded surface condition eps(w - k cos(phi) v_d) = -1.
    quasistatic,
};

/// Bound surface plasmon with in-plane wavevector k (cos phi, sin phi).
struct DispersionPoint
{
    double omega = 0.0;
    complex k;
    double phi = 0.0;
};

/**
 * Surface plasmon wavenumber at real frequency omega propagating along
 * azimuth phi. Returns nullopt when no bound root with Re k > 0 exists;
 * throws RootFindError when a root was bracketed but did not converge.
 */
std::optional<DispersionPoint> solve_spp(const DrudeMaterial& m, double omega, double phi,
                                         DispersionModel model = DispersionModel::full);

/// Closed interval [lo, hi]; empty when lo > hi.
struct FrequencyWindow
{
    double lo = 1.0;
    double hi = 0.0;

    bool empty() const noexcept { return lo > hi; }
    bool contains(double omega) const noexcept { return omega >= lo && omega <= hi; }
};

struct WindowScan
{
    double omega_min = 0.05;
    double omega_max = 1.0;
    double coarse_step = 5e-3;
    double resolution = 1e-4;
};

/**
 * Frequency band in which only the co-drift surface plasmon propagates: a
 * root exists along the direction with kx v_d > 0 while none exists in the
 * opposite direction. The widest such band inside the scan range is
 * returned, with edges bisected to `scan.resolution`.
 */
FrequencyWindow nonreciprocal_window(const DrudeMaterial& m, DispersionModel model = DispersionModel::full,
                                     const WindowScan& scan = {});

struct IsoFrequencyContour
{
    double omega = 0.0;
    std::vector<double> phi;
    /// nullopt where no mode exists at that azimuth.
    std::vector<std::optional<complex>> k;
    bool closed = false;
};

/// k(phi) on the uniform grid phi_i = -pi + 2 pi i / n_samples.
IsoFrequencyContour trace_isofrequency(const DrudeMaterial& m, double omega, int n_samples,
                                       DispersionModel model = DispersionModel::full);

struct ScalingFit
{
    double exponent = 0.0;
    double prefactor = 0.0;
    std::vector<double> peak_r;
    std::vector<double> peak_value;
};

/**
 * Power-law exponent of the envelope of |gamma(R)|: local maxima of the
 * sampled magnitude are refined by a three-point parabola and fitted with
 * log |envelope| = alpha log R + c. Throws InsufficientDataError with fewer
 * than ten samples or three maxima.
 */
ScalingFit fit_envelope(std::span<const double> r, std::span<const double> gamma);

/// Least-squares fit of log y = alpha log R + c to an already smooth
/// envelope, e.g. |gamma / 2 + i g| of a single dominant mode.
ScalingFit fit_power_law(std::span<const double> r, std::span<const double> envelope);

inline double scaling_exponent(std::span<const double> r, std::span<const double> gamma)
{
    return fit_envelope(r, gamma).exponent;
}

}  // namespace nrt
