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

#include <complex>
#include <numbers>

// Internal unit system: c = 1 and frequencies in units of the plasma
// frequency omega_p. Wavenumbers are then in omega_p / c and lengths in
// c / omega_p. Drift velocities are fractions of c.

namespace nrt {

using complex = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr complex I{0.0, 1.0};

namespace si {
inline constexpr double c = 299792458.0;            // m/s
inline constexpr double epsilon0 = 8.8541878128e-12; // F/m
inline constexpr double hbar = 1.054571817e-34;      // J s
}  // namespace si

/// Free-space wavelength 2 pi c / omega in internal length units.
inline double wavelength(double omega) { return 2.0 * pi / omega; }

/// Free-space wavenumber omega / c.
inline double free_space_wavenumber(double omega) { return omega; }

}  // namespace nrt
