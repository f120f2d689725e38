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

#include <cmath>
#include <complex>
#include <string>

#include "nrt/errors.hpp"

namespace nrt {

/**
 * Lossy free-electron (Drude) conductor, optionally carrying a DC drift
 * current along +x. Frequencies are in units of the plasma frequency, so the
 * default plasma frequency is 1; the drift velocity is a signed fraction of c.
 */
struct DrudeMaterial
{
    double plasma_frequency = 1.0;
    double damping = 1e-3;
    double drift_velocity = 0.0;

    bool reciprocal() const noexcept { return drift_velocity == 0.0; }

    /// Same material with the drift current reversed.
    DrudeMaterial reversed() const noexcept { return {plasma_frequency, damping, -drift_velocity}; }
};

/// Throws DomainError unless wp > 0, damping >= 0 and |v_d| < 1.
inline void validate(const DrudeMaterial& m)
{
    if (!(m.plasma_frequency > 0.0))
        throw DomainError("plasma frequency must be positive");
    if (!(m.damping >= 0.0))
        throw DomainError("damping must be non-negative");
    if (!(std::abs(m.drift_velocity) < 1.0))
        throw DomainError("drift velocity must satisfy |v_d| < c");
}

namespace detail {
template <class Scalar>
struct real_of
{
    using type = Scalar;
};
template <class Real>
struct real_of<std::complex<Real>>
{
    using type = Real;
};
}  // namespace detail

template <class Scalar>
using real_of_t = typename detail::real_of<Scalar>::type;

/// eps(w) = 1 - (wp/w)^2 / (1 + i gamma/w), for real or complex w != 0.
template <class Scalar>
std::complex<real_of_t<Scalar>> permittivity(const DrudeMaterial& m, Scalar omega)
{
    using Real = real_of_t<Scalar>;
    using C = std::complex<Real>;
    const C w(omega);
    if (w == C(0))
        throw DomainError("Drude permittivity has a pole at zero frequency");
    const Real wp = static_cast<Real>(m.plasma_frequency);
    const C ratio = wp / w;
    return C(1) - ratio * ratio / (C(1) + C(0, static_cast<Real>(m.damping)) / w);
}

/// Permittivity seen by a wave with in-plane wavenumber kx along the drift
/// axis: eps(w - kx v_d), with c = 1.
template <class Real>
std::complex<Real> doppler_permittivity(const DrudeMaterial& m, Real omega, Real kx)
{
    if (m.drift_velocity == 0.0)
        return permittivity(m, omega);
    const Real shifted = omega - kx * static_cast<Real>(m.drift_velocity);
    if (shifted == Real(0))
        throw DomainError("Doppler-shifted frequency hits the Drude pole");
    return permittivity(m, shifted);
}

}  // namespace nrt
