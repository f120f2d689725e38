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

// Element-wise transcription of the two-emitter master equation, kept apart
// from the operator form in dynamics.cpp so that the two can be compared.

#include "nrt/dynamics.hpp"
#include "nrt/errors.hpp"

namespace nrt {

Eigen::Matrix4cd ode_rhs_two_atom(const CouplingSet& set, const Eigen::Matrix4cd& rho)
{
    validate(set);
    if (set.size() != 2)
        throw DomainError("two-emitter right-hand side needs a two-emitter coupling set");
    if (set.gamma(0, 0) != set.gamma(1, 1))
        throw DomainError("two-emitter right-hand side assumes identical emitters");

    const double G = set.gamma(0, 0);
    const double Gin = set.gamma_in;
    const double Gout = set.gamma_out;
    const complex gam(0.5 * set.gamma(1, 0), set.g(1, 0));
    const complex nu(0.5 * set.gamma(0, 1), set.g(0, 1));
    const complex gamc = std::conj(gam);
    const complex nuc = std::conj(nu);

    // 1-based element access: |1> = gg, |2> = ee, |3> = ge, |4> = eg.
    auto r = [&rho](int a, int b) { return rho(a - 1, b - 1); };
    Eigen::Matrix4cd d;
    auto set_d = [&d](int a, int b, complex v) { d(a - 1, b - 1) = v; };

    set_d(1, 1, G * r(4, 4) + (G + Gout) * r(3, 3) + gam * r(3, 4) + gamc * r(4, 3) - Gin * r(1, 1)
                    + nu * r(4, 3) + nuc * r(3, 4));
    set_d(1, 2, -0.5 * r(1, 2) * (2.0 * G + Gout + Gin));
    set_d(1, 3, G * r(4, 2) - 0.5 * r(1, 3) * (G + Gout) + gam * (r(3, 2) - r(1, 4)) - Gin * r(1, 3)
                    + nuc * r(3, 2));
    set_d(1, 4, -0.5 * G * r(1, 4) + r(3, 2) * (G + Gout) + gamc * r(4, 2) - 0.5 * Gin * r(1, 4)
                    + nu * (r(4, 2) - r(1, 3)));

    set_d(2, 1, -0.5 * r(2, 1) * (2.0 * G + Gout + Gin));
    set_d(2, 2, -r(2, 2) * (2.0 * G + Gout) + Gin * r(3, 3));
    // Adjoint partner of the (3, 2) line.
    set_d(2, 3, -r(2, 3) * (1.5 * G + Gout + 0.5 * Gin) - gam * r(2, 4));
    set_d(2, 4, -r(2, 4) * (1.5 * G + 0.5 * Gout) + Gin * r(3, 1) - nu * r(2, 3));

    set_d(3, 1, G * r(2, 4) - 0.5 * r(3, 1) * (G + Gout) + gamc * (r(2, 3) - r(4, 1)) - Gin * r(3, 1)
                    + nu * r(2, 3));
    set_d(3, 2, -r(3, 2) * (1.5 * G + Gout + 0.5 * Gin) - gamc * r(4, 2));
    set_d(3, 3, G * r(2, 2) - r(3, 3) * (G + Gout + Gin) - gam * r(3, 4) - gamc * r(4, 3));
    set_d(3, 4, -0.5 * r(3, 4) * (2.0 * G + Gout + Gin) + gamc * (r(2, 2) - r(4, 4)) + nu * (r(2, 2) - r(3, 3)));

    set_d(4, 1, -0.5 * G * r(4, 1) + r(2, 3) * (G + Gout) + gam * r(2, 4) - 0.5 * Gin * r(4, 1)
                    + nuc * (r(2, 4) - r(3, 1)));
    set_d(4, 2, -0.5 * r(4, 2) * (3.0 * G + Gout) + Gin * r(1, 3) - nuc * r(3, 2));
    set_d(4, 3, -0.5 * r(4, 3) * (2.0 * G + Gout + Gin) + gam * (r(2, 2) - r(4, 4)) + nuc * (r(2, 2) - r(3, 3)));
    set_d(4, 4, -G * r(4, 4) + r(2, 2) * (G + Gout) + Gin * r(1, 1) - nu * r(4, 3) - nuc * r(3, 4));
    return d;
}

}  // namespace nrt
