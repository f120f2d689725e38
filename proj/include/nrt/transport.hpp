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

#include "nrt/couplings.hpp"
#include "nrt/dynamics.hpp"

namespace nrt {

/// Energy flux injected by the pump on emitter 0, in units of hbar * rate
/// with H = omega0 sum_i sigma_i^+ sigma_i.
double pump_flux(const Eigen::MatrixXcd& rho, const CouplingSet& set, double omega0 = 1.0);

/// Energy flux removed by the extraction channel on the last emitter.
double extraction_flux(const Eigen::MatrixXcd& rho, const CouplingSet& set, double omega0 = 1.0);

struct TransportTrace
{
    std::vector<double> t;
    std::vector<double> pump;
    std::vector<double> extraction;
    /// Extraction flux of the run without pumping.
    std::vector<double> extraction_unpumped;
    /// Raw efficiency; nullopt where the pump flux vanishes.
    std::vector<std::optional<double>> chi;
    /// Mean of chi over the final decade of the time span.
    std::optional<double> chi_steady;
    /// max |d rho / dt| of the pumped run at the final time.
    double final_residual = 0.0;
    /// min_t (extraction - extraction_unpumped).
    double min_extraction_gain = 0.0;
    EvolutionResult pumped;
    EvolutionResult unpumped;
};

/**
 * Runs the pumped chain and the same chain with the pump switched off from
 * one initial state and forms chi(t) = (E(rho) - E(rho_0)) / P(rho).
 * Requires gamma_in > 0. The two runs execute concurrently.
 */
TransportTrace efficiency_trace(const CouplingSet& set, const DensityMatrix& rho_init, std::span<const double> times,
                                const EvolveOptions& opt = {});

enum class SteadyStateMethod
{
    null_space,
    long_time,
};

struct SteadyStateOptions
{
    /// Convergence threshold on max |d rho / dt| in units of gamma(0, 0).
    double tolerance = 1e-10;
    /// Time budget of the long-time method in units of 1 / gamma(0, 0).
    double t_max = 1e3;
};

/// Stationary state of the generator. The long-time method throws
/// ConvergenceError with the last residual when the budget runs out.
DensityMatrix steady_state(const CouplingSet& set, SteadyStateMethod method = SteadyStateMethod::null_space,
                           const SteadyStateOptions& opt = {});

}  // namespace nrt
