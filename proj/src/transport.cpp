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

#include "nrt/transport.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <future>

#include <Eigen/LU>

#include "nrt/errors.hpp"

namespace nrt {

namespace {

double energy(Eigen::Index m, double omega0)
{
    return omega0 * std::popcount(static_cast<unsigned long long>(m));
}

}  // namespace

double pump_flux(const Eigen::MatrixXcd& rho, const CouplingSet& set, double omega0)
{
    // Tr[H (2 s^+ rho s - s s^+ rho - rho s s^+)] for s = sigma_0 only
    // involves the diagonal of rho.
    const Eigen::Index bit = 1;
    double tr = 0.0;
    for (Eigen::Index m = 0; m < rho.rows(); ++m) {
        if (m & bit)
            tr += 2.0 * energy(m, omega0) * rho(m ^ bit, m ^ bit).real();
        else
            tr -= 2.0 * energy(m, omega0) * rho(m, m).real();
    }
    return 0.5 * set.gamma_in * tr;
}

double extraction_flux(const Eigen::MatrixXcd& rho, const CouplingSet& set, double omega0)
{
    // -Tr[H (2 s rho s^+ - s^+ s rho - rho s^+ s)] for s = sigma_{N-1}.
    const Eigen::Index bit = Eigen::Index(1) << (set.size() - 1);
    double tr = 0.0;
    for (Eigen::Index m = 0; m < rho.rows(); ++m) {
        if (m & bit)
            tr -= 2.0 * energy(m, omega0) * rho(m, m).real();
        else
            tr += 2.0 * energy(m, omega0) * rho(m | bit, m | bit).real();
    }
    return -0.5 * set.gamma_out * tr;
}

TransportTrace efficiency_trace(const CouplingSet& set, const DensityMatrix& rho_init, std::span<const double> times,
                                const EvolveOptions& opt)
{
    validate(set);
    if (!(set.gamma_in > 0.0))
        throw DomainError("efficiency needs a positive pump rate");

    CouplingSet idle = set;
    idle.gamma_in = 0.0;
    const Liouvillian pumped(set);
    const Liouvillian unpumped(idle);

    auto background = std::async(std::launch::async, [&] { return evolve(unpumped, rho_init, times, opt); });
    TransportTrace tr;
    tr.pumped = evolve(pumped, rho_init, times, opt);
    tr.unpumped = background.get();

    const double scale = set.gamma(0, 0);
    tr.t.assign(times.begin(), times.end());
    tr.min_extraction_gain = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double p = pump_flux(tr.pumped.rho[i], set);
        const double e = extraction_flux(tr.pumped.rho[i], set);
        const double e0 = extraction_flux(tr.unpumped.rho[i], idle);
        tr.pump.push_back(p);
        tr.extraction.push_back(e);
        tr.extraction_unpumped.push_back(e0);
        tr.min_extraction_gain = std::min(tr.min_extraction_gain, e - e0);
        if (p < 1e-12 * scale)
            tr.chi.push_back(std::nullopt);
        else
            tr.chi.push_back((e - e0) / p);
    }

    const double t_end = times.back();
    double sum = 0.0;
    int count = 0;
    for (std::size_t i = 0; i < times.size(); ++i)
        if (times[i] >= 0.1 * t_end && tr.chi[i]) {
            sum += *tr.chi[i];
            ++count;
        }
    if (count > 0)
        tr.chi_steady = sum / count;
    tr.final_residual = pumped(tr.pumped.rho.back()).cwiseAbs().maxCoeff();
    return tr;
}

namespace {

DensityMatrix null_space_state(const Liouvillian& gen)
{
    const Eigen::Index d = gen.dimension();
    Eigen::MatrixXcd l = gen.matrix();
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(d * d);
    // Trace normalisation replaces the (redundant) first equation.
    l.row(0).setZero();
    for (Eigen::Index m = 0; m < d; ++m)
        l(0, m + m * d) = 1.0;
    rhs(0) = 1.0;
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(l);
    if (lu.rank() < l.rows())
        throw ConvergenceError("stationary state is not unique", 0.0);
    const Eigen::VectorXcd v = lu.solve(rhs);
    Eigen::MatrixXcd rho = Eigen::Map<const Eigen::MatrixXcd>(v.data(), d, d);
    return {gen.n_atoms(), rho};
}

DensityMatrix long_time_state(const Liouvillian& gen, const SteadyStateOptions& opt)
{
    const double rate = gen.couplings().gamma(0, 0);
    const int samples = std::max(1, static_cast<int>(std::ceil(opt.t_max)));
    const std::vector<double> times = uniform_times(opt.t_max / rate, samples);
    EvolveOptions eo;
    eo.abs_tol = 1e-14;
    eo.rel_tol = 1e-12;
    const EvolutionResult run = evolve(gen, initial_state(InitialState::ground, gen.n_atoms()), times, eo);

    double residual = 0.0;
    for (const auto& rho : run.rho) {
        residual = gen(rho).cwiseAbs().maxCoeff();
        if (residual < opt.tolerance * rate)
            return {gen.n_atoms(), rho};
    }
    throw ConvergenceError("long-time integration did not reach a stationary state", residual);
}

}  // namespace

DensityMatrix steady_state(const CouplingSet& set, SteadyStateMethod method, const SteadyStateOptions& opt)
{
    const Liouvillian gen(set);
    return method == SteadyStateMethod::null_space ? null_space_state(gen) : long_time_state(gen, opt);
}

}  // namespace nrt
