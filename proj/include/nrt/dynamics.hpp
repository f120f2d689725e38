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

#include <span>
#include <vector>

#include <Eigen/Core>

#include "nrt/couplings.hpp"
#include "nrt/units.hpp"

namespace nrt {

/**
 * State of a chain of two-level emitters. Basis index m encodes the chain
 * configuration bitwise: bit i set means emitter i is excited. For two
 * emitters the order is |g g>, |e g>, |g e>, |e e> (emitter 0 first).
 */
struct DensityMatrix
{
    int n_atoms = 0;
    Eigen::MatrixXcd rho;
};

inline Eigen::Index dimension(int n_atoms) { return Eigen::Index(1) << n_atoms; }

/// Throws ValidationError unless rho is Hermitian, has unit trace and no
/// eigenvalue below -tol.
void validate(const DensityMatrix& state, double tol = 1e-9);

/// <sigma_i^+ sigma_i> for emitter i.
double excited_population(const Eigen::MatrixXcd& rho, int atom);

/// Reorders a two-emitter matrix into (|g g>, |e e>, |g e>, |e g>), the
/// order used by ode_rhs_two_atom(), and back.
Eigen::Matrix4cd to_pair_basis(const Eigen::MatrixXcd& rho);
Eigen::MatrixXcd from_pair_basis(const Eigen::Matrix4cd& rho);

enum class InitialState
{
    excited_first,  // |e g>
    bell_plus,      // (|e g> + |g e>) / sqrt 2
    ground,
};

DensityMatrix initial_state(InitialState kind, int n_atoms = 2);

/// Validated copy of a user-supplied matrix.
DensityMatrix custom_state(const Eigen::MatrixXcd& rho, double tol = 1e-9);

/**
 * Master-equation generator for an emitter chain with possibly asymmetric
 * couplings, applied matrix-free. In the frame rotating at the transition
 * frequency the free Hamiltonian reduces to `detuning` sum_i sigma_i^+ sigma_i.
 * Pumping acts on emitter 0 and extraction on the last emitter.
 */
class Liouvillian
{
public:
    explicit Liouvillian(CouplingSet set, double detuning = 0.0);

    int n_atoms() const noexcept { return m_atoms; }
    Eigen::Index dimension() const noexcept { return m_dim; }
    const CouplingSet& couplings() const noexcept { return m_set; }

    void apply(const Eigen::MatrixXcd& rho, Eigen::MatrixXcd& out) const;
    Eigen::MatrixXcd operator()(const Eigen::MatrixXcd& rho) const;

    /// Dense 4^N x 4^N matrix acting on column-major vec(rho). N <= 6.
    Eigen::MatrixXcd matrix() const;

private:
    CouplingSet m_set;
    double m_detuning;
    int m_atoms;
    Eigen::Index m_dim;
};

inline Liouvillian build_liouvillian(const CouplingSet& set, double detuning = 0.0)
{
    return Liouvillian(set, detuning);
}

struct EvolveOptions
{
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    /// Initial step, in units of the inverse largest rate.
    double initial_step = 1e-3;
    bool keep_states = true;
};

struct EvolutionResult
{
    std::vector<double> t;
    std::vector<Eigen::MatrixXcd> rho;
    /// population(s, i) = <sigma_i^+ sigma_i> at sample s.
    Eigen::MatrixXd population;
    double min_eigenvalue = 0.0;
    double max_trace_error = 0.0;
    double max_hermiticity_error = 0.0;
    std::size_t steps = 0;
};

/**
 * Adaptive Dormand-Prince integration sampled at `times` (ascending, the
 * first entry is the initial time). Throws StiffnessError with the time
 * reached when the step size cannot be adjusted.
 */
EvolutionResult evolve(const Liouvillian& generator, const DensityMatrix& rho0, std::span<const double> times,
                       const EvolveOptions& opt = {});

/// n + 1 equally spaced samples on [0, t_end].
std::vector<double> uniform_times(double t_end, int n);

struct PopulationPair
{
    double p1 = 0.0;
    double p2 = 0.0;
};

/// Closed-form populations for symmetric couplings starting from |e g>.
/// Throws DomainError when |gamma12| > gamma11.
PopulationPair oracle_reciprocal(double gamma11, double gamma12, double g12, double t);

/// Closed-form populations for one-way coupling (no 2 -> 1 channel)
/// starting from |e g>.
PopulationPair oracle_nonreciprocal(double gamma11, double gamma21, double g21, double t);

/**
 * Independent element-by-element right-hand side for two identical emitters
 * in the (|g g>, |e e>, |g e>, |e g>) basis, with
 * gamma = gamma21 / 2 + i g21 and nu = gamma12 / 2 + i g12.
 */
Eigen::Matrix4cd ode_rhs_two_atom(const CouplingSet& set, const Eigen::Matrix4cd& rho);

}  // namespace nrt
