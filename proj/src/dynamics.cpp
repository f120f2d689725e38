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

#include "nrt/dynamics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <vector>

#include <Eigen/Eigenvalues>
#include <boost/numeric/odeint.hpp>

#include "nrt/errors.hpp"

namespace nrt {

namespace {

using Mat = Eigen::MatrixXcd;

// Products of a matrix with the lowering operator sigma_i (bit i of the
// basis index) or its adjoint, on either side.
Mat lower_left(int i, const Mat& x)
{
    const Eigen::Index bit = Eigen::Index(1) << i;
    Mat r = Mat::Zero(x.rows(), x.cols());
    for (Eigen::Index a = 0; a < x.rows(); ++a)
        if (!(a & bit))
            r.row(a) = x.row(a | bit);
    return r;
}

Mat raise_left(int i, const Mat& x)
{
    const Eigen::Index bit = Eigen::Index(1) << i;
    Mat r = Mat::Zero(x.rows(), x.cols());
    for (Eigen::Index a = 0; a < x.rows(); ++a)
        if (a & bit)
            r.row(a) = x.row(a ^ bit);
    return r;
}

Mat lower_right(const Mat& x, int i)
{
    const Eigen::Index bit = Eigen::Index(1) << i;
    Mat r = Mat::Zero(x.rows(), x.cols());
    for (Eigen::Index b = 0; b < x.cols(); ++b)
        if (b & bit)
            r.col(b) = x.col(b ^ bit);
    return r;
}

Mat raise_right(const Mat& x, int i)
{
    const Eigen::Index bit = Eigen::Index(1) << i;
    Mat r = Mat::Zero(x.rows(), x.cols());
    for (Eigen::Index b = 0; b < x.cols(); ++b)
        if (!(b & bit))
            r.col(b) = x.col(b | bit);
    return r;
}

// rate / 2 (2 L rho L^+ - L^+ L rho - rho L^+ L) for L = sigma_i (lower)
// or sigma_i^+ (raise).
Mat dissipator(int i, bool raise, const Mat& rho)
{
    if (!raise) {
        const Mat jump = raise_right(lower_left(i, rho), i);
        const Mat left = raise_left(i, lower_left(i, rho));
        const Mat right = lower_right(raise_right(rho, i), i);
        return 2.0 * jump - left - right;
    }
    const Mat jump = lower_right(raise_left(i, rho), i);
    const Mat left = lower_left(i, raise_left(i, rho));
    const Mat right = raise_right(lower_right(rho, i), i);
    return 2.0 * jump - left - right;
}

}  // namespace

double excited_population(const Eigen::MatrixXcd& rho, int atom)
{
    const Eigen::Index bit = Eigen::Index(1) << atom;
    double p = 0.0;
    for (Eigen::Index m = 0; m < rho.rows(); ++m)
        if (m & bit)
            p += rho(m, m).real();
    return p;
}

void validate(const DensityMatrix& state, double tol)
{
    if (state.n_atoms < 1 || state.n_atoms > 10)
        throw ValidationError("emitter count must lie in 1..10");
    const Eigen::Index d = dimension(state.n_atoms);
    if (state.rho.rows() != d || state.rho.cols() != d)
        throw ValidationError("density matrix dimension does not match the emitter count");
    if ((state.rho - state.rho.adjoint()).cwiseAbs().maxCoeff() > tol)
        throw ValidationError("density matrix is not Hermitian");
    if (std::abs(state.rho.trace() - 1.0) > tol)
        throw ValidationError("density matrix trace differs from one");
    const Eigen::MatrixXcd h = 0.5 * (state.rho + state.rho.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -tol)
        throw ValidationError("density matrix is not positive semidefinite");
}

namespace {
// Pair-basis position of bitmask states |g g>, |e g>, |g e>, |e e>.
constexpr int pair_index[4] = {0, 3, 2, 1};
}  // namespace

Eigen::Matrix4cd to_pair_basis(const Eigen::MatrixXcd& rho)
{
    if (rho.rows() != 4 || rho.cols() != 4)
        throw DomainError("pair basis needs a two-emitter matrix");
    Eigen::Matrix4cd r;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            r(pair_index[a], pair_index[b]) = rho(a, b);
    return r;
}

Eigen::MatrixXcd from_pair_basis(const Eigen::Matrix4cd& rho)
{
    Eigen::MatrixXcd r(4, 4);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            r(a, b) = rho(pair_index[a], pair_index[b]);
    return r;
}

DensityMatrix initial_state(InitialState kind, int n_atoms)
{
    if (n_atoms < 1 || n_atoms > 10)
        throw DomainError("emitter count must lie in 1..10");
    const Eigen::Index d = dimension(n_atoms);
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(d);
    switch (kind) {
    case InitialState::ground:
        psi(0) = 1.0;
        break;
    case InitialState::excited_first:
        psi(1) = 1.0;
        break;
    case InitialState::bell_plus:
        if (n_atoms < 2)
            throw DomainError("Bell state needs two emitters");
        psi(1) = psi(2) = 1.0 / std::sqrt(2.0);
        break;
    }
    return {n_atoms, psi * psi.adjoint()};
}

DensityMatrix custom_state(const Eigen::MatrixXcd& rho, double tol)
{
    const Eigen::Index d = rho.rows();
    if (d < 2 || (d & (d - 1)) != 0)
        throw ValidationError("density matrix dimension must be a power of two");
    DensityMatrix s{std::countr_zero(static_cast<unsigned long long>(d)), rho};
    validate(s, tol);
    return s;
}

Liouvillian::Liouvillian(CouplingSet set, double detuning)
    : m_set(std::move(set)), m_detuning(detuning)
{
    validate(m_set);
    const Eigen::Index n = m_set.size();
    if (n > 10)
        throw DomainError("chains longer than 10 emitters are not supported");
    m_atoms = static_cast<int>(n);
    m_dim = nrt::dimension(m_atoms);
}

void Liouvillian::apply(const Eigen::MatrixXcd& rho, Eigen::MatrixXcd& out) const
{
    if (rho.rows() != m_dim || rho.cols() != m_dim)
        throw DomainError("density matrix dimension does not match the generator");
    out.setZero(m_dim, m_dim);

    if (m_detuning != 0.0) {
        for (Eigen::Index a = 0; a < m_dim; ++a)
            for (Eigen::Index b = 0; b < m_dim; ++b) {
                const int na = std::popcount(static_cast<unsigned long long>(a));
                const int nb = std::popcount(static_cast<unsigned long long>(b));
                out(a, b) += -I * m_detuning * double(na - nb) * rho(a, b);
            }
    }

    for (int i = 0; i < m_atoms; ++i)
        out += 0.5 * m_set.gamma(i, i) * dissipator(i, false, rho);

    for (int i = 0; i < m_atoms; ++i)
        for (int j = 0; j < m_atoms; ++j) {
            if (i == j)
                continue;
            const double gij = m_set.gamma(i, j), cij = m_set.g(i, j);
            if (gij == 0.0 && cij == 0.0)
                continue;
            // [sigma_j rho, X] and [Y, rho sigma_j^+] expanded.
            const Mat sj_rho = lower_left(j, rho);
            const Mat rho_sjd = raise_right(rho, j);
            const Mat a = raise_right(sj_rho, i) - raise_left(i, sj_rho);   // [sigma_j rho, sigma_i^+]
            const Mat b = lower_left(i, rho_sjd) - lower_right(rho_sjd, i);  // [sigma_i, rho sigma_j^+]
            out += 0.5 * gij * (a + b);
            out += cij * (-I * a + I * b);
        }

    if (m_set.gamma_in != 0.0)
        out += 0.5 * m_set.gamma_in * dissipator(0, true, rho);
    if (m_set.gamma_out != 0.0)
        out += 0.5 * m_set.gamma_out * dissipator(m_atoms - 1, false, rho);
}

Eigen::MatrixXcd Liouvillian::operator()(const Eigen::MatrixXcd& rho) const
{
    Eigen::MatrixXcd out;
    apply(rho, out);
    return out;
}

Eigen::MatrixXcd Liouvillian::matrix() const
{
    if (m_atoms > 6)
        throw DomainError("dense generator limited to 6 emitters");
    const Eigen::Index d2 = m_dim * m_dim;
    Eigen::MatrixXcd l(d2, d2);
    Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(m_dim, m_dim), out;
    for (Eigen::Index col = 0; col < d2; ++col) {
        e(col % m_dim, col / m_dim) = 1.0;
        apply(e, out);
        l.col(col) = Eigen::Map<const Eigen::VectorXcd>(out.data(), d2);
        e(col % m_dim, col / m_dim) = 0.0;
    }
    return l;
}

std::vector<double> uniform_times(double t_end, int n)
{
    if (n < 1 || !(t_end > 0.0))
        throw DomainError("time grid needs a positive span and at least one interval");
    std::vector<double> t(n + 1);
    for (int i = 0; i <= n; ++i)
        t[i] = t_end * i / n;
    return t;
}

EvolutionResult evolve(const Liouvillian& generator, const DensityMatrix& rho0, std::span<const double> times,
                       const EvolveOptions& opt)
{
    namespace odeint = boost::numeric::odeint;
    using State = std::vector<complex>;

    validate(rho0, 1e-9);
    if (rho0.n_atoms != generator.n_atoms())
        throw DomainError("initial state and generator describe different chains");
    if (times.empty())
        throw DomainError("empty time grid");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] >= times[i - 1]))
            throw DomainError("time grid must be ascending");

    const Eigen::Index d = generator.dimension();
    const Eigen::Index d2 = d * d;
    Eigen::MatrixXcd work_in(d, d), work_out(d, d);
    auto rhs = [&](const State& x, State& dxdt, double) {
        work_in = Eigen::Map<const Eigen::MatrixXcd>(x.data(), d, d);
        generator.apply(work_in, work_out);
        dxdt.resize(d2);
        Eigen::Map<Eigen::MatrixXcd>(dxdt.data(), d, d) = work_out;
    };

    const CouplingSet& s = generator.couplings();
    double scale = std::max({s.gamma.cwiseAbs().maxCoeff(), s.g.cwiseAbs().maxCoeff(), s.gamma_in, s.gamma_out});
    scale = std::max(scale, 1e-300);

    EvolutionResult res;
    res.t.assign(times.begin(), times.end());
    res.population.resize(static_cast<Eigen::Index>(times.size()), generator.n_atoms());
    res.min_eigenvalue = std::numeric_limits<double>::infinity();

    auto record = [&](std::size_t idx, const State& x) {
        const Eigen::Map<const Eigen::MatrixXcd> r(x.data(), d, d);
        for (int a = 0; a < generator.n_atoms(); ++a)
            res.population(static_cast<Eigen::Index>(idx), a) = excited_population(r, a);
        res.max_trace_error = std::max(res.max_trace_error, std::abs(r.trace() - 1.0));
        res.max_hermiticity_error = std::max(res.max_hermiticity_error, (r - r.adjoint()).cwiseAbs().maxCoeff());
        const Eigen::MatrixXcd h = 0.5 * (r + r.adjoint());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
        res.min_eigenvalue = std::min(res.min_eigenvalue, es.eigenvalues().minCoeff());
        if (opt.keep_states)
            res.rho.emplace_back(r);
    };

    State x(rho0.rho.data(), rho0.rho.data() + d2);
    auto stepper = odeint::make_dense_output(opt.abs_tol, opt.rel_tol, odeint::runge_kutta_dopri5<State>());
    const double t0 = times.front();
    stepper.initialize(x, t0, opt.initial_step / scale);
    record(0, x);

    State sample(d2);
    std::size_t next = 1;
    try {
        while (next < times.size()) {
            while (next < times.size() && times[next] <= stepper.current_time()) {
                stepper.calc_state(times[next], sample);
                record(next++, sample);
            }
            if (next >= times.size())
                break;
            stepper.do_step(rhs);
            ++res.steps;
            if (!(stepper.current_time_step() > 1e-14 * std::max(1.0, std::abs(stepper.current_time()))))
                throw StiffnessError("step size underflow", stepper.current_time());
        }
    } catch (const odeint::odeint_error&) {
        throw StiffnessError("step size adjustment failed", stepper.current_time());
    }
    return res;
}

PopulationPair oracle_reciprocal(double gamma11, double gamma12, double g12, double t)
{
    if (std::abs(gamma12) > gamma11)
        throw DomainError("collective rate exceeds the spontaneous rate; the closed form diverges");
    const double common = 0.25 * (std::exp(-(gamma11 + gamma12) * t) + std::exp(-(gamma11 - gamma12) * t));
    const double beat = 0.5 * std::exp(-gamma11 * t) * std::cos(2.0 * g12 * t);
    return {common + beat, common - beat};
}

PopulationPair oracle_nonreciprocal(double gamma11, double gamma21, double g21, double t)
{
    const double m2 = std::norm(complex(0.5 * gamma21, g21));
    const double decay = std::exp(-gamma11 * t);
    return {decay, m2 * t * t * decay};
}

}  // namespace nrt
