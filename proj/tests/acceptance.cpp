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


// Acceptance run: one PASS/FAIL line per criterion with measured values and
// wall time. Exits 0 once every criterion has been evaluated; the verdicts
// are in the printed lines and in the optional --report file.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "nrt/couplings.hpp"
#include "nrt/dispersion.hpp"
#include "nrt/dynamics.hpp"
#include "nrt/scenario.hpp"
#include "nrt/transport.hpp"

using nrt::complex;
using nrt::DrudeMaterial;
using nrt::InitialState;
using nrt::pi;

namespace {

struct Verdict
{
    bool pass = false;
    std::string detail;
};

std::string sci(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

const DrudeMaterial biased{1.0, 1e-3, -0.008};
const DrudeMaterial unbiased{1.0, 1e-3, 0.0};
constexpr double height = 1.0 / 40.0;

std::vector<nrt::CouplingSet> distance_sweep(const DrudeMaterial& m, double omega, double lo, double hi, int n)
{
    const auto scene = nrt::make_scene(m, omega, height);
    std::vector<nrt::CouplingSet> out;
    for (int i = 0; i < n; ++i) {
        const double x = lo + (hi - lo) * i / (n - 1);
        out.push_back(nrt::normalized(nrt::coupling_rates(scene, x * nrt::wavelength(omega))));
    }
    return out;
}

// Amplitude-equation populations from |e g> (independent of the library).
std::pair<double, double> symmetric_p(double g12r, double g12, double t)
{
    const complex plus = std::exp(complex(-0.5 * (1.0 + g12r) * t, -g12 * t));
    const complex minus = std::exp(complex(-0.5 * (1.0 - g12r) * t, g12 * t));
    return {std::norm(0.5 * (plus + minus)), std::norm(0.5 * (plus - minus))};
}

std::pair<double, double> one_way_p(double g21r, double g21, double t)
{
    return {std::exp(-t), std::norm(complex(0.5 * g21r, g21)) * t * t * std::exp(-t)};
}

double uniform(std::mt19937_64& rng, double lo, double hi)
{
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// ---------------------------------------------------------------------------

Verdict vacuum_baseline()
{
    double worst = 0.0;
    for (double w : {0.2, 0.6, 0.74, 1.3, 5.0}) {
        const complex g = nrt::vacuum_gzz(Eigen::Vector3d::Zero(), Eigen::Vector3d::Zero(), w);
        worst = std::max(worst, std::abs(g.imag() - w / (6.0 * pi)) / (w / (6.0 * pi)));
    }
    auto scene = nrt::make_scene(std::nullopt, 0.74, height);
    scene.dipole_moment = 3.3e-29;
    scene.plasma_frequency_si = 3.1e13;
    const double w = 0.74 * 3.1e13;
    const double ref = std::pow(w, 3) * std::pow(3.3e-29, 2)
                       / (3.0 * pi * nrt::si::epsilon0 * nrt::si::hbar * std::pow(nrt::si::c, 3));
    const double rate_err = std::abs(nrt::spontaneous_rate(scene) - ref) / ref;
    return {worst < 1e-9 && rate_err < 1e-9,
            "Im G rel err " + sci(worst) + ", SI rate rel err " + sci(rate_err)};
}

Verdict reciprocity_suite()
{
    const auto sets = distance_sweep(unbiased, 0.6, 0.0, 3.0, 60);
    double asym = 0.0, margin = 0.0;
    for (const auto& s : sets) {
        asym = std::max(asym, std::abs(s.gamma(0, 1) - s.gamma(1, 0)));
        margin = std::max(margin, nrt::r_limit_margin(s));
    }
    return {asym < 1e-5 && margin <= 1.0 + 1e-6,
            "max |G12 - G21| / G11 " + sci(asym) + ", max R-limit margin " + sci(margin)};
}

Verdict nonreciprocity_suite()
{
    const auto sets = distance_sweep(biased, 0.74, 0.05, 3.0, 60);
    double g21 = -1.0, margin = 0.0;
    for (const auto& s : sets) {
        g21 = std::max(g21, s.gamma(1, 0));
        margin = std::max(margin, nrt::nr_limit_margin(s));
    }
    const double sb = std::abs(nrt::slope_at_source(nrt::make_scene(biased, 0.74, height)));
    const double su = std::abs(nrt::slope_at_source(nrt::make_scene(unbiased, 0.6, height)));
    return {g21 > 1.0 && margin <= 1.0 + 1e-3 && sb > 1e-1 && su < 1e-3,
            "max G21/G11 " + sci(g21) + ", max NR-limit margin " + sci(margin) + ", slope biased " + sci(sb)
                + " unbiased " + sci(su)};
}

Verdict dispersion_checks()
{
    double worst = 0.0;
    bool below_found = true, above_none = true;
    for (int i = 0; i < 20; ++i) {
        const double w = 0.05 + 0.65 * i / 19.0;
        const complex eps = 1.0 - 1.0 / (w * w) / (1.0 + complex(0.0, unbiased.damping) / w);
        const complex k = w * std::sqrt(eps / (eps + 1.0));
        const auto p = nrt::solve_spp(unbiased, w, 0.0);
        if (!p)
            below_found = false;
        else
            worst = std::max(worst, std::abs(p->k - k) / std::abs(k));
        const double wa = 1.0 / std::sqrt(2.0) + 0.005 + (1.0 - 1.0 / std::sqrt(2.0) - 0.005) * i / 19.0;
        if (nrt::solve_spp(unbiased, wa, 0.0))
            above_none = false;
    }
    const auto a = nrt::solve_spp(biased, 0.95, pi), b = nrt::solve_spp(biased, 0.99, pi);
    const double slope = (a && b) ? 0.04 / (b->k.real() - a->k.real()) : 0.0;
    const double slope_err = std::abs(slope - std::abs(biased.drift_velocity)) / std::abs(biased.drift_velocity);
    const auto window = nrt::nonreciprocal_window(biased);
    const bool inside = window.contains(0.74);
    return {below_found && worst < 1e-6 && above_none && slope_err < 0.01 && inside,
            "closed-form rel err " + sci(worst) + (above_none ? ", none above w_sp" : ", spurious mode above w_sp")
                + ", asymptote slope " + sci(slope) + " (rel err " + sci(slope_err) + "), window [" + sci(window.lo)
                + ", " + sci(window.hi) + "]"};
}

Verdict oracle_equivalence()
{
    std::mt19937_64 rng(424242);
    const auto times = nrt::uniform_times(10.0, 1000);
    const auto rho0 = nrt::initial_state(InitialState::excited_first);
    double err5 = 0.0, err7 = 0.0, peak_t = 0.0;
    for (int k = 0; k < 50; ++k) {
        const double g12r = uniform(rng, -1.0, 1.0), g12 = uniform(rng, -1.5, 1.5);
        const auto r = nrt::evolve(nrt::Liouvillian(nrt::two_atom_set(1.0, g12r, g12r, g12, g12)), rho0, times);
        for (std::size_t i = 0; i < times.size(); ++i) {
            const auto [p1, p2] = symmetric_p(g12r, g12, times[i]);
            err5 = std::max({err5, std::abs(r.population(i, 0) - p1), std::abs(r.population(i, 1) - p2)});
        }
    }
    for (int k = 0; k < 50;) {
        const double g21r = uniform(rng, -2.7, 2.7), g21 = uniform(rng, -1.4, 1.4);
        if (std::hypot(0.5 * g21r, g21) > 0.5 * std::numbers::e)
            continue;
        ++k;
        const auto r = nrt::evolve(nrt::Liouvillian(nrt::two_atom_set(1.0, 0.0, g21r, 0.0, g21)), rho0, times);
        for (std::size_t i = 0; i < times.size(); ++i) {
            const auto [p1, p2] = one_way_p(g21r, g21, times[i]);
            err7 = std::max({err7, std::abs(r.population(i, 0) - p1), std::abs(r.population(i, 1) - p2)});
        }
        Eigen::Index ipk = 0;
        r.population.col(1).maxCoeff(&ipk);
        peak_t = std::max(peak_t, std::abs(times[ipk] - 2.0));
    }
    // Boundary |G21 / 2 + i g21| = e / 2.
    const double a = 1.1, b = std::sqrt(0.25 * std::numbers::e * std::numbers::e - 0.25 * a * a);
    const auto rb = nrt::evolve(nrt::Liouvillian(nrt::two_atom_set(1.0, 0.0, a, 0.0, b)), rho0, times);
    const double peak_err = std::abs(rb.population.col(1).maxCoeff() - 1.0);
    const double dt = times[1] - times[0];
    return {err5 < 1e-6 && err7 < 1e-6 && peak_t <= dt && peak_err < 1e-6,
            "reciprocal max|dP| " + sci(err5) + ", one-way max|dP| " + sci(err7) + ", peak time offset " + sci(peak_t)
                + ", boundary peak err " + sci(peak_err)};
}

Verdict generator_cross_check()
{
    std::mt19937_64 rng(1001);
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
        const auto set = nrt::two_atom_set(1.0, uniform(rng, -1, 1), uniform(rng, -2.5, 2.5), uniform(rng, -1, 1),
                                           uniform(rng, -1, 1), uniform(rng, 0.1, 1.5), uniform(rng, 0.1, 1.5));
        Eigen::Matrix4cd m;
        for (auto& z : m.reshaped())
            z = complex(uniform(rng, -1, 1), uniform(rng, -1, 1));
        m = (m + m.adjoint()).eval() + 4.0 * Eigen::Matrix4cd::Identity();
        m /= m.trace().real();
        const Eigen::Matrix4cd op = nrt::to_pair_basis(nrt::Liouvillian(set)(nrt::from_pair_basis(m)));
        worst = std::max(worst, (op - nrt::ode_rhs_two_atom(set, m)).cwiseAbs().maxCoeff());
    }
    return {worst < 1e-12, "max elementwise difference " + sci(worst)};
}

Verdict conservation()
{
    double trace_err = 0.0, herm_err = 0.0;
    int runs = 0;
    for (const auto& info : nrt::bundled_scenarios()) {
        const auto cfg = nrt::load_config(nrt::resolve_scenario(info.name));
        if (cfg.kind != nrt::ScenarioKind::dynamics && cfg.kind != nrt::ScenarioKind::efficiency)
            continue;
        const auto times = nrt::uniform_times(cfg.dynamics.t_max, cfg.samples - 1);
        for (const auto& env : cfg.environments) {
            auto scene = nrt::make_scene(env.material, env.omega, cfg.z1);
            scene.z2 = cfg.z2 * nrt::wavelength(env.omega);
            auto set = nrt::normalized(nrt::coupling_rates(scene, *cfg.dx * nrt::wavelength(env.omega)));
            set.gamma_in = cfg.dynamics.gamma_in;
            set.gamma_out = cfg.dynamics.gamma_out;
            std::vector<nrt::CouplingSet> variants{set};
            if (cfg.kind == nrt::ScenarioKind::efficiency) {
                variants.push_back(set);
                variants.back().gamma_in = 0.0;
            }
            for (const auto& v : variants) {
                const auto r = nrt::evolve(nrt::Liouvillian(v), nrt::initial_state(cfg.dynamics.initial), times);
                ++runs;
                for (const auto& rho : r.rho) {
                    trace_err = std::max(trace_err, std::abs(rho.trace() - 1.0));
                    herm_err = std::max(herm_err, (rho - rho.adjoint()).cwiseAbs().maxCoeff());
                }
            }
        }
    }
    return {runs > 0 && trace_err < 1e-9 && herm_err < 1e-9,
            std::to_string(runs) + " runs, max |Tr rho - 1| " + sci(trace_err) + ", max |rho - rho^+| " + sci(herm_err)};
}

nrt::CouplingSet half_wavelength_rates(std::optional<DrudeMaterial> m, double omega)
{
    return nrt::normalized(nrt::coupling_rates(nrt::make_scene(m, omega, height), 0.5 * nrt::wavelength(omega)));
}

double peak_p2(const nrt::CouplingSet& s)
{
    const auto r = nrt::evolve(nrt::Liouvillian(s), nrt::initial_state(InitialState::excited_first),
                               nrt::uniform_times(10.0, 1000));
    return r.population.col(1).maxCoeff();
}

Verdict population_contrast()
{
    const double fwd = peak_p2(half_wavelength_rates(biased, 0.74));
    const double rev = peak_p2(half_wavelength_rates(biased.reversed(), 0.74));
    const double unb_spp = peak_p2(half_wavelength_rates(unbiased, 0.6));
    const double unb_074 = peak_p2(half_wavelength_rates(unbiased, 0.74));
    const auto vac = half_wavelength_rates(std::nullopt, 0.74);
    const auto bell = nrt::evolve(nrt::Liouvillian(vac), nrt::initial_state(InitialState::bell_plus),
                                  nrt::uniform_times(10.0, 1000));
    const double bell_diff = (bell.population.col(0) - bell.population.col(1)).cwiseAbs().maxCoeff();
    const double unb = std::max(unb_spp, unb_074);
    return {fwd > 5.0 * unb && rev < 0.2 * fwd && bell_diff <= 1e-12,
            "peak P2 forward " + sci(fwd) + ", unbiased " + sci(unb_spp) + " (w=0.6) / " + sci(unb_074)
                + " (w=0.74), reverse " + sci(rev) + ", Bell |P1 - P2| " + sci(bell_diff)};
}

Verdict transport_contrast()
{
    auto chi = [](nrt::CouplingSet s) {
        s.gamma_in = s.gamma_out = 0.8;
        const auto tr = nrt::efficiency_trace(s, nrt::initial_state(InitialState::excited_first),
                                              nrt::uniform_times(50.0, 500));
        return tr.chi_steady.value_or(std::nan(""));
    };
    const double fwd = chi(half_wavelength_rates(biased, 0.74));
    const double rev = chi(half_wavelength_rates(biased.reversed(), 0.74));
    const double unb = chi(half_wavelength_rates(unbiased, 0.6));
    const double vac = chi(half_wavelength_rates(std::nullopt, 0.74));
    return {fwd >= 10.0 * unb && fwd > vac && vac > rev,
            "chi forward " + sci(fwd) + ", unbiased " + sci(unb) + " (ratio " + sci(fwd / unb) + "), vacuum "
                + sci(vac) + ", reverse " + sci(rev)};
}

// Envelope |gamma / 2 + i g| of the reflected coupling, proportional to
// |G_refl|, on 24 log-spaced spacings in [lambda / 2, 10 lambda]. Damping is
// lowered to 1e-5 so that absorption does not masquerade as geometric decay.
double envelope_exponent(const DrudeMaterial& m, double omega, double direction)
{
    const auto scene = nrt::make_scene(m, omega, height);
    nrt::GreensOptions opt;
    opt.rel_tol = 1e-5;
    std::vector<double> r, env;
    for (int i = 0; i < 24; ++i) {
        const double x = 0.5 * std::pow(20.0, i / 23.0);
        r.push_back(x);
        env.push_back(std::abs(nrt::scattered_gzz(scene, direction * x * nrt::wavelength(omega), 0.0, opt)));
    }
    return nrt::fit_power_law(r, env).exponent;
}

Verdict scaling_law()
{
    const double rec = envelope_exponent({1.0, 1e-5, 0.0}, 0.6, 1.0);
    const double nr = envelope_exponent({1.0, 1e-5, -0.008}, 0.74, -1.0);
    const bool rec_ok = std::abs(rec + 0.5) <= 0.15;
    const bool nr_ok = nr > -0.5 && nr < 0.0;
    return {rec_ok && nr_ok, "reciprocal alpha " + sci(rec) + (rec_ok ? " (in range)" : " (out of range)")
                                 + ", nonreciprocal alpha " + sci(nr) + (nr_ok ? " (in range)" : " (out of range)")};
}

Verdict determinism()
{
    const auto cfg = nrt::load_config(nrt::resolve_scenario("fig3a"));
    std::ostringstream a, b, c;
    nrt::write_csv(a, nrt::run_scenario(cfg, {1, std::nullopt}));
    nrt::write_csv(b, nrt::run_scenario(cfg, {1, std::nullopt}));
    nrt::write_csv(c, nrt::run_scenario(cfg, {4, std::nullopt}));
    const bool same = a.str() == b.str() && a.str() == c.str();
    return {same, std::to_string(a.str().size()) + " bytes, repeated and 4-thread runs " + (same ? "identical" : "differ")};
}

}  // namespace

int main(int argc, char** argv)
{
    std::string report_path;
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--report")
            report_path = argv[i + 1];

    struct Criterion
    {
        int id;
        const char* title;
        double budget_s;  // 0: no runtime bound
        std::function<Verdict()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "vacuum baseline", 1.0, vacuum_baseline},
        {2, "reciprocity suite", 120.0, reciprocity_suite},
        {3, "nonreciprocity suite", 180.0, nonreciprocity_suite},
        {4, "dispersion", 30.0, dispersion_checks},
        {5, "oracle equivalence", 60.0, oracle_equivalence},
        {6, "generator cross-check", 0.0, generator_cross_check},
        {7, "conservation", 0.0, conservation},
        {8, "population dynamics", 120.0, population_contrast},
        {9, "transport efficiency", 120.0, transport_contrast},
        {10, "scaling law", 300.0, scaling_law},
        {11, "determinism", 0.0, determinism},
    };

    std::ostringstream log;
    int failed = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = c.run();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = c.budget_s == 0.0 || secs < c.budget_s;
        const bool pass = v.pass && in_time;
        failed += !pass;
        char timing[64];
        std::snprintf(timing, sizeof timing, "%.2f s", secs);
        std::string line = "criterion " + std::to_string(c.id) + " " + (pass ? "PASS" : "FAIL") + " " + c.title + ": "
                           + v.detail + "; " + timing;
        if (c.budget_s > 0.0)
            line += " (budget " + sci(c.budget_s) + " s)";
        std::cout << line << std::endl;
        log << line << '\n';
    }
    const std::string summary = std::to_string(criteria.size() - failed) + "/" + std::to_string(criteria.size())
                                + " criteria pass";
    std::cout << summary << std::endl;
    log << summary << '\n';
    if (!report_path.empty())
        std::ofstream(report_path) << log.str();
    return 0;
}
