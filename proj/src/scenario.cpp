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

#include "nrt/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "nrt/couplings.hpp"
#include "nrt/dispersion.hpp"
#include "nrt/errors.hpp"
#include "nrt/transport.hpp"

#ifndef NRT_CONFIG_DIR
#define NRT_CONFIG_DIR "configs"
#endif

namespace nrt {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

// ---- parsing --------------------------------------------------------------

void allow_keys(const YAML::Node& node, const std::string& path, std::initializer_list<std::string_view> keys)
{
    if (!node.IsMap())
        throw ConfigError(path, "expected a mapping");
    for (const auto& kv : node) {
        const auto key = kv.first.as<std::string>();
        if (std::find(keys.begin(), keys.end(), key) == keys.end())
            throw ConfigError(path.empty() ? key : path + "." + key, "unknown key");
    }
}

std::string join(const std::string& path, std::string_view key)
{
    return path.empty() ? std::string(key) : path + "." + std::string(key);
}

double number(const YAML::Node& node, const std::string& key)
{
    if (!node.IsScalar())
        throw ConfigError(key, "expected a number");
    try {
        return node.as<double>();
    } catch (const YAML::Exception&) {
        throw ConfigError(key, "expected a number, got '" + node.Scalar() + "'");
    }
}

double number(const YAML::Node& parent, const std::string& path, std::string_view key, std::optional<double> fallback)
{
    const auto node = parent[std::string(key)];
    if (!node) {
        if (fallback)
            return *fallback;
        throw ConfigError(join(path, key), "missing");
    }
    return number(node, join(path, key));
}

double nonnegative(double v, const std::string& key)
{
    if (!(v >= 0.0) || !std::isfinite(v))
        throw ConfigError(key, "must be finite and nonnegative");
    return v;
}

int integer(const YAML::Node& node, const std::string& key)
{
    const double v = number(node, key);
    if (v != std::floor(v) || std::abs(v) > 1e9)
        throw ConfigError(key, "expected an integer");
    return static_cast<int>(v);
}

Sweep parse_sweep(const YAML::Node& node, const std::string& path)
{
    allow_keys(node, path, {"from", "to", "points"});
    Sweep s;
    s.from = number(node, path, "from", std::nullopt);
    s.to = number(node, path, "to", std::nullopt);
    if (!node["points"])
        throw ConfigError(join(path, "points"), "missing");
    s.points = integer(node["points"], join(path, "points"));
    if (s.points < 1 || (s.points > 1 && !(s.to > s.from)) || (s.points == 1 && s.to != s.from))
        throw ConfigError(path, "sweep range is empty");
    return s;
}

std::optional<DrudeMaterial> parse_material(const YAML::Node& node, const std::string& path)
{
    if (node.IsScalar()) {
        if (node.Scalar() == "vacuum")
            return std::nullopt;
        throw ConfigError(path, "expected a mapping or 'vacuum'");
    }
    allow_keys(node, path, {"plasma_frequency", "damping", "drift_velocity"});
    DrudeMaterial m;
    m.plasma_frequency = number(node, path, "plasma_frequency", 1.0);
    m.damping = nonnegative(number(node, path, "damping", m.damping), join(path, "damping"));
    m.drift_velocity = number(node, path, "drift_velocity", 0.0);
    if (m.plasma_frequency != 1.0)
        throw ConfigError(join(path, "plasma_frequency"), "frequencies are normalized; only 1 is accepted");
    try {
        validate(m);
    } catch (const std::exception& e) {
        throw ConfigError(path, e.what());
    }
    return m;
}

InitialState parse_initial(const YAML::Node& node, const std::string& key)
{
    const auto s = node.as<std::string>();
    if (s == "excited_first")
        return InitialState::excited_first;
    if (s == "bell_plus")
        return InitialState::bell_plus;
    if (s == "ground")
        return InitialState::ground;
    throw ConfigError(key, "unknown initial state '" + s + "'");
}

ScenarioKind parse_kind(const YAML::Node& node)
{
    if (!node)
        throw ConfigError("kind", "missing");
    static const std::map<std::string, ScenarioKind> kinds{
        {"dispersion", ScenarioKind::dispersion}, {"rates", ScenarioKind::rates},
        {"contour", ScenarioKind::contour},       {"bounds", ScenarioKind::bounds},
        {"dynamics", ScenarioKind::dynamics},     {"efficiency", ScenarioKind::efficiency},
    };
    const auto it = kinds.find(node.as<std::string>());
    if (it == kinds.end())
        throw ConfigError("kind", "unknown scenario kind '" + node.as<std::string>() + "'");
    return it->second;
}

std::vector<std::string> leading_comments(std::string_view text)
{
    std::vector<std::string> out;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] != '#')
            break;
        line.erase(0, 1);
        if (!line.empty() && line[0] == ' ')
            line.erase(0, 1);
        out.push_back(line);
    }
    return out;
}

// ---- formatting -----------------------------------------------------------

std::string fmt(double v)
{
    if (std::isnan(v))
        return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10e", v);
    return buf;
}

std::string hex64(std::uint64_t v)
{
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::string kv(const std::string& key, double v) { return key + "=" + fmt(v); }

// ---- runners --------------------------------------------------------------

HalfSpaceScene scene_for(const ScenarioConfig& cfg, const Environment& env)
{
    HalfSpaceScene scene = make_scene(env.material, env.omega, cfg.z1);
    scene.z2 = cfg.z2 * wavelength(env.omega);
    return scene;
}

GreensOptions greens_options(const ScenarioConfig& cfg, const RunOptions& opt)
{
    GreensOptions g;
    g.rel_tol = opt.tolerance.value_or(cfg.numerics.quadrature_rel_tol);
    return g;
}

EvolveOptions evolve_options(const ScenarioConfig& cfg)
{
    EvolveOptions e;
    e.rel_tol = cfg.numerics.ode_rel_tol;
    e.abs_tol = cfg.numerics.ode_abs_tol;
    return e;
}

void run_dispersion(const ScenarioConfig& cfg, const RunOptions& opt, Table& t)
{
    const auto omegas = cfg.frequency_sweep->values();
    t.columns = {"omega", "light_line"};
    for (const auto& env : cfg.environments) {
        t.columns.push_back("k_plus_" + env.name);
        t.columns.push_back("k_minus_" + env.name);
    }
    t.rows.assign(omegas.size(), {});
    parallel_for(omegas.size(), opt.threads, [&](std::size_t i) {
        std::vector<double> row{omegas[i], omegas[i]};
        for (const auto& env : cfg.environments) {
            for (double phi : {0.0, pi}) {
                const auto p = solve_spp(*env.material, omegas[i], phi);
                row.push_back(p ? p->k.real() : nan);
            }
        }
        t.rows[i] = std::move(row);
    });
    for (const auto& env : cfg.environments) {
        const auto w = nonreciprocal_window(*env.material);
        if (w.empty())
            t.preamble.push_back("window " + env.name + ": none");
        else
            t.preamble.push_back("window " + env.name + ": " + fmt(w.lo) + " " + fmt(w.hi));
    }
}

void run_rates(const ScenarioConfig& cfg, const RunOptions& opt, Table& t, bool bounds)
{
    const Environment& env = cfg.environments.front();
    const auto scene = scene_for(cfg, env);
    const auto gopt = greens_options(cfg, opt);
    const double lambda = wavelength(env.omega);
    const auto xs = cfg.dx_sweep->values();
    if (bounds)
        t.columns = {"x_over_lambda", "gamma21", "nr_expression", "r_margin", "nr_margin"};
    else
        t.columns = {"x_over_lambda", "gamma12", "gamma21", "g12", "g21"};
    t.rows.assign(xs.size(), {});
    parallel_for(xs.size(), opt.threads, [&](std::size_t i) {
        const CouplingSet s = normalized(coupling_rates(scene, xs[i] * lambda, gopt));
        if (bounds) {
            const double expr = std::abs(dipole_potential(s, 0, 1).value) / 0.5;
            t.rows[i] = {xs[i], s.gamma(1, 0), expr, r_limit_margin(s), nr_limit_margin(s)};
        } else {
            t.rows[i] = {xs[i], s.gamma(0, 1), s.gamma(1, 0), s.g(0, 1), s.g(1, 0)};
        }
    });
    t.preamble.push_back("environment " + env.name + ": omega=" + fmt(env.omega));
}

void run_contour(const ScenarioConfig& cfg, const RunOptions& opt, Table& t)
{
    const std::size_t n_env = cfg.environments.size();
    std::vector<IsoFrequencyContour> contours(n_env);
    parallel_for(n_env, opt.threads, [&](std::size_t e) {
        const auto& env = cfg.environments[e];
        contours[e] = trace_isofrequency(*env.material, env.omega, cfg.samples);
    });
    t.columns = {"phi"};
    for (const auto& env : cfg.environments)
        for (const char* c : {"kx_", "ky_", "im_k_"})
            t.columns.push_back(c + env.name);
    for (int i = 0; i < cfg.samples; ++i) {
        std::vector<double> row{contours.front().phi[i]};
        for (const auto& c : contours) {
            const auto& k = c.k[i];
            if (k)
                row.insert(row.end(), {k->real() * std::cos(c.phi[i]), k->real() * std::sin(c.phi[i]), k->imag()});
            else
                row.insert(row.end(), {nan, nan, nan});
        }
        t.rows.push_back(std::move(row));
    }
    for (std::size_t e = 0; e < n_env; ++e)
        t.preamble.push_back("contour " + cfg.environments[e].name + ": omega=" + fmt(cfg.environments[e].omega)
                             + " closed=" + (contours[e].closed ? "true" : "false"));
}

std::vector<CouplingSet> environment_rates(const ScenarioConfig& cfg, const RunOptions& opt, Table& t)
{
    std::vector<CouplingSet> sets(cfg.environments.size());
    const auto gopt = greens_options(cfg, opt);
    parallel_for(sets.size(), opt.threads, [&](std::size_t e) {
        const auto& env = cfg.environments[e];
        CouplingSet s = normalized(coupling_rates(scene_for(cfg, env), *cfg.dx * wavelength(env.omega), gopt));
        s.gamma_in = cfg.dynamics.gamma_in;
        s.gamma_out = cfg.dynamics.gamma_out;
        sets[e] = std::move(s);
    });
    for (std::size_t e = 0; e < sets.size(); ++e) {
        const auto& s = sets[e];
        t.preamble.push_back("rates " + cfg.environments[e].name + ": " + kv("gamma12", s.gamma(0, 1)) + " "
                             + kv("gamma21", s.gamma(1, 0)) + " " + kv("g12", s.g(0, 1)) + " "
                             + kv("g21", s.g(1, 0)));
    }
    return sets;
}

std::string conservation_line(const std::string& name, const EvolutionResult& r)
{
    return "conservation " + name + ": " + kv("max_trace_error", r.max_trace_error) + " "
           + kv("max_hermiticity_error", r.max_hermiticity_error) + " " + kv("min_eigenvalue", r.min_eigenvalue);
}

void run_dynamics(const ScenarioConfig& cfg, const RunOptions& opt, Table& t)
{
    const auto sets = environment_rates(cfg, opt, t);
    const auto times = uniform_times(cfg.dynamics.t_max, cfg.samples - 1);
    const auto eopt = evolve_options(cfg);
    std::vector<EvolutionResult> runs(sets.size());
    parallel_for(sets.size(), opt.threads, [&](std::size_t e) {
        runs[e] = evolve(Liouvillian(sets[e]), initial_state(cfg.dynamics.initial), times, eopt);
    });
    t.columns = {"t"};
    for (const auto& env : cfg.environments) {
        t.columns.push_back("p1_" + env.name);
        t.columns.push_back("p2_" + env.name);
    }
    for (std::size_t i = 0; i < times.size(); ++i) {
        std::vector<double> row{times[i]};
        for (const auto& r : runs)
            row.insert(row.end(), {r.population(i, 0), r.population(i, 1)});
        t.rows.push_back(std::move(row));
    }
    for (std::size_t e = 0; e < runs.size(); ++e)
        t.preamble.push_back(conservation_line(cfg.environments[e].name, runs[e]));
}

void run_efficiency(const ScenarioConfig& cfg, const RunOptions& opt, Table& t)
{
    if (!(cfg.dynamics.gamma_in > 0.0))
        throw ConfigError("dynamics.gamma_in", "efficiency needs a positive pump rate");
    const auto sets = environment_rates(cfg, opt, t);
    const auto times = uniform_times(cfg.dynamics.t_max, cfg.samples - 1);
    const auto eopt = evolve_options(cfg);
    std::vector<TransportTrace> traces(sets.size());
    std::vector<double> stationary(sets.size());
    parallel_for(sets.size(), opt.threads, [&](std::size_t e) {
        traces[e] = efficiency_trace(sets[e], initial_state(cfg.dynamics.initial), times, eopt);
        const auto ss = steady_state(sets[e]);
        CouplingSet idle = sets[e];
        idle.gamma_in = 0.0;
        const auto ss0 = steady_state(idle);
        stationary[e] = (extraction_flux(ss.rho, sets[e]) - extraction_flux(ss0.rho, idle)) / pump_flux(ss.rho, sets[e]);
    });
    t.columns = {"t"};
    for (const auto& env : cfg.environments)
        t.columns.push_back("chi_" + env.name);
    for (std::size_t i = 0; i < times.size(); ++i) {
        std::vector<double> row{times[i]};
        for (const auto& tr : traces)
            row.push_back(tr.chi[i].value_or(nan));
        t.rows.push_back(std::move(row));
    }
    for (std::size_t e = 0; e < traces.size(); ++e) {
        const auto& tr = traces[e];
        const auto& name = cfg.environments[e].name;
        t.preamble.push_back("chi_steady " + name + ": " + kv("trace", tr.chi_steady.value_or(nan)) + " "
                             + kv("stationary", stationary[e]) + " " + kv("final_residual", tr.final_residual));
        t.preamble.push_back("extraction_gain " + name + ": " + kv("min", tr.min_extraction_gain));
        t.preamble.push_back(conservation_line(name, tr.pumped));
    }
}

}  // namespace

std::string_view to_string(ScenarioKind kind)
{
    switch (kind) {
    case ScenarioKind::dispersion: return "dispersion";
    case ScenarioKind::rates: return "rates";
    case ScenarioKind::contour: return "contour";
    case ScenarioKind::bounds: return "bounds";
    case ScenarioKind::dynamics: return "dynamics";
    case ScenarioKind::efficiency: return "efficiency";
    }
    return "unknown";
}

std::vector<double> Sweep::values() const
{
    std::vector<double> v(points);
    for (int i = 0; i < points; ++i)
        v[i] = points == 1 ? from : from + (to - from) * i / (points - 1);
    return v;
}

std::uint64_t fnv1a64(std::string_view bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

ScenarioConfig parse_config(std::string_view text, std::string name)
{
    YAML::Node root;
    try {
        root = YAML::Load(std::string(text));
    } catch (const YAML::Exception& e) {
        throw ConfigError("<document>", e.what());
    }
    allow_keys(root, "",
               {"schema_version", "kind", "material", "frequency", "geometry", "environments", "dynamics",
                "numerics", "output"});

    ScenarioConfig cfg;
    cfg.name = std::move(name);
    cfg.comments = leading_comments(text);
    cfg.hash = fnv1a64(text);

    if (!root["schema_version"])
        throw ConfigError("schema_version", "missing");
    if (integer(root["schema_version"], "schema_version") != schema_version)
        throw ConfigError("schema_version", "unsupported version");
    cfg.kind = parse_kind(root["kind"]);
    const bool needs_material = cfg.kind == ScenarioKind::dispersion || cfg.kind == ScenarioKind::contour;

    // Frequency block: a single omega, or a sweep for dispersion scenarios.
    std::optional<double> omega;
    if (const auto f = root["frequency"]) {
        allow_keys(f, "frequency", {"omega", "sweep"});
        if (f["omega"])
            omega = number(f["omega"], "frequency.omega");
        if (f["sweep"])
            cfg.frequency_sweep = parse_sweep(f["sweep"], "frequency.sweep");
    }
    if (cfg.kind == ScenarioKind::dispersion && !cfg.frequency_sweep)
        throw ConfigError("frequency.sweep", "missing");

    std::optional<DrudeMaterial> material = DrudeMaterial{};
    if (root["material"])
        material = parse_material(root["material"], "material");

    if (const auto envs = root["environments"]) {
        if (!envs.IsSequence() || envs.size() == 0)
            throw ConfigError("environments", "expected a nonempty list");
        std::set<std::string> seen;
        for (std::size_t i = 0; i < envs.size(); ++i) {
            const std::string path = "environments[" + std::to_string(i) + "]";
            const auto& node = envs[i];
            allow_keys(node, path, {"name", "material", "omega"});
            Environment env;
            if (!node["name"])
                throw ConfigError(path + ".name", "missing");
            env.name = node["name"].as<std::string>();
            if (env.name.empty() || env.name.find_first_of(", \t") != std::string::npos || !seen.insert(env.name).second)
                throw ConfigError(path + ".name", "must be unique and contain no commas or blanks");
            env.material = node["material"] ? parse_material(node["material"], path + ".material") : material;
            env.omega = node["omega"] ? number(node["omega"], path + ".omega") : omega.value_or(0.0);
            cfg.environments.push_back(std::move(env));
        }
    } else {
        cfg.environments.push_back({"main", material, omega.value_or(0.0)});
    }
    for (std::size_t i = 0; i < cfg.environments.size(); ++i) {
        const auto& env = cfg.environments[i];
        const std::string path = "environments[" + std::to_string(i) + "]";
        if (needs_material && !env.material)
            throw ConfigError(path + ".material", "this scenario kind needs a material");
        if (cfg.kind != ScenarioKind::dispersion && !(env.omega > 0.0))
            throw ConfigError(root["environments"] ? path + ".omega" : "frequency.omega", "must be positive");
    }

    const bool needs_dx = cfg.kind == ScenarioKind::rates || cfg.kind == ScenarioKind::bounds
                          || cfg.kind == ScenarioKind::dynamics || cfg.kind == ScenarioKind::efficiency;
    if (const auto g = root["geometry"]) {
        allow_keys(g, "geometry", {"z1", "z2", "dx"});
        cfg.z1 = number(g, "geometry", "z1", cfg.z1);
        cfg.z2 = number(g, "geometry", "z2", cfg.z1);
        if (!(cfg.z1 > 0.0) || !(cfg.z2 > 0.0))
            throw ConfigError("geometry.z1", "emitter heights must be positive");
        if (const auto dx = g["dx"]) {
            if (dx.IsMap())
                cfg.dx_sweep = parse_sweep(dx, "geometry.dx");
            else
                cfg.dx = nonnegative(number(dx, "geometry.dx"), "geometry.dx");
        }
    }
    if (needs_dx) {
        const bool sweep = cfg.kind == ScenarioKind::rates || cfg.kind == ScenarioKind::bounds;
        if (sweep ? !cfg.dx_sweep : !cfg.dx)
            throw ConfigError("geometry.dx", sweep ? "expected a sweep {from, to, points}" : "expected a number");
        if (cfg.dx_sweep && cfg.dx_sweep->from < 0.0)
            throw ConfigError("geometry.dx.from", "must be nonnegative");
        if (sweep && cfg.environments.size() != 1)
            throw ConfigError("environments", "sweeps take a single environment");
    }

    if (const auto d = root["dynamics"]) {
        allow_keys(d, "dynamics", {"initial_state", "t_max", "gamma_in", "gamma_out"});
        if (d["initial_state"])
            cfg.dynamics.initial = parse_initial(d["initial_state"], "dynamics.initial_state");
        cfg.dynamics.t_max = number(d, "dynamics", "t_max", cfg.dynamics.t_max);
        if (!(cfg.dynamics.t_max > 0.0))
            throw ConfigError("dynamics.t_max", "must be positive");
        cfg.dynamics.gamma_in = nonnegative(number(d, "dynamics", "gamma_in", 0.0), "dynamics.gamma_in");
        cfg.dynamics.gamma_out = nonnegative(number(d, "dynamics", "gamma_out", 0.0), "dynamics.gamma_out");
    }

    if (const auto n = root["numerics"]) {
        allow_keys(n, "numerics", {"quadrature_rel_tol", "ode_rel_tol", "ode_abs_tol"});
        auto& num = cfg.numerics;
        num.quadrature_rel_tol = number(n, "numerics", "quadrature_rel_tol", num.quadrature_rel_tol);
        num.ode_rel_tol = number(n, "numerics", "ode_rel_tol", num.ode_rel_tol);
        num.ode_abs_tol = number(n, "numerics", "ode_abs_tol", num.ode_abs_tol);
        for (double v : {num.quadrature_rel_tol, num.ode_rel_tol, num.ode_abs_tol})
            if (!(v > 0.0) || v >= 1.0)
                throw ConfigError("numerics", "tolerances must lie in (0, 1)");
    }

    const auto out = root["output"];
    if (!out)
        throw ConfigError("output", "missing");
    allow_keys(out, "output", {"file", "samples"});
    if (!out["file"])
        throw ConfigError("output.file", "missing");
    cfg.output_file = out["file"].as<std::string>();
    if (cfg.output_file.empty() || std::filesystem::path(cfg.output_file).has_parent_path())
        throw ConfigError("output.file", "expected a plain file name");
    cfg.samples = out["samples"] ? integer(out["samples"], "output.samples") : 0;
    const bool sampled = cfg.kind == ScenarioKind::contour || cfg.kind == ScenarioKind::dynamics
                         || cfg.kind == ScenarioKind::efficiency;
    if (sampled && cfg.samples < (cfg.kind == ScenarioKind::contour ? 8 : 2))
        throw ConfigError("output.samples", "too few samples");
    return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError("<file>", "cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), path.stem().string());
}

std::filesystem::path resolve_scenario(std::string_view name_or_path)
{
    const std::filesystem::path p(name_or_path);
    if (std::filesystem::is_regular_file(p))
        return p;
    const auto bundled = std::filesystem::path(NRT_CONFIG_DIR) / (std::string(name_or_path) + ".yaml");
    if (std::filesystem::is_regular_file(bundled))
        return bundled;
    throw ConfigError("<file>", "no config file or bundled scenario named '" + std::string(name_or_path) + "'");
}

std::vector<ScenarioInfo> bundled_scenarios()
{
    std::vector<ScenarioInfo> out;
    const std::filesystem::path dir(NRT_CONFIG_DIR);
    if (!std::filesystem::is_directory(dir))
        return out;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.path().extension() != ".yaml")
            continue;
        std::ifstream in(entry.path());
        std::ostringstream ss;
        ss << in.rdbuf();
        const auto comments = leading_comments(ss.str());
        out.push_back({entry.path().stem().string(), comments.empty() ? "" : comments.front()});
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
    return out;
}

Table run_scenario(const ScenarioConfig& cfg, const RunOptions& opt)
{
    Table t;
    const double qtol = opt.tolerance.value_or(cfg.numerics.quadrature_rel_tol);
    t.preamble = {
        "nrtransport " + std::string(version),
        "scenario: " + cfg.name,
        "kind: " + std::string(to_string(cfg.kind)),
        "config_hash: fnv1a64:" + hex64(cfg.hash),
        "modules: materials=" + std::string(version) + " greens=" + std::string(version) + " dispersion="
            + std::string(version) + " couplings=" + std::string(version) + " dynamics=" + std::string(version)
            + " transport=" + std::string(version) + " cli=" + std::string(version),
        "tolerances: " + kv("quadrature_rel_tol", qtol) + " " + kv("ode_rel_tol", cfg.numerics.ode_rel_tol) + " "
            + kv("ode_abs_tol", cfg.numerics.ode_abs_tol),
    };
    for (const auto& c : cfg.comments)
        t.preamble.push_back("config: " + c);

    switch (cfg.kind) {
    case ScenarioKind::dispersion: run_dispersion(cfg, opt, t); break;
    case ScenarioKind::rates: run_rates(cfg, opt, t, false); break;
    case ScenarioKind::bounds: run_rates(cfg, opt, t, true); break;
    case ScenarioKind::contour: run_contour(cfg, opt, t); break;
    case ScenarioKind::dynamics: run_dynamics(cfg, opt, t); break;
    case ScenarioKind::efficiency: run_efficiency(cfg, opt, t); break;
    }
    return t;
}

void write_csv(std::ostream& out, const Table& table)
{
    for (const auto& line : table.preamble)
        out << "# " << line << '\n';
    for (std::size_t i = 0; i < table.columns.size(); ++i)
        out << (i ? "," : "") << table.columns[i];
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << fmt(row[i]);
        out << '\n';
    }
}

}  // namespace nrt
