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

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "nrt/dynamics.hpp"
#include "nrt/materials.hpp"

namespace nrt {

inline constexpr std::string_view version = "1.0.0";
inline constexpr int schema_version = 1;

enum class ScenarioKind
{
    dispersion,
    rates,
    contour,
    bounds,
    dynamics,
    efficiency,
};

std::string_view to_string(ScenarioKind kind);

/// One photonic environment; no material means free space.
struct Environment
{
    std::string name;
    std::optional<DrudeMaterial> material;
    double omega = 0.0;
};

struct Sweep
{
    double from = 0.0;
    double to = 0.0;
    int points = 0;

    std::vector<double> values() const;
};

struct DynamicsBlock
{
    InitialState initial = InitialState::excited_first;
    double t_max = 10.0;  // units of 1 / gamma11
    double gamma_in = 0.0;
    double gamma_out = 0.0;
};

struct NumericsBlock
{
    double quadrature_rel_tol = 1e-6;
    double ode_rel_tol = 1e-8;
    double ode_abs_tol = 1e-10;
};

/**
 * Parsed scenario file. Lengths are in free-space wavelengths, frequencies
 * in plasma frequencies, rates and times in gamma11. The YAML layout is
 * documented in the README; unknown keys are rejected.
 */
struct ScenarioConfig
{
    std::string name;
    ScenarioKind kind = ScenarioKind::rates;
    std::vector<Environment> environments;
    /// Frequency sweep (dispersion scenarios only).
    std::optional<Sweep> frequency_sweep;
    double z1 = 1.0 / 40.0;
    double z2 = 1.0 / 40.0;
    std::optional<double> dx;
    std::optional<Sweep> dx_sweep;
    DynamicsBlock dynamics;
    NumericsBlock numerics;
    std::string output_file;
    int samples = 0;
    /// Leading comment lines of the file, without the '#'.
    std::vector<std::string> comments;
    std::uint64_t hash = 0;
};

/// Throws ConfigError naming the offending key.
ScenarioConfig parse_config(std::string_view text, std::string name);
ScenarioConfig load_config(const std::filesystem::path& path);

/// Existing file path, or the bundled config of that name.
std::filesystem::path resolve_scenario(std::string_view name_or_path);

struct ScenarioInfo
{
    std::string name;
    std::string description;
};

std::vector<ScenarioInfo> bundled_scenarios();

struct Table
{
    std::vector<std::string> preamble;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

struct RunOptions
{
    unsigned threads = 1;
    /// Overrides numerics.quadrature_rel_tol.
    std::optional<double> tolerance;
};

Table run_scenario(const ScenarioConfig& config, const RunOptions& opt = {});

/// '#' preamble, header row, then rows in %.10e.
void write_csv(std::ostream& out, const Table& table);

std::uint64_t fnv1a64(std::string_view bytes);

/**
 * Calls f(i) for i in [0, n) on up to `threads` workers. Each index is
 * handled exactly once; the exception of the lowest failing index is
 * rethrown after all workers finish.
 */
template <class F>
void parallel_for(std::size_t n, unsigned threads, F&& f)
{
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                f(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const std::size_t count = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(n, 1));
    std::vector<std::jthread> pool;
    for (std::size_t t = 1; t < count; ++t)
        pool.emplace_back(worker);
    worker();
    pool.clear();
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
}

}  // namespace nrt
