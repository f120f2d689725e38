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

#include <stdexcept>
#include <string>

namespace nrt {

/// Argument outside the domain of a formula (pole, invalid index, bound violation).
class DomainError : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

/// Adaptive quadrature ran out of its evaluation budget.
class IntegrationError : public std::runtime_error
{
public:
    IntegrationError(const std::string& what, double error_estimate)
        : std::runtime_error(what + " (error estimate " + std::to_string(error_estimate) + ")"),
          m_error_estimate(error_estimate)
    {}

    double error_estimate() const noexcept { return m_error_estimate; }

private:
    double m_error_estimate;
};

/// Root finder failed to converge. Distinct from "no mode exists", which is
/// reported as an empty optional.
class RootFindError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Time integration could not make progress (step size underflow).
class StiffnessError : public std::runtime_error
{
public:
    StiffnessError(const std::string& what, double time_reached)
        : std::runtime_error(what + " at t = " + std::to_string(time_reached)),
          m_time_reached(time_reached)
    {}

    double time_reached() const noexcept { return m_time_reached; }

private:
    double m_time_reached;
};

/// Steady-state search did not converge within its time budget.
class ConvergenceError : public std::runtime_error
{
public:
    ConvergenceError(const std::string& what, double residual)
        : std::runtime_error(what + " (residual " + std::to_string(residual) + ")"),
          m_residual(residual)
    {}

    double residual() const noexcept { return m_residual; }

private:
    double m_residual;
};

/// A fit or estimator received too few usable samples.
class InsufficientDataError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Input state or configuration failed validation.
class ValidationError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

/// Scenario configuration is malformed; key() names the offending entry.
class ConfigError : public std::invalid_argument
{
public:
    ConfigError(const std::string& key, const std::string& what)
        : std::invalid_argument(key + ": " + what), m_key(key)
    {}

    const std::string& key() const noexcept { return m_key; }

private:
    std::string m_key;
};

}  // namespace nrt
