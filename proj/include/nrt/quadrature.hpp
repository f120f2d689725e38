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
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <tuple>
#include <vector>

#include "nrt/errors.hpp"

namespace nrt::quad {

template <class T>
struct Result
{
    T value{};
    double error = 0.0;
    std::size_t evaluations = 0;
};

struct Options
{
    double rel_tol = 1e-6;
    double abs_tol = 0.0;
    std::size_t max_intervals = 4000;
    /// Return the best estimate instead of throwing when the budget runs out.
    bool allow_unconverged = false;
};

namespace detail {

// 21-point Kronrod extension of the 10-point Gauss rule (QUADPACK qk21).
inline constexpr double xgk[11] = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
inline constexpr double wgk[11] = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525634473, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
inline constexpr double wg[5] = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

template <class T>
struct Segment
{
    double a, b;
    T value;
    double error;
};

template <class T, class F>
Segment<T> kronrod21(F& f, double a, double b)
{
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    T fv[21];
    fv[10] = f(center);
    for (int j = 0; j < 10; ++j) {
        const double dx = half * xgk[j];
        fv[j] = f(center - dx);
        fv[20 - j] = f(center + dx);
    }

    T kronrod = wgk[10] * fv[10];
    T gauss{};
    for (int j = 0; j < 10; ++j) {
        kronrod += wgk[j] * (fv[j] + fv[20 - j]);
        if (j % 2 == 1)
            gauss += wg[j / 2] * (fv[j] + fv[20 - j]);
    }
    const T mean = 0.5 * kronrod;
    double resabs = wgk[10] * std::abs(fv[10]);
    double resasc = wgk[10] * std::abs(fv[10] - mean);
    for (int j = 0; j < 10; ++j) {
        resabs += wgk[j] * (std::abs(fv[j]) + std::abs(fv[20 - j]));
        resasc += wgk[j] * (std::abs(fv[j] - mean) + std::abs(fv[20 - j] - mean));
    }
    const double scale = std::abs(half);
    resabs *= scale;
    resasc *= scale;

    double err = std::abs((kronrod - gauss) * half);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps))
        err = std::max(50.0 * eps * resabs, err);

    return {a, b, kronrod * half, err};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod integration over the union of the
/// segments delimited by `breakpoints` (sorted, at least two entries).
/// T is double or std::complex<double>.
template <class T, class F>
Result<T> integrate(F&& f, std::span<const double> breakpoints, const Options& opt = {})
{
    using detail::Segment;
    std::vector<Segment<T>> segs;
    segs.reserve(std::max<std::size_t>(breakpoints.size(), 64));
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        if (breakpoints[i + 1] > breakpoints[i])
            segs.push_back(detail::kronrod21<T>(f, breakpoints[i], breakpoints[i + 1]));
    }

    auto by_error = [](const Segment<T>& l, const Segment<T>& r) { return l.error < r.error; };
    std::make_heap(segs.begin(), segs.end(), by_error);

    auto totals = [&segs]() {
        T v{};
        double e = 0.0;
        for (const auto& s : segs) {
            v += s.value;
            e += s.error;
        }
        return std::pair{v, e};
    };

    std::size_t evals = 21 * segs.size();
    auto [value, error] = totals();
    std::size_t steps = 0;
    while (error > std::max(opt.abs_tol, opt.rel_tol * std::abs(value))) {
        if (segs.empty() || segs.size() >= opt.max_intervals) {
            if (opt.allow_unconverged)
                break;
            throw IntegrationError("adaptive quadrature exceeded its interval budget", error);
        }
        std::pop_heap(segs.begin(), segs.end(), by_error);
        const Segment<T> worst = segs.back();
        segs.pop_back();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // Interval cannot be split further in double precision.
            segs.push_back(worst);
            std::push_heap(segs.begin(), segs.end(), by_error);
            if (opt.allow_unconverged)
                break;
            throw IntegrationError("adaptive quadrature hit the resolution limit", error);
        }
        const Segment<T> left = detail::kronrod21<T>(f, worst.a, mid);
        const Segment<T> right = detail::kronrod21<T>(f, mid, worst.b);
        evals += 42;
        segs.push_back(left);
        std::push_heap(segs.begin(), segs.end(), by_error);
        segs.push_back(right);
        std::push_heap(segs.begin(), segs.end(), by_error);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        // Running sums drift under cancellation; resynchronise periodically.
        if (++steps % 64 == 0)
            std::tie(value, error) = totals();
    }
    std::tie(value, error) = totals();
    return {value, error, evals};
}

template <class T, class F>
Result<T> integrate(F&& f, double a, double b, const Options& opt = {})
{
    const double bp[2] = {a, b};
    return integrate<T>(std::forward<F>(f), std::span<const double>(bp, 2), opt);
}

struct PeriodicOptions
{
    double rel_tol = 1e-6;
    double abs_tol = 0.0;
    std::size_t min_intervals = 32;
    std::size_t max_intervals = 1u << 14;
    bool allow_unconverged = false;
};

/// Integral of an even, 2 pi-periodic function over a full period, using the
/// trapezoid rule on [0, pi] with repeated interval doubling. Each doubling
/// reuses all previous samples; the error estimate is the change between the
/// last two refinements.
template <class T, class F>
Result<T> integrate_periodic_even(F&& f, const PeriodicOptions& opt = {})
{
    constexpr double period_half = std::numbers::pi;
    std::size_t n = std::max<std::size_t>(opt.min_intervals, 2);

    T sum = 0.5 * (f(0.0) + f(period_half));
    for (std::size_t i = 1; i < n; ++i)
        sum += f(period_half * static_cast<double>(i) / static_cast<double>(n));
    std::size_t evals = n + 1;

    T estimate = 2.0 * sum * (period_half / static_cast<double>(n));
    double error = std::numeric_limits<double>::infinity();
    while (n < opt.max_intervals) {
        for (std::size_t i = 0; i < n; ++i)
            sum += f(period_half * (2.0 * static_cast<double>(i) + 1.0) / (2.0 * static_cast<double>(n)));
        evals += n;
        n *= 2;
        const T refined = 2.0 * sum * (period_half / static_cast<double>(n));
        error = std::abs(refined - estimate);
        estimate = refined;
        if (error <= std::max(opt.abs_tol, opt.rel_tol * std::abs(estimate)))
            return {estimate, error, evals};
    }
    if (!opt.allow_unconverged)
        throw IntegrationError("periodic trapezoid exceeded its refinement budget", error);
    return {estimate, error, evals};
}

}  // namespace nrt::quad
