// Copyright 2026 The ceresa-harmonic Authors
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

// Independent numerical oracle for the iterated Euler integral
//   I = int_{0<u<v<1} u^(a1-1) (1-u)^(b1-1) v^(a2-1) (1-v)^(b2-1) du dv
// by nested tanh-sinh quadrature in extended precision.

#include <cmath>
#include <string>

#include "ceresa/errors.hpp"

namespace ceresa::specfun {

struct QuadratureResult {
    long double value = 0;
    long double err_estimate = 0;  // a posteriori, from successive levels
    int levels = 0;
    long evaluations = 0;
};

namespace detail {

inline constexpr long double kPi = 3.141592653589793238462643383279502884L;

// int_0^1 f(x, 1 - x) dx. f receives both x and its complement, each with
// full relative accuracy near its own endpoint.
template <class F>
QuadratureResult tanh_sinh_unit(F&& f, long double rel_tol, int max_level) {
    const long double t_max = 8.7L;  // keeps x >= 1e-4300 in long double
    long evals = 0;
    auto node_sum = [&](long double h, long k_start, long k_step, long double scale) {
        long double s = 0;
        for (int side = 0; side < 2; ++side) {
            for (long k = k_start;; k += k_step) {
                long double t = static_cast<long double>(k) * h * (side == 0 ? 1 : -1);
                if (k == 0 && side == 1) continue;
                if (std::fabs(t) > t_max) break;
                long double u = 0.5L * kPi * std::sinh(t);
                long double x = 1.0L / (1.0L + std::exp(-2.0L * u));
                long double xc = 1.0L / (1.0L + std::exp(2.0L * u));
                if (x == 0 || xc == 0) break;
                long double w = kPi * std::cosh(t) * x * xc;
                long double term = w * f(x, xc);
                ++evals;
                s += term;
                if (std::fabs(term) < 1e-30L * scale && std::fabs(t) > 2) break;
            }
        }
        return s;
    };

    long double h = 1;
    long double sum = node_sum(h, 0, 1, 1);
    long double prev = h * sum;
    QuadratureResult r;
    for (int level = 1; level <= max_level; ++level) {
        h /= 2;
        sum += node_sum(h, 1, 2, std::fabs(sum) + 1e-300L);
        long double cur = h * sum;
        r.value = cur;
        r.levels = level;
        r.err_estimate = std::fabs(cur - prev);
        prev = cur;
        if (level >= 3 && r.err_estimate <= rel_tol * std::fabs(cur)) break;
    }
    // floor for rounding accumulated over the nodes
    r.err_estimate = r.err_estimate + 64 * 1.1e-19L * std::fabs(r.value);
    r.evaluations = evals;
    return r;
}

}  // namespace detail

struct QuadratureSpec {
    long double alpha1, beta1, alpha2, beta2;  // exponents, each in (0, 1]
    int digits = 14;                           // relative target, at most 16
    int max_level = 9;                         // refinement budget
};

inline QuadratureResult euler_double_integral(const QuadratureSpec& spec) {
    for (long double x : {spec.alpha1, spec.beta1, spec.alpha2, spec.beta2})
        if (!(x > 0 && x <= 1)) throw InvalidArgument("quadrature exponents must lie in (0, 1]");
    if (spec.digits < 1 || spec.digits > 16) throw InvalidArgument("quadrature digits must be in [1, 16]");

    const long double a1 = spec.alpha1, b1 = spec.beta1, a2 = spec.alpha2, b2 = spec.beta2;
    const long double tol = std::pow(10.0L, -spec.digits);
    const long double inner_tol = tol / 10;
    const long double beta_full = std::exp(std::lgamma(a1) + std::lgamma(b1) - std::lgamma(a1 + b1));
    long inner_evals = 0;
    long double inner_err = 0;

    // B_v(a1, b1) = int_0^v u^(a1-1) (1-u)^(b1-1) du, given v and 1 - v
    auto incomplete = [&](long double v, long double vc) -> long double {
        QuadratureResult q;
        long double r;
        if (v <= 0.5L) {
            q = detail::tanh_sinh_unit(
                [&](long double x, long double) { return std::pow(x, a1 - 1) * std::pow(1 - v * x, b1 - 1); },
                inner_tol, spec.max_level);
            r = std::pow(v, a1) * q.value;
            q.err_estimate *= std::pow(v, a1);
        } else {
            q = detail::tanh_sinh_unit(
                [&](long double y, long double) { return std::pow(1 - vc * y, a1 - 1) * std::pow(y, b1 - 1); },
                inner_tol, spec.max_level);
            long double cut = std::pow(vc, b1) * q.value;
            q.err_estimate *= std::pow(vc, b1);
            r = beta_full - cut;
        }
        inner_evals += q.evaluations;
        if (std::fabs(r) > 0) inner_err = std::max(inner_err, q.err_estimate / std::fabs(r));
        return r;
    };

    QuadratureResult outer = detail::tanh_sinh_unit(
        [&](long double v, long double vc) {
            return std::pow(v, a2 - 1) * std::pow(vc, b2 - 1) * incomplete(v, vc);
        },
        tol, spec.max_level);
    outer.err_estimate += inner_err * std::fabs(outer.value);
    outer.evaluations += inner_evals;
    if (outer.err_estimate > tol * std::max<long double>(1, std::fabs(outer.value)))
        throw BudgetExhausted("quadrature did not reach 1e-" + std::to_string(spec.digits) + " within " +
                              std::to_string(spec.max_level) + " levels");
    return outer;
}

}  // namespace ceresa::specfun
