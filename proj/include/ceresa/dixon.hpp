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

// Ten Gamma-quotient times 3F2(1) expressions for the iterated Euler
// integral, related by Dixon's transformation.

#include <array>
#include <cmath>
#include <optional>
#include <vector>

#include "ceresa/hypergeometric.hpp"

namespace ceresa::specfun {

struct EulerExponents {
    mpq_class alpha1, alpha2, beta1, beta2;
    mpq_class sum() const { return alpha1 + alpha2 + beta1 + beta2; }
};

struct DixonExpression {
    int index = 0;  // 1..10
    std::vector<mpq_class> gamma_num, gamma_den;
    Hyp3F2Params series;
};

struct DixonMember {
    int index = 0;
    mpq_class margin;                  // convergence margin of the 3F2
    std::optional<BoundedReal> value;  // empty when the series diverges
};

inline std::array<DixonExpression, 10> dixon_expressions(const EulerExponents& x) {
    const mpq_class &a1 = x.alpha1, &a2 = x.alpha2, &b1 = x.beta1, &b2 = x.beta2;
    const mpq_class S = x.sum();
    return {{
        {1, {a1, b2, a1 + a2}, {a1 + 1, a1 + a2 + b2}, {a1, 1 - b1, a1 + a2, a1 + 1, a1 + a2 + b2}},
        {2, {a1, b2, b1 + b2}, {b2 + 1, a1 + b1 + b2}, {1 - a2, b2, b1 + b2, b2 + 1, a1 + b1 + b2}},
        {3, {a1, b2, a1 + a2, b1 + b2}, {a1 + 1, a2 + b2, a1 + b1 + b2}, {a1, 1 - a2, a1 + b1, a1 + 1, a1 + b1 + b2}},
        {4, {a1, b2, a1 + a2, b1 + b2}, {b2 + 1, a1 + b1, a1 + a2 + b2}, {1 - b1, b2, a2 + b2, b2 + 1, a1 + a2 + b2}},
        {5, {a1, a1 + a2, b1 + b2}, {a1 + 1, S}, {a1 + a2, a1 + b1, 1, a1 + 1, S}},
        {6, {a1 + a2, b2, b1 + b2}, {b2 + 1, S}, {a2 + b2, b1 + b2, 1, b2 + 1, S}},
        {7, {a1, b2, a1 + a2, b1 + b2}, {1 - a2, a1 + a2 + b2, S}, {a1 + a2, a2 + b2, S - 1, a1 + a2 + b2, S}},
        {8, {a1, b2, a1 + a2, b1 + b2}, {1 - b1, a1 + b1 + b2, S}, {a1 + b1, b1 + b2, S - 1, a1 + b1 + b2, S}},
        {9, {a1, b2, a1 + a2, b1 + b2}, {a1 + 1, b2 + 1, S - 1}, {1 - a2, 1 - b1, 1, a1 + 1, b2 + 1}},
        {10, {a1, b2, a1 + a2, b1 + b2}, {a1 + a2 + b2, a1 + b1 + b2}, {a1, b2, S - 1, a1 + a2 + b2, a1 + b1 + b2}},
    }};
}

inline BoundedReal evaluate(const DixonExpression& ex, int digits) {
    mpfr_prec_t prec = bits_for_digits(digits) + 16;
    BoundedReal g = gamma_quotient_signed_prec(ex.gamma_num, ex.gamma_den, prec);
    int extra = static_cast<int>(std::ceil(std::log10(std::max(1.0, std::fabs(g.to_double()))))) + 2;
    return g * hyp3f2_unit(ex.series, digits + extra);
}

// All ten members. A member whose series has nonpositive margin is reported
// without a value rather than evaluated.
inline std::vector<DixonMember> dixon_family(const EulerExponents& x, int digits) {
    for (const mpq_class* p : {&x.alpha1, &x.alpha2, &x.beta1, &x.beta2})
        if (*p <= 0 || *p > 1) throw InvalidArgument("dixon_family: exponents must lie in (0, 1]");
    std::vector<DixonMember> out;
    for (const auto& ex : dixon_expressions(x)) {
        DixonMember m;
        m.index = ex.index;
        m.margin = ex.series.margin();
        if (m.margin > 0) m.value = evaluate(ex, digits);
        out.push_back(std::move(m));
    }
    return out;
}

}  // namespace ceresa::specfun
