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

#include <gtest/gtest.h>

#include <random>

#include "ceresa/dixon.hpp"
#include "ceresa/quadrature.hpp"

using namespace ceresa;
using namespace ceresa::specfun;

namespace {

mpq_class Q(long p, long q = 1) {
    mpq_class r(p, q);
    r.canonicalize();
    return r;
}

void expect_all_agree(const std::vector<DixonMember>& fam, const BoundedReal& ref) {
    for (const auto& m : fam) {
        if (!m.value) continue;
        EXPECT_TRUE(m.value->overlaps(ref)) << "member " << m.index << ": " << m.value->str(30) << " vs "
                                            << ref.str(30);
    }
}

}  // namespace

TEST(Dixon, UnitExponentsGiveOneHalf) {
    auto fam = dixon_family({Q(1), Q(1), Q(1), Q(1)}, 30);
    ASSERT_EQ(fam.size(), 10u);
    int evaluated = 0;
    for (auto& m : fam) evaluated += m.value.has_value();
    EXPECT_GE(evaluated, 7);  // members with margin 1 - a2, 1 - b1 are dropped at the boundary
    expect_all_agree(fam, BoundedReal::from_rational(Q(1, 2), 128));
}

TEST(Dixon, SymmetricHalvesGiveHalfBetaSquared) {
    // a1 = a2, b1 = b2 makes the integrand symmetric, so I = B(a, b)^2 / 2
    for (auto [a, b] : {std::pair{Q(1, 2), Q(1, 2)}, std::pair{Q(2, 3), Q(1, 5)}}) {
        auto fam = dixon_family({a, a, b, b}, 35);
        BoundedReal B = gamma_quotient_prec({a, b}, {a + b}, 140);
        expect_all_agree(fam, B * B * Q(1, 2));
        EXPECT_TRUE(fam[8].value.has_value());  // sum of exponents exceeds 1 in both cases
    }
}

TEST(Dixon, NinthMemberNeedsExponentSumAboveOne) {
    auto small = dixon_family({Q(1, 8), Q(1, 8), Q(1, 8), Q(1, 8)}, 25);
    EXPECT_FALSE(small[8].value.has_value());
    EXPECT_EQ(small[8].margin, Q(-1, 2));
    int evaluated = 0;
    for (auto& m : small) evaluated += m.value.has_value();
    EXPECT_EQ(evaluated, 9);
    for (auto& m : small)
        if (m.value) {
            EXPECT_TRUE(m.value->overlaps(*small[9].value)) << m.index;
        }

    auto half = dixon_family({Q(1, 2), Q(1, 2), Q(1, 2), Q(1, 2)}, 25);
    EXPECT_TRUE(half[8].value.has_value());
}

TEST(Dixon, MembersAgreePairwiseOnRandomExponents) {
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> num(1, 99);
    for (int it = 0; it < 8; ++it) {
        EulerExponents x{Q(num(rng), 100), Q(num(rng), 100), Q(num(rng), 100), Q(num(rng), 100)};
        auto fam = dixon_family(x, 30);
        for (auto& a : fam)
            for (auto& b : fam)
                if (a.value && b.value) {
                    EXPECT_TRUE(a.value->overlaps(*b.value)) << a.index << " " << b.index;
                }
    }
}

TEST(Dixon, RejectsOutOfRangeExponents) {
    EXPECT_THROW(dixon_family({Q(0), Q(1, 2), Q(1, 2), Q(1, 2)}, 20), InvalidArgument);
    EXPECT_THROW(dixon_family({Q(3, 2), Q(1, 2), Q(1, 2), Q(1, 2)}, 20), InvalidArgument);
}

TEST(Quadrature, MatchesClosedFormsAndTenthMember) {
    // all ones: area of the triangle
    auto tri = euler_double_integral({1, 1, 1, 1, 14, 9});
    EXPECT_NEAR(static_cast<double>(tri.value), 0.5, 1e-14);
    // symmetric case: B(1/2, 1/2)^2 / 2 = pi^2 / 2
    auto sym = euler_double_integral({0.5L, 0.5L, 0.5L, 0.5L, 14, 9});
    EXPECT_NEAR(static_cast<double>(sym.value), 4.934802200544679, 1e-12);
    EXPECT_LT(static_cast<double>(sym.err_estimate), 1e-12);

    for (auto x : {EulerExponents{Q(1, 5), Q(3, 5), Q(2, 5), Q(4, 5)}, EulerExponents{Q(4, 5), Q(1, 5), Q(1, 5), Q(2, 5)},
                   EulerExponents{Q(1, 7), Q(6, 7), Q(3, 7), Q(1)}}) {
        auto q = euler_double_integral(
            {static_cast<long double>(x.alpha1.get_d()), static_cast<long double>(x.beta1.get_d()),
             static_cast<long double>(x.alpha2.get_d()), static_cast<long double>(x.beta2.get_d()), 13, 9});
        BoundedReal closed = evaluate(dixon_expressions(x)[9], 20);
        EXPECT_NEAR(static_cast<double>(q.value), closed.to_double(), 1e-11 * std::max(1.0, closed.to_double()));
    }
}

TEST(Quadrature, RejectsBadSpecs) {
    EXPECT_THROW(euler_double_integral({0, 1, 1, 1, 10, 5}), InvalidArgument);
    EXPECT_THROW(euler_double_integral({1, 1, 1, 1, 20, 5}), InvalidArgument);
}
