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

// Integer relation search by LLL, used as a non-conclusive diagnostic: does a
// real number satisfy a small rational relation with a basis of the real
// subfield of Q(mu_N)? A negative answer only bounds the size of any relation.

#include <cmath>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "ceresa/bounded_real.hpp"
#include "ceresa/cyclotomic.hpp"
#include "ceresa/errors.hpp"

namespace ceresa {

// LLL reduction (delta = 3/4) of integer row vectors, exact rational Gram-Schmidt.
inline void lll_reduce(std::vector<std::vector<mpz_class>>& b) {
    const size_t m = b.size();
    if (m == 0) return;
    std::vector<std::vector<mpq_class>> mu(m, std::vector<mpq_class>(m, 0));
    std::vector<mpq_class> B(m);
    std::vector<std::vector<mpq_class>> bs(m);

    auto gso = [&]() {
        for (size_t i = 0; i < m; ++i) {
            bs[i].assign(b[i].begin(), b[i].end());
            for (size_t j = 0; j < i; ++j) {
                mpq_class d = 0;
                for (size_t t = 0; t < b[i].size(); ++t) d += mpq_class(b[i][t]) * bs[j][t];
                mu[i][j] = B[j] == 0 ? mpq_class(0) : mpq_class(d / B[j]);
                for (size_t t = 0; t < bs[i].size(); ++t) bs[i][t] -= mu[i][j] * bs[j][t];
            }
            B[i] = 0;
            for (auto& x : bs[i]) B[i] += x * x;
        }
    };
    gso();
    size_t k = 1;
    const mpq_class delta(3, 4);
    while (k < m) {
        for (size_t jj = k; jj-- > 0;) {
            mpq_class q = mu[k][jj];
            if (abs(q) <= mpq_class(1, 2)) continue;
            mpz_class r;
            mpz_class num = q.get_num() * 2 + q.get_den();
            mpz_class den = q.get_den() * 2;
            mpz_fdiv_q(r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());  // round(q)
            for (size_t t = 0; t < b[k].size(); ++t) b[k][t] -= r * b[jj][t];
            for (size_t t = 0; t < jj; ++t) mu[k][t] -= r * mu[jj][t];
            mu[k][jj] -= r;
        }
        if (B[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * B[k - 1]) {
            ++k;
        } else {
            std::swap(b[k], b[k - 1]);
            gso();
            k = std::max<size_t>(k - 1, 1);
        }
    }
}

struct RelationSearch {
    bool relation_found = false;
    std::vector<mpz_class> coefficients;  // c_0 for x, then the basis coefficients
    Real residual;                        // |c_0 x + sum c_j v_j|
    double norm_lower_bound = 0;          // any relation has Euclidean norm at least this
    std::string basis;                    // human-readable basis description
};

// Searches for c_0 x + sum_j c_j (zeta^j + zeta^-j) = 0 with j = 0..phi(N)/2 - 1
// (j = 0 contributes the constant 1), using `digits` significant digits of x.
inline RelationSearch cyclotomic_relation_search(const BoundedReal& x, unsigned long n, int digits) {
    if (digits < 10) throw InvalidArgument("relation search needs at least 10 digits");
    const unsigned long half = std::max(1ul, cyclo::totient(n) / 2);
    mpfr_prec_t prec = bits_for_digits(digits) + 32;
    std::vector<Real> v;
    v.emplace_back(x.value());
    std::string desc = "x, 1";
    for (unsigned long j = 0; j < half; ++j) {
        Real c(prec);
        if (j == 0) {
            mpfr_set_ui(c.get(), 1, MPFR_RNDN);
        } else {
            mpfr_const_pi(c.get(), MPFR_RNDN);
            mpfr_mul_ui(c.get(), c.get(), 2 * j, MPFR_RNDN);
            mpfr_div_ui(c.get(), c.get(), n, MPFR_RNDN);
            mpfr_cos(c.get(), c.get(), MPFR_RNDN);
            mpfr_mul_ui(c.get(), c.get(), 2, MPFR_RNDN);
            desc += ", 2cos(2pi*" + std::to_string(j) + "/" + std::to_string(n) + ")";
        }
        v.push_back(std::move(c));
    }
    // the usable digits are capped by the enclosure of x
    double err_digits = x.err().is_zero() ? digits : -std::log10(std::max(1e-300, x.err().to_double()));
    int D = std::max(6, std::min(digits, static_cast<int>(err_digits)) - 2);

    const size_t m = v.size();
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(D));
    std::vector<std::vector<mpz_class>> basis(m, std::vector<mpz_class>(m + 1, 0));
    Real t(prec);
    for (size_t i = 0; i < m; ++i) {
        basis[i][i] = 1;
        mpfr_mul_z(t.get(), v[i].get(), scale.get_mpz_t(), MPFR_RNDN);
        mpfr_round(t.get(), t.get());
        mpz_class z;
        mpfr_get_z(z.get_mpz_t(), t.get(), MPFR_RNDN);
        basis[i][m] = z;
    }
    lll_reduce(basis);

    RelationSearch out;
    out.basis = desc;
    out.coefficients.assign(basis[0].begin(), basis[0].begin() + static_cast<long>(m));
    Real acc(prec), term(prec);
    mpfr_set_ui(acc.get(), 0, MPFR_RNDN);
    for (size_t i = 0; i < m; ++i) {
        mpfr_mul_z(term.get(), v[i].get(), out.coefficients[i].get_mpz_t(), MPFR_RNDN);
        mpfr_add(acc.get(), acc.get(), term.get(), MPFR_RNDN);
    }
    mpfr_abs(acc.get(), acc.get(), MPFR_RNDN);
    out.residual = acc;
    // a genuine relation leaves a residual near the working precision
    out.relation_found = out.coefficients[0] != 0 && acc.to_double() < std::pow(10.0, -0.75 * D);
    double b1 = 0;
    for (const auto& z : basis[0]) b1 += z.get_d() * z.get_d();
    out.norm_lower_bound = std::sqrt(b1) / std::pow(2.0, (static_cast<double>(m) - 1) / 2);
    return out;
}

}  // namespace ceresa
