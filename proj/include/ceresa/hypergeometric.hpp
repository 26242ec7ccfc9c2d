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

// 3F2(a,b,c; d,e; 1) with a rigorous truncation bound.
//
// With t_n the series terms and r(n) = t_{n+1}/t_n, an exact rational
// corrector g(n) = sum_{j<=K} g_j n^(1-j) is chosen so that
//   g(n) - r(n) g(n+1) = 1 - eps(n),   eps(n) = P(n) / D(n) = O(n^-(K+1)).
// Telescoping gives sum_{n>=M} t_n = g(M) t_M + sum_{n>=M} eps(n) t_n and the
// last sum is bounded by C |t_M| (M^-(K+1) + M^-K / K) once |t_n| is
// nonincreasing past M.

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "ceresa/bounded_real.hpp"
#include "ceresa/cyclotomic.hpp"
#include "ceresa/errors.hpp"
#include "ceresa/gamma.hpp"

namespace ceresa::specfun {

struct Hyp3F2Params {
    mpq_class a, b, c;  // numerator
    mpq_class d, e;     // denominator

    // Saalschutzian excess d + e - a - b - c. The series converges iff it is positive.
    mpq_class margin() const { return d + e - a - b - c; }

    std::string str() const {
        return "3F2(" + a.get_str() + "," + b.get_str() + "," + c.get_str() + ";" + d.get_str() + "," + e.get_str() +
               ";1)";
    }
};

struct Hyp3F2Options {
    int digits = 30;                 // absolute accuracy target 10^-digits
    std::optional<long> terms;       // force the truncation point M
    std::optional<int> order;        // force the corrector order K
    long max_terms = 4'000'000;
};

struct Hyp3F2Result {
    BoundedReal value;
    long terms = 0;      // M
    int order = 0;       // K
    Real tail_bound;     // bound on sum eps(n) t_n
    Real rounding_bound; // floating point contribution
};

namespace detail {

// Generalized binomial coefficient C(r, i) for integer r, i >= 0.
inline mpz_class binom_int(long r, long i) {
    mpz_class num = 1, den = 1;
    for (long t = 0; t < i; ++t) {
        num *= r - t;
        den *= t + 1;
    }
    return num / den;
}

using cyclo::QPoly;

inline QPoly shifted_power(long k) {  // (n + 1)^k
    QPoly p(static_cast<size_t>(k) + 1);
    for (long i = 0; i <= k; ++i) p[i] = binom_int(k, i);
    return p;
}

struct Corrector {
    int K = 0;
    std::vector<mpq_class> g;  // g_0 .. g_K
    std::vector<mpq_class> p;  // eps numerator, degree <= K
};

inline Corrector build_corrector(const Hyp3F2Params& q, int K) {
    const mpq_class s = q.margin();
    // coefficients of (n+d)(n+e)(n+1) and (n+a)(n+b)(n+c), leading first
    mpq_class dl[4] = {1, q.d + q.e + 1, q.d * q.e + q.d + q.e, q.d * q.e};
    mpq_class al[4] = {1, q.a + q.b + q.c, q.a * q.b + q.b * q.c + q.c * q.a, q.a * q.b * q.c};
    auto dk = [&](long k) -> mpq_class { return (k >= 0 && k <= 3) ? dl[k] : mpq_class(0); };

    Corrector cr;
    cr.K = K;
    cr.g.assign(static_cast<size_t>(K) + 1, mpq_class(0));
    // coefficient of n^(4-m) in D3(n) g(n) - A3(n) g(n+1) = D3(n), m = 1..K+1
    for (long m = 1; m <= K + 1; ++m) {
        mpq_class acc = dk(m - 1);
        for (long j = 0; j <= m - 2; ++j) {
            mpq_class coef = dk(m - j);
            for (long k = 0; k <= std::min<long>(3, m - j); ++k)
                coef -= al[k] * mpq_class(binom_int(1 - j, m - j - k));
            acc -= coef * cr.g[j];
        }
        cr.g[m - 1] = acc / (s + (m - 1));
    }

    // P(n) = D3 (n+1)^(K-1) [n^(K-1) - sum g_j n^(K-j)] + A3 n^(K-1) sum g_j (n+1)^(K-j)
    QPoly d3 = {q.d * q.e, q.d * q.e + q.d + q.e, q.d + q.e + 1, 1};
    QPoly a3 = {q.a * q.b * q.c, q.a * q.b + q.b * q.c + q.c * q.a, q.a + q.b + q.c, 1};
    QPoly left(static_cast<size_t>(K) + 1, mpq_class(0));
    left[K - 1] += 1;
    for (int j = 0; j <= K; ++j) left[K - j] -= cr.g[j];
    // sum_j g_j (n+1)^(K-j) by Horner in (n+1)
    QPoly right;
    for (int j = 0; j <= K; ++j) {
        right = cyclo::poly_mul(right, QPoly{1, 1});
        if (right.empty()) right.assign(1, mpq_class(0));
        right[0] += cr.g[j];
    }
    QPoly nk(static_cast<size_t>(K), mpq_class(0));
    nk[K - 1] = 1;
    QPoly P = cyclo::poly_mul(cyclo::poly_mul(d3, shifted_power(K - 1)), left);
    QPoly R = cyclo::poly_mul(cyclo::poly_mul(a3, nk), right);
    QPoly sum(std::max(P.size(), R.size()), mpq_class(0));
    for (size_t i = 0; i < P.size(); ++i) sum[i] += P[i];
    for (size_t i = 0; i < R.size(); ++i) sum[i] += R[i];
    cyclo::trim(sum);
    if (sum.size() > static_cast<size_t>(K) + 1)
        throw Error("3F2 corrector: residual degree " + std::to_string(sum.size() - 1) + " exceeds order " +
                    std::to_string(K));
    cr.p = std::move(sum);
    return cr;
}

inline mpq_class ratio(const Hyp3F2Params& q, long n) {
    mpq_class N(n);
    return (N + q.a) * (N + q.b) * (N + q.c) / ((N + q.d) * (N + q.e) * (N + 1));
}

// Smallest M >= lo past every pole/sign change with 0 < r(n) <= 1 for all n >= M.
inline long monotone_start(const Hyp3F2Params& q, long lo) {
    mpq_class mx = std::max({-q.a, -q.b, -q.c, -q.d, -q.e});
    long M = std::max<long>(lo, static_cast<long>(std::floor(mx.get_d())) + 2);
    // q(n) = (n+d)(n+e)(n+1) - (n+a)(n+b)(n+c), convex with leading coefficient s + 1
    mpq_class A = q.margin() + 1;
    mpq_class B = q.d * q.e + q.d + q.e - (q.a * q.b + q.b * q.c + q.c * q.a);
    mpq_class C = q.d * q.e - q.a * q.b * q.c;
    for (;; ++M) {
        mpq_class m(M);
        if (A * m * m + B * m + C >= 0 && 2 * A * m + B >= 0) return M;
    }
}

// C = sum |p_i| M^(i-K) / L with L a lower bound of (1 + d/n)(1 + e/n), n >= M.
inline mpq_class eps_constant(const Corrector& cr, const Hyp3F2Params& q, long M) {
    mpq_class c = 0, Mq(M), pw = 1;
    for (int i = cr.K; i >= 0; --i) {
        if (static_cast<size_t>(i) < cr.p.size()) c += abs(cr.p[i]) * pw;
        pw /= Mq;
    }
    mpq_class L = 1;
    if (q.d < 0) L *= 1 + q.d / Mq;
    if (q.e < 0) L *= 1 + q.e / Mq;
    return c / L;
}

inline mpq_class eval_g(const Corrector& cr, long M) {
    mpq_class v = 0, pw = M;  // n^(1-j)
    for (int j = 0; j <= cr.K; ++j) {
        v += cr.g[j] * pw;
        pw /= M;
    }
    return v;
}

// Double-precision walk of the terms: |t_n| and running sum of |t_n|.
struct TermScan {
    std::vector<double> abs_t;
    std::vector<double> abs_sum;
};

inline void extend_scan(TermScan& s, const Hyp3F2Params& q, long upto) {
    double a = q.a.get_d(), b = q.b.get_d(), c = q.c.get_d(), d = q.d.get_d(), e = q.e.get_d();
    if (s.abs_t.empty()) {
        s.abs_t.push_back(1.0);
        s.abs_sum.push_back(1.0);
    }
    while (static_cast<long>(s.abs_t.size()) <= upto) {
        double n = static_cast<double>(s.abs_t.size() - 1);
        double r = std::fabs((n + a) * (n + b) * (n + c) / ((n + d) * (n + e) * (n + 1)));
        double t = s.abs_t.back() * r;
        s.abs_t.push_back(t);
        s.abs_sum.push_back(s.abs_sum.back() + t);
    }
}

inline double log2_remainder_estimate(const Corrector& cr, const Hyp3F2Params& q, long M, double abs_tM) {
    double C = eps_constant(cr, q, M).get_d();
    double m = static_cast<double>(M);
    double K = cr.K;
    double f = std::pow(m, -K) * (1.0 / m + 1.0 / K);
    if (abs_tM == 0 || C == 0) return -1e9;
    return std::log2(C) + std::log2(abs_tM) + std::log2(f);
}

inline Hyp3F2Result terminating_sum(const Hyp3F2Params& q, int digits) {
    mpq_class t = 1, sum = 1;
    for (long n = 0;; ++n) {
        t *= ratio(q, n);
        if (t == 0) break;
        sum += t;
    }
    Hyp3F2Result r{BoundedReal::from_rational(sum, bits_for_digits(digits) + 32), 0, 0, ub::zero(), ub::zero()};
    return r;
}

}  // namespace detail

inline Hyp3F2Result hyp3f2_unit_detailed(const Hyp3F2Params& q, const Hyp3F2Options& opt = {}) {
    using namespace detail;
    if (is_nonpositive_integer(q.d) || is_nonpositive_integer(q.e))
        throw DomainError("3F2: denominator parameter is a nonpositive integer in " + q.str());
    for (const mpq_class* x : {&q.a, &q.b, &q.c}) {
        if (is_nonpositive_integer(*x) && -*x < 100000) return terminating_sum(q, opt.digits);
    }
    if (q.margin() <= 0)
        throw DivergentSeries("3F2 at unit argument diverges: d+e-a-b-c = " + q.margin().get_str() + " in " + q.str());

    const int digits = opt.digits;
    const double log2_tol = -digits * 3.321928094887362;
    int K = opt.order.value_or(std::clamp(digits / 2 + 6, 8, 90));
    if (K < 1) throw InvalidArgument("3F2: corrector order must be positive");
    Corrector cr = build_corrector(q, K);

    long M0 = monotone_start(q, 16);
    long M;
    TermScan scan;
    if (opt.terms) {
        M = std::max(*opt.terms, M0);
    } else {
        M = M0;
        for (;;) {
            extend_scan(scan, q, M);
            if (log2_remainder_estimate(cr, q, M, scan.abs_t[M]) <= log2_tol - 4) break;
            if (M > opt.max_terms) throw BudgetExhausted("3F2: term budget exhausted for " + q.str());
            M = M + M / 4 + 1;
        }
    }
    extend_scan(scan, q, M);
    double abs_sum = std::max(1.0, scan.abs_sum[M]);

    mpfr_prec_t prec = bits_for_digits(digits) + static_cast<mpfr_prec_t>(std::log2(static_cast<double>(M)) +
                                                                          std::log2(abs_sum)) + 16;
    for (int attempt = 0; attempt < 6; ++attempt) {
        Real t(1, prec), S(1, prec);
        Real A = ub::from_double(1.0);  // sum |t_n| rounded up
        for (long n = 0; n < M; ++n) {
            mpq_class r = ratio(q, n);
            mpfr_mul_q(t.get(), t.get(), r.get_mpq_t(), MPFR_RNDN);
            if (n + 1 < M) {
                mpfr_add(S.get(), S.get(), t.get(), MPFR_RNDN);
                A = ub::add(A, ub::abs(t));
            }
        }
        // t now holds t_M; each of the M roundings is relative 2^(1-prec)
        const double u = std::ldexp(1.0, 1 - static_cast<int>(prec));
        const double mu = 1.02 * static_cast<double>(M) * u;  // relative error of computed t_n, n <= M
        Real rounding = ub::mul(A, ub::from_double(3.0 * static_cast<double>(M) * u));

        mpq_class gM = eval_g(cr, M);
        Real tail(prec);
        mpfr_mul_q(tail.get(), t.get(), gM.get_mpq_t(), MPFR_RNDN);
        rounding = ub::add(rounding, ub::add(ub::mul(ub::abs(tail), ub::from_double(mu)), ub::ulp(tail)));

        Real tM = ub::mul(ub::abs(t), ub::from_double(1.0 + mu));
        mpq_class C = eps_constant(cr, q, M);
        Real Mr(M, kErrPrec);
        Real f1(kErrPrec), f2(kErrPrec);
        mpfr_pow_si(f1.get(), Mr.get(), -(K + 1), MPFR_RNDU);
        mpfr_pow_si(f2.get(), Mr.get(), -K, MPFR_RNDU);
        mpfr_div_ui(f2.get(), f2.get(), static_cast<unsigned long>(K), MPFR_RNDU);
        Real remainder = ub::mul(ub::mul(ub::from_q(C), tM), ub::add(f1, f2));

        Real value(prec);
        int tv = mpfr_add(value.get(), S.get(), tail.get(), MPFR_RNDN);
        if (tv) rounding = ub::add(rounding, ub::ulp(value));
        Real err = ub::add(rounding, remainder);

        Real tol = ub::pow2(static_cast<long>(std::floor(log2_tol)));
        if (opt.terms || ub::le(err, tol))
            return Hyp3F2Result{BoundedReal(std::move(value), err), M, K, remainder, rounding};
        if (!ub::le(rounding, ub::mul_d(tol, 0.5))) prec += prec / 2;
        if (!ub::le(remainder, ub::mul_d(tol, 0.5))) {
            M += M / 2;
            if (M > opt.max_terms) break;
        }
    }
    throw PrecisionExhausted("3F2: rounding error did not settle for " + q.str());
}

inline BoundedReal hyp3f2_unit(const Hyp3F2Params& q, int digits) {
    Hyp3F2Options opt;
    opt.digits = digits;
    return hyp3f2_unit_detailed(q, opt).value;
}

// Gauss: 2F1(a,b;c;1) = Gamma(c) Gamma(c-a-b) / (Gamma(c-a) Gamma(c-b)), c - a - b > 0.
inline BoundedReal hyp2f1_unit(const mpq_class& a, const mpq_class& b, const mpq_class& c, int digits) {
    if (c - a - b <= 0) throw DivergentSeries("2F1 at unit argument needs c - a - b > 0");
    if (is_nonpositive_integer(c - a) || is_nonpositive_integer(c - b)) return BoundedReal::exact_int(0, bits_for_digits(digits));
    return gamma_quotient_signed_prec({c, c - a - b}, {c - a, c - b}, bits_for_digits(digits) + 8);
}

struct AppellF3Params {
    mpq_class alpha, alpha_p, beta, beta_p, gamma;
};

// F3(alpha, alpha', beta, beta'; gamma; 1, 1). Each row over m is a Gauss sum in
// closed form, which leaves
//   Gamma(g) Gamma(g-a-b) / (Gamma(g-a) Gamma(g-b)) * 3F2(a', b', g-a-b; g-a, g-b; 1).
// Converges when gamma > alpha + beta and gamma > alpha' + beta'.
inline BoundedReal appell_f3_unit(const AppellF3Params& p, int digits) {
    const mpq_class& g = p.gamma;
    if (g - p.alpha - p.beta <= 0 || g - p.alpha_p - p.beta_p <= 0)
        throw DivergentSeries("F3(1,1) needs gamma > alpha + beta and gamma > alpha' + beta'");
    if (is_nonpositive_integer(g)) throw DomainError("F3: gamma is a nonpositive integer");
    mpfr_prec_t prec = bits_for_digits(digits) + 16;
    BoundedReal pre = gamma_quotient_signed_prec({g, g - p.alpha - p.beta}, {g - p.alpha, g - p.beta}, prec);
    double scale = std::max(1.0, std::fabs(pre.to_double()));
    int extra = static_cast<int>(std::ceil(std::log10(scale))) + 2;
    BoundedReal s = hyp3f2_unit({p.alpha_p, p.beta_p, g - p.alpha - p.beta, g - p.alpha, g - p.beta}, digits + extra);
    return pre * s;
}

}  // namespace ceresa::specfun
