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

// Abel-Jacobi values of W_k - W_k^- on Fermat curves:
//
//   f(N, k) = k! 2 N^(2k) sum_{0<h<N/2, (h,N)=1} Gamma(1-h/N)^4 / Gamma(1-2h/N)^2 3F2(h/N, h/N, 1-2h/N; 1, 1; 1)
//
// with fractional parts, integrality verdicts, scans over multiples, and the
// Klein quartic variant on the degree 7 curve.

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "ceresa/bounded_real.hpp"
#include "ceresa/extalg.hpp"
#include "ceresa/fermat.hpp"
#include "ceresa/gamma.hpp"
#include "ceresa/hypergeometric.hpp"
#include "ceresa/parallel.hpp"

namespace ceresa {

enum class Verdict { NonIntegral, Inconclusive };

inline const char* verdict_name(Verdict v) { return v == Verdict::NonIntegral ? "non-integral" : "inconclusive"; }

struct CeresaResult {
    unsigned long n = 0;
    unsigned long k = 0;
    BoundedReal value;
    Real frac;          // value - floor(value), in [0, 1)
    Real int_distance;  // distance from value to the nearest integer
    Real err;           // absolute error bound on value
    size_t h_terms = 0;
    Verdict verdict = Verdict::Inconclusive;
    int digits = 0;     // working digits after escalation
    std::string note;   // failure message or escalation hint
    bool failed = false;
};

// Distance above which a value counts as certainly non-integral: 10 x err.
inline constexpr unsigned kVerdictMargin = 10;
// f_value keeps escalating until err drops below this.
inline constexpr double kTargetErr = 1e-8;

inline unsigned long max_k(unsigned long n) {
    unsigned long g = (n - 1) * (n - 2) / 2;
    return g - 2;
}

// Fills frac, int_distance, err and verdict from value.
inline void classify(CeresaResult& r) {
    const BoundedReal& v = r.value;
    mpfr_prec_t p = v.precision();
    Real fl(p);
    mpfr_floor(fl.get(), v.value().get());
    r.frac = Real(p);
    mpfr_sub(r.frac.get(), v.value().get(), fl.get(), MPFR_RNDN);
    Real up(p);
    mpfr_ui_sub(up.get(), 1, r.frac.get(), MPFR_RNDN);
    r.int_distance = Real(p);
    mpfr_min(r.int_distance.get(), r.frac.get(), up.get(), MPFR_RNDN);
    r.err = v.err();
    Real need = ub::mul_d(r.err, kVerdictMargin);
    r.verdict = mpfr_cmp(r.int_distance.get(), need.get()) > 0 ? Verdict::NonIntegral : Verdict::Inconclusive;
}

// Verdict for an externally supplied enclosure.
inline CeresaResult classify_value(unsigned long n, unsigned long k, const BoundedReal& value) {
    CeresaResult r;
    r.n = n;
    r.k = k;
    r.value = value;
    classify(r);
    return r;
}

namespace detail {

inline mpz_class prefactor(unsigned long n, unsigned long k) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), n, 2 * k);
    return p * 2 * extalg::factorial(k);
}

inline int log10_ceil(const mpz_class& x) { return static_cast<int>(mpz_sizeinbase(x.get_mpz_t(), 10)); }

inline std::vector<long> half_units(unsigned long n) {
    std::vector<long> out;
    for (long h = 1; 2 * h < static_cast<long>(n); ++h)
        if (std::gcd(static_cast<unsigned long>(h), n) == 1) out.push_back(h);
    return out;
}

// Gamma(1-x)^4 / Gamma(1-2x)^2 3F2(x, x, 1-2x; 1, 1; 1), x = h/N, absolute error <= 10^-digits.
inline BoundedReal example_summand(long h, unsigned long n, int digits) {
    mpq_class x(h, static_cast<long>(n));
    x.canonicalize();
    mpq_class a = 1 - x, b = 1 - 2 * x;
    BoundedReal g = specfun::gamma_quotient_prec({a, a, a, a}, {b, b}, bits_for_digits(digits + 4) + 16);
    int extra = static_cast<int>(std::ceil(std::log10(std::max(1.0, g.to_double())))) + 2;
    return g * specfun::hyp3f2_unit({x, x, b, 1, 1}, digits + extra);
}

inline void check_k(unsigned long n, unsigned long k) {
    if (n < 4) throw InvalidArgument("degree must be at least 4, got " + std::to_string(n));
    if (k < 1 || k > max_k(n))
        throw InvalidArgument("k must lie in [1, " + std::to_string(max_k(n)) + "] for N=" + std::to_string(n) +
                              ", got " + std::to_string(k));
}

// Calls value_at(inner), where inner leaves room for the prefactor so the value has
// absolute error about 10^-digits; escalates until err <= kTargetErr.
template <class ValueFn>
CeresaResult evaluate_scaled(unsigned long n, unsigned long k, const mpz_class& pre, size_t terms, int digits,
                             ValueFn&& value_at) {
    CeresaResult r;
    r.n = n;
    r.k = k;
    r.h_terms = terms;
    int d = std::max(digits, 10);
    for (int attempt = 0; attempt < 4; ++attempt, d += 20) {
        int inner = d + log10_ceil(pre) + log10_ceil(mpz_class(static_cast<unsigned long>(terms + 1))) + 1;
        r.value = value_at(inner);
        r.digits = d;
        classify(r);
        if (r.err.to_double() <= kTargetErr) return r;
    }
    throw PrecisionExhausted("could not reach error " + std::to_string(kTargetErr) + " for N=" + std::to_string(n) +
                             ", k=" + std::to_string(k));
}

}  // namespace detail

// f(N, k) from the closed-form display.
inline CeresaResult f_value(unsigned long n, unsigned long k, int digits = 30, unsigned threads = 1) {
    detail::check_k(n, k);
    auto hs = detail::half_units(n);
    const mpz_class pre = detail::prefactor(n, k);
    return detail::evaluate_scaled(n, k, pre, hs.size(), digits, [&](int inner) {
        auto parts = parallel_map(hs.size(), threads, [&](size_t i) { return detail::example_summand(hs[i], n, inner); });
        BoundedReal s = BoundedReal::exact_int(0, bits_for_digits(inner) + 16);
        for (auto& p : parts) s += p;
        return s * mpq_class(pre);
    });
}

// Labels for the k-fold evaluation: the example triple followed by k - 1 opposite
// pairs (x, -x), x holomorphic, avoiding the triple and its negatives.
inline std::vector<fermat::FermatIndex> cycle_labels(const fermat::FermatCurve& c, unsigned long k) {
    using fermat::FermatIndex;
    auto t = fermat::example_triple(c);
    std::vector<FermatIndex> labels(t.idx.begin(), t.idx.end());
    auto taken = [&](const FermatIndex& x) {
        for (const auto& y : t.idx)
            if (x == y || x == fermat::negated(c, y)) return true;
        return false;
    };
    const long n = static_cast<long>(c.n());
    for (long a = 1; a < n && labels.size() < 2 * k + 1; ++a)
        for (long b = 1; b < n && labels.size() < 2 * k + 1; ++b) {
            if (!fermat::in_index_set(c, a, b)) continue;
            FermatIndex x{a, b};
            if (!fermat::is_holomorphic(c, x) || taken(x)) continue;
            labels.push_back(x);
            labels.push_back(fermat::negated(c, x));
        }
    if (labels.size() != 2 * k + 1) throw InvalidArgument("not enough index pairs for k=" + std::to_string(k));
    return labels;
}

// f(N, k) through the permutation sum: Phi_1 on the triple is 2 x the harmonic
// volume trace, <phi_{2i+2}, phi_{2i+3}> = N^2, and the sum carries k!.
inline CeresaResult f_value_via_cycles(unsigned long n, unsigned long k, int digits = 30) {
    detail::check_k(n, k);
    fermat::FermatCurve c(n);
    auto t = fermat::example_triple(c);
    auto labels = cycle_labels(c, k);
    mpz_class pre = detail::prefactor(n, k);
    const long n2 = static_cast<long>(n * n);
    return detail::evaluate_scaled(n, k, pre, fermat::holomorphic_twists(c, t).size(), digits, [&](int inner) {
        mpfr_prec_t prec = bits_for_digits(inner) + 16;
        auto phi1 = [&](const fermat::FermatIndex& x, const fermat::FermatIndex& y, const fermat::FermatIndex& z) {
            if (x == t.idx[0] && y == t.idx[1] && z == t.idx[2])
                return fermat::harmonic_volume_trace(c, t, inner) * mpq_class(2);
            auto flags = fermat::assumption_check(c, {x, y, z});
            bool opposite = fermat::negated(c, x) == y || fermat::negated(c, y) == z || fermat::negated(c, x) == z;
            if (!flags.sums_to_zero && !opposite) return BoundedReal::exact_int(0, prec);
            throw AssumptionViolated("no closed form for the triple " + x.str() + y.str() + z.str());
        };
        auto pair = [&](const fermat::FermatIndex& x, const fermat::FermatIndex& y) {
            if (fermat::negated(c, x) != y) return BoundedReal::exact_int(0, prec);
            // the first label of each pair carries the normalizing factor
            return BoundedReal::exact_int(fermat::is_holomorphic(c, x) ? n2 : -n2, prec);
        };
        return extalg::ceresa_eval_k(k, labels, phi1, pair, BoundedReal::exact_int(1, prec));
    });
}

// Klein quartic: k! 2 7^(2k) (G[3/7,6/7;2/7]^2 + G[5/7,6/7;4/7]^2 + G[3/7,5/7;1/7]^2) 3F2(1/7,2/7,4/7;1,1;1)
inline CeresaResult klein_value(unsigned long k, int digits = 30) {
    if (k < 1 || k > 13) throw InvalidArgument("k must lie in [1, 13] for the Klein quartic, got " + std::to_string(k));
    const mpz_class pre = detail::prefactor(7, k);
    return detail::evaluate_scaled(7, k, pre, 3, digits, [&](int inner) {
        mpfr_prec_t prec = bits_for_digits(inner + 4) + 16;
        auto sq = [&](long a, long b, long c) {
            BoundedReal g = specfun::gamma_quotient_prec({mpq_class(a, 7), mpq_class(b, 7)}, {mpq_class(c, 7)}, prec);
            return g * g;
        };
        BoundedReal gammas = sq(3, 6, 2) + sq(5, 6, 4) + sq(3, 5, 1);
        int extra = static_cast<int>(std::ceil(std::log10(gammas.to_double()))) + 2;
        return gammas * specfun::hyp3f2_unit({mpq_class(1, 7), mpq_class(2, 7), mpq_class(4, 7), 1, 1}, inner + extra) *
               mpq_class(pre);
    });
}

// f(N, k) with a verdict; escalates digits while inconclusive.
inline CeresaResult nonintegrality_check(unsigned long n, unsigned long k, int digits = 30, int max_digits = 240) {
    CeresaResult r = f_value(n, k, digits);
    for (int d = 2 * digits; r.verdict == Verdict::Inconclusive && d <= max_digits; d *= 2) r = f_value(n, k, d);
    if (r.verdict == Verdict::Inconclusive)
        r.note = "distance to nearest integer not above " + std::to_string(kVerdictMargin) +
                 "x error at " + std::to_string(r.digits) + " digits; retry with more digits";
    return r;
}

// One result per N in [n_min, n_max). A row that throws is reported with failed = true.
inline std::vector<CeresaResult> table1(unsigned long n_min, unsigned long n_max, unsigned long k = 1, int digits = 30,
                                        unsigned threads = 1) {
    if (n_min < 4 || n_max <= n_min) throw InvalidArgument("table range must satisfy 4 <= n_min < n_max");
    return parallel_map(n_max - n_min, threads, [&](size_t i) {
        unsigned long n = n_min + i;
        try {
            return f_value(n, k, digits);
        } catch (const Error& e) {
            CeresaResult r;
            r.n = n;
            r.k = k;
            r.failed = true;
            r.note = e.what();
            return r;
        }
    });
}

struct MultiplesScan {
    unsigned long n = 0, k = 0, m_max = 0;
    unsigned long verified_up_to = 0;            // all m <= this are non-integral
    std::optional<unsigned long> first_inconclusive;
    CeresaResult base;
};

// Checks m f(N,k) is non-integral for 1 <= m <= m_max by the 10 x (m err) rule.
inline MultiplesScan multiples_scan(unsigned long n, unsigned long k, unsigned long m_max, int digits = 30) {
    if (m_max < 1) throw InvalidArgument("m_max must be at least 1");
    MultiplesScan s;
    s.n = n;
    s.k = k;
    s.m_max = m_max;
    s.base = f_value(n, k, digits);
    Real budget = ub::mul_d(s.base.err, static_cast<double>(m_max));
    if (budget.to_double() >= 0.1)
        throw PrecisionExhausted("m_max x err = " + budget.sci(3) + " is not below 0.1; raise --digits");

    const BoundedReal& v = s.base.value;
    mpfr_prec_t p = v.precision() + 64;
    Real x(p), fl(p), frac(p), other(p);
    for (unsigned long m = 1; m <= m_max; ++m) {
        mpfr_mul_ui(x.get(), v.value().get(), m, MPFR_RNDN);
        mpfr_floor(fl.get(), x.get());
        mpfr_sub(frac.get(), x.get(), fl.get(), MPFR_RNDN);
        mpfr_ui_sub(other.get(), 1, frac.get(), MPFR_RNDN);
        mpfr_min(frac.get(), frac.get(), other.get(), MPFR_RNDN);
        Real need = ub::add(ub::mul_d(s.base.err, kVerdictMargin * static_cast<double>(m)), ub::mul_d(ub::ulp(x), 4));
        if (mpfr_cmp(frac.get(), need.get()) <= 0) {
            s.first_inconclusive = m;
            return s;
        }
        s.verified_up_to = m;
    }
    return s;
}

}  // namespace ceresa
