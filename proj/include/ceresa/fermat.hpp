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

// The Fermat curve x^N + y^N = 1: index sets, periods, iterated integrals
// along delta, kappa and kappa^{r,s}, and the harmonic volume of a triple.
//
// Exact quantities live in Q(mu_N) with xi = exp(2 pi i / N). A value that is
// affine in the real number int_delta w^{a,b} w^{c,d} is carried as a
// DeltaAffine and only evaluated numerically under an embedding xi -> zeta^h,
// where the delta integral becomes int_delta w^{ha,hb} w^{hc,hd}.

#include <array>
#include <cmath>
#include <compare>
#include <numeric>
#include <string>
#include <vector>

#include "ceresa/bounded_real.hpp"
#include "ceresa/chen.hpp"
#include "ceresa/cyclotomic.hpp"
#include "ceresa/dixon.hpp"
#include "ceresa/errors.hpp"
#include "ceresa/gamma.hpp"
#include "ceresa/parallel.hpp"

namespace ceresa::fermat {

using cyclo::CycloElem;
using cyclo::CyclotomicField;

class FermatCurve {
public:
    explicit FermatCurve(unsigned long n) : n_(n), field_(check(n)) {}

    unsigned long n() const { return n_; }
    unsigned long genus() const { return (n_ - 1) * (n_ - 2) / 2; }
    const CyclotomicField& field() const { return field_; }
    long residue(long a) const { return cyclo::mod(a, static_cast<long>(n_)); }
    bool is_unit(long h) const { return std::gcd(static_cast<unsigned long>(residue(h)), n_) == 1; }

    std::vector<long> units() const {
        std::vector<long> u;
        for (long h = 1; h < static_cast<long>(n_); ++h)
            if (is_unit(h)) u.push_back(h);
        return u;
    }

private:
    static unsigned long check(unsigned long n) {
        if (n < 4) throw InvalidArgument("Fermat curve degree must be at least 4, got " + std::to_string(n));
        return n;
    }

    unsigned long n_;
    CyclotomicField field_;
};

// (a, b) with a, b, a + b nonzero mod N, stored as residues in [0, N).
struct FermatIndex {
    long a = 0;
    long b = 0;
    auto operator<=>(const FermatIndex&) const = default;
    std::string str() const { return "(" + std::to_string(a) + "," + std::to_string(b) + ")"; }
};

struct LoopIndex {
    long r = 0;
    long s = 0;
};

inline bool in_index_set(const FermatCurve& c, long a, long b) {
    return c.residue(a) != 0 && c.residue(b) != 0 && c.residue(a + b) != 0;
}

inline FermatIndex make_index(const FermatCurve& c, long a, long b) {
    if (!in_index_set(c, a, b))
        throw InvalidArgument("(" + std::to_string(a) + "," + std::to_string(b) + ") is not in the index set mod " +
                              std::to_string(c.n()));
    return {c.residue(a), c.residue(b)};
}

inline FermatIndex scaled(const FermatCurve& c, const FermatIndex& x, long h) { return make_index(c, h * x.a, h * x.b); }
inline FermatIndex negated(const FermatCurve& c, const FermatIndex& x) { return scaled(c, x, -1); }

inline void require_index(const FermatCurve& c, const FermatIndex& x) {
    if (!in_index_set(c, x.a, x.b)) throw InvalidArgument("index " + x.str() + " not in the index set");
}

inline long angle_rep(const FermatCurve& c, long a) {
    long r = c.residue(a);
    if (r == 0) throw InvalidArgument("angle_rep: residue must be nonzero");
    return r;
}

inline bool is_holomorphic(const FermatCurve& c, const FermatIndex& x) {
    require_index(c, x);
    return angle_rep(c, x.a) + angle_rep(c, x.b) < static_cast<long>(c.n());
}

inline mpq_class angle_fraction(const FermatCurve& c, long a) {
    mpq_class q(angle_rep(c, a), static_cast<long>(c.n()));
    q.canonicalize();
    return q;
}

// int over (alpha^r beta^s)_* kappa of w^{a,b} = xi^(ar+bs) (1 - xi^a)(1 - xi^b)
inline CycloElem period_integral(const FermatCurve& c, const FermatIndex& x, const LoopIndex& loop) {
    require_index(c, x);
    const auto& F = c.field();
    return F.power(x.a * loop.r + x.b * loop.s) * (F.one() - F.power(x.a)) * (F.one() - F.power(x.b));
}

// B(<a>/N, <b>/N) / N, the period of the unnormalized form over delta.
inline BoundedReal form_normalization(const FermatCurve& c, const FermatIndex& x, int digits) {
    require_index(c, x);
    mpq_class al = angle_fraction(c, x.a), be = angle_fraction(c, x.b);
    return specfun::beta_prec(al, be, bits_for_digits(digits) + 8) * mpq_class(1, static_cast<long>(c.n()));
}

// int_delta w^{a1,b1} w^{a2,b2} for the normalized forms, in closed form:
// Gamma[a1+a2, b1+b2, a1+b1, a2+b2; a2, b1, a1+a2+b2, a1+b1+b2] 3F2(a1, b2, S-1; a1+a2+b2, a1+b1+b2; 1)
// with a_i = <a_i>/N, b_i = <b_i>/N, S = a1+a2+b1+b2.
inline BoundedReal delta_iterated_integral(const FermatCurve& c, const FermatIndex& x1, const FermatIndex& x2,
                                           int digits) {
    require_index(c, x1);
    require_index(c, x2);
    mpq_class a1 = angle_fraction(c, x1.a), b1 = angle_fraction(c, x1.b);
    mpq_class a2 = angle_fraction(c, x2.a), b2 = angle_fraction(c, x2.b);
    const mpq_class S = a1 + a2 + b1 + b2;
    specfun::DixonExpression ex{0,
                                {a1 + a2, b1 + b2, a1 + b1, a2 + b2},
                                {a2, b1, a1 + a2 + b2, a1 + b1 + b2},
                                {a1, b2, S - 1, a1 + a2 + b2, a1 + b1 + b2}};
    return specfun::evaluate(ex, digits);
}

// x * D + y with D the delta iterated integral of a fixed pair of forms.
struct DeltaAffine {
    CycloElem delta;
    CycloElem constant;

    friend DeltaAffine operator+(const DeltaAffine& u, const DeltaAffine& v) {
        return {u.delta + v.delta, u.constant + v.constant};
    }
    friend DeltaAffine operator+(const DeltaAffine& u, const CycloElem& y) { return {u.delta, u.constant + y}; }
    friend DeltaAffine operator-(const DeltaAffine& u, const CycloElem& y) { return {u.delta, u.constant - y}; }
    friend DeltaAffine operator*(const CycloElem& s, const DeltaAffine& u) { return {s * u.delta, s * u.constant}; }
    DeltaAffine operator-() const { return {-delta, -constant}; }
    friend bool operator==(const DeltaAffine& u, const DeltaAffine& v) {
        return u.delta == v.delta && u.constant == v.constant;
    }
};

using ExactPath = PathIntegrals<CycloElem, DeltaAffine>;

// Integrals of (w^{a,b}, w^{c,d}) along delta.
inline ExactPath delta_path(const FermatCurve& c) {
    const auto& F = c.field();
    return {F.one(), F.one(), DeltaAffine{F.one(), F.zero()}};
}

// Transport of path data by g = alpha^r beta^s, under which w^{a,b} pulls back to xi^(ar+bs) w^{a,b}.
inline ExactPath push(const FermatCurve& c, const FermatIndex& x1, const FermatIndex& x2, const LoopIndex& g,
                      const ExactPath& p) {
    const auto& F = c.field();
    CycloElem z1 = F.power(x1.a * g.r + x1.b * g.s);
    CycloElem z2 = F.power(x2.a * g.r + x2.b * g.s);
    return {z1 * p.first, z2 * p.second, (z1 * z2) * p.iterated};
}

// int_kappa w^{a,b} w^{c,d} = (1 - xi^(a+c))(1 - xi^(b+d)) D + (1 - xi^b)(xi^(a+c) + xi^(c+d) - xi^c - xi^d)
inline DeltaAffine kappa_exact(const FermatCurve& c, const FermatIndex& x1, const FermatIndex& x2) {
    require_index(c, x1);
    require_index(c, x2);
    const auto& F = c.field();
    auto z = [&](long e) { return F.power(e); };
    CycloElem one = F.one();
    return {(one - z(x1.a + x2.a)) * (one - z(x1.b + x2.b)),
            (one - z(x1.b)) * (z(x1.a + x2.a) + z(x2.a + x2.b) - z(x2.a) - z(x2.b))};
}

// int over kappa^{r,s} = delta . ((beta^s)_* delta)^-1 . (alpha^r beta^s)_* kappa . (beta^s)_* delta . delta^-1
inline DeltaAffine kappa_rs_exact(const FermatCurve& c, const LoopIndex& loop, const FermatIndex& x1,
                                  const FermatIndex& x2) {
    DeltaAffine k = kappa_exact(c, x1, x2);
    const auto& F = c.field();
    auto z = [&](long e) { return F.power(e); };
    CycloElem one = F.one();
    const long r = loop.r, s = loop.s;
    const long a = x1.a, b = x1.b, cc = x2.a, d = x2.b;
    return z((a + cc) * r + (b + d) * s) * k - z(a * r + b * s) * (one - z(a)) * (one - z(b)) * (one - z(d * s)) +
           z(cc * r + d * s) * (one - z(cc)) * (one - z(d)) * (one - z(b * s));
}

inline void require_unit(const FermatCurve& c, long h) {
    if (!c.is_unit(h)) throw InvalidArgument("embedding index must be a unit mod N, got " + std::to_string(h));
}

// sigma_h(u.delta) * int_delta w^{h x1} w^{h x2} + sigma_h(u.constant)
inline BoundedComplex evaluate(const FermatCurve& c, const DeltaAffine& u, const FermatIndex& x1,
                               const FermatIndex& x2, long h, int digits) {
    require_unit(c, h);
    BoundedComplex out = u.constant.embed(h, digits + 2);
    if (u.delta.is_zero()) return out;
    BoundedComplex coef = u.delta.embed(h, digits + 2);
    double mag = 1;
    for (auto x : u.delta.coefficients()) mag += std::fabs(x.get_d());
    int extra = static_cast<int>(std::ceil(std::log10(mag))) + 2;
    BoundedReal D = delta_iterated_integral(c, scaled(c, x1, h), scaled(c, x2, h), digits + extra);
    return out + coef * D;
}

inline BoundedComplex kappa_iterated_integral(const FermatCurve& c, const FermatIndex& x1, const FermatIndex& x2,
                                              long h, int digits) {
    return evaluate(c, kappa_exact(c, x1, x2), x1, x2, h, digits);
}

inline BoundedComplex kappa_rs_iterated_integral(const FermatCurve& c, const LoopIndex& loop, const FermatIndex& x1,
                                                 const FermatIndex& x2, long h, int digits) {
    return evaluate(c, kappa_rs_exact(c, loop, x1, x2), x1, x2, h, digits);
}

// <phi^{a,b}, phi^{c,d}> = N^2 (1 - xi^a)(1 - xi^b) / (1 - xi^(a+b)) if (c,d) = (-a,-b), else 0.
inline CycloElem phi_pairing(const FermatCurve& c, const FermatIndex& x1, const FermatIndex& x2) {
    require_index(c, x1);
    require_index(c, x2);
    const auto& F = c.field();
    if (negated(c, x1) != x2) return F.zero();
    CycloElem one = F.one();
    mpq_class n2(static_cast<long>(c.n() * c.n()));
    return n2 * (one - F.power(x1.a)) * (one - F.power(x1.b)) / (one - F.power(x1.a + x1.b));
}

struct AssumptionFlags {
    bool sums_to_zero = false;
    bool pairwise_parallel_holo = false;  // first two indices share type under every twist
    bool strong_holo = false;             // all three share type under every twist
};

inline AssumptionFlags assumption_check(const FermatCurve& c, const std::array<FermatIndex, 3>& t) {
    for (auto& x : t) require_index(c, x);
    AssumptionFlags f;
    f.sums_to_zero = c.residue(t[0].a + t[1].a + t[2].a) == 0 && c.residue(t[0].b + t[1].b + t[2].b) == 0;
    f.pairwise_parallel_holo = f.strong_holo = true;
    for (long h : c.units()) {
        bool h0 = is_holomorphic(c, scaled(c, t[0], h));
        bool h1 = is_holomorphic(c, scaled(c, t[1], h));
        bool h2 = is_holomorphic(c, scaled(c, t[2], h));
        if (h0 != h1) f.pairwise_parallel_holo = false;
        if (h0 != h1 || h1 != h2) f.strong_holo = false;
    }
    return f;
}

struct TripleConfig {
    std::array<FermatIndex, 3> idx;
    AssumptionFlags flags;
};

inline TripleConfig make_triple(const FermatCurve& c, const FermatIndex& x1, const FermatIndex& x2,
                                const FermatIndex& x3) {
    std::array<FermatIndex, 3> t{x1, x2, x3};
    return {t, assumption_check(c, t)};
}

// (1,-2), (-2,1), (1,1): valid for every N >= 4.
inline TripleConfig example_triple(const FermatCurve& c) {
    return make_triple(c, make_index(c, 1, -2), make_index(c, -2, 1), make_index(c, 1, 1));
}

// N = 7 only: (1,2), (2,4), (4,1).
inline TripleConfig klein_triple(const FermatCurve& c) {
    if (c.n() != 7) throw InvalidArgument("the Klein triple lives on the degree 7 curve");
    return make_triple(c, make_index(c, 1, 2), make_index(c, 2, 4), make_index(c, 4, 1));
}

inline void require_assumption(const TripleConfig& t) {
    if (!t.flags.sums_to_zero || !t.flags.pairwise_parallel_holo)
        throw AssumptionViolated("triple violates the sum-zero or same-type condition");
}

// Units h with (h a_i, h b_i) holomorphic for i = 1, 2, ascending.
inline std::vector<long> holomorphic_twists(const FermatCurve& c, const TripleConfig& t) {
    std::vector<long> out;
    for (long h : c.units())
        if (is_holomorphic(c, scaled(c, t.idx[0], h)) && is_holomorphic(c, scaled(c, t.idx[1], h))) out.push_back(h);
    return out;
}

// Exact form of
//   1/(1 - xi^-(a3+b3)) sum_{r,s} xi^(a3 r + b3 s) int_{kappa^{r,s}} w^{a1,b1} w^{a2,b2}
// as delta-coefficient plus cyclotomic part. The double loop runs over exponent
// counts of the monomials in the kappa^{r,s} expansion, then folds once.
inline DeltaAffine harmonic_volume_exact(const FermatCurve& c, const TripleConfig& t) {
    require_assumption(t);
    const long N = static_cast<long>(c.n());
    const auto& F = c.field();
    const FermatIndex &x1 = t.idx[0], &x2 = t.idx[1], &x3 = t.idx[2];
    const long a = x1.a, b = x1.b, cc = x2.a, d = x2.b;

    // Monomial tallies: sum_{r,s} w(r,s) * xi^(...) for each term shape
    std::vector<mpq_class> kap(N, 0), lead(N, 0), tail(N, 0);
    for (long r = 0; r < N; ++r) {
        for (long s = 0; s < N; ++s) {
            long w = x3.a * r + x3.b * s;
            kap[c.residue(w + (a + cc) * r + (b + d) * s)] += 1;
            long e2 = w + a * r + b * s;
            lead[c.residue(e2)] += 1;  // xi^e2 (1 - xi^(ds))
            lead[c.residue(e2 + d * s)] -= 1;
            long e3 = w + cc * r + d * s;
            tail[c.residue(e3)] += 1;  // xi^e3 (1 - xi^(bs))
            tail[c.residue(e3 + b * s)] -= 1;
        }
    }
    CycloElem one = F.one();
    CycloElem K = F.from_coefficients(kap), L = F.from_coefficients(lead), T = F.from_coefficients(tail);
    DeltaAffine sum = K * kappa_exact(c, x1, x2);
    CycloElem A = (one - F.power(a)) * (one - F.power(b));
    CycloElem C = (one - F.power(cc)) * (one - F.power(d));
    sum = sum - L * A + T * C;
    CycloElem inv = (one - F.power(-(x3.a + x3.b))).inverse();
    return inv * sum;
}

// m_sigma for sigma(xi) = zeta^h; requires both leading forms holomorphic under h.
inline BoundedComplex harmonic_volume_sigma(const FermatCurve& c, const TripleConfig& t, long h, int digits) {
    require_assumption(t);
    require_unit(c, h);
    if (!is_holomorphic(c, scaled(c, t.idx[0], h)) || !is_holomorphic(c, scaled(c, t.idx[1], h)))
        throw NotHolomorphic("twist h=" + std::to_string(h) + " does not make both leading forms holomorphic");
    return evaluate(c, harmonic_volume_exact(c, t), t.idx[0], t.idx[1], h, digits);
}

// N^2 sum over holomorphic twists h of int_delta w^{h a1, h b1} w^{h a2, h b2}.
inline BoundedReal harmonic_volume_trace(const FermatCurve& c, const TripleConfig& t, int digits,
                                         unsigned threads = 1) {
    require_assumption(t);
    auto hs = holomorphic_twists(c, t);
    const long N = static_cast<long>(c.n());
    int extra = static_cast<int>(std::ceil(std::log10(static_cast<double>(N * N) * (hs.size() + 1)))) + 1;
    auto terms = parallel_map(hs.size(), threads, [&](size_t i) {
        return delta_iterated_integral(c, scaled(c, t.idx[0], hs[i]), scaled(c, t.idx[1], hs[i]), digits + extra);
    });
    BoundedReal sum = BoundedReal::exact_int(0, bits_for_digits(digits + extra));
    for (auto& x : terms) sum += x;
    return sum * mpq_class(N * N);
}

}  // namespace ceresa::fermat
