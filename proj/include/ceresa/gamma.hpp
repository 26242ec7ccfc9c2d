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

#include <gmpxx.h>
#include <mpfr.h>

#include <vector>

#include "ceresa/bounded_real.hpp"
#include "ceresa/errors.hpp"

namespace ceresa::specfun {

inline bool is_nonpositive_integer(const mpq_class& x) { return x.get_den() == 1 && x <= 0; }

// log Gamma(x) for rational x > 0, working at `prec` bits.
// MPFR rounds correctly at the binary point nearest x; the gap to x
// is carried through |psi(x)| <= 1/x + log(1 + x) + 1.
inline BoundedReal ln_gamma_prec(const mpq_class& x, mpfr_prec_t prec) {
    if (x <= 0) throw DomainError("ln_gamma: argument must be positive, got " + x.get_str());
    Real xh(prec + 8);
    int tx = mpfr_set_q(xh.get(), x.get_mpq_t(), MPFR_RNDN);
    Real v(prec);
    int tv = mpfr_lngamma(v.get(), xh.get(), MPFR_RNDN);
    Real e = tv ? ub::ulp(v) : ub::zero();
    if (tx) {
        double xd = x.get_d();
        double psi = 2.0 / xd + std::log1p(xd) + 1.0;  // 2/x absorbs the shift to xh
        e = ub::add(e, ub::mul(ub::from_double(psi), ub::ulp(xh)));
    }
    return BoundedReal(std::move(v), std::move(e));
}

inline BoundedReal ln_gamma(const mpq_class& x, int digits) { return ln_gamma_prec(x, bits_for_digits(digits)); }

// Gamma(x) for rational x that is not a nonpositive integer. Negative
// arguments are shifted with Gamma(x) = Gamma(x + m) / (x (x+1) ... (x+m-1)).
inline BoundedReal gamma_signed_prec(const mpq_class& x, mpfr_prec_t prec) {
    if (is_nonpositive_integer(x)) throw DomainError("gamma: pole at " + x.get_str());
    mpq_class shift = 1, y = x;
    while (y <= 0) {
        shift *= y;
        y += 1;
    }
    BoundedReal g = exp(ln_gamma_prec(y, prec + 8));
    return g * mpq_class(1 / shift);
}

// Product of Gamma(num_i) over product of Gamma(den_j). All arguments must be
// positive, which is the only case needed by the library's closed forms.
inline BoundedReal gamma_quotient_prec(const std::vector<mpq_class>& nums, const std::vector<mpq_class>& dens,
                                       mpfr_prec_t prec) {
    mpfr_prec_t wp = prec + 16;
    BoundedReal l = BoundedReal::exact_int(0, wp);
    for (auto& x : nums) l += ln_gamma_prec(x, wp);
    for (auto& x : dens) l -= ln_gamma_prec(x, wp);
    return exp(l);
}

inline BoundedReal gamma_quotient(const std::vector<mpq_class>& nums, const std::vector<mpq_class>& dens, int digits) {
    return gamma_quotient_prec(nums, dens, bits_for_digits(digits));
}

// Same as gamma_quotient but arguments may be negative non-integers.
inline BoundedReal gamma_quotient_signed_prec(const std::vector<mpq_class>& nums, const std::vector<mpq_class>& dens,
                                              mpfr_prec_t prec) {
    mpq_class factor = 1;
    std::vector<mpq_class> pn, pd;
    auto lift = [&](const mpq_class& x, bool numerator) {
        if (is_nonpositive_integer(x)) throw DomainError("gamma_quotient: pole at " + x.get_str());
        mpq_class y = x, shift = 1;
        while (y <= 0) {
            shift *= y;
            y += 1;
        }
        if (numerator) {
            factor /= shift;
            pn.push_back(y);
        } else {
            factor *= shift;
            pd.push_back(y);
        }
    };
    for (auto& x : nums) lift(x, true);
    for (auto& x : dens) lift(x, false);
    return gamma_quotient_prec(pn, pd, prec) * factor;
}

inline BoundedReal beta_prec(const mpq_class& a, const mpq_class& b, mpfr_prec_t prec) {
    return gamma_quotient_prec({a, b}, {a + b}, prec);
}

}  // namespace ceresa::specfun
