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

#include <cmath>
#include <string>
#include <utility>
#include <vector>

namespace ceresa {

// Precision used for error magnitudes. Always rounded upward.
inline constexpr mpfr_prec_t kErrPrec = 64;

inline mpfr_prec_t bits_for_digits(int digits) {
    if (digits < 1) digits = 1;
    return static_cast<mpfr_prec_t>(std::ceil(digits * 3.321928094887362)) + 16;
}

// RAII handle over an mpfr_t.
class Real {
public:
    explicit Real(mpfr_prec_t prec = kErrPrec) {
        mpfr_init2(v_, prec);
        mpfr_set_zero(v_, 1);
    }
    Real(long x, mpfr_prec_t prec) {
        mpfr_init2(v_, prec);
        mpfr_set_si(v_, x, MPFR_RNDN);
    }
    Real(const mpq_class& q, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN) {
        mpfr_init2(v_, prec);
        mpfr_set_q(v_, q.get_mpq_t(), rnd);
    }
    Real(const Real& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Real(Real&& o) noexcept {
        mpfr_init2(v_, MPFR_PREC_MIN);
        mpfr_swap(v_, o.v_);
    }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    mpfr_ptr get() noexcept { return v_; }
    mpfr_srcptr get() const noexcept { return v_; }
    mpfr_prec_t precision() const { return mpfr_get_prec(v_); }

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    // Fixed notation with `decimals` digits after the point.
    std::string fixed(int decimals) const { return format("%.*Rf", decimals); }
    // Scientific notation with `sig` significant digits.
    std::string sci(int sig) const { return format("%.*Re", sig > 0 ? sig - 1 : 0); }
    // Shortest of fixed/scientific with `sig` significant digits.
    std::string general(int sig) const { return format("%.*Rg", sig); }

private:
    std::string format(const char* fmt, int n) const {
        char* buf = nullptr;
        int len = mpfr_asprintf(&buf, fmt, n, v_);
        std::string out = len >= 0 ? std::string(buf, static_cast<size_t>(len)) : std::string();
        if (buf) mpfr_free_str(buf);
        return out;
    }

    mpfr_t v_;
};

// Helpers for error magnitudes. All results are upper bounds.
namespace ub {

inline Real zero() { return Real(kErrPrec); }

inline Real abs(const Real& x) {
    Real r(kErrPrec);
    mpfr_abs(r.get(), x.get(), MPFR_RNDU);
    return r;
}

inline Real from_double(double d) {
    Real r(kErrPrec);
    mpfr_set_d(r.get(), d, MPFR_RNDU);
    return r;
}

inline Real from_q(const mpq_class& q) {
    Real r(kErrPrec);
    mpfr_set_q(r.get(), q.get_mpq_t(), MPFR_RNDU);
    return r;
}

inline Real add(const Real& a, const Real& b) {
    Real r(kErrPrec);
    mpfr_add(r.get(), a.get(), b.get(), MPFR_RNDU);
    return r;
}

inline Real mul(const Real& a, const Real& b) {
    Real r(kErrPrec);
    mpfr_mul(r.get(), a.get(), b.get(), MPFR_RNDU);
    return r;
}

inline Real div(const Real& a, const Real& b) {
    Real r(kErrPrec);
    mpfr_div(r.get(), a.get(), b.get(), MPFR_RNDU);
    return r;
}

inline Real mul_d(const Real& a, double d) {
    Real r(kErrPrec);
    mpfr_mul_d(r.get(), a.get(), d, MPFR_RNDU);
    return r;
}

// 2^e
inline Real pow2(long e) {
    Real r(kErrPrec);
    mpfr_set_ui_2exp(r.get(), 1, e, MPFR_RNDU);
    return r;
}

// One unit in the last place of x at its own precision. Bounds the error
// of any correctly rounded operation that produced x.
inline Real ulp(const Real& x) {
    if (x.is_zero()) return zero();
    return pow2(mpfr_get_exp(x.get()) - x.precision());
}

// |x| * 2^(1-prec): relative rounding bound at precision prec.
inline Real rel(const Real& x, mpfr_prec_t prec) {
    Real r = abs(x);
    mpfr_mul_2si(r.get(), r.get(), 1 - static_cast<long>(prec), MPFR_RNDU);
    return r;
}

inline Real max(const Real& a, const Real& b) { return mpfr_cmp(a.get(), b.get()) >= 0 ? a : b; }

// |a - b| rounded up.
inline Real abs_diff(const Real& a, const Real& b) {
    Real r(std::max(a.precision(), b.precision()) + 2);
    mpfr_sub(r.get(), a.get(), b.get(), MPFR_RNDA);
    return abs(r);
}

inline bool le(const Real& a, const Real& b) { return mpfr_lessequal_p(a.get(), b.get()) != 0; }

}  // namespace ub

}  // namespace ceresa
