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

#include <algorithm>
#include <ostream>
#include <string>

#include "ceresa/errors.hpp"
#include "ceresa/real.hpp"

namespace ceresa {

// A real number known to lie in [value - err, value + err].
// err is kept at kErrPrec bits and rounded upward throughout.
class BoundedReal {
public:
    explicit BoundedReal(mpfr_prec_t prec = kErrPrec) : value_(prec), err_(kErrPrec) {}
    BoundedReal(Real value, Real err) : value_(std::move(value)), err_(ub::abs(err)) {}

    static BoundedReal exact_int(long x, mpfr_prec_t prec) { return BoundedReal(Real(x, prec), ub::zero()); }

    static BoundedReal from_rational(const mpq_class& q, mpfr_prec_t prec) {
        Real v(prec);
        int t = mpfr_set_q(v.get(), q.get_mpq_t(), MPFR_RNDN);
        Real e = t == 0 ? ub::zero() : ub::ulp(v);
        return BoundedReal(std::move(v), std::move(e));
    }

    static BoundedReal pi(mpfr_prec_t prec) {
        Real v(prec);
        mpfr_const_pi(v.get(), MPFR_RNDN);
        Real e = ub::ulp(v);
        return BoundedReal(std::move(v), std::move(e));
    }

    const Real& value() const { return value_; }
    const Real& err() const { return err_; }
    mpfr_prec_t precision() const { return value_.precision(); }
    double to_double() const { return value_.to_double(); }

    Real lower() const {
        Real r(precision());
        mpfr_sub(r.get(), value_.get(), err_.get(), MPFR_RNDD);
        return r;
    }
    Real upper() const {
        Real r(precision());
        mpfr_add(r.get(), value_.get(), err_.get(), MPFR_RNDU);
        return r;
    }

    // Magnitude upper bound |value| + err.
    Real mag() const { return ub::add(ub::abs(value_), err_); }

    bool is_exact_zero() const { return value_.is_zero() && err_.is_zero(); }
    bool certainly_positive() const { return lower().sign() > 0; }
    bool certainly_nonzero() const { return mpfr_cmpabs(value_.get(), err_.get()) > 0; }

    // True when the two enclosures intersect.
    bool overlaps(const BoundedReal& o) const { return ub::le(ub::abs_diff(value_, o.value_), ub::add(err_, o.err_)); }

    BoundedReal with_extra_error(const Real& extra) const { return BoundedReal(value_, ub::add(err_, ub::abs(extra))); }

    BoundedReal operator-() const {
        Real v(precision());
        mpfr_neg(v.get(), value_.get(), MPFR_RNDN);
        return BoundedReal(std::move(v), err_);
    }

    friend BoundedReal operator+(const BoundedReal& a, const BoundedReal& b) {
        Real v(std::max(a.precision(), b.precision()));
        int t = mpfr_add(v.get(), a.value_.get(), b.value_.get(), MPFR_RNDN);
        Real e = ub::add(a.err_, b.err_);
        if (t) e = ub::add(e, ub::ulp(v));
        return BoundedReal(std::move(v), std::move(e));
    }

    friend BoundedReal operator-(const BoundedReal& a, const BoundedReal& b) { return a + (-b); }

    friend BoundedReal operator*(const BoundedReal& a, const BoundedReal& b) {
        Real v(std::max(a.precision(), b.precision()));
        int t = mpfr_mul(v.get(), a.value_.get(), b.value_.get(), MPFR_RNDN);
        // |a||eb| + |b||ea| + ea*eb
        Real e = ub::add(ub::add(ub::mul(ub::abs(a.value_), b.err_), ub::mul(ub::abs(b.value_), a.err_)),
                         ub::mul(a.err_, b.err_));
        if (t) e = ub::add(e, ub::ulp(v));
        return BoundedReal(std::move(v), std::move(e));
    }

    friend BoundedReal operator/(const BoundedReal& a, const BoundedReal& b) {
        if (!b.certainly_nonzero()) throw DivisionByZero("BoundedReal division by an enclosure containing zero");
        Real v(std::max(a.precision(), b.precision()));
        int t = mpfr_div(v.get(), a.value_.get(), b.value_.get(), MPFR_RNDN);
        Real bl(kErrPrec);  // |b| - eb, rounded down
        mpfr_abs(bl.get(), b.value_.get(), MPFR_RNDD);
        mpfr_sub(bl.get(), bl.get(), b.err_.get(), MPFR_RNDD);
        Real bd(kErrPrec);
        mpfr_abs(bd.get(), b.value_.get(), MPFR_RNDD);
        mpfr_mul(bd.get(), bd.get(), bl.get(), MPFR_RNDD);
        Real num = ub::add(ub::mul(ub::abs(b.value_), a.err_), ub::mul(ub::abs(a.value_), b.err_));
        Real e = ub::div(num, bd);
        if (t) e = ub::add(e, ub::ulp(v));
        return BoundedReal(std::move(v), std::move(e));
    }

    friend BoundedReal operator*(const BoundedReal& a, const mpq_class& q) {
        Real v(a.precision());
        int t = mpfr_mul_q(v.get(), a.value_.get(), q.get_mpq_t(), MPFR_RNDN);
        Real e = ub::mul(a.err_, ub::abs(ub::from_q(abs(q))));
        if (t) e = ub::add(e, ub::ulp(v));
        return BoundedReal(std::move(v), std::move(e));
    }
    friend BoundedReal operator*(const mpq_class& q, const BoundedReal& a) { return a * q; }

    BoundedReal& operator+=(const BoundedReal& o) { return *this = *this + o; }
    BoundedReal& operator-=(const BoundedReal& o) { return *this = *this - o; }
    BoundedReal& operator*=(const BoundedReal& o) { return *this = *this * o; }

    std::string str(int sig = 20) const { return value_.general(sig) + " +/- " + err_.sci(3); }

private:
    Real value_;
    Real err_;
};

inline BoundedReal exp(const BoundedReal& x) {
    Real v(x.precision());
    int t = mpfr_exp(v.get(), x.value().get(), MPFR_RNDN);
    // exp(x +- e) - exp(x) <= exp(x) * expm1(e)
    Real ev(kErrPrec);
    mpfr_exp(ev.get(), x.value().get(), MPFR_RNDU);
    Real em(kErrPrec);
    mpfr_expm1(em.get(), x.err().get(), MPFR_RNDU);
    Real e = ub::mul(ev, em);
    if (t) e = ub::add(e, ub::ulp(v));
    return BoundedReal(std::move(v), std::move(e));
}

inline BoundedReal log(const BoundedReal& x) {
    if (!x.certainly_positive()) throw DomainError("log of an enclosure not strictly positive");
    Real v(x.precision());
    int t = mpfr_log(v.get(), x.value().get(), MPFR_RNDN);
    Real lo(kErrPrec);
    mpfr_sub(lo.get(), x.value().get(), x.err().get(), MPFR_RNDD);
    Real e = ub::div(x.err(), lo);
    if (t) e = ub::add(e, ub::ulp(v));
    return BoundedReal(std::move(v), std::move(e));
}

inline BoundedReal pow_ui(const BoundedReal& x, unsigned long n) {
    BoundedReal r = BoundedReal::exact_int(1, x.precision());
    BoundedReal b = x;
    while (n) {
        if (n & 1) r = r * b;
        n >>= 1;
        if (n) b = b * b;
    }
    return r;
}

inline std::ostream& operator<<(std::ostream& os, const BoundedReal& x) { return os << x.str(); }

// Complex enclosure with independent bounds on the two parts.
struct BoundedComplex {
    BoundedReal re;
    BoundedReal im;

    explicit BoundedComplex(mpfr_prec_t prec = kErrPrec) : re(prec), im(prec) {}
    BoundedComplex(BoundedReal r, BoundedReal i) : re(std::move(r)), im(std::move(i)) {}

    friend BoundedComplex operator+(const BoundedComplex& a, const BoundedComplex& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend BoundedComplex operator-(const BoundedComplex& a, const BoundedComplex& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend BoundedComplex operator*(const BoundedComplex& a, const BoundedComplex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend BoundedComplex operator*(const BoundedComplex& a, const BoundedReal& s) { return {a.re * s, a.im * s}; }
    BoundedComplex conj() const { return {re, -im}; }
    bool overlaps(const BoundedComplex& o) const { return re.overlaps(o.re) && im.overlaps(o.im); }
    Real max_err() const { return ub::max(re.err(), im.err()); }
};

}  // namespace ceresa
