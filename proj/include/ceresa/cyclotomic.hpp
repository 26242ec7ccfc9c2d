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

// Exact arithmetic in Q(mu_n) on the power basis 1, xi, ..., xi^(phi(n)-1)
// where xi = exp(2 pi i / n).

#include <gmpxx.h>

#include <cmath>
#include <memory>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "ceresa/bounded_real.hpp"
#include "ceresa/errors.hpp"

namespace ceresa::cyclo {

// ---- elementary number theory -------------------------------------------

inline long mod(long a, long n) {
    long r = a % n;
    return r < 0 ? r + n : r;
}

inline unsigned long totient(unsigned long n) {
    unsigned long result = n;
    for (unsigned long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

inline int mobius(unsigned long n) {
    int mu = 1;
    for (unsigned long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
            mu = -mu;
        }
    }
    if (n > 1) mu = -mu;
    return mu;
}

inline std::vector<unsigned long> divisors(unsigned long n) {
    std::vector<unsigned long> d;
    for (unsigned long i = 1; i <= n; ++i)
        if (n % i == 0) d.push_back(i);
    return d;
}

// ---- dense polynomials over Q, low degree first ---------------------------

using QPoly = std::vector<mpq_class>;

inline void trim(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline QPoly poly_mul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly r(a.size() + b.size() - 1, mpq_class(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    trim(r);
    return r;
}

inline QPoly poly_sub(const QPoly& a, const QPoly& b) {
    QPoly r(std::max(a.size(), b.size()), mpq_class(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    trim(r);
    return r;
}

// a = q*b + r with deg r < deg b. b must be nonzero and trimmed.
inline void poly_divmod(QPoly a, const QPoly& b, QPoly& q, QPoly& r) {
    trim(a);
    if (b.empty()) throw DivisionByZero("polynomial division by zero");
    q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, mpq_class(0));
    const mpq_class& lead = b.back();
    while (a.size() >= b.size() && !a.empty()) {
        size_t shift = a.size() - b.size();
        mpq_class c = a.back() / lead;
        q[shift] = c;
        for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
        a.pop_back();
        trim(a);
    }
    r = std::move(a);
    trim(q);
}

// Phi_n by exact division of x^n - 1 by Phi_d over the proper divisors d of n.
inline std::vector<mpz_class> cyclotomic_polynomial(unsigned long n) {
    if (n == 0) throw InvalidArgument("cyclotomic_polynomial: n must be positive");
    QPoly num(n + 1, mpq_class(0));
    num[0] = -1;
    num[n] = 1;
    for (unsigned long d : divisors(n)) {
        if (d == n) continue;
        auto pd = cyclotomic_polynomial(d);
        QPoly den(pd.begin(), pd.end());
        QPoly q, r;
        poly_divmod(num, den, q, r);
        num = std::move(q);
    }
    std::vector<mpz_class> out;
    out.reserve(num.size());
    for (auto& c : num) out.push_back(c.get_num());
    return out;
}

// ---- the field ------------------------------------------------------------

class CycloElem;

// Shared immutable data for Q(mu_n): Phi_n and xi^j reduced for 0 <= j < n.
class CyclotomicField {
public:
    explicit CyclotomicField(unsigned long n) : data_(std::make_shared<Data>(n)) {}

    unsigned long n() const { return data_->n; }
    unsigned long degree() const { return data_->phi; }
    const std::vector<mpz_class>& modulus() const { return data_->modulus; }

    CycloElem zero() const;
    CycloElem one() const;
    CycloElem rational(const mpq_class& q) const;
    CycloElem power(long j) const;  // xi^j, any integer j
    CycloElem from_coefficients(std::vector<mpq_class> c) const;

    bool operator==(const CyclotomicField& o) const { return n() == o.n(); }

private:
    friend class CycloElem;

    struct Data {
        unsigned long n;
        unsigned long phi;
        std::vector<mpz_class> modulus;
        std::vector<std::vector<mpz_class>> powers;

        explicit Data(unsigned long n_) : n(n_), phi(totient(n_)), modulus(cyclotomic_polynomial(n_)) {
            powers.assign(n, std::vector<mpz_class>(phi, 0));
            std::vector<mpz_class> cur(phi, 0);
            cur[0] = 1;
            for (unsigned long j = 0; j < n; ++j) {
                powers[j] = cur;
                // multiply by xi: shift and reduce the overflow with the monic modulus
                mpz_class top = cur[phi - 1];
                for (unsigned long i = phi - 1; i > 0; --i) cur[i] = cur[i - 1];
                cur[0] = 0;
                if (top != 0)
                    for (unsigned long i = 0; i < phi; ++i) cur[i] -= top * modulus[i];
            }
        }
    };

    explicit CyclotomicField(std::shared_ptr<const Data> d) : data_(std::move(d)) {}
    std::shared_ptr<const Data> data_;
};

// Element of Q(mu_n). Arithmetic between different n throws ModulusMismatch.
class CycloElem {
public:
    CycloElem(const CyclotomicField& f, std::vector<mpq_class> c) : field_(f.data_), c_(std::move(c)) {
        if (c_.size() > field_->phi) reduce_long(c_);
        c_.resize(field_->phi, mpq_class(0));
    }

    unsigned long n() const { return field_->n; }
    CyclotomicField field() const { return CyclotomicField(field_); }
    const std::vector<mpq_class>& coefficients() const { return c_; }

    bool is_zero() const {
        for (auto& x : c_)
            if (x != 0) return false;
        return true;
    }
    bool is_rational() const {
        for (size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0) return false;
        return true;
    }
    mpq_class to_rational() const {
        if (!is_rational()) throw NotRational("cyclotomic element is not rational: " + str());
        return c_[0];
    }

    friend bool operator==(const CycloElem& a, const CycloElem& b) { return a.n() == b.n() && a.c_ == b.c_; }
    friend bool operator!=(const CycloElem& a, const CycloElem& b) { return !(a == b); }

    CycloElem operator-() const {
        CycloElem r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }
    CycloElem& operator+=(const CycloElem& o) {
        check(o);
        for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
        return *this;
    }
    CycloElem& operator-=(const CycloElem& o) {
        check(o);
        for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
        return *this;
    }
    CycloElem& operator*=(const mpq_class& q) {
        for (auto& x : c_) x *= q;
        return *this;
    }
    CycloElem& operator*=(const CycloElem& o) { return *this = *this * o; }

    friend CycloElem operator+(CycloElem a, const CycloElem& b) { return a += b; }
    friend CycloElem operator-(CycloElem a, const CycloElem& b) { return a -= b; }
    friend CycloElem operator*(CycloElem a, const mpq_class& q) { return a *= q; }
    friend CycloElem operator*(const mpq_class& q, CycloElem a) { return a *= q; }

    friend CycloElem operator*(const CycloElem& a, const CycloElem& b) {
        a.check(b);
        const auto& F = *a.field_;
        // product in Q[x]/(x^n - 1), then fold each xi^j through the power table
        std::vector<mpq_class> cyc(F.n, mpq_class(0));
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (size_t j = 0; j < b.c_.size(); ++j) {
                if (b.c_[j] == 0) continue;
                cyc[(i + j) % F.n] += a.c_[i] * b.c_[j];
            }
        }
        return CycloElem(a.field_, fold(F, cyc));
    }

    CycloElem inverse() const {
        if (is_zero()) throw DivisionByZero("inverse of zero in Q(mu_" + std::to_string(n()) + ")");
        QPoly r0(field_->modulus.begin(), field_->modulus.end());
        QPoly r1(c_.begin(), c_.end());
        trim(r1);
        QPoly s0, s1{mpq_class(1)};
        while (!r1.empty()) {
            QPoly q, r;
            poly_divmod(r0, r1, q, r);
            QPoly s2 = poly_sub(s0, poly_mul(q, s1));
            r0 = std::move(r1);
            r1 = std::move(r);
            s0 = std::move(s1);
            s1 = std::move(s2);
        }
        // r0 is a nonzero constant since Phi_n is irreducible
        mpq_class inv = 1 / r0[0];
        for (auto& x : s0) x *= inv;
        return CycloElem(field_, std::move(s0));
    }

    friend CycloElem operator/(const CycloElem& a, const CycloElem& b) { return a * b.inverse(); }

    // The automorphism xi -> xi^h, gcd(h, n) = 1.
    CycloElem galois(long h) const {
        const auto& F = *field_;
        if (std::gcd(static_cast<unsigned long>(mod(h, F.n)), F.n) != 1)
            throw InvalidArgument("galois: h must be coprime to n");
        std::vector<mpq_class> cyc(F.n, mpq_class(0));
        for (size_t j = 0; j < c_.size(); ++j) cyc[mod(h * static_cast<long>(j), F.n)] += c_[j];
        return CycloElem(field_, fold(F, cyc));
    }
    CycloElem conj() const { return galois(-1); }

    // Tr_{Q(mu_n)/Q} via Ramanujan sums: Tr(xi^j) = mu(n/g) phi(n) / phi(n/g), g = gcd(n, j).
    mpq_class trace() const {
        const auto& F = *field_;
        mpq_class t = 0;
        for (size_t j = 0; j < c_.size(); ++j) {
            if (c_[j] == 0) continue;
            unsigned long g = std::gcd(F.n, static_cast<unsigned long>(j));
            unsigned long m = F.n / g;
            t += c_[j] * mpq_class(mobius(m) * static_cast<long>(F.phi / totient(m)));
        }
        return t;
    }

    // sigma_h applied then mapped to C, with |error| <= 10^-digits on each part.
    BoundedComplex embed(long h, int digits) const {
        const auto& F = *field_;
        long hh = mod(h, F.n);
        if (std::gcd(static_cast<unsigned long>(hh), F.n) != 1)
            throw InvalidArgument("embed: index must be coprime to n");
        double mass = 0;
        for (auto& x : c_) mass += std::fabs(x.get_d());
        mpfr_prec_t prec = bits_for_digits(digits) + static_cast<mpfr_prec_t>(std::log2(mass + 1) + std::log2(F.phi + 1)) + 8;
        BoundedReal re = BoundedReal::exact_int(0, prec), im = BoundedReal::exact_int(0, prec);
        BoundedReal pi = BoundedReal::pi(prec);
        for (size_t j = 0; j < c_.size(); ++j) {
            if (c_[j] == 0) continue;
            long k = mod(hh * static_cast<long>(j), F.n);
            BoundedReal theta = pi * mpq_class(2 * k, F.n);
            Real s(prec), c(prec);
            mpfr_sin_cos(s.get(), c.get(), theta.value().get(), MPFR_RNDN);
            Real es = ub::add(theta.err(), ub::ulp(s));
            Real ec = ub::add(theta.err(), ub::ulp(c));
            BoundedReal cr(std::move(c), std::move(ec)), sr(std::move(s), std::move(es));
            re += cr * c_[j];
            im += sr * c_[j];
        }
        return {re, im};
    }

    std::string str() const {
        std::ostringstream os;
        bool first = true;
        for (size_t j = 0; j < c_.size(); ++j) {
            if (c_[j] == 0) continue;
            if (!first) os << " + ";
            first = false;
            os << "(" << c_[j] << ")";
            if (j == 1) os << "*z";
            if (j > 1) os << "*z^" << j;
        }
        if (first) os << "0";
        return os.str();
    }

private:
    friend class CyclotomicField;

    CycloElem(std::shared_ptr<const CyclotomicField::Data> f, std::vector<mpq_class> c)
        : field_(std::move(f)), c_(std::move(c)) {
        c_.resize(field_->phi, mpq_class(0));
    }

    void check(const CycloElem& o) const {
        if (n() != o.n()) throw ModulusMismatch(static_cast<unsigned>(n()), static_cast<unsigned>(o.n()));
    }

    static std::vector<mpq_class> fold(const CyclotomicField::Data& F, const std::vector<mpq_class>& cyc) {
        std::vector<mpq_class> out(F.phi, mpq_class(0));
        for (size_t j = 0; j < cyc.size(); ++j) {
            if (cyc[j] == 0) continue;
            if (j < F.phi) {
                out[j] += cyc[j];
                continue;
            }
            const auto& p = F.powers[j];
            for (size_t i = 0; i < F.phi; ++i)
                if (p[i] != 0) out[i] += cyc[j] * p[i];
        }
        return out;
    }

    // Reduce an arbitrary-length coefficient vector: exponents taken mod n first.
    void reduce_long(std::vector<mpq_class>& c) const {
        const auto& F = *field_;
        std::vector<mpq_class> cyc(F.n, mpq_class(0));
        for (size_t j = 0; j < c.size(); ++j) cyc[j % F.n] += c[j];
        c = fold(F, cyc);
    }

    std::shared_ptr<const CyclotomicField::Data> field_;
    std::vector<mpq_class> c_;
};

inline CycloElem CyclotomicField::zero() const { return CycloElem(data_, {}); }
inline CycloElem CyclotomicField::one() const { return rational(1); }
inline CycloElem CyclotomicField::rational(const mpq_class& q) const { return CycloElem(data_, {q}); }
inline CycloElem CyclotomicField::power(long j) const {
    const auto& p = data_->powers[mod(j, data_->n)];
    return CycloElem(data_, std::vector<mpq_class>(p.begin(), p.end()));
}
inline CycloElem CyclotomicField::from_coefficients(std::vector<mpq_class> c) const { return CycloElem(*this, std::move(c)); }

// xi^j in a freshly built Q(mu_n).
inline CycloElem cyclo_from_power(unsigned long n, long j) { return CyclotomicField(n).power(j); }

inline bool is_zero(const CycloElem& x) { return x.is_zero(); }

}  // namespace ceresa::cyclo
