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

// Exterior-algebra combinatorics: shuffles, determinant pairings, and the
// constrained permutation sums that reduce k-cycle Abel-Jacobi values to
// the k = 1 functional and pairings.
//
// Coefficients are generic. The sums need C + C, C * C, -C, C * mpq_class
// and a structural zero test (structurally_zero) used for pruning.

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "ceresa/bounded_real.hpp"
#include "ceresa/cyclotomic.hpp"
#include "ceresa/errors.hpp"

namespace ceresa::extalg {

inline bool structurally_zero(const cyclo::CycloElem& x) { return x.is_zero(); }
inline bool structurally_zero(const BoundedReal& x) { return x.is_exact_zero(); }
inline bool structurally_zero(const mpq_class& x) { return x == 0; }

// +1 or -1 by inversion count.
inline int permutation_sign(const std::vector<int>& p) {
    int inv = 0;
    for (size_t i = 0; i < p.size(); ++i)
        for (size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j]) ++inv;
    return inv % 2 ? -1 : 1;
}

inline mpz_class factorial(unsigned long k) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), k);
    return f;
}

template <class L>
struct WedgeWord {
    std::vector<L> factors;
    int sign = 1;  // 0 marks the zero word

    bool is_zero() const { return sign == 0; }

    // Sorted factors with the sign of the sorting permutation; repeated factors give zero.
    WedgeWord canonical() const {
        std::vector<int> order(factors.size());
        for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
        std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return factors[x] < factors[y]; });
        WedgeWord out;
        out.sign = sign * permutation_sign(order);
        for (int i : order) out.factors.push_back(factors[i]);
        for (size_t i = 1; i < out.factors.size(); ++i)
            if (!(out.factors[i - 1] < out.factors[i])) out.sign = 0;
        return out;
    }
};

template <class L>
WedgeWord<L> wedge(const WedgeWord<L>& u, const WedgeWord<L>& v) {
    WedgeWord<L> w{u.factors, u.sign * v.sign};
    w.factors.insert(w.factors.end(), v.factors.begin(), v.factors.end());
    return w;
}

template <class L, class C>
class Multivector {
public:
    explicit Multivector(size_t grade) : grade_(grade) {}

    size_t grade() const { return grade_; }
    const std::map<std::vector<L>, C>& terms() const { return terms_; }

    void add(const WedgeWord<L>& w, const C& coeff) {
        if (w.factors.size() != grade_) throw InvalidArgument("multivector: grade mismatch");
        WedgeWord<L> c = w.canonical();
        if (c.is_zero() || structurally_zero(coeff)) return;
        C v = c.sign > 0 ? coeff : -coeff;
        auto it = terms_.find(c.factors);
        if (it == terms_.end()) {
            terms_.emplace(c.factors, v);
            return;
        }
        it->second = it->second + v;
        if (structurally_zero(it->second)) terms_.erase(it);
    }

    friend Multivector operator+(Multivector a, const Multivector& b) {
        for (const auto& [f, c] : b.terms_) a.add({f, 1}, c);
        return a;
    }

    friend Multivector wedge(const Multivector& a, const Multivector& b) {
        Multivector out(a.grade_ + b.grade_);
        for (const auto& [fa, ca] : a.terms_)
            for (const auto& [fb, cb] : b.terms_) out.add(wedge(WedgeWord<L>{fa, 1}, WedgeWord<L>{fb, 1}), ca * cb);
        return out;
    }

private:
    size_t grade_;
    std::map<std::vector<L>, C> terms_;
};

template <class L>
struct ShuffleTerm {
    int sign = 1;
    WedgeWord<L> left, right;
};

// pi_{p,q}: sum over (p,q)-shuffles of sgn * (first p factors) (x) (last q factors).
template <class L>
std::vector<ShuffleTerm<L>> pi_pq(const WedgeWord<L>& w, size_t p, size_t q) {
    const size_t n = w.factors.size();
    if (n != p + q) throw InvalidArgument("pi_pq: word length must equal p + q");
    std::vector<ShuffleTerm<L>> out;
    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + static_cast<long>(p), true);
    do {
        std::vector<int> perm;
        ShuffleTerm<L> t;
        for (size_t i = 0; i < n; ++i)
            if (pick[i]) {
                perm.push_back(static_cast<int>(i));
                t.left.factors.push_back(w.factors[i]);
            }
        for (size_t i = 0; i < n; ++i)
            if (!pick[i]) {
                perm.push_back(static_cast<int>(i));
                t.right.factors.push_back(w.factors[i]);
            }
        t.sign = w.sign * permutation_sign(perm);
        out.push_back(std::move(t));
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return out;
}

// Determinant over a field by Gaussian elimination.
inline cyclo::CycloElem determinant(std::vector<std::vector<cyclo::CycloElem>> m) {
    const size_t n = m.size();
    if (n == 0) throw InvalidArgument("determinant of an empty matrix");
    cyclo::CycloElem det = m[0][0].field().one();
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && m[piv][col].is_zero()) ++piv;
        if (piv == n) return m[0][0].field().zero();
        if (piv != col) {
            std::swap(m[piv], m[col]);
            det = -det;
        }
        det = det * m[col][col];
        cyclo::CycloElem inv = m[col][col].inverse();
        for (size_t r = col + 1; r < n; ++r) {
            if (m[r][col].is_zero()) continue;
            cyclo::CycloElem f = m[r][col] * inv;
            for (size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
        }
    }
    return det;
}

// (a_1 ^ ... ^ a_n, phi_1 ^ ... ^ phi_n) = det((a_i, phi_j))
template <class H, class L, class PairFn>
cyclo::CycloElem wedge_pairing(const WedgeWord<H>& hom, const WedgeWord<L>& coh, PairFn&& pair) {
    const size_t n = hom.factors.size();
    if (n != coh.factors.size()) throw InvalidArgument("wedge_pairing: grade mismatch");
    std::vector<std::vector<cyclo::CycloElem>> m(n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) m[i].push_back(pair(hom.factors[i], coh.factors[j]));
    cyclo::CycloElem d = determinant(std::move(m));
    return hom.sign * coh.sign < 0 ? -d : d;
}

namespace detail {

// Signed sum over perfect matchings of `free` (ascending positions) where each pair
// is (smallest remaining, later element), in the order produced. `prefix` holds the
// positions already placed; the permutation sign is taken over prefix + pairs.
template <class C, class PairFn, class Emit>
void matchings(std::vector<int>& prefix, std::vector<int>& free, const C& acc, PairFn& pair, Emit& emit) {
    if (free.empty()) {
        emit(prefix, acc);
        return;
    }
    int first = free.front();
    for (size_t j = 1; j < free.size(); ++j) {
        int second = free[j];
        C w = pair(first, second);
        if (structurally_zero(w)) continue;
        std::vector<int> rest;
        rest.reserve(free.size() - 2);
        for (size_t t = 1; t < free.size(); ++t)
            if (t != j) rest.push_back(free[t]);
        prefix.push_back(first);
        prefix.push_back(second);
        matchings(prefix, rest, C(acc * w), pair, emit);
        prefix.resize(prefix.size() - 2);
    }
}

}  // namespace detail

// (v_{k-1}, phi_1 ^ ... ^ phi_{2(k-1)}) = k! sum sgn(s) prod <phi_s(2i-1), phi_s(2i)>
// over s with s(2i-1) < s(2i) and s(2i-1) < s(2i+1).
template <class C, class L, class PairFn>
C v_pairing(unsigned long k, const std::vector<L>& labels, PairFn&& pair, const C& one) {
    if (k < 1 || labels.size() != 2 * (k - 1)) throw InvalidArgument("v_pairing: expected 2(k-1) labels");
    auto pos_pair = [&](int i, int j) -> C { return pair(labels[i], labels[j]); };
    std::vector<int> prefix, free(labels.size());
    for (size_t i = 0; i < free.size(); ++i) free[i] = static_cast<int>(i);
    C total = one * mpq_class(0);
    auto emit = [&](const std::vector<int>& perm, const C& w) {
        total = permutation_sign(perm) > 0 ? C(total + w) : C(total - w);
    };
    detail::matchings(prefix, free, one, pos_pair, emit);
    return total * mpq_class(factorial(k));
}

// k! sum sgn(s) Phi1(phi_s(1) ^ phi_s(2) ^ phi_s(3)) prod_{i=1}^{k-1} <phi_s(2i+2), phi_s(2i+3)>
// over s with s(1) < s(2) < s(3), s(2i+2) < s(2i+3), s(2i+2) < s(2i+4).
// Triples whose complement has no nonzero matching are skipped before Phi1 is called.
template <class C, class L, class Phi1Fn, class PairFn>
C ceresa_eval_k(unsigned long k, const std::vector<L>& labels, Phi1Fn&& phi1, PairFn&& pair, const C& one) {
    const size_t n = labels.size();
    if (k < 1 || n != 2 * k + 1) throw InvalidArgument("ceresa_eval_k: expected 2k+1 labels");
    auto pos_pair = [&](int i, int j) -> C { return pair(labels[i], labels[j]); };
    C total = one * mpq_class(0);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            for (size_t l = j + 1; l < n; ++l) {
                std::vector<int> prefix{static_cast<int>(i), static_cast<int>(j), static_cast<int>(l)};
                std::vector<int> free;
                for (size_t t = 0; t < n; ++t)
                    if (t != i && t != j && t != l) free.push_back(static_cast<int>(t));
                C inner = one * mpq_class(0);
                bool any = false;
                auto emit = [&](const std::vector<int>& perm, const C& w) {
                    any = true;
                    inner = permutation_sign(perm) > 0 ? C(inner + w) : C(inner - w);
                };
                detail::matchings(prefix, free, one, pos_pair, emit);
                if (!any || structurally_zero(inner)) continue;
                C f = phi1(labels[i], labels[j], labels[l]);
                if (structurally_zero(f)) continue;
                total = total + f * inner;
            }
    return total * mpq_class(factorial(k));
}

}  // namespace ceresa::extalg
