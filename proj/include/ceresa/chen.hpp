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

// Chen's rules for length-two iterated integrals along composed paths.

#include <utility>

namespace ceresa::fermat {

// Integrals of two fixed forms phi, phi' along one path:
// first = int phi, second = int phi', iterated = int phi phi'.
// Single must form a ring acting on Double via Double + Single * Single.
template <class Single, class Double>
struct PathIntegrals {
    Single first;
    Single second;
    Double iterated;
};

// gamma then gamma'
template <class S, class D>
PathIntegrals<S, D> concat(const PathIntegrals<S, D>& g, const PathIntegrals<S, D>& h) {
    return {g.first + h.first, g.second + h.second, g.iterated + g.first * h.second + h.iterated};
}

template <class S, class D>
PathIntegrals<S, D> inverse(const PathIntegrals<S, D>& g) {
    return {-g.first, -g.second, -g.iterated + g.first * g.second};
}

// alpha^-1 gamma alpha
template <class S, class D>
PathIntegrals<S, D> conjugate(const PathIntegrals<S, D>& alpha, const PathIntegrals<S, D>& g) {
    return concat(concat(inverse(alpha), g), alpha);
}

template <class S, class D, class... Rest>
PathIntegrals<S, D> concat(const PathIntegrals<S, D>& g, const PathIntegrals<S, D>& h, const Rest&... rest) {
    return concat(concat(g, h), rest...);
}

}  // namespace ceresa::fermat
