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

#include <stdexcept>
#include <string>

namespace ceresa {

// Base of every error raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidArgument : Error {
    using Error::Error;
};

struct ModulusMismatch : Error {
    explicit ModulusMismatch(unsigned a, unsigned b)
        : Error("cyclotomic modulus mismatch: " + std::to_string(a) + " vs " + std::to_string(b)) {}
};

struct DivisionByZero : Error {
    using Error::Error;
};

struct NotRational : Error {
    using Error::Error;
};

struct DomainError : Error {
    using Error::Error;
};

struct DivergentSeries : Error {
    using Error::Error;
};

struct BudgetExhausted : Error {
    using Error::Error;
};

struct PrecisionExhausted : Error {
    using Error::Error;
};

struct NotHolomorphic : Error {
    using Error::Error;
};

struct AssumptionViolated : Error {
    using Error::Error;
};

}  // namespace ceresa
