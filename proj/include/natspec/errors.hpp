// Copyright 2026 The natspec Authors
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

#include <cstdint>
#include <stdexcept>
#include <string>

namespace natspec {

/// Base of every error the library throws.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Two values built over different generator bases were combined.
class BasisMismatch : public Error {
public:
    using Error::Error;
};

/// Checked integer arithmetic on generator coefficients overflowed.
class CoefficientOverflow : public Error {
public:
    using Error::Error;
};

/// The fixed list of fresh generator values ran out.
class GeneratorListExhausted : public Error {
public:
    using Error::Error;
};

/// A convolution power would exceed the configured support/degree/work budget.
class BudgetExceeded : public Error {
public:
    BudgetExceeded(const std::string& what, int largest_completed_power_log2)
        : Error(what), largest_completed_(largest_completed_power_log2) {}

    /// k such that mu^{*2^k} was the last power that fit in the budget.
    int largest_completed_power_log2() const noexcept { return largest_completed_; }

private:
    int largest_completed_;
};

/// A search exhausted its budget; carries the best candidate it saw.
class NotFound : public Error {
public:
    NotFound(const std::string& what, std::int64_t best_n, double best_error)
        : Error(what), best_n_(best_n), best_error_(best_error) {}

    std::int64_t best_n() const noexcept { return best_n_; }
    double best_error() const noexcept { return best_error_; }

private:
    std::int64_t best_n_;
    double best_error_;
};

class OutOfDisk : public Error {
public:
    using Error::Error;
};

class UnsupportedDimension : public Error {
public:
    using Error::Error;
};

class UnsupportedMeasure : public Error {
public:
    using Error::Error;
};

}  // namespace natspec
