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

// Exact positions on the circle group.
//
// An Angle is  2*pi*turns + sum_i coeffs[i] * gamma_i  where turns is an exact
// rational in [0, 1) and the gamma_i are the generators of a GeneratorBasis.
// The generators, together with pi, are *declared* rationally independent: the
// double values stored in the basis are numerical representatives only and
// are never used to decide equality of angles.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace natspec {

using Rational = boost::multiprecision::cpp_rational;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

struct Generator {
    std::string name;
    double value = 0.0;

    friend bool operator==(const Generator&, const Generator&) = default;
};

class GeneratorBasis {
public:
    GeneratorBasis() = default;
    /// Throws InvalidArgument on duplicate names or values outside (0, 2*pi).
    explicit GeneratorBasis(std::vector<Generator> generators);

    std::size_t size() const noexcept { return generators_.size(); }
    bool empty() const noexcept { return generators_.empty(); }
    const Generator& operator[](std::size_t i) const { return generators_[i]; }
    std::span<const Generator> generators() const noexcept { return generators_; }

    /// Index of the generator called `name`, or -1.
    std::ptrdiff_t index_of(const std::string& name) const;
    bool contains_value(double value) const;

    /// True when this basis is `other` followed by zero or more generators.
    bool extends(const GeneratorBasis& other) const;

    /// Appends one generator (same validation as the constructor).
    GeneratorBasis with(Generator g) const;

    friend bool operator==(const GeneratorBasis&, const GeneratorBasis&) = default;

private:
    std::vector<Generator> generators_;
};

/// Values handed out by basis_fresh_generators, in order.
std::span<const Generator> fresh_generator_list();

/// Extends `basis` with `count` generators from the fixed list, skipping any
/// whose name or value is already present.
GeneratorBasis basis_fresh_generators(const GeneratorBasis& basis, int count);

class Angle {
public:
    /// The zero angle over a basis of `rank` generators.
    explicit Angle(std::size_t rank = 0);
    /// `turns` is reduced into [0, 1).
    Angle(Rational turns, std::vector<std::int64_t> coeffs);

    static Angle zero(std::size_t rank) { return Angle(rank); }
    static Angle pi(std::size_t rank);
    static Angle generator(std::size_t rank, std::size_t index);
    static Angle from_turns(Rational turns, std::size_t rank);

    const Rational& turns() const noexcept { return turns_; }
    std::span<const std::int64_t> coeffs() const noexcept { return coeffs_; }
    std::size_t rank() const noexcept { return coeffs_.size(); }
    bool is_zero() const;
    bool is_torsion() const;

    /// Same angle over a basis with more generators appended.
    Angle extended(std::size_t new_rank) const;

    friend bool operator==(const Angle&, const Angle&) = default;
    /// Total order used for canonical storage: coefficients first, then turns.
    friend std::strong_ordering operator<=>(const Angle& a, const Angle& b);

private:
    Rational turns_;
    std::vector<std::int64_t> coeffs_;
};

/// angle_add. Throws BasisMismatch when ranks differ.
Angle operator+(const Angle& a, const Angle& b);
Angle operator-(const Angle& a);
/// angle_scale.
Angle scale(std::int64_t n, const Angle& a);

/// Reduces a rational into [0, 1).
Rational reduce_turns(const Rational& t);

/// 2*pi*turns + sum coeffs[i]*value_i, reduced into [0, 2*pi).
double to_radians(const Angle& a, const GeneratorBasis& basis);

std::string to_string(const Angle& a, const GeneratorBasis& basis);

namespace detail {
std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);
}  // namespace detail

}  // namespace natspec
