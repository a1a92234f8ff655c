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

#include "natspec/angle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <sstream>

#include "natspec/errors.hpp"

namespace natspec {

namespace detail {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r = 0;
    if (__builtin_add_overflow(a, b, &r)) {
        throw CoefficientOverflow("generator coefficient overflow in addition");
    }
    return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r = 0;
    if (__builtin_mul_overflow(a, b, &r)) {
        throw CoefficientOverflow("generator coefficient overflow in multiplication");
    }
    return r;
}

}  // namespace detail

GeneratorBasis::GeneratorBasis(std::vector<Generator> generators) : generators_(std::move(generators)) {
    std::set<std::string> names;
    for (const auto& g : generators_) {
        if (g.name.empty()) throw InvalidArgument("generator name must be nonempty");
        if (!names.insert(g.name).second) throw InvalidArgument("duplicate generator name '" + g.name + "'");
        if (!(g.value > 0.0 && g.value < kTwoPi)) {
            throw InvalidArgument("generator '" + g.name + "' must lie strictly inside (0, 2*pi)");
        }
    }
}

std::ptrdiff_t GeneratorBasis::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < generators_.size(); ++i) {
        if (generators_[i].name == name) return static_cast<std::ptrdiff_t>(i);
    }
    return -1;
}

bool GeneratorBasis::contains_value(double value) const {
    return std::any_of(generators_.begin(), generators_.end(),
                       [value](const Generator& g) { return std::abs(g.value - value) <= 1e-12; });
}

bool GeneratorBasis::extends(const GeneratorBasis& other) const {
    if (other.size() > size()) return false;
    return std::equal(other.generators_.begin(), other.generators_.end(), generators_.begin());
}

GeneratorBasis GeneratorBasis::with(Generator g) const {
    auto gens = generators_;
    gens.push_back(std::move(g));
    return GeneratorBasis(std::move(gens));
}

std::span<const Generator> fresh_generator_list() {
    static const std::array<Generator, 10> list = {{
        {"sqrt2", std::sqrt(2.0)},
        {"sqrt3", std::sqrt(3.0)},
        {"sqrt5", std::sqrt(5.0)},
        {"sqrt7", std::sqrt(7.0)},
        {"ln2", std::log(2.0)},
        {"ln3", std::log(3.0)},
        {"sqrt11", std::sqrt(11.0)},
        {"sqrt13", std::sqrt(13.0)},
        {"ln5", std::log(5.0)},
        {"ln7", std::log(7.0)},
    }};
    return list;
}

GeneratorBasis basis_fresh_generators(const GeneratorBasis& basis, int count) {
    if (count < 1) throw InvalidArgument("basis_fresh_generators: count must be >= 1");
    GeneratorBasis out = basis;
    int added = 0;
    for (const auto& g : fresh_generator_list()) {
        if (added == count) break;
        if (out.index_of(g.name) >= 0 || out.contains_value(g.value)) continue;
        out = out.with(g);
        ++added;
    }
    if (added < count) {
        throw GeneratorListExhausted(
            "fresh generator list exhausted; supply explicit generator values instead");
    }
    return out;
}

Rational reduce_turns(const Rational& t) {
    using boost::multiprecision::cpp_int;
    const cpp_int num = boost::multiprecision::numerator(t);
    const cpp_int den = boost::multiprecision::denominator(t);
    cpp_int r = num % den;
    if (r < 0) r += den;
    return Rational(r, den);
}

Angle::Angle(std::size_t rank) : turns_(0), coeffs_(rank, 0) {}

Angle::Angle(Rational turns, std::vector<std::int64_t> coeffs)
    : turns_(reduce_turns(turns)), coeffs_(std::move(coeffs)) {}

Angle Angle::pi(std::size_t rank) { return Angle(Rational(1, 2), std::vector<std::int64_t>(rank, 0)); }

Angle Angle::generator(std::size_t rank, std::size_t index) {
    if (index >= rank) throw InvalidArgument("generator index out of range");
    std::vector<std::int64_t> c(rank, 0);
    c[index] = 1;
    return Angle(Rational(0), std::move(c));
}

Angle Angle::from_turns(Rational turns, std::size_t rank) {
    return Angle(std::move(turns), std::vector<std::int64_t>(rank, 0));
}

bool Angle::is_zero() const { return turns_ == 0 && is_torsion(); }

bool Angle::is_torsion() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](std::int64_t c) { return c == 0; });
}

Angle Angle::extended(std::size_t new_rank) const {
    if (new_rank < rank()) throw BasisMismatch("cannot shrink the basis of an angle");
    auto c = coeffs_;
    c.resize(new_rank, 0);
    Angle out;
    out.turns_ = turns_;
    out.coeffs_ = std::move(c);
    return out;
}

std::strong_ordering operator<=>(const Angle& a, const Angle& b) {
    if (auto c = a.coeffs_ <=> b.coeffs_; c != 0) return c;
    if (a.turns_ < b.turns_) return std::strong_ordering::less;
    if (b.turns_ < a.turns_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

Angle operator+(const Angle& a, const Angle& b) {
    if (a.rank() != b.rank()) throw BasisMismatch("angle_add: angles are over different bases");
    std::vector<std::int64_t> c(a.rank());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = detail::checked_add(a.coeffs()[i], b.coeffs()[i]);
    return Angle(a.turns() + b.turns(), std::move(c));
}

Angle operator-(const Angle& a) { return scale(-1, a); }

Angle scale(std::int64_t n, const Angle& a) {
    std::vector<std::int64_t> c(a.rank());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = detail::checked_mul(n, a.coeffs()[i]);
    return Angle(a.turns() * n, std::move(c));
}

double to_radians(const Angle& a, const GeneratorBasis& basis) {
    if (a.rank() != basis.size()) throw BasisMismatch("to_radians: basis size differs from angle rank");
    double x = static_cast<double>(a.turns()) * kTwoPi;
    for (std::size_t i = 0; i < a.rank(); ++i) {
        x += static_cast<double>(a.coeffs()[i]) * basis[i].value;
    }
    x = std::fmod(x, kTwoPi);
    if (x < 0.0) x += kTwoPi;
    if (x >= kTwoPi) x = 0.0;
    return x;
}

std::string to_string(const Angle& a, const GeneratorBasis& basis) {
    std::ostringstream os;
    os << "2pi*" << a.turns();
    for (std::size_t i = 0; i < a.rank(); ++i) {
        if (a.coeffs()[i] == 0) continue;
        os << (a.coeffs()[i] < 0 ? " - " : " + ");
        const auto m = a.coeffs()[i] < 0 ? -a.coeffs()[i] : a.coeffs()[i];
        if (m != 1) os << m << "*";
        os << (i < basis.size() ? basis[i].name : "g" + std::to_string(i));
    }
    return os.str();
}

}  // namespace natspec
