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

// Seeded random test measures. Uses only the raw output of std::mt19937_64
// (whose sequence is fixed by the standard), so samples are identical on
// every platform.

#include <cstdint>
#include <random>

#include "natspec/measure.hpp"

namespace natspec {

struct RandomMeasureSpec {
    int max_atoms = 5;
    int max_degree = 4;       ///< 0 together with density = false: purely discrete
    bool density = true;
    int generators = 2;       ///< declared generators in the basis (at most 4)
    int max_coeff = 2;        ///< generator coefficients in [-max_coeff, max_coeff]
    int max_denominator = 4;  ///< turns p/q with q in [1, max_denominator]
    double weight_box = 1.0;  ///< real and imaginary parts in [-box, box]
};

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    /// Uniform in [0, 1) from the top 53 bits.
    double uniform();
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Uniform integer in [lo, hi].
    std::int64_t integer(std::int64_t lo, std::int64_t hi);
    Complex in_box(double box) { return {uniform(-box, box), uniform(-box, box)}; }
    /// Uniform in the closed disk of `radius`.
    Complex in_disk(double radius);

private:
    std::mt19937_64 engine_;
};

/// Basis of `count` generators named gamma1, gamma2, ... with values sqrt5, sqrt7, ln2, ln3
/// (disjoint from the default alpha = sqrt2, beta = sqrt3).
GeneratorBasis random_measure_basis(int count);

MixedMeasure random_measure(Rng& rng, const RandomMeasureSpec& spec = {});

}  // namespace natspec
