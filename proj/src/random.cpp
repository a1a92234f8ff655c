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

#include "natspec/random.hpp"

#include <cmath>
#include <string>

#include "natspec/errors.hpp"

namespace natspec {

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::int64_t Rng::integer(std::int64_t lo, std::int64_t hi) {
    if (hi < lo) throw InvalidArgument("Rng::integer: empty range");
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    // Rejection sampling keeps the draw exactly uniform.
    const std::uint64_t limit = span == 0 ? 0 : (~std::uint64_t{0} / span) * span;
    std::uint64_t v = engine_();
    while (limit != 0 && v >= limit) v = engine_();
    return lo + static_cast<std::int64_t>(span == 0 ? v : v % span);
}

Complex Rng::in_disk(double radius) {
    for (;;) {
        const Complex z{uniform(-1.0, 1.0), uniform(-1.0, 1.0)};
        if (std::norm(z) <= 1.0) return radius * z;
    }
}

GeneratorBasis random_measure_basis(int count) {
    static const double values[] = {std::sqrt(5.0), std::sqrt(7.0), std::log(2.0), std::log(3.0)};
    if (count < 0 || count > 4) throw InvalidArgument("random_measure_basis: count must be in [0, 4]");
    std::vector<Generator> g;
    for (int i = 0; i < count; ++i) g.push_back({"gamma" + std::to_string(i + 1), values[i]});
    return GeneratorBasis(std::move(g));
}

MixedMeasure random_measure(Rng& rng, const RandomMeasureSpec& spec) {
    const GeneratorBasis basis = random_measure_basis(spec.generators);
    MixedMeasure mu{DiscreteMeasure(basis)};
    const auto atoms = rng.integer(0, spec.max_atoms);
    for (std::int64_t a = 0; a < atoms; ++a) {
        const auto q = rng.integer(1, spec.max_denominator);
        const auto p = rng.integer(0, q - 1);
        std::vector<std::int64_t> coeffs(basis.size());
        for (auto& c : coeffs) c = rng.integer(-spec.max_coeff, spec.max_coeff);
        mu.disc.add(Angle(Rational(p, q), std::move(coeffs)), rng.in_box(spec.weight_box));
    }
    if (spec.density) {
        const auto terms = rng.integer(0, spec.max_degree + 1);
        for (std::int64_t t = 0; t < terms; ++t) {
            mu.ac.add(rng.integer(-spec.max_degree, spec.max_degree), rng.in_box(spec.weight_box));
        }
    }
    return mu;
}

}  // namespace natspec
