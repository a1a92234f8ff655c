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

// Spectral radius and natural-spectrum checks.
//
// Upper bounds come from submultiplicativity: r(mu) <= ||mu^{*2^k}||^{1/2^k}
// for every k. Lower bounds, and the whole spectrum for finitely supported
// discrete measures, come from generalized characters: atom j at
// 2*pi*m_j/L + sum_i e_ji*gamma_i is sent to  w^{m_j} * prod_i z_i^{e_ji}
// with w an L-th root of unity and z_i free on the unit circle.

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "natspec/measure.hpp"

namespace natspec {

struct FeketeStep {
    int k = 0;
    double norm = 0.0;  ///< upper estimate of ||mu^{*2^k}||
    double r = 0.0;     ///< norm^{1/2^k}
};

struct FeketeReport {
    std::vector<FeketeStep> steps;
    double final_bound = 0.0;
    bool budget_hit = false;
};

/// Squares until k_max, the budget, or a relative improvement below rel_tol
/// (rel_tol <= 0 disables the early stop). Never throws on budget exhaustion.
FeketeReport fekete_bound(const MixedMeasure& mu, int k_max, double rel_tol = 0.0, const ConvolutionBudget& budget = {});

struct CharacterTerm {
    std::int64_t m = 0;              ///< torsion exponent mod order
    std::vector<std::int64_t> e;     ///< exponents of the free variables
    Complex c;
};

struct CharacterPolynomial {
    std::int64_t order = 1;                 ///< L
    std::vector<std::size_t> generators;    ///< basis indices of the free variables
    std::vector<CharacterTerm> terms;

    std::size_t free_dims() const noexcept { return generators.size(); }
    /// p(s, phi) = sum_j c_j e^{-2 pi i m_j s / L} e^{-i e_j . phi}; mu^(n) = p(n mod L, n*gamma).
    Complex evaluate(std::int64_t s, std::span<const double> phi) const;
};

/// Free variables are the generators actually used by some atom.
CharacterPolynomial char_polynomial(const DiscreteMeasure& mu);

inline constexpr std::size_t kMaxFreeDims = 4;

struct TorusMaxResult {
    double value = 0.0;
    std::int64_t torsion = 0;
    std::vector<double> phi;
};

/// Grid search over every torsion value and a uniform grid^k torus grid, then
/// gradient ascent on |p|^2 from the best point of each dyadic subgrid.
/// The value is attained by a character, hence a lower bound on r(mu).
TorusMaxResult torus_max_point(const CharacterPolynomial& p, int grid, int refine_iters = 64);
double torus_max(const CharacterPolynomial& p, int grid, int refine_iters = 64);

struct SpectrumSample {
    std::vector<Complex> points;
    std::vector<int> resolution;  ///< per free dimension; empty for a transform sample
    int refine = 0;
    std::int64_t torsion_order = 1;
};

/// Default cap on torsion_order * prod(resolution) for spectrum_sample.
inline constexpr std::size_t kDefaultSpectrumPointBudget = std::size_t{1} << 22;

/// Image of the torsion values times the torus grid. The per-dimension
/// resolution is lowered below `grid` when the point budget requires it.
SpectrumSample spectrum_sample(const DiscreteMeasure& mu, int grid, int refine = 64,
                               std::size_t point_budget = kDefaultSpectrumPointBudget);

enum class Subset { All, Even, Odd };

/// {mu^(n) : n in subset, |n| <= N}, ordered by n.
SpectrumSample transform_closure_sample(const MixedMeasure& mu, std::int64_t N, Subset subset = Subset::All);

/// Polar grid of the closed disk of `radius`: the center plus ceil(2/tol) rings of
/// ceil(2*pi/tol) points each.
std::vector<Complex> disk_grid(double radius, double tol);

/// Largest distance from a reference point to the spectrum, where each
/// distance is first taken to the sampled cloud and then improved by
/// `refine_iters` descent steps on |p - w|^2 over the torus.
double spectrum_covering_radius(const CharacterPolynomial& p, const SpectrumSample& cloud,
                                std::span<const Complex> reference);

struct NaturalSpectrumCheck {
    double distance = 0.0;
    bool natural = false;
    double tol = 0.0;
    std::vector<int> spectrum_resolution;
    std::int64_t N = 0;
};

NaturalSpectrumCheck natural_spectrum_check(const DiscreteMeasure& mu, std::int64_t N, int grid, double tol = 0.05);

}  // namespace natspec
