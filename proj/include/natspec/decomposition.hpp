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

// mu = nu0 + nu1 + nu2 with nu2 discrete and nu0, nu1 of natural spectrum.
//
// With theta0 = (delta_0 + delta_pi)/2, theta1 = (delta_0 - delta_pi)/2,
// rho = (delta_alpha + delta_beta)/2 and mu_i = mu * theta_i:
//
//   nu0 = mu0 + R0 rho*theta1,  nu1 = mu1 + R1 rho*theta0,
//   nu2 = -R0 rho*theta1 - R1 rho*theta0.
//
// Any R_i >= r(mu_i) works: every step of the argument only uses
// |phi(mu_i)| <= R_i for characters phi, and scaling of the disk.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "natspec/measure.hpp"
#include "natspec/spectrum.hpp"

namespace natspec {

enum class RadiusMode { Fekete, ExactDiscrete, Manual };
enum class GeneratorStrategy { DefaultSqrt23, Fresh };

std::string_view to_string(RadiusMode m);
RadiusMode parse_radius_mode(std::string_view s);

struct DecompositionOptions {
    RadiusMode radius_mode = RadiusMode::Fekete;
    double manual_r0 = 0.0;
    double manual_r1 = 0.0;
    GeneratorStrategy generator_strategy = GeneratorStrategy::DefaultSqrt23;

    int k_max = 4;
    double rel_tol = 0.0;
    ConvolutionBudget budget{};
    int grid = 256;   ///< torus grid for exact_discrete and check (f)
    int refine = 64;

    // Verification.
    std::int64_t N = 10'000;
    double tol = 0.05;          ///< disk grid spacing and check (f) tolerance
    double density_tol = 0.1;   ///< check (e), relative to R0 (and R1)
    double residual_tol = 1e-9; ///< checks (a), (c), (d)
    /// Sample size for the manual-radius admissibility test.
    std::int64_t manual_check_N = 256;
    bool check_spectrum = true;  ///< run (f) when applicable
    std::size_t spectrum_point_budget = std::size_t{1} << 20;
};

struct RadiusInfo {
    double value = 0.0;       ///< R_i used in the construction
    std::optional<double> fekete;       ///< Fekete final bound, when computed
    std::optional<double> torus_lower;  ///< exact_discrete: character lower bound
    bool budget_hit = false;
};

struct Check {
    std::string name;
    bool passed = true;
    bool skipped = false;
    double residual = 0.0;  ///< the worst value compared against the threshold
    double threshold = 0.0;
    /// Further named quantities (e.g. the absolute density distance).
    std::vector<std::pair<std::string, double>> values;
    std::string detail;
};

struct VerificationReport {
    std::vector<Check> checks;
    bool passed() const;
    const Check* find(std::string_view name) const;
};

struct DecompositionResult {
    GeneratorBasis basis;  ///< mu's basis extended by alpha and beta
    Angle alpha, beta;
    MixedMeasure mu0, mu1;
    MixedMeasure nu0, nu1;
    DiscreteMeasure nu2;
    RadiusInfo r0, r1;
    VerificationReport report;
};

/// Builds the three parts. Does not run verification (report is empty).
/// Throws UnsupportedMeasure (exact_discrete with a density part) or
/// InvalidArgument (manual radii below sup_{|n|<=manual_check_N} |mu_i^(n)|).
DecompositionResult decompose(const MixedMeasure& mu, const DecompositionOptions& opts = {});

/// Checks (a)-(f); never throws on failure, the report carries the verdicts.
VerificationReport verify_decomposition(const MixedMeasure& mu, const DecompositionResult& result,
                                        const DecompositionOptions& opts = {});

/// rho * theta1 and rho * theta0 over the result's basis.
DiscreteMeasure rho_theta1(const DecompositionResult& r);
DiscreteMeasure rho_theta0(const DecompositionResult& r);

}  // namespace natspec
