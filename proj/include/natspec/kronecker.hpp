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

// Simultaneous approximation on the 2-torus: integers n steering
// (e^{in alpha}, e^{in beta}) close to prescribed points, and the resulting
// control of rho^(n) = (e^{-in alpha} + e^{-in beta}) / 2 over the closed unit disk.
//
// Density of {(n alpha, n beta)} needs alpha, beta, pi rationally independent.
// That is a declared property of the inputs and is never checked here.

#include <complex>
#include <cstdint>
#include <string_view>
#include <utility>

namespace natspec {

using Complex = std::complex<double>;

enum class KroneckerMethod { Scan, Lattice };
enum class Parity { Any, Even, Odd };

std::string_view to_string(KroneckerMethod m);
std::string_view to_string(Parity p);
KroneckerMethod parse_method(std::string_view s);
Parity parse_parity(std::string_view s);

struct KroneckerProblem {
    double alpha = 0.0;
    double beta = 0.0;
    double target_x = 0.0;
    double target_y = 0.0;
    double epsilon = 0.1;
    std::int64_t n_max = 1'000'000;
    KroneckerMethod method = KroneckerMethod::Scan;
    /// Smallest |n| considered; 1 excludes the trivial n = 0.
    std::int64_t min_abs_n = 0;
};

struct KroneckerSolution {
    std::int64_t n = 0;
    double err_alpha = 0.0;  ///< |e^{in alpha} - e^{ix}|
    double err_beta = 0.0;   ///< |e^{in beta} - e^{iy}|
    std::int64_t evaluations = 0;
    KroneckerMethod method = KroneckerMethod::Scan;  ///< method that produced n
};

/// |e^{it} - e^{ix}|
double chordal_distance(double t, double x);

/// Scan: smallest |n| (positive first) with both chordal errors below epsilon.
/// Lattice: nearest-plane candidate on a reduced 3-d lattice, verified, with a
/// scan fallback. Throws NotFound (carrying the best n seen) or InvalidArgument.
KroneckerSolution solve(const KroneckerProblem& p);

/// Unit z, u with (z + u)/2 = w. `flip` selects the other preimage (u, z).
std::pair<Complex, Complex> disk_preimage(Complex w, bool flip = false);
/// Unit z, u with (z e^{-i alpha} + u e^{-i beta})/2 = w.
std::pair<Complex, Complex> disk_preimage_shifted(Complex w, double alpha, double beta, bool flip = false);

Complex rho_hat(double alpha, double beta, std::int64_t n);

struct HitResult {
    std::int64_t n = 0;
    Complex value;       ///< rho^(n)
    double error = 0.0;  ///< |rho^(n) - w|
    std::int64_t evaluations = 0;
};

/// Finds n of the requested parity with |rho^(n) - w| < epsilon and |n| <= n_max.
HitResult hit_target(double alpha, double beta, Complex w, double epsilon, Parity parity,
                     std::int64_t n_max = 1'000'000, KroneckerMethod method = KroneckerMethod::Scan);

namespace detail {
/// Nearest-plane candidate for n from the reduced lattice with the given n-weight.
std::int64_t lattice_candidate(double a_turns, double b_turns, double x_turns, double y_turns, double weight);
}  // namespace detail

}  // namespace natspec
