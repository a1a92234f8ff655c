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

// The computable subalgebra of M(T): finitely supported discrete measures plus
// trigonometric-polynomial densities.
//
// Conventions:
//   * atom weights are complex doubles, atom positions are exact Angles;
//   * a density f(t) = sum_k c_k e^{ikt} is taken against dt/2pi;
//   * the Fourier-Stieltjes coefficient is  mu^(n) = sum_j w_j e^{-i n theta_j} + c_n.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "natspec/angle.hpp"

namespace natspec {

using Complex = std::complex<double>;

class DiscreteMeasure {
public:
    using AtomMap = std::map<Angle, Complex>;

    explicit DiscreteMeasure(GeneratorBasis basis = {});

    static DiscreteMeasure dirac(const GeneratorBasis& basis, const Angle& at, Complex weight = 1.0);

    const GeneratorBasis& basis() const noexcept { return basis_; }
    const AtomMap& atoms() const noexcept { return atoms_; }
    std::size_t size() const noexcept { return atoms_.size(); }
    bool empty() const noexcept { return atoms_.empty(); }

    /// Adds `weight` at `at`, merging with an existing atom; exact zeros are dropped.
    void add(const Angle& at, Complex weight);
    /// Weight at `at`, zero when absent.
    Complex weight(const Angle& at) const;

    /// The same measure over a basis that extends this one.
    DiscreteMeasure rebased(const GeneratorBasis& extended) const;

    /// Generators with a nonzero coefficient in some atom.
    std::vector<std::size_t> used_generators() const;

    DiscreteMeasure& operator+=(const DiscreteMeasure& other);
    DiscreteMeasure& operator*=(Complex c);

    friend bool operator==(const DiscreteMeasure&, const DiscreteMeasure&) = default;

private:
    GeneratorBasis basis_;
    AtomMap atoms_;
};

class TrigPolyDensity {
public:
    using CoeffMap = std::map<std::int64_t, Complex>;

    TrigPolyDensity() = default;

    const CoeffMap& coeffs() const noexcept { return coeffs_; }
    bool empty() const noexcept { return coeffs_.empty(); }
    std::size_t size() const noexcept { return coeffs_.size(); }
    /// max |k| over nonzero coefficients; 0 when empty.
    std::int64_t degree() const;

    void add(std::int64_t k, Complex c);
    Complex coeff(std::int64_t k) const;
    /// f(t) = sum_k c_k e^{ikt}.
    Complex evaluate(double t) const;

    TrigPolyDensity& operator+=(const TrigPolyDensity& other);
    TrigPolyDensity& operator*=(Complex c);

    friend bool operator==(const TrigPolyDensity&, const TrigPolyDensity&) = default;

private:
    CoeffMap coeffs_;
};

/// A discrete part plus an absolutely continuous part. The two are mutually
/// singular, so norms add.
struct MixedMeasure {
    DiscreteMeasure disc;
    TrigPolyDensity ac;

    MixedMeasure() = default;
    MixedMeasure(DiscreteMeasure d) : disc(std::move(d)) {}  // NOLINT(google-explicit-constructor)
    MixedMeasure(DiscreteMeasure d, TrigPolyDensity a) : disc(std::move(d)), ac(std::move(a)) {}

    const GeneratorBasis& basis() const noexcept { return disc.basis(); }
    bool is_zero() const noexcept { return disc.empty() && ac.empty(); }
    bool is_discrete() const noexcept { return ac.empty(); }
    MixedMeasure rebased(const GeneratorBasis& extended) const { return {disc.rebased(extended), ac}; }

    MixedMeasure& operator+=(const MixedMeasure& other);
    MixedMeasure& operator*=(Complex c);

    friend bool operator==(const MixedMeasure&, const MixedMeasure&) = default;
};

MixedMeasure operator+(MixedMeasure a, const MixedMeasure& b);
MixedMeasure operator-(MixedMeasure a, const MixedMeasure& b);
MixedMeasure operator*(Complex c, MixedMeasure a);
DiscreteMeasure operator+(DiscreteMeasure a, const DiscreteMeasure& b);
DiscreteMeasure operator*(Complex c, DiscreteMeasure a);

/// A discrete measure written over one common torsion order L: atom j sits at
/// 2*pi*m_j/L + sum_i e_ji * gamma_i.
struct LatticeForm {
    std::int64_t order = 1;
    std::size_t rank = 0;
    std::vector<std::int64_t> torsion;  // m_j in [0, L)
    std::vector<std::int64_t> coeffs;   // row-major, rank entries per atom
    std::vector<Complex> weights;

    std::size_t size() const noexcept { return weights.size(); }
    std::span<const std::int64_t> coeffs_of(std::size_t j) const {
        return {coeffs.data() + j * rank, rank};
    }
};

// --- Constructors of the fixed measures ------------------------------------

/// (delta_0 + delta_pi) / 2
DiscreteMeasure make_theta0(const GeneratorBasis& basis);
/// (delta_0 - delta_pi) / 2
DiscreteMeasure make_theta1(const GeneratorBasis& basis);
/// (delta_alpha + delta_beta) / 2 for two distinct generators of `basis`.
DiscreteMeasure make_rho(const GeneratorBasis& basis, const Angle& alpha, const Angle& beta);

// --- Algebra ----------------------------------------------------------------

struct ConvolveOptions {
    /// Atoms and coefficients with modulus <= drop_tol are removed; the
    /// default removes exact zeros only.
    double drop_tol = 0.0;
};

struct ConvolutionBudget {
    std::size_t max_atoms = 200'000;
    std::int64_t max_degree = 65'536;
    /// Upper limit on atom-pair products of a single discrete convolution.
    std::size_t max_pair_products = 50'000'000;
};

MixedMeasure convolve(const MixedMeasure& a, const MixedMeasure& b, const ConvolveOptions& opts = {});
DiscreteMeasure convolve(const DiscreteMeasure& a, const DiscreteMeasure& b, const ConvolveOptions& opts = {});

/// mu^{*2^k} by repeated squaring. Throws BudgetExceeded.
MixedMeasure convolve_power(const MixedMeasure& mu, int k, const ConvolutionBudget& budget = {},
                            const ConvolveOptions& opts = {});

struct NormEstimate {
    double value = 0.0;
    /// Bound on |value - true norm| from the density quadrature.
    double error = 0.0;
    double upper() const { return value + error; }
};

/// Total variation norm: sum |w_j| + (1/2pi) int |f|.
NormEstimate tv_norm(const MixedMeasure& mu);
NormEstimate l1_norm(const TrigPolyDensity& f);
double tv_norm(const DiscreteMeasure& mu);

Complex fourier_coefficient(const MixedMeasure& mu, std::int64_t n);

/// Evaluates many Fourier-Stieltjes coefficients of one measure.
class FourierEvaluator {
public:
    explicit FourierEvaluator(const MixedMeasure& mu);
    FourierEvaluator(const LatticeForm& disc, const GeneratorBasis& basis, TrigPolyDensity ac = {});
    Complex operator()(std::int64_t n) const;
    /// Discrete part only.
    Complex discrete(std::int64_t n) const;

private:
    std::int64_t torsion_order_ = 1;
    std::vector<std::int64_t> torsion_;
    std::vector<double> free_phase_;
    std::vector<Complex> weights_;
    std::vector<Complex> roots_;
    TrigPolyDensity ac_;
};

/// (mu * theta0, mu * theta1).
std::pair<MixedMeasure, MixedMeasure> parity_projections(const MixedMeasure& mu);

/// e^{-2 pi i r / L}, exact at quarter turns.
Complex root_of_unity(std::int64_t r, std::int64_t order);

// --- Lattice coordinates ----------------------------------------------------

/// Lattice form whose order is a multiple of `order_multiple`.
LatticeForm to_lattice(const DiscreteMeasure& mu, std::int64_t order_multiple = 1);
DiscreteMeasure from_lattice(const LatticeForm& f, const GeneratorBasis& basis);
/// Same measure over order L' = k*L.
LatticeForm with_order(const LatticeForm& f, std::int64_t new_order);
LatticeForm convolve(const LatticeForm& a, const LatticeForm& b, const ConvolveOptions& opts = {});

}  // namespace natspec
