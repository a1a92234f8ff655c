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

#include <cmath>

#include <gtest/gtest.h>

#include "natspec/errors.hpp"
#include "natspec/measure.hpp"
#include "natspec/parallel.hpp"
#include "natspec/random.hpp"

namespace natspec {
namespace {

const double kS2 = std::sqrt(2.0), kS3 = std::sqrt(3.0);

GeneratorBasis ab() { return GeneratorBasis({{"sqrt2", kS2}, {"sqrt3", kS3}}); }
DiscreteMeasure rho() { return make_rho(ab(), Angle::generator(2, 0), Angle::generator(2, 1)); }

TEST(FixedMeasuresTest, Thetas) {
    const GeneratorBasis b;
    const auto t0 = make_theta0(b), t1 = make_theta1(b);
    EXPECT_EQ(t0.size(), 2u);
    EXPECT_EQ(t0.weight(Angle(0)), Complex(0.5));
    EXPECT_EQ(t0.weight(Angle::pi(0)), Complex(0.5));
    EXPECT_EQ(t1.weight(Angle(0)), Complex(0.5));
    EXPECT_EQ(t1.weight(Angle::pi(0)), Complex(-0.5));
    EXPECT_EQ(tv_norm(t0), 1.0);
    EXPECT_EQ(tv_norm(t1), 1.0);
}

TEST(FixedMeasuresTest, Rho) {
    const auto r = rho();
    EXPECT_EQ(r.weight(Angle::generator(2, 0)), Complex(0.5));
    EXPECT_EQ(r.weight(Angle::generator(2, 1)), Complex(0.5));
    EXPECT_EQ(fourier_coefficient(r, 0), Complex(1.0));
    EXPECT_EQ(tv_norm(r), 1.0);
    EXPECT_THROW(make_rho(ab(), Angle::generator(2, 0), Angle::generator(2, 0)), InvalidArgument);
    EXPECT_THROW(make_rho(ab(), Angle::pi(2), Angle::generator(2, 0)), InvalidArgument);
}

TEST(ConvolveTest, DiracsAddPositions) {
    const auto b = ab();
    const auto c = convolve(DiscreteMeasure::dirac(b, Angle::generator(2, 0)),
                            DiscreteMeasure::dirac(b, Angle::generator(2, 1)));
    ASSERT_EQ(c.size(), 1u);
    EXPECT_EQ(c.weight(Angle::generator(2, 0) + Angle::generator(2, 1)), Complex(1.0));
}

TEST(ConvolveTest, ThetaAlgebraIsExact) {
    const GeneratorBasis b;
    const auto t0 = make_theta0(b), t1 = make_theta1(b);
    EXPECT_TRUE(convolve(t0, t1).empty());
    EXPECT_EQ(convolve(t0, t0), t0);
    EXPECT_EQ(convolve(t1, t1), t1);
    EXPECT_EQ(t0 + t1, DiscreteMeasure::dirac(b, Angle(0)));
}

TEST(ConvolveTest, RhoTimesTheta1) {
    // Oracle: bilinear expansion with exact rationals (tests/oracles/oracles.py).
    const auto c = convolve(rho(), make_theta1(ab()));
    const Angle a = Angle::generator(2, 0), bb = Angle::generator(2, 1), pi = Angle::pi(2);
    ASSERT_EQ(c.size(), 4u);
    EXPECT_EQ(c.weight(a), Complex(0.25));
    EXPECT_EQ(c.weight(a + pi), Complex(-0.25));
    EXPECT_EQ(c.weight(bb), Complex(0.25));
    EXPECT_EQ(c.weight(bb + pi), Complex(-0.25));
    EXPECT_EQ(tv_norm(c), 1.0);
}

TEST(ConvolveTest, BasisMismatchRejected) {
    EXPECT_THROW(convolve(rho(), make_theta0(GeneratorBasis{})), BasisMismatch);
}

TEST(ConvolvePowerTest, RhoSquared) {
    const auto p = convolve_power(MixedMeasure(rho()), 1);
    const Angle a = Angle::generator(2, 0), b = Angle::generator(2, 1);
    ASSERT_EQ(p.disc.size(), 3u);
    EXPECT_EQ(p.disc.weight(scale(2, a)), Complex(0.25));
    EXPECT_EQ(p.disc.weight(a + b), Complex(0.5));
    EXPECT_EQ(p.disc.weight(scale(2, b)), Complex(0.25));
}

TEST(ConvolvePowerTest, ThetaZeroIsIdempotentAndPiSquaresToZero) {
    const GeneratorBasis b;
    for (int k = 0; k <= 4; ++k) EXPECT_EQ(convolve_power(MixedMeasure(make_theta0(b)), k).disc, make_theta0(b));
    EXPECT_EQ(convolve_power(MixedMeasure(DiscreteMeasure::dirac(b, Angle::pi(0))), 1).disc,
              DiscreteMeasure::dirac(b, Angle(0)));
}

TEST(ConvolvePowerTest, BudgetReportsLargestCompletedPower) {
    ConvolutionBudget budget;
    budget.max_atoms = 10;
    try {
        convolve_power(MixedMeasure(rho()), 4, budget);
        FAIL() << "expected BudgetExceeded";
    } catch (const BudgetExceeded& e) {
        // rho^2 has 3 atoms, rho^4 has 5, rho^8 has 9, rho^16 has 17.
        EXPECT_EQ(e.largest_completed_power_log2(), 3);
    }
}

TEST(NormTest, DensityExamples) {
    TrigPolyDensity f;
    f.add(1, 2.0);
    const auto n = tv_norm(MixedMeasure(DiscreteMeasure{}, f));
    EXPECT_NEAR(n.value, 2.0, 1e-12);
    EXPECT_LE(std::abs(n.value - 2.0), n.error + 1e-15);
}

TEST(NormTest, QuadratureErrorBoundsFinerGrid) {
    Rng rng(5);
    for (int trial = 0; trial < 25; ++trial) {
        TrigPolyDensity f;
        const auto deg = rng.integer(1, 16);
        for (std::int64_t k = -deg; k <= deg; ++k) f.add(k, rng.in_box(1.0));
        const auto est = l1_norm(f);
        // Reference: trapezoid rule on a 16x finer grid.
        const std::int64_t M = 16 * std::max<std::int64_t>(4096, 64 * f.degree());
        double sum = 0.0;
        for (std::int64_t j = 0; j < M; ++j) sum += std::abs(f.evaluate(kTwoPi * static_cast<double>(j) / M));
        const double ref = sum / static_cast<double>(M);
        EXPECT_LE(std::abs(est.value - ref), est.error) << "degree " << deg;
    }
}

TEST(FourierTest, Conventions) {
    const auto b = ab();
    const auto d = DiscreteMeasure::dirac(b, Angle::generator(2, 0), Complex(2.0, 1.0));
    const Complex expected = Complex(2.0, 1.0) * std::polar(1.0, -3.0 * kS2);
    EXPECT_NEAR(std::abs(fourier_coefficient(d, 3) - expected), 0.0, 1e-14);
    TrigPolyDensity f;
    f.add(-2, Complex(0.0, 1.0));
    EXPECT_EQ(fourier_coefficient(MixedMeasure(DiscreteMeasure(b), f), -2), Complex(0.0, 1.0));
    EXPECT_EQ(fourier_coefficient(MixedMeasure(DiscreteMeasure(b), f), 2), Complex(0.0));
}

TEST(ParityProjectionTest, Dirac) {
    const GeneratorBasis b({{"gamma", std::sqrt(5.0)}});
    const Angle g = Angle::generator(1, 0);
    const auto [m0, m1] = parity_projections(MixedMeasure(DiscreteMeasure::dirac(b, g)));
    EXPECT_EQ(m0.disc.weight(g), Complex(0.5));
    EXPECT_EQ(m0.disc.weight(g + Angle::pi(1)), Complex(0.5));
    EXPECT_EQ(m1.disc.weight(g), Complex(0.5));
    EXPECT_EQ(m1.disc.weight(g + Angle::pi(1)), Complex(-0.5));
}

TEST(ParityProjectionTest, ThetaZero) {
    const GeneratorBasis b;
    const auto [m0, m1] = parity_projections(MixedMeasure(make_theta0(b)));
    EXPECT_EQ(m0.disc, make_theta0(b));
    EXPECT_TRUE(m1.is_zero());
}

TEST(ParityProjectionTest, RandomMeasures) {
    Rng rng(21);
    for (int i = 0; i < 50; ++i) {
        const auto mu = random_measure(rng);
        const auto [m0, m1] = parity_projections(mu);
        const auto sum = m0 + m1;
        // Positions agree exactly; weights up to rounding of w/2 + w'/2.
        ASSERT_EQ(sum.disc.size(), mu.disc.size());
        for (const auto& [at, w] : mu.disc.atoms()) EXPECT_NEAR(std::abs(sum.disc.weight(at) - w), 0.0, 1e-15);
        EXPECT_EQ(sum.ac, mu.ac);
        const FourierEvaluator f(mu), f0(m0), f1(m1);
        for (std::int64_t n = -40; n <= 40; ++n) {
            if (n % 2 == 0) {
                EXPECT_NEAR(std::abs(f0(n) - f(n)), 0.0, 1e-12);
                EXPECT_LT(std::abs(f1(n)), 1e-12);
            } else {
                EXPECT_NEAR(std::abs(f1(n) - f(n)), 0.0, 1e-12);
                EXPECT_LT(std::abs(f0(n)), 1e-12);
            }
        }
    }
}

TEST(ConvolvePropertyTest, ConvolutionTheoremAndSubmultiplicativity) {
    Rng rng(3);
    RandomMeasureSpec spec;
    spec.max_atoms = 6;
    spec.max_degree = 8;
    for (int i = 0; i < 60; ++i) {
        const auto a = random_measure(rng, spec), b = random_measure(rng, spec);
        const auto c = convolve(a, b);
        const FourierEvaluator fa(a), fb(b), fc(c);
        for (std::int64_t n = -64; n <= 64; ++n) ASSERT_LT(std::abs(fc(n) - fa(n) * fb(n)), 1e-10);
        EXPECT_LE(tv_norm(c).value, tv_norm(a).upper() * tv_norm(b).upper() + 1e-9);
    }
}

TEST(LatticeTest, RoundTrip) {
    Rng rng(8);
    RandomMeasureSpec spec;
    spec.density = false;
    spec.max_denominator = 6;
    for (int i = 0; i < 30; ++i) {
        const auto mu = random_measure(rng, spec);
        EXPECT_EQ(from_lattice(to_lattice(mu.disc), mu.basis()), mu.disc);
        const auto f = to_lattice(mu.disc);
        EXPECT_EQ(from_lattice(with_order(f, 3 * f.order), mu.basis()), mu.disc);
    }
}

TEST(LatticeTest, ConvolveMatchesMapConvolution) {
    Rng rng(9);
    RandomMeasureSpec spec;
    spec.density = false;
    for (int i = 0; i < 30; ++i) {
        const auto a = random_measure(rng, spec), b = random_measure(rng, spec);
        const auto direct = convolve(a.disc, b.disc);
        const auto lat = from_lattice(convolve(to_lattice(a.disc), to_lattice(b.disc)), a.basis());
        ASSERT_EQ(direct.size(), lat.size());
        for (const auto& [at, w] : direct.atoms()) EXPECT_NEAR(std::abs(lat.weight(at) - w), 0.0, 1e-15);
    }
}

TEST(DeterminismTest, WorkerCountDoesNotChangeResults) {
    Rng rng(10);
    RandomMeasureSpec spec;
    spec.max_atoms = 40;
    spec.max_coeff = 6;
    const auto mu = random_measure(rng, spec);
    const int before = workers();
    set_workers(1);
    const auto one = convolve_power(mu, 2);
    set_workers(4);
    const auto four = convolve_power(mu, 2);
    set_workers(before);
    EXPECT_EQ(one, four);
}

TEST(RootOfUnityTest, QuarterTurnsAreExact) {
    EXPECT_EQ(root_of_unity(0, 4), Complex(1.0, 0.0));
    EXPECT_EQ(root_of_unity(1, 4), Complex(0.0, -1.0));
    EXPECT_EQ(root_of_unity(2, 4), Complex(-1.0, 0.0));
    EXPECT_EQ(root_of_unity(3, 4), Complex(0.0, 1.0));
    EXPECT_EQ(root_of_unity(5, 10), Complex(-1.0, 0.0));
}

}  // namespace
}  // namespace natspec
