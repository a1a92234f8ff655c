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
#include "natspec/kronecker.hpp"
#include "natspec/random.hpp"

namespace natspec {
namespace {

const double kA = std::sqrt(2.0), kB = std::sqrt(3.0);

KroneckerProblem origin(double eps) {
    KroneckerProblem p;
    p.alpha = kA;
    p.beta = kB;
    p.epsilon = eps;
    p.min_abs_n = 1;
    return p;
}

TEST(KroneckerTest, TrivialSolutionAtOrigin) {
    auto p = origin(0.1);
    p.min_abs_n = 0;
    const auto s = solve(p);
    EXPECT_EQ(s.n, 0);
    EXPECT_EQ(s.err_alpha, 0.0);
}

// Oracle values come from a brute-force scan in tests/oracles/oracles.py.
TEST(KroneckerTest, FirstReturnsMatchOracle) {
    EXPECT_EQ(solve(origin(0.3)).n, 40);
    EXPECT_EQ(solve(origin(0.1)).n, 1364);
}

TEST(KroneckerTest, LatticeMethodAgrees) {
    auto p = origin(0.1);
    p.method = KroneckerMethod::Lattice;
    const auto s = solve(p);
    EXPECT_LT(s.err_alpha, 0.1);
    EXPECT_LT(s.err_beta, 0.1);
    EXPECT_EQ(std::abs(s.n), 1364);
}

TEST(KroneckerTest, SolutionsAreVerified) {
    Rng rng(4);
    for (int i = 0; i < 40; ++i) {
        KroneckerProblem p;
        p.alpha = kA;
        p.beta = kB;
        p.target_x = rng.uniform() * 6.28;
        p.target_y = rng.uniform() * 6.28;
        p.epsilon = 0.05;
        for (const auto m : {KroneckerMethod::Scan, KroneckerMethod::Lattice}) {
            p.method = m;
            const auto s = solve(p);
            EXPECT_LT(chordal_distance(s.n * kA, p.target_x), p.epsilon);
            EXPECT_LT(chordal_distance(s.n * kB, p.target_y), p.epsilon);
        }
    }
}

TEST(KroneckerTest, Errors) {
    auto p = origin(0.0);
    EXPECT_THROW(solve(p), InvalidArgument);
    p = origin(1e-6);
    p.n_max = 100;
    try {
        solve(p);
        FAIL() << "expected NotFound";
    } catch (const NotFound& e) {
        EXPECT_GT(e.best_error(), 1e-6);
    }
    p = origin(0.1);
    p.alpha = 7.0;
    EXPECT_THROW(solve(p), InvalidArgument);
    EXPECT_THROW(parse_method("grid"), InvalidArgument);
    EXPECT_THROW(parse_parity("both"), InvalidArgument);
}

TEST(DiskPreimageTest, Examples) {
    auto [z, u] = disk_preimage(Complex(0.0));
    EXPECT_NEAR(std::abs(z), 1.0, 1e-15);
    EXPECT_NEAR(std::abs(z + u), 0.0, 1e-15);
    std::tie(z, u) = disk_preimage(Complex(1.0));
    EXPECT_NEAR(std::abs(z - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(u - 1.0), 0.0, 1e-15);
    EXPECT_THROW(disk_preimage(Complex(1.5)), OutOfDisk);
}

TEST(DiskPreimageTest, RandomPointsProperties) {
    Rng rng(6);
    for (int i = 0; i < 500; ++i) {
        const Complex w = rng.in_disk(1.0);
        for (const bool flip : {false, true}) {
            const auto [z, u] = disk_preimage(w, flip);
            EXPECT_NEAR(std::abs(z), 1.0, 1e-12);
            EXPECT_NEAR(std::abs(u), 1.0, 1e-12);
            EXPECT_LT(std::abs((z + u) / 2.0 - w), 1e-12);
            const auto [zs, us] = disk_preimage_shifted(w, kA, kB, flip);
            EXPECT_LT(std::abs((zs * std::polar(1.0, -kA) + us * std::polar(1.0, -kB)) / 2.0 - w), 1e-12);
        }
    }
}

// The search steers both halves of rho^(n) to within epsilon/2 of a disk
// preimage, so it returns a valid n that need not be the smallest one. A
// brute-force scan (tests/oracles/oracles.py) gives the smallest: 10 and -5.
TEST(HitTargetTest, OracleExamples) {
    const auto even = hit_target(kA, kB, Complex(0.0), 0.1, Parity::Even);
    EXPECT_EQ(even.n % 2, 0);
    EXPECT_GE(std::abs(even.n), 10);
    EXPECT_LT(std::abs(rho_hat(kA, kB, even.n)), 0.1);
    const auto odd = hit_target(kA, kB, Complex(0.0, 0.7), 0.05, Parity::Odd);
    EXPECT_NE(odd.n % 2, 0);
    EXPECT_GE(std::abs(odd.n), 5);
    EXPECT_LT(std::abs(rho_hat(kA, kB, odd.n) - Complex(0.0, 0.7)), 0.05);
}

TEST(HitTargetTest, ParityAndAccuracy) {
    Rng rng(12);
    for (int i = 0; i < 30; ++i) {
        const Complex w = rng.in_disk(1.0);
        for (const auto par : {Parity::Any, Parity::Even, Parity::Odd}) {
            const auto h = hit_target(kA, kB, w, 0.05, par);
            EXPECT_LT(std::abs(rho_hat(kA, kB, h.n) - w), 0.05);
            EXPECT_NEAR(std::abs(h.value - rho_hat(kA, kB, h.n)), 0.0, 1e-15);
            if (par == Parity::Even) {
                EXPECT_EQ(h.n % 2, 0);
            } else if (par == Parity::Odd) {
                EXPECT_NE(h.n % 2, 0);
            }
        }
    }
}

TEST(HitTargetTest, Errors) {
    EXPECT_THROW(hit_target(kA, kB, Complex(0.0), -1.0, Parity::Any), InvalidArgument);
    EXPECT_THROW(hit_target(kA, kB, Complex(0.0), 1e-9, Parity::Even, 20), NotFound);
}

TEST(RhoHatTest, Values) {
    EXPECT_EQ(rho_hat(kA, kB, 0), Complex(1.0));
    EXPECT_NEAR(std::abs(rho_hat(kA, kB, 1) - (std::polar(1.0, -kA) + std::polar(1.0, -kB)) / 2.0), 0.0, 1e-15);
}

}  // namespace
}  // namespace natspec
