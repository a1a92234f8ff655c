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

#include "suite.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <functional>
#include <sstream>

#include "natspec/decomposition.hpp"
#include "natspec/errors.hpp"
#include "natspec/kernels.hpp"
#include "natspec/kronecker.hpp"
#include "natspec/random.hpp"
#include "natspec/spectrum.hpp"

namespace natspec::cli {

namespace {

const double kSqrt2 = std::sqrt(2.0);
const double kSqrt3 = std::sqrt(3.0);

SuiteCheck make(std::string name, double residual, double threshold, std::int64_t cases, bool extra = true) {
    SuiteCheck c;
    c.name = std::move(name);
    c.residual = residual;
    c.threshold = threshold;
    c.cases = cases;
    c.passed = extra && residual <= threshold;
    return c;
}

/// mu over its basis plus the default alpha, beta, and rho over the same basis.
struct WithRho {
    MixedMeasure mu;
    DiscreteMeasure rho;
};

WithRho with_rho(const MixedMeasure& mu) {
    const auto basis = mu.basis().with({"sqrt2", kSqrt2}).with({"sqrt3", kSqrt3});
    const std::size_t r = basis.size();
    return {mu.rebased(basis), make_rho(basis, Angle::generator(r, r - 2), Angle::generator(r, r - 1))};
}

SuiteCheck theta_algebra() {
    const GeneratorBasis b;
    const auto t0 = make_theta0(b);
    const auto t1 = make_theta1(b);
    const bool ok = convolve(t0, t1).empty() && convolve(t0, t0) == t0 && convolve(t1, t1) == t1 &&
                    t0 + t1 == DiscreteMeasure::dirac(b, Angle(0));
    auto c = make("theta_algebra_exact", 0.0, 0.0, 4, ok);
    c.detail = "theta0*theta1 = 0, theta_i*theta_i = theta_i, theta0+theta1 = delta_0 (structural equality)";
    return c;
}

SuiteCheck orthogonality(Rng& rng, int cases) {
    bool ok = true;
    for (int i = 0; i < cases; ++i) {
        const auto w = with_rho(random_measure(rng));
        const auto [m0, m1] = parity_projections(w.mu);
        const MixedMeasure rt1(convolve(w.rho, make_theta1(w.rho.basis())));
        const MixedMeasure rt0(convolve(w.rho, make_theta0(w.rho.basis())));
        ok = ok && convolve(m0, rt1).is_zero() && convolve(m1, rt0).is_zero();
    }
    auto c = make("parity_orthogonality_exact", 0.0, 0.0, cases, ok);
    c.detail = "mu0*rho*theta1 = 0 and mu1*rho*theta0 = 0 exactly";
    return c;
}

SuiteCheck convolution_theorem(Rng& rng, int cases) {
    RandomMeasureSpec spec;
    spec.max_atoms = 6;
    spec.max_degree = 8;
    double worst = 0.0, submult = 0.0;
    for (int i = 0; i < cases; ++i) {
        const auto a = random_measure(rng, spec);
        const auto b = random_measure(rng, spec);
        const auto ab = convolve(a, b);
        const FourierEvaluator fa(a), fb(b), fab(ab);
        for (std::int64_t n = -64; n <= 64; ++n) worst = std::max(worst, std::abs(fab(n) - fa(n) * fb(n)));
        submult = std::max(submult, tv_norm(ab).value - tv_norm(a).upper() * tv_norm(b).upper());
    }
    auto c = make("convolution_theorem", worst, 1e-10, cases, submult <= 1e-9);
    std::ostringstream os;
    os << "|n| <= 64; max(||a*b|| - ||a|| ||b||) = " << submult;
    c.detail = os.str();
    return c;
}

SuiteCheck projections(Rng& rng, int cases) {
    double worst = 0.0, leak = 0.0;
    for (int i = 0; i < cases; ++i) {
        const auto mu = random_measure(rng);
        const auto [m0, m1] = parity_projections(mu);
        const auto sum = m0 + m1;
        for (const auto& [at, w] : mu.disc.atoms()) worst = std::max(worst, std::abs(sum.disc.weight(at) - w));
        for (const auto& [at, w] : sum.disc.atoms()) worst = std::max(worst, std::abs(mu.disc.weight(at) - w));
        for (const auto& [k, c] : mu.ac.coeffs()) worst = std::max(worst, std::abs(sum.ac.coeff(k) - c));
        const FourierEvaluator f0(m0), f1(m1);
        for (std::int64_t n = -64; n <= 64; ++n) leak = std::max(leak, std::abs(n % 2 == 0 ? f1(n) : f0(n)));
    }
    auto c = make("parity_projections", std::max(worst, leak), 1e-12, cases);
    c.detail = "mu0 + mu1 = mu; mu0^ vanishes on odd n, mu1^ on even n";
    return c;
}

SuiteCheck fekete_rho() {
    const GeneratorBasis b({{"sqrt2", kSqrt2}, {"sqrt3", kSqrt3}});
    const auto rho = make_rho(b, Angle::generator(2, 0), Angle::generator(2, 1));
    const auto rep = fekete_bound(MixedMeasure(rho), 4);
    double worst = 0.0;
    for (const auto& s : rep.steps) worst = std::max(worst, std::abs(s.r - 1.0));
    const double lower = torus_max(char_polynomial(rho), 512);
    auto c = make("spectral_radius_rho", worst, 1e-12, 1, lower >= 1.0 - 1e-3 && lower <= rep.final_bound + 1e-6);
    std::ostringstream os;
    os << "bracket [" << io::format_double(lower) << ", " << io::format_double(rep.final_bound) << "]";
    c.detail = os.str();
    return c;
}

SuiteCheck bracketing(Rng& rng, int cases) {
    RandomMeasureSpec spec;
    spec.density = false;
    double worst = -1e300;
    double monotone = 0.0;
    for (int i = 0; i < cases; ++i) {
        const auto mu = random_measure(rng, spec);
        const auto rep = fekete_bound(MixedMeasure(mu), 4);
        const auto p = char_polynomial(mu.disc);
        const double lower = mu.disc.empty() ? 0.0 : torus_max(p, 64);
        worst = std::max(worst, lower - rep.final_bound);
        const FourierEvaluator f(mu);
        for (std::int64_t n = -256; n <= 256; ++n) worst = std::max(worst, std::abs(f(n)) - rep.final_bound);
        for (std::size_t k = 1; k < rep.steps.size(); ++k) {
            monotone = std::max(monotone, rep.steps[k].r - rep.steps[k - 1].r);
        }
    }
    auto c = make("radius_bracketing", std::max(worst, 0.0), 1e-6, cases, monotone <= 1e-9);
    std::ostringstream os;
    os << "torus_max and sup|mu^(n)| below the Fekete bound; worst doubling increase " << monotone;
    c.detail = os.str();
    return c;
}

double verify_kronecker(const KroneckerProblem& p, std::int64_t n) {
    const double nn = static_cast<double>(n);
    return std::max(std::abs(std::polar(1.0, nn * p.alpha) - std::polar(1.0, p.target_x)),
                    std::abs(std::polar(1.0, nn * p.beta) - std::polar(1.0, p.target_y)));
}

SuiteCheck kronecker_oracle() {
    KroneckerProblem p;
    p.alpha = kSqrt2;
    p.beta = kSqrt3;
    p.epsilon = 0.3;
    p.min_abs_n = 1;
    const auto a = solve(p).n;
    p.epsilon = 0.1;
    const auto b = solve(p).n;
    auto c = make("kronecker_scan_oracle", 0.0, 0.0, 2, a == 40 && b == 1364);
    c.detail = "smallest |n| >= 1 with both chordal errors below 0.3 / 0.1: " + std::to_string(a) + " / " +
               std::to_string(b) + " (expected 40 / 1364)";
    return c;
}

SuiteCheck kronecker_random(Rng& rng, int cases) {
    double worst_margin = -1e300;
    int failures = 0;
    for (int i = 0; i < cases; ++i) {
        KroneckerProblem p;
        p.alpha = kSqrt2;
        p.beta = kSqrt3;
        p.target_x = rng.uniform(0.0, kTwoPi);
        p.target_y = rng.uniform(0.0, kTwoPi);
        p.epsilon = 0.05;
        for (const auto m : {KroneckerMethod::Scan, KroneckerMethod::Lattice}) {
            p.method = m;
            try {
                const auto s = solve(p);
                worst_margin = std::max(worst_margin, verify_kronecker(p, s.n) - p.epsilon);
            } catch (const NotFound&) {
                ++failures;
            }
        }
    }
    auto c = make("kronecker_solutions_verified", std::max(worst_margin, -1.0), 0.0, 2 * cases, failures == 0);
    c.passed = c.passed && worst_margin < 0.0;
    c.detail = "scan and lattice, epsilon 0.05; residual = max(error) - epsilon (must be < 0); not found: " +
               std::to_string(failures);
    return c;
}

SuiteCheck hit_targets(Rng& rng, int cases) {
    double worst = -1e300;
    int failures = 0, wrong_parity = 0;
    for (int i = 0; i < cases; ++i) {
        const Complex w = rng.in_disk(1.0);
        for (const auto par : {Parity::Any, Parity::Even, Parity::Odd}) {
            try {
                const auto h = hit_target(kSqrt2, kSqrt3, w, 0.05, par);
                const double nn = static_cast<double>(h.n);
                const Complex v = 0.5 * (std::polar(1.0, -nn * kSqrt2) + std::polar(1.0, -nn * kSqrt3));
                worst = std::max(worst, std::abs(v - w) - 0.05);
                if ((par == Parity::Even && h.n % 2 != 0) || (par == Parity::Odd && h.n % 2 == 0)) ++wrong_parity;
            } catch (const NotFound&) {
                ++failures;
            }
        }
    }
    auto c = make("hit_target_verified", std::max(worst, -1.0), 0.0, 3 * cases,
                  failures == 0 && wrong_parity == 0 && worst < 0.0);
    c.detail = "all parities, epsilon 0.05; residual = max |rho^(n) - w| - epsilon; not found: " +
               std::to_string(failures) + ", wrong parity: " + std::to_string(wrong_parity);
    return c;
}

SuiteCheck preimages(Rng& rng, int cases) {
    double worst = 0.0;
    for (int i = 0; i < cases; ++i) {
        const Complex w = rng.in_disk(1.0);
        const auto [z, u] = disk_preimage(w);
        worst = std::max({worst, std::abs(std::abs(z) - 1.0), std::abs(std::abs(u) - 1.0), std::abs(0.5 * (z + u) - w)});
        const auto [zs, us] = disk_preimage_shifted(w, kSqrt2, kSqrt3);
        const Complex g = 0.5 * (zs * std::polar(1.0, -kSqrt2) + us * std::polar(1.0, -kSqrt3));
        worst = std::max(worst, std::abs(g - w));
    }
    return make("disk_preimages", worst, 1e-12, cases);
}

double worst_of(const VerificationReport& r, std::initializer_list<const char*> names) {
    double w = 0.0;
    for (const auto* n : names) {
        if (const auto* c = r.find(n); c && !c->skipped) w = std::max(w, c->residual);
    }
    return w;
}

bool all_pass(const VerificationReport& r, std::initializer_list<const char*> names) {
    for (const auto* n : names) {
        const auto* c = r.find(n);
        if (!c || !(c->passed || c->skipped)) return false;
    }
    return true;
}

constexpr std::initializer_list<const char*> kExact = {"identity", "orthogonality", "parity_nu0", "parity_nu1",
                                                       "modulus_nu0", "modulus_nu1"};
constexpr std::initializer_list<const char*> kThroughDensity = {
    "identity", "orthogonality", "parity_nu0", "parity_nu1", "modulus_nu0", "modulus_nu1", "density_nu0",
    "density_nu1"};

SuiteCheck decomposition_random(Rng& rng, int cases, std::int64_t N, double radius_factor) {
    DecompositionOptions o;
    o.N = N;
    o.check_spectrum = false;
    double worst = 0.0, density = 0.0;
    bool ok = true;
    std::size_t max_nu2 = 0;
    for (int i = 0; i < cases; ++i) {
        const auto mu = random_measure(rng);
        DecompositionOptions oi = o;
        if (radius_factor != 1.0) {
            const auto base = decompose(mu, o);
            oi.radius_mode = RadiusMode::Manual;
            oi.manual_r0 = radius_factor * base.r0.value;
            oi.manual_r1 = radius_factor * base.r1.value;
        }
        const auto r = decompose(mu, oi);
        const auto rep = verify_decomposition(mu, r, oi);
        ok = ok && all_pass(rep, kThroughDensity);
        worst = std::max(worst, worst_of(rep, kExact));
        density = std::max(density, worst_of(rep, {"density_nu0", "density_nu1"}));
        max_nu2 = std::max(max_nu2, r.nu2.size());
    }
    auto c = make(radius_factor == 1.0 ? "decomposition_random" : "decomposition_doubled_radii", worst, 1e-9, cases,
                  ok && max_nu2 <= 8);
    std::ostringstream os;
    os << "checks (a)-(e) at N = " << N << "; worst relative density distance " << density
       << "; max atoms of nu2 " << max_nu2;
    c.detail = os.str();
    return c;
}

SuiteCheck decomposition_dirac() {
    const GeneratorBasis b({{"gamma", std::sqrt(5.0)}});
    const MixedMeasure mu(DiscreteMeasure::dirac(b, Angle::generator(1, 0)));
    DecompositionOptions o;  // N = 10^4, grid 256, tol 0.05
    const auto r = decompose(mu, o);
    const auto rep = verify_decomposition(mu, r, o);
    const auto expected_nu2 = Complex(-1.0) * make_rho(r.basis, r.alpha, r.beta);
    const bool ok = rep.passed() && std::abs(r.r0.value - 1.0) < 1e-12 && std::abs(r.r1.value - 1.0) < 1e-12 &&
                    r.nu2 == expected_nu2;
    auto c = make("decomposition_dirac_fixture", worst_of(rep, kExact), 1e-9, 1, ok);
    c.detail = "delta_gamma: R0 = R1 = 1, nu2 = -rho, checks (a)-(f) at N = 10^4";
    return c;
}

SuiteCheck decomposition_theta0() {
    const GeneratorBasis b;
    const MixedMeasure mu(make_theta0(b));
    DecompositionOptions o;
    o.N = 1024;
    const auto r = decompose(mu, o);
    const auto rep = verify_decomposition(mu, r, o);
    const auto rt1 = rho_theta1(r);
    const bool ok = rep.passed() && r.r1.value == 0.0 && std::abs(r.r0.value - 1.0) < 1e-12 &&
                    r.nu1.is_zero() && r.nu2 == Complex(-1.0) * rt1;
    return make("decomposition_theta0_fixture", worst_of(rep, kExact), 1e-9, 1, ok);
}

SuiteCheck tampered_radius() {
    const GeneratorBasis b({{"gamma", std::sqrt(5.0)}});
    const MixedMeasure mu(DiscreteMeasure::dirac(b, Angle::generator(1, 0)));
    DecompositionOptions o;
    o.N = 256;
    o.check_spectrum = false;
    auto r = decompose(mu, o);
    r.r0.value *= 0.5;
    const auto rep = verify_decomposition(mu, r, o);
    const bool detected = !rep.find("parity_nu0")->passed && !rep.find("modulus_nu0")->passed;
    auto c = make("tampered_radius_detected", 0.0, 0.0, 1, detected);
    c.detail = "halving R0 after construction must fail the parity law and the modulus bound";
    return c;
}

SuiteCheck json_roundtrip(Rng& rng, int cases) {
    bool ok = true;
    for (int i = 0; i < cases; ++i) {
        const auto mu = random_measure(rng);
        const auto back = io::measure_from_json(io::Json::parse(io::measure_to_json(mu).dump()));
        ok = ok && back == mu;
    }
    return make("measure_json_roundtrip", 0.0, 0.0, cases, ok);
}

SuiteCheck kernel_equivalence(Rng& rng) {
    using namespace kernels;
    if (detected_isa() != Isa::Avx2) {
        auto c = make("kernel_equivalence", 0.0, 0.0, 0, true);
        c.detail = "skipped: no AVX2 variant on this machine";
        return c;
    }
    const auto& s = table(Isa::Scalar);
    const auto& v = table(Isa::Avx2);
    bool ok = true;
    int cases = 0;
    for (std::size_t n : {1, 3, 4, 7, 16, 33, 257}) {
        std::vector<double> ur(n), ui(n), a(n), b(n);
        for (std::size_t i = 0; i < n; ++i) {
            ur[i] = rng.uniform(-1, 1);
            ui[i] = rng.uniform(-1, 1);
            a[i] = rng.uniform(-1, 1);
            b[i] = rng.uniform(-1, 1);
        }
        auto a2 = a, b2 = b;
        s.complex_axpy(0.3, -0.7, ur.data(), ui.data(), a.data(), b.data(), n);
        v.complex_axpy(0.3, -0.7, ur.data(), ui.data(), a2.data(), b2.data(), n);
        ok = ok && std::memcmp(a.data(), a2.data(), n * sizeof(double)) == 0 &&
             std::memcmp(b.data(), b2.data(), n * sizeof(double)) == 0;
        const auto m1 = s.max_abs2(ur.data(), ui.data(), n);
        const auto m2 = v.max_abs2(ur.data(), ui.data(), n);
        ok = ok && m1.index == m2.index && m1.value == m2.value;
        ok = ok && s.min_dist2(0.1, 0.2, ur.data(), ui.data(), n) == v.min_dist2(0.1, 0.2, ur.data(), ui.data(), n);
        ++cases;
    }
    const double ta = kSqrt2 / kTwoPi, tb = kSqrt3 / kTwoPi;
    for (int i = 0; i < 8; ++i) {
        const double x = rng.uniform(), y = rng.uniform();
        const auto h1 = s.torus_scan(ta, tb, x, y, 0.01, 0.01, 0, 100000);
        const auto h2 = v.torus_scan(ta, tb, x, y, 0.01, 0.01, 0, 100000);
        ok = ok && h1.m == h2.m && h1.plus == h2.plus && h1.minus == h2.minus;
        ++cases;
    }
    auto c = make("kernel_equivalence", 0.0, 0.0, cases, ok);
    c.detail = "scalar and AVX2 kernels bit-identical";
    return c;
}

}  // namespace

std::vector<SuiteCheck> run_suite(const SuiteOptions& opts) {
    // Each randomized check draws from its own stream so that adding or
    // reordering checks does not change the samples of the others.
    std::uint64_t stream = 0;
    auto rng = [&]() { return Rng(opts.seed * 1000003ULL + ++stream); };
    const int n = opts.random_cases;
    std::vector<SuiteCheck> out;
    out.push_back(theta_algebra());
    { auto r = rng(); out.push_back(orthogonality(r, n)); }
    { auto r = rng(); out.push_back(convolution_theorem(r, n)); }
    { auto r = rng(); out.push_back(projections(r, n)); }
    out.push_back(fekete_rho());
    { auto r = rng(); out.push_back(bracketing(r, n)); }
    out.push_back(kronecker_oracle());
    { auto r = rng(); out.push_back(kronecker_random(r, n)); }
    { auto r = rng(); out.push_back(hit_targets(r, n)); }
    { auto r = rng(); out.push_back(preimages(r, 10 * n)); }
    { auto r = rng(); out.push_back(decomposition_random(r, n, opts.N, 1.0)); }
    { auto r = rng(); out.push_back(decomposition_random(r, n, opts.N, 2.0)); }
    out.push_back(decomposition_dirac());
    out.push_back(decomposition_theta0());
    out.push_back(tampered_radius());
    { auto r = rng(); out.push_back(json_roundtrip(r, n)); }
    { auto r = rng(); out.push_back(kernel_equivalence(r)); }
    return out;
}

io::Json suite_to_json(const std::vector<SuiteCheck>& checks, const SuiteOptions& opts) {
    io::Json arr = io::Json::array();
    bool all = true;
    for (const auto& c : checks) {
        all = all && c.passed;
        arr.push_back(io::Json{{"name", c.name},
                               {"passed", c.passed},
                               {"residual", c.residual},
                               {"threshold", c.threshold},
                               {"cases", c.cases},
                               {"detail", c.detail}});
    }
    return io::Json{{"seed", opts.seed},
                    {"random_cases", opts.random_cases},
                    {"N", opts.N},
                    {"passed", all},
                    {"checks", std::move(arr)}};
}

}  // namespace natspec::cli
