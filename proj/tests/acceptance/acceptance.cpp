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

// Acceptance run: one PASS/FAIL line per criterion with the measured value,
// the threshold and the wall time. Exit status is nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "natspec/decomposition.hpp"
#include "natspec/errors.hpp"
#include "natspec/hausdorff.hpp"
#include "natspec/kronecker.hpp"
#include "natspec/measure.hpp"
#include "natspec/random.hpp"
#include "natspec/spectrum.hpp"

using namespace natspec;

namespace {

struct Outcome {
    bool passed = false;
    std::string detail;
};

const double kAlpha = std::sqrt(2.0), kBeta = std::sqrt(3.0);

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

DiscreteMeasure rho_on(const GeneratorBasis& b) {
    return make_rho(b, Angle::generator(b.size(), b.size() - 2), Angle::generator(b.size(), b.size() - 1));
}

GeneratorBasis with_alpha_beta(const GeneratorBasis& b) {
    std::vector<Generator> g(b.generators().begin(), b.generators().end());
    g.push_back({"sqrt2", kAlpha});
    g.push_back({"sqrt3", kBeta});
    return GeneratorBasis(std::move(g));
}

// 1. Exact structural identities.
Outcome exact_algebra() {
    const GeneratorBasis b0;
    const auto t0 = make_theta0(b0), t1 = make_theta1(b0);
    bool ok = convolve(t0, t1).empty() && convolve(t0, t0) == t0 && t0 + t1 == DiscreteMeasure::dirac(b0, Angle(0));
    Rng rng(1001);
    int bad = 0;
    for (int i = 0; i < 50; ++i) {
        const auto mu = random_measure(rng);
        const auto basis = with_alpha_beta(mu.basis());
        const auto mu0 = parity_projections(mu.rebased(basis)).first;
        const auto rt1 = convolve(rho_on(basis), make_theta1(basis));
        if (!convolve(mu0, MixedMeasure(rt1)).is_zero()) ++bad;
    }
    ok = ok && bad == 0;
    return {ok, "theta identities exact; mu0*rho*theta1 nonzero in " + std::to_string(bad) + "/50 cases"};
}

// 2. Convolution theorem on random mixed pairs.
Outcome convolution_theorem() {
    Rng rng(1002);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const auto a = random_measure(rng), b = random_measure(rng);
        const FourierEvaluator fa(a), fb(b), fc(convolve(a, b));
        for (std::int64_t n = -64; n <= 64; ++n) worst = std::max(worst, std::abs(fc(n) - fa(n) * fb(n)));
    }
    return {worst < 1e-10, "max residual " + fmt("%.3e", worst) + " (< 1e-10)"};
}

struct IdentityRun {
    double worst_a = 0.0, worst_c = 0.0;
    std::size_t max_nu2 = 0;
    int failed_checks = 0;     ///< among (a)-(e), (e) at the density N
    int density_small_n = 0;   ///< (e) failures at N = 128, informational
    std::string failed_names;
};

// Criterion 3 and, with doubled radii, criterion 9. Residual checks run at
// N = 128. The density check needs many more coefficients ({rho^(n)} covers
// the disk only to ~0.97 at N = 128 whatever the radius), so it runs at
// `density_N` when that is nonzero.
IdentityRun identity_and_parity(bool doubled, std::int64_t density_N) {
    Rng rng(1003);
    IdentityRun out;
    DecompositionOptions o;
    o.N = 128;
    o.check_spectrum = false;
    auto count_failures = [&](const VerificationReport& rep, bool density_only) {
        int n = 0;
        for (const auto& c : rep.checks) {
            const bool is_density = c.name.rfind("density", 0) == 0;
            if (c.skipped || c.passed || c.name.rfind("spectrum", 0) == 0 || is_density != density_only) continue;
            ++n;
            if (out.failed_names.find(c.name) == std::string::npos) out.failed_names += " " + c.name;
        }
        return n;
    };
    for (int i = 0; i < 100; ++i) {
        const auto mu = random_measure(rng);
        auto opts = o;
        if (doubled) {
            const auto base = decompose(mu, o);
            opts.radius_mode = RadiusMode::Manual;
            opts.manual_r0 = 2.0 * base.r0.value;
            opts.manual_r1 = 2.0 * base.r1.value;
        }
        const auto r = decompose(mu, opts);
        const auto rep = verify_decomposition(mu, r, opts);
        out.worst_a = std::max(out.worst_a, rep.find("identity")->residual);
        out.worst_c = std::max({out.worst_c, rep.find("parity_nu0")->residual, rep.find("parity_nu1")->residual});
        out.max_nu2 = std::max(out.max_nu2, r.nu2.size());
        out.failed_checks += count_failures(rep, false);
        for (const auto& c : rep.checks) {
            if (c.name.rfind("density", 0) == 0 && !c.skipped && !c.passed) ++out.density_small_n;
        }
        if (density_N > 0) {
            auto big = opts;
            big.N = density_N;
            out.failed_checks += count_failures(verify_decomposition(mu, r, big), true);
        }
    }
    return out;
}

Outcome decomposition_identity() {
    const auto r = identity_and_parity(false, 0);
    const bool ok = r.worst_a < 1e-9 && r.worst_c < 1e-9 && r.max_nu2 <= 8;
    return {ok, "(a) " + fmt("%.3e", r.worst_a) + ", (c) " + fmt("%.3e", r.worst_c) + " (< 1e-9); max atoms of nu2 " +
                    std::to_string(r.max_nu2) + " (<= 8)"};
}

// 4. Spectral radius of rho.
Outcome rho_spectral_radius() {
    const GeneratorBasis b({{"sqrt2", kAlpha}, {"sqrt3", kBeta}});
    const auto rho = rho_on(b);
    const auto rep = fekete_bound(MixedMeasure(rho), 4);
    double worst = 0.0;
    for (const auto& s : rep.steps) worst = std::max(worst, std::abs(s.r - 1.0));
    const double lower = torus_max(char_polynomial(rho), 512);
    const bool ok = rep.steps.size() == 5 && worst <= 1e-12 && lower >= 1.0 - 1e-3 && lower <= rep.final_bound + 1e-12;
    return {ok, "bracket [" + fmt("%.15g", lower) + ", " + fmt("%.15g", rep.final_bound) + "]; max |r_{2^k} - 1| " +
                    fmt("%.1e", worst)};
}

// 5. Density of {rho^(n)} in the unit disk. Thresholds are the terminal values
// of an independent KD-tree scan (tests/oracles/oracles.py), up to rounding.
Outcome density() {
    const GeneratorBasis b({{"sqrt2", kAlpha}, {"sqrt3", kBeta}});
    const MixedMeasure rho(rho_on(b));
    const auto disk = disk_grid(1.0, 0.05);
    const Subset subsets[3] = {Subset::All, Subset::Even, Subset::Odd};
    const double pinned[3] = {0.009419426812849305, 0.011430170622871896, 0.011187378904752333};
    double prev[3] = {INFINITY, INFINITY, INFINITY}, last[3] = {};
    bool monotone = true;
    for (int p = 4; p <= 16; ++p) {
        for (int s = 0; s < 3; ++s) {
            const double v = directed_hausdorff(disk, transform_closure_sample(rho, std::int64_t{1} << p, subsets[s]).points);
            monotone = monotone && v <= prev[s];
            prev[s] = last[s] = v;
        }
    }
    bool below = true;
    for (int s = 0; s < 3; ++s) below = below && last[s] <= pinned[s] * (1.0 + 1e-12);
    return {monotone && below, "nonincreasing " + std::string(monotone ? "yes" : "NO") + "; terminal all/even/odd " +
                                   fmt("%.7f", last[0]) + "/" + fmt("%.7f", last[1]) + "/" + fmt("%.7f", last[2]) +
                                   " (pinned " + fmt("%.7f", pinned[0]) + "/" + fmt("%.7f", pinned[1]) + "/" +
                                   fmt("%.7f", pinned[2]) + ")"};
}

// 6. hit_target re-verified by direct evaluation.
Outcome hit_targets() {
    Rng rng(1006);
    int failures = 0, total = 0;
    std::int64_t largest = 0;
    for (int i = 0; i < 200; ++i) {
        const Complex w = rng.in_disk(1.0);
        for (const auto par : {Parity::Any, Parity::Even, Parity::Odd}) {
            ++total;
            try {
                const auto h = hit_target(kAlpha, kBeta, w, 0.05, par, 1'000'000);
                const bool parity_ok = par == Parity::Any || (par == Parity::Even) == (h.n % 2 == 0);
                if (!(std::abs(rho_hat(kAlpha, kBeta, h.n) - w) < 0.05) || !parity_ok) ++failures;
                largest = std::max(largest, h.n < 0 ? -h.n : h.n);
            } catch (const NotFound&) {
                ++failures;
            }
        }
    }
    return {failures == 0, std::to_string(failures) + "/" + std::to_string(total) + " failures; largest |n| " +
                               std::to_string(largest)};
}

// 7. Natural-spectrum surrogate for nu0 on purely discrete measures.
Outcome nu0_surrogate() {
    Rng rng(1007);
    RandomMeasureSpec spec;
    spec.density = false;
    spec.generators = 2;
    double worst_h = 0.0, worst_out = 0.0, worst_rel = 0.0, worst_R = 0.0, max_R = 0.0;
    int cases = 0;
    DecompositionOptions o;
    o.N = 128;
    o.check_spectrum = false;
    while (cases < 20) {
        const auto mu = random_measure(rng, spec);
        if (mu.is_zero()) continue;
        ++cases;
        const auto r = decompose(mu, o);
        const double R = r.r0.value;
        const auto tr = transform_closure_sample(r.nu0, 10'000).points;
        // Same absolute spacing as the unit-disk grid, so the reference grid's own
        // resolution does not grow with R0.
        const double h = hausdorff(tr, disk_grid(R, 0.05 / std::max(R, 1.0)));
        if (h > worst_h) worst_R = R;
        worst_h = std::max(worst_h, h);
        max_R = std::max(max_R, R);
        if (R > 0.0) worst_rel = std::max(worst_rel, h / R);
        const auto spec_pts = spectrum_sample(r.nu0.disc, 256, 64, std::size_t{1} << 20).points;
        for (const auto& z : spec_pts) worst_out = std::max(worst_out, std::abs(z) - R);
    }
    const bool ok = worst_h < 0.1 && worst_out <= 1e-6;
    // Odd n with |n| <= 10^4 cover the unit disk only to ~0.032, so the absolute
    // distance grows like 0.032 R0 and cannot stay below 0.1 once R0 > ~3.1.
    return {ok, "max Hausdorff " + fmt("%.4f", worst_h) + " at R0 " + fmt("%.3f", worst_R) + " (< 0.1; largest R0 " +
                    fmt("%.3f", max_R) + "; max Hausdorff/R0 " + fmt("%.4f", worst_rel) + "); max overshoot of |spectrum| beyond R0 " + fmt("%.2e", worst_out) + " (<= 1e-6)"};
}

// 8. Bracketing and monotone bracket width.
Outcome bracketing() {
    Rng rng(1008);
    RandomMeasureSpec spec;
    spec.density = false;
    int violations = 0, widening = 0;
    double worst = -INFINITY;
    for (int i = 0; i < 50; ++i) {
        const auto mu = random_measure(rng, spec);
        const auto p = char_polynomial(mu.disc);
        const double lo1 = torus_max(p, 64), lo2 = torus_max(p, 128);
        const double hi1 = fekete_bound(mu, 2).final_bound, hi2 = fekete_bound(mu, 4).final_bound;
        worst = std::max({worst, lo1 - hi1, lo2 - hi2});
        if (lo1 > hi1 + 1e-6 || lo2 > hi2 + 1e-6) ++violations;
        if (hi2 - lo2 > hi1 - lo1) ++widening;
    }
    return {violations == 0 && widening == 0, std::to_string(violations) + " bracket violations (max lower - upper " +
                                                  fmt("%.2e", worst) + "); " + std::to_string(widening) +
                                                  " widenings when grid and k_max double"};
}

Outcome doubled_radii() {
    const auto r = identity_and_parity(true, 10'000);
    const bool ok = r.worst_a < 1e-9 && r.worst_c < 1e-9 && r.max_nu2 <= 8 && r.failed_checks == 0;
    return {ok, "(a) " + fmt("%.3e", r.worst_a) + ", (c) " + fmt("%.3e", r.worst_c) +
                    "; failed among (a)-(d) at N=128 and (e) at N=10000: " + std::to_string(r.failed_checks) +
                    (r.failed_names.empty() ? "" : " [" + r.failed_names + " ]") + "; (e) at N=128 fails " +
                    std::to_string(r.density_small_n) + "/200 (informational)"};
}

std::string without_timestamp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::string line, out;
    for (int i = 0; std::getline(in, line); ++i) {
        if (line.find("\"timestamp\"") == std::string::npos) out += line + "\n";
    }
    return out;
}

// 10. Two verify runs with seed 42.
Outcome cli_determinism() {
    namespace fs = std::filesystem;
    const auto root = fs::temp_directory_path() / "natspec_acceptance";
    fs::remove_all(root);
    std::ostringstream sink;
    int codes[2];
    for (int i = 0; i < 2; ++i) {
        codes[i] = cli::run({"--out", (root / std::to_string(i)).string(), "verify", "--seed", "42"}, sink, sink);
    }
    const auto a = without_timestamp(root / "0" / "verify_report.json");
    const auto b = without_timestamp(root / "1" / "verify_report.json");
    fs::remove_all(root);
    const bool same = !a.empty() && a == b;
    return {same && codes[0] == 0 && codes[1] == 0,
            std::string(same ? "reports identical" : "reports DIFFER") + "; exit codes " + std::to_string(codes[0]) +
                "/" + std::to_string(codes[1])};
}

}  // namespace

int main() {
    std::setvbuf(stdout, nullptr, _IOLBF, 0);
    struct Criterion {
        int id;
        const char* name;
        double budget_s;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "exact algebra", 5, exact_algebra},
        {2, "convolution theorem", 30, convolution_theorem},
        {3, "decomposition identity and parity", 60, decomposition_identity},
        {4, "spectral radius of rho", 30, rho_spectral_radius},
        {5, "density of rho^(n) in the disk", 120, density},
        {6, "hit_target", 120, hit_targets},
        {7, "natural-spectrum surrogate for nu0", 180, nu0_surrogate},
        {8, "bracketing", 180, bracketing},
        {9, "doubled radii", 60, doubled_radii},
        {10, "CLI determinism", 60, cli_determinism},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = secs < c.budget_s;
        const bool pass = o.passed && in_time;
        failed += pass ? 0 : 1;
        std::printf("%s criterion %d (%s): %s; %.2f s (budget %.0f s%s)\n", pass ? "PASS" : "FAIL", c.id, c.name,
                    o.detail.c_str(), secs, c.budget_s, in_time ? "" : ", EXCEEDED");
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
