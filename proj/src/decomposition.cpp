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

#include "natspec/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "natspec/errors.hpp"
#include "natspec/hausdorff.hpp"
#include "natspec/parallel.hpp"

namespace natspec {

std::string_view to_string(RadiusMode m) {
    switch (m) {
        case RadiusMode::Fekete:
            return "fekete";
        case RadiusMode::ExactDiscrete:
            return "exact_discrete";
        case RadiusMode::Manual:
            return "manual";
    }
    return "?";
}

RadiusMode parse_radius_mode(std::string_view s) {
    if (s == "fekete") return RadiusMode::Fekete;
    if (s == "exact_discrete" || s == "exact-discrete") return RadiusMode::ExactDiscrete;
    if (s == "manual") return RadiusMode::Manual;
    throw InvalidArgument("unknown radius mode '" + std::string(s) + "' (expected fekete, exact_discrete or manual)");
}

bool VerificationReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed || c.skipped; });
}

const Check* VerificationReport::find(std::string_view name) const {
    for (const auto& c : checks) {
        if (c.name == name) return &c;
    }
    return nullptr;
}

namespace {

/// mu's basis followed by alpha and beta.
GeneratorBasis extend_basis(const GeneratorBasis& basis, GeneratorStrategy strategy) {
    if (strategy == GeneratorStrategy::DefaultSqrt23) {
        const Generator a{"sqrt2", std::sqrt(2.0)};
        const Generator b{"sqrt3", std::sqrt(3.0)};
        const auto clashes = [&](const Generator& g) {
            return basis.index_of(g.name) >= 0 || basis.contains_value(g.value);
        };
        if (!clashes(a) && !clashes(b)) return basis.with(a).with(b);
    }
    return basis_fresh_generators(basis, 2);
}

double sup_modulus(const MixedMeasure& mu, std::int64_t N) {
    const FourierEvaluator fe(mu);
    double m = 0.0;
    for (std::int64_t n = -N; n <= N; ++n) m = std::max(m, std::abs(fe(n)));
    return m;
}

RadiusInfo choose_radius(const MixedMeasure& mu_i, double manual, const DecompositionOptions& opts,
                         const char* label) {
    RadiusInfo info;
    if (opts.radius_mode == RadiusMode::Manual) {
        const double need = sup_modulus(mu_i, opts.manual_check_N);
        if (!(manual >= 0.0) || manual < need * (1.0 - 1e-12)) {
            std::ostringstream os;
            os << "manual radius " << label << " = " << manual << " is below sup_{|n|<=" << opts.manual_check_N
               << "} |mu^(n)| = " << need << ", so it cannot bound the spectral radius";
            throw InvalidArgument(os.str());
        }
        info.value = manual;
        return info;
    }
    if (mu_i.is_zero()) return info;
    const FeketeReport rep = fekete_bound(mu_i, opts.k_max, opts.rel_tol, opts.budget);
    info.fekete = rep.final_bound;
    info.budget_hit = rep.budget_hit;
    info.value = rep.final_bound;
    if (opts.radius_mode == RadiusMode::ExactDiscrete) {
        info.torus_lower = torus_max(char_polynomial(mu_i.disc), opts.grid, opts.refine);
    }
    return info;
}

const Angle& generator_angle(const DecompositionResult& r, bool first) { return first ? r.alpha : r.beta; }

DiscreteMeasure rho_of(const DecompositionResult& r) {
    return make_rho(r.basis, generator_angle(r, true), generator_angle(r, false));
}

/// mu^(n) for n = -N..N into slot n + N.
std::vector<Complex> transform_range(const MixedMeasure& mu, std::int64_t N) {
    const FourierEvaluator fe(mu);
    std::vector<Complex> out(static_cast<std::size_t>(2 * N + 1));
    parallel_for(out.size(), [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) out[i] = fe(static_cast<std::int64_t>(i) - N);
    });
    return out;
}

/// Largest weight difference between a and b. Positions present on one side
/// only count as a support mismatch unless their weight is at most `tol`
/// (rounding residue of sums that cancel in exact arithmetic).
double max_weight_gap(const MixedMeasure& a, const MixedMeasure& b, double tol, bool& same_support) {
    double gap = 0.0;
    same_support = true;
    for (const auto& [at, w] : a.disc.atoms()) {
        const auto it = b.disc.atoms().find(at);
        if (it == b.disc.atoms().end()) {
            if (std::abs(w) > tol) same_support = false;
            gap = std::max(gap, std::abs(w));
        } else {
            gap = std::max(gap, std::abs(w - it->second));
        }
    }
    for (const auto& [at, w] : b.disc.atoms()) {
        if (a.disc.atoms().contains(at)) continue;
        if (std::abs(w) > tol) same_support = false;
        gap = std::max(gap, std::abs(w));
    }
    for (const auto& [k, c] : a.ac.coeffs()) {
        if (!b.ac.coeffs().contains(k) && std::abs(c) > tol) same_support = false;
        gap = std::max(gap, std::abs(c - b.ac.coeff(k)));
    }
    for (const auto& [k, c] : b.ac.coeffs()) {
        if (a.ac.coeffs().contains(k)) continue;
        if (std::abs(c) > tol) same_support = false;
        gap = std::max(gap, std::abs(c));
    }
    return gap;
}

Check check_threshold(std::string name, double residual, double threshold) {
    Check c;
    c.name = std::move(name);
    c.residual = residual;
    c.threshold = threshold;
    c.passed = residual <= threshold;
    return c;
}

}  // namespace

DiscreteMeasure rho_theta1(const DecompositionResult& r) { return convolve(rho_of(r), make_theta1(r.basis)); }
DiscreteMeasure rho_theta0(const DecompositionResult& r) { return convolve(rho_of(r), make_theta0(r.basis)); }

DecompositionResult decompose(const MixedMeasure& mu, const DecompositionOptions& opts) {
    if (opts.radius_mode == RadiusMode::ExactDiscrete && !mu.is_discrete()) {
        throw UnsupportedMeasure(
            "radius mode exact_discrete needs a purely discrete measure; use --radius-mode fekete for measures with a "
            "density part");
    }
    DecompositionResult r;
    r.basis = extend_basis(mu.basis(), opts.generator_strategy);
    const std::size_t rank = r.basis.size();
    r.alpha = Angle::generator(rank, rank - 2);
    r.beta = Angle::generator(rank, rank - 1);

    const MixedMeasure m = mu.rebased(r.basis);
    std::tie(r.mu0, r.mu1) = parity_projections(m);
    r.r0 = choose_radius(r.mu0, opts.manual_r0, opts, "R0");
    r.r1 = choose_radius(r.mu1, opts.manual_r1, opts, "R1");

    const DiscreteMeasure rt1 = rho_theta1(r);
    const DiscreteMeasure rt0 = rho_theta0(r);
    r.nu0 = r.mu0;
    r.nu1 = r.mu1;
    r.nu2 = DiscreteMeasure(r.basis);
    if (r.r0.value != 0.0) {
        r.nu0 += MixedMeasure(Complex(r.r0.value) * rt1);
        r.nu2 += Complex(-r.r0.value) * rt1;
    }
    if (r.r1.value != 0.0) {
        r.nu1 += MixedMeasure(Complex(r.r1.value) * rt0);
        r.nu2 += Complex(-r.r1.value) * rt0;
    }
    return r;
}

VerificationReport verify_decomposition(const MixedMeasure& mu, const DecompositionResult& res,
                                        const DecompositionOptions& opts) {
    VerificationReport rep;
    const std::int64_t N = opts.N;
    const MixedMeasure m = mu.rebased(res.basis);
    const MixedMeasure nu2(res.nu2);

    const auto mu_hat = transform_range(m, N);
    const auto nu0_hat = transform_range(res.nu0, N);
    const auto nu1_hat = transform_range(res.nu1, N);
    const auto nu2_hat = transform_range(nu2, N);
    const auto rho_hat_v = transform_range(MixedMeasure(rho_of(res)), N);

    // (a) identity
    {
        double sup = 0.0;
        for (std::size_t i = 0; i < mu_hat.size(); ++i) {
            sup = std::max(sup, std::abs(mu_hat[i] - (nu0_hat[i] + nu1_hat[i] + nu2_hat[i])));
        }
        bool same_support = false;
        const double gap = max_weight_gap(res.nu0 + res.nu1 + nu2, m, 1e-12, same_support);
        Check c = check_threshold("identity", std::max(sup, gap), opts.residual_tol);
        c.values = {{"transform_sup", sup}, {"weight_gap", gap}, {"same_support", same_support ? 1.0 : 0.0}};
        c.passed = c.passed && same_support;
        if (!same_support) c.detail = "positions of nu0+nu1+nu2 differ from mu";
        rep.checks.push_back(std::move(c));
    }

    // (b) orthogonality: mu0 * rho*theta1 = 0 and mu1 * rho*theta0 = 0 exactly
    {
        const MixedMeasure a = convolve(res.mu0, MixedMeasure(rho_theta1(res)));
        const MixedMeasure b = convolve(res.mu1, MixedMeasure(rho_theta0(res)));
        Check c;
        c.name = "orthogonality";
        c.residual = tv_norm(a).upper() + tv_norm(b).upper();
        c.passed = a.is_zero() && b.is_zero();
        c.values = {{"atoms_mu0_rho_theta1", static_cast<double>(a.disc.size() + a.ac.size())},
                    {"atoms_mu1_rho_theta0", static_cast<double>(b.disc.size() + b.ac.size())}};
        rep.checks.push_back(std::move(c));
    }

    // (c) parity laws and (d) modulus bounds
    const double R0 = res.r0.value;
    const double R1 = res.r1.value;
    {
        double p0 = 0.0, p1 = 0.0, m0 = 0.0, m1 = 0.0;
        for (std::size_t i = 0; i < mu_hat.size(); ++i) {
            const bool even = (static_cast<std::int64_t>(i) - N) % 2 == 0;
            if (even) {
                p0 = std::max(p0, std::abs(nu0_hat[i] - mu_hat[i]));
                p1 = std::max(p1, std::abs(nu1_hat[i] - R1 * rho_hat_v[i]));
            } else {
                p0 = std::max(p0, std::abs(nu0_hat[i] - R0 * rho_hat_v[i]));
                p1 = std::max(p1, std::abs(nu1_hat[i] - mu_hat[i]));
            }
            m0 = std::max(m0, std::abs(nu0_hat[i]));
            m1 = std::max(m1, std::abs(nu1_hat[i]));
        }
        rep.checks.push_back(check_threshold("parity_nu0", p0, opts.residual_tol));
        rep.checks.push_back(check_threshold("parity_nu1", p1, opts.residual_tol));
        Check d0 = check_threshold("modulus_nu0", std::max(0.0, m0 - R0), opts.residual_tol);
        d0.values = {{"sup_abs", m0}, {"R", R0}};
        Check d1 = check_threshold("modulus_nu1", std::max(0.0, m1 - R1), opts.residual_tol);
        d1.values = {{"sup_abs", m1}, {"R", R1}};
        rep.checks.push_back(std::move(d0));
        rep.checks.push_back(std::move(d1));
    }

    // (e) density of the transform in the R-disk
    const auto density = [&](const char* name, const std::vector<Complex>& hat, double R) {
        const auto grid = disk_grid(R, opts.tol);
        const double d = hausdorff(hat, grid);
        const double rel = R > 0.0 ? d / R : d;
        Check c = check_threshold(name, rel, opts.density_tol);
        c.values = {{"absolute", d}, {"R", R}};
        return c;
    };
    rep.checks.push_back(density("density_nu0", nu0_hat, R0));
    rep.checks.push_back(density("density_nu1", nu1_hat, R1));

    // (f) spectrum of nu_i inside and covering the R-disk (discrete, <= 2 generators)
    const bool f_applies = opts.check_spectrum && mu.is_discrete() && mu.disc.used_generators().size() <= 2;
    const auto spectrum = [&](const char* name, const MixedMeasure& nu, double R) {
        Check c;
        c.name = name;
        c.threshold = opts.tol;
        if (!f_applies) {
            c.skipped = true;
            c.detail = mu.is_discrete() ? "more than two generators in mu" : "mu has a density part";
            if (!opts.check_spectrum) c.detail = "disabled";
            return c;
        }
        const auto p = char_polynomial(nu.disc);
        const auto sample = spectrum_sample(nu.disc, opts.grid, opts.refine, opts.spectrum_point_budget);
        double top = 0.0;
        for (const auto& z : sample.points) top = std::max(top, std::abs(z));
        const double cover = spectrum_covering_radius(p, sample, disk_grid(R, opts.tol));
        const double rel = R > 0.0 ? cover / R : cover;
        c.residual = rel;
        c.passed = top <= R + 1e-6 && rel <= opts.tol;
        c.values = {{"max_abs", top},
                    {"R", R},
                    {"covering_radius", cover},
                    {"resolution", sample.resolution.empty() ? 0.0 : sample.resolution[0]}};
        if (top > R + 1e-6) c.detail = "spectrum sample leaves the R-disk";
        return c;
    };
    rep.checks.push_back(spectrum("spectrum_nu0", res.nu0, R0));
    rep.checks.push_back(spectrum("spectrum_nu1", res.nu1, R1));
    return rep;
}

}  // namespace natspec
