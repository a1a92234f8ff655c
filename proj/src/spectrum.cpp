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

#include "natspec/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "natspec/errors.hpp"
#include "natspec/hausdorff.hpp"
#include "natspec/kernels.hpp"
#include "natspec/parallel.hpp"

namespace natspec {

namespace {

inline Complex cmul(Complex a, Complex b) {
    return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

std::int64_t mod(std::int64_t v, std::int64_t m) {
    v %= m;
    return v < 0 ? v + m : v;
}

}  // namespace

// --- Fekete bound -----------------------------------------------------------------

FeketeReport fekete_bound(const MixedMeasure& mu, int k_max, double rel_tol, const ConvolutionBudget& budget) {
    if (k_max < 0) throw InvalidArgument("fekete_bound: k_max must be >= 0");
    FeketeReport rep;
    const double norm0 = tv_norm(mu).upper();
    rep.steps.push_back({0, norm0, norm0});
    rep.final_bound = norm0;
    if (norm0 == 0.0) return rep;

    const GeneratorBasis& basis = mu.basis();
    LatticeForm disc = to_lattice(mu.disc);
    TrigPolyDensity ac = mu.ac;
    for (int k = 1; k <= k_max; ++k) {
        const double pairs = static_cast<double>(disc.size()) * static_cast<double>(disc.size());
        if (pairs > static_cast<double>(budget.max_pair_products)) {
            rep.budget_hit = true;
            break;
        }
        LatticeForm next_disc = convolve(disc, disc);
        TrigPolyDensity next_ac;
        if (!ac.empty()) {
            // Same term order as convolve(MixedMeasure, MixedMeasure) for a = b.
            const FourierEvaluator fd(disc, basis);
            for (const auto& [n, c] : ac.coeffs()) {
                const Complex f = fd.discrete(n);
                Complex sum = cmul(c, f);
                sum += cmul(f, c);
                sum += cmul(c, c);
                next_ac.add(n, sum);
            }
        }
        if (next_disc.size() > budget.max_atoms || next_ac.degree() > budget.max_degree) {
            rep.budget_hit = true;
            break;
        }
        disc = std::move(next_disc);
        ac = std::move(next_ac);
        double norm = l1_norm(ac).upper();
        for (const auto& w : disc.weights) norm += std::abs(w);
        const double r = std::pow(norm, 1.0 / std::ldexp(1.0, k));
        const double prev = rep.final_bound;
        rep.steps.push_back({k, norm, r});
        rep.final_bound = std::min(rep.final_bound, r);
        if (norm == 0.0) break;
        if (rel_tol > 0.0 && (prev - r) / prev < rel_tol) break;
    }
    return rep;
}

// --- Character polynomials -----------------------------------------------------------

CharacterPolynomial char_polynomial(const DiscreteMeasure& mu) {
    CharacterPolynomial p;
    const LatticeForm f = to_lattice(mu);
    p.order = f.order;
    p.generators = mu.used_generators();
    p.terms.reserve(f.size());
    for (std::size_t j = 0; j < f.size(); ++j) {
        CharacterTerm t;
        t.m = f.torsion[j];
        t.c = f.weights[j];
        for (const auto g : p.generators) t.e.push_back(f.coeffs[j * f.rank + g]);
        p.terms.push_back(std::move(t));
    }
    return p;
}

Complex CharacterPolynomial::evaluate(std::int64_t s, std::span<const double> phi) const {
    if (phi.size() != free_dims()) throw InvalidArgument("CharacterPolynomial::evaluate: wrong number of angles");
    Complex sum{};
    for (const auto& t : terms) {
        double phase = 0.0;
        for (std::size_t i = 0; i < t.e.size(); ++i) phase += static_cast<double>(t.e[i]) * phi[i];
        const auto r = static_cast<std::int64_t>((static_cast<__int128>(mod(s, order)) * t.m) % order);
        sum += cmul(cmul(t.c, root_of_unity(r, order)), std::polar(1.0, -phase));
    }
    return sum;
}

namespace {

double l1_weight(const CharacterPolynomial& p) {
    double s = 0.0;
    for (const auto& t : p.terms) {
        double e1 = 0.0;
        for (auto e : t.e) e1 += std::abs(static_cast<double>(e));
        s += std::abs(t.c) * e1;
    }
    return s;
}

/// Value and gradient of p(s, .) at phi.
Complex value_and_gradient(const CharacterPolynomial& p, const std::vector<Complex>& torsion_weights,
                           const std::vector<double>& phi, std::vector<Complex>& dp) {
    std::fill(dp.begin(), dp.end(), Complex{});
    Complex val{};
    for (std::size_t j = 0; j < p.terms.size(); ++j) {
        const auto& t = p.terms[j];
        double phase = 0.0;
        for (std::size_t i = 0; i < t.e.size(); ++i) phase += static_cast<double>(t.e[i]) * phi[i];
        const Complex v = cmul(torsion_weights[j], std::polar(1.0, -phase));
        val += v;
        for (std::size_t i = 0; i < t.e.size(); ++i) dp[i] += Complex{0.0, -static_cast<double>(t.e[i])} * v;
    }
    return val;
}

std::vector<Complex> torsion_weights(const CharacterPolynomial& p, std::int64_t s) {
    std::vector<Complex> w(p.terms.size());
    for (std::size_t j = 0; j < p.terms.size(); ++j) {
        const auto r = static_cast<std::int64_t>((static_cast<__int128>(mod(s, p.order)) * p.terms[j].m) % p.order);
        w[j] = cmul(p.terms[j].c, root_of_unity(r, p.order));
    }
    return w;
}

/// Backtracking gradient steps on objective(phi) = |p(s,phi) - target|^2
/// (sign = -1, descent) or |p(s,phi)|^2 (sign = +1, ascent).
double optimize(const CharacterPolynomial& p, std::int64_t s, std::vector<double>& phi, int iters, int sign,
                Complex target) {
    const auto tw = torsion_weights(p, s);
    std::vector<Complex> dp(phi.size());
    auto objective = [&](const std::vector<double>& x, std::vector<Complex>& grad) {
        const Complex v = value_and_gradient(p, tw, x, grad) - target;
        return std::norm(v);
    };
    std::vector<Complex> grad_scratch(phi.size());
    Complex v0 = value_and_gradient(p, tw, phi, dp) - target;
    double f = std::norm(v0);
    const double S = l1_weight(p);
    if (S == 0.0 || phi.empty()) return f;
    double step = 0.5 / (S * S);
    std::vector<double> trial(phi.size());
    for (int it = 0; it < iters; ++it) {
        // d/dphi_i |v|^2 = 2 Re(conj(v) dv/dphi_i)
        double gnorm = 0.0;
        for (std::size_t i = 0; i < phi.size(); ++i) {
            const double g = 2.0 * (std::conj(v0) * dp[i]).real();
            trial[i] = phi[i] + sign * step * g;
            gnorm += g * g;
        }
        if (gnorm == 0.0) break;
        const double ft = objective(trial, grad_scratch);
        const bool better = sign > 0 ? ft > f : ft < f;
        if (better) {
            phi = trial;
            f = ft;
            v0 = value_and_gradient(p, tw, phi, dp) - target;
            step *= 1.5;
        } else {
            step *= 0.5;
        }
    }
    return f;
}

/// Damped Gauss-Newton (Levenberg-Marquardt) on |p(s,phi) - target|^2. The
/// residual is two real functions of at most kMaxFreeDims angles, so each step
/// solves a tiny normal system. Plain gradient descent stalls near the zero set
/// of p, where the landscape is badly conditioned.
double descend_to(const CharacterPolynomial& p, std::int64_t s, std::vector<double>& phi, int iters, Complex target) {
    const std::size_t k = phi.size();
    const auto tw = torsion_weights(p, s);
    std::vector<Complex> dp(k), dp_trial(k);
    Complex r = value_and_gradient(p, tw, phi, dp) - target;
    double f = std::norm(r);
    double lambda = 1e-3;
    std::vector<double> trial(k);
    for (int it = 0; it < iters && f > 1e-30; ++it) {
        // A = J^T J, g = J^T r with J the 2 x k Jacobian of (Re, Im)(p - target).
        double A[kMaxFreeDims][kMaxFreeDims + 1];
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j < k; ++j) {
                A[i][j] = dp[i].real() * dp[j].real() + dp[i].imag() * dp[j].imag();
            }
            A[i][k] = -(dp[i].real() * r.real() + dp[i].imag() * r.imag());
        }
        double scale = 0.0;
        for (std::size_t i = 0; i < k; ++i) scale = std::max(scale, A[i][i]);
        if (scale == 0.0) break;
        // The absolute term keeps steps bounded when J is rank deficient (p may
        // depend on fewer directions than it has variables).
        for (std::size_t i = 0; i < k; ++i) A[i][i] += lambda * A[i][i] + 1e-9 * scale;
        // Gaussian elimination with partial pivoting.
        bool singular = false;
        for (std::size_t c = 0; c < k && !singular; ++c) {
            std::size_t piv = c;
            for (std::size_t i = c + 1; i < k; ++i) {
                if (std::abs(A[i][c]) > std::abs(A[piv][c])) piv = i;
            }
            if (A[piv][c] == 0.0) {
                singular = true;
                break;
            }
            if (piv != c) {
                for (std::size_t j = 0; j <= k; ++j) std::swap(A[c][j], A[piv][j]);
            }
            for (std::size_t i = c + 1; i < k; ++i) {
                const double m = A[i][c] / A[c][c];
                for (std::size_t j = c; j <= k; ++j) A[i][j] -= m * A[c][j];
            }
        }
        if (singular) {
            lambda *= 4.0;
            continue;
        }
        for (std::size_t i = k; i-- > 0;) {
            double v = A[i][k];
            for (std::size_t j = i + 1; j < k; ++j) v -= A[i][j] * trial[j];
            trial[i] = v / A[i][i];
        }
        for (std::size_t i = 0; i < k; ++i) trial[i] += phi[i];
        const Complex rt = value_and_gradient(p, tw, trial, dp_trial) - target;
        const double ft = std::norm(rt);
        if (ft < f) {
            phi = trial;
            f = ft;
            r = rt;
            dp.swap(dp_trial);
            lambda = std::max(lambda / 3.0, 1e-12);
        } else {
            lambda *= 4.0;
            if (lambda > 1e12) break;
        }
    }
    return f;
}

/// Evaluates p over torsion x grid^k, one row (last dimension) at a time.
class TorusGrid {
public:
    TorusGrid(const CharacterPolynomial& p, int grid) : p_(p), g_(grid), k_(p.free_dims()) {
        const auto G = static_cast<std::size_t>(g_);
        table_.resize(G);
        for (std::size_t g = 0; g < G; ++g) {
            table_[g] = std::polar(1.0, -kTwoPi * (static_cast<double>(g) / static_cast<double>(g_)));
        }
        if (k_ == 0) return;
        col_re_.resize(p.terms.size());
        col_im_.resize(p.terms.size());
        for (std::size_t j = 0; j < p.terms.size(); ++j) {
            const std::int64_t e = mod(p.terms[j].e[k_ - 1], g_);
            col_re_[j].resize(G);
            col_im_[j].resize(G);
            std::int64_t idx = 0;
            for (std::size_t g = 0; g < G; ++g) {
                col_re_[j][g] = table_[static_cast<std::size_t>(idx)].real();
                col_im_[j][g] = table_[static_cast<std::size_t>(idx)].imag();
                idx += e;
                if (idx >= g_) idx -= g_;
            }
        }
    }

    std::size_t row_length() const { return k_ == 0 ? 1 : static_cast<std::size_t>(g_); }
    std::size_t rows_per_torsion() const {
        std::size_t r = 1;
        for (std::size_t i = 0; i + 1 < k_; ++i) r *= static_cast<std::size_t>(g_);
        return k_ == 0 ? 1 : r;
    }

    /// Digits (g_0 .. g_{k-2}) of a prefix index, most significant first.
    void prefix_digits(std::size_t prefix, std::vector<std::int64_t>& digits) const {
        digits.assign(k_ == 0 ? 0 : k_ - 1, 0);
        for (std::size_t i = digits.size(); i-- > 0;) {
            digits[i] = static_cast<std::int64_t>(prefix % static_cast<std::size_t>(g_));
            prefix /= static_cast<std::size_t>(g_);
        }
    }

    void row(std::int64_t s, const std::vector<Complex>& tw, const std::vector<std::int64_t>& digits,
             std::vector<double>& re, std::vector<double>& im) const {
        const std::size_t n = row_length();
        re.assign(n, 0.0);
        im.assign(n, 0.0);
        (void)s;
        if (k_ == 0) {
            Complex v{};
            for (const auto& w : tw) v += w;
            re[0] = v.real();
            im[0] = v.imag();
            return;
        }
        const auto& kern = kernels::active();
        for (std::size_t j = 0; j < p_.terms.size(); ++j) {
            Complex a = tw[j];
            for (std::size_t i = 0; i + 1 < k_; ++i) {
                const std::int64_t idx = mod(static_cast<std::int64_t>((static_cast<__int128>(mod(p_.terms[j].e[i], g_)) * digits[i]) % g_), g_);
                a = cmul(a, table_[static_cast<std::size_t>(idx)]);
            }
            kern.complex_axpy(a.real(), a.imag(), col_re_[j].data(), col_im_[j].data(), re.data(), im.data(), n);
        }
    }

    int grid() const { return g_; }

private:
    const CharacterPolynomial& p_;
    int g_;
    std::size_t k_;
    std::vector<Complex> table_;
    std::vector<std::vector<double>> col_re_, col_im_;
};

void check_dims(const CharacterPolynomial& p) {
    if (p.free_dims() > kMaxFreeDims) {
        throw UnsupportedDimension("torus evaluation supports at most " + std::to_string(kMaxFreeDims) +
                                   " free generators, got " + std::to_string(p.free_dims()));
    }
}

std::vector<double> angles_of(const std::vector<std::int64_t>& digits, std::int64_t last, int grid, std::size_t k) {
    std::vector<double> phi;
    for (std::size_t i = 0; i < k; ++i) {
        const auto g = i + 1 < k ? digits[i] : last;
        phi.push_back(kTwoPi * (static_cast<double>(g) / static_cast<double>(grid)));
    }
    return phi;
}

}  // namespace

TorusMaxResult torus_max_point(const CharacterPolynomial& p, int grid, int refine_iters) {
    check_dims(p);
    if (grid < 16) throw InvalidArgument("torus_max: grid must be >= 16");
    if (refine_iters < 0) throw InvalidArgument("torus_max: refine_iters must be >= 0");
    const std::size_t k = p.free_dims();
    TorusGrid tg(p, grid);

    // Best point on each dyadic subgrid (step 1, 2, 4, ... while grid/step >= 16).
    std::vector<std::int64_t> steps{1};
    while (grid % (steps.back() * 2) == 0 && grid / (steps.back() * 2) >= 16) steps.push_back(steps.back() * 2);
    struct Best {
        double v2 = -1.0;
        std::int64_t s = 0;
        std::vector<std::int64_t> digits;
        std::int64_t last = 0;
    };
    std::vector<Best> best(steps.size());

    const auto& kern = kernels::active();
    std::vector<double> re, im;
    std::vector<std::int64_t> digits;
    for (std::int64_t s = 0; s < p.order; ++s) {
        const auto tw = torsion_weights(p, s);
        for (std::size_t prefix = 0; prefix < tg.rows_per_torsion(); ++prefix) {
            tg.prefix_digits(prefix, digits);
            tg.row(s, tw, digits, re, im);
            const auto am = kern.max_abs2(re.data(), im.data(), re.size());
            if (am.value > best[0].v2) best[0] = {am.value, s, digits, static_cast<std::int64_t>(am.index)};
            for (std::size_t l = 1; l < steps.size(); ++l) {
                const auto st = steps[l];
                if (!std::all_of(digits.begin(), digits.end(), [st](std::int64_t d) { return d % st == 0; })) continue;
                for (std::size_t g = 0; g < re.size(); g += static_cast<std::size_t>(st)) {
                    const double v = re[g] * re[g] + im[g] * im[g];
                    if (v > best[l].v2) best[l] = {v, s, digits, static_cast<std::int64_t>(g)};
                }
            }
        }
    }

    TorusMaxResult out;
    out.value = std::sqrt(std::max(0.0, best[0].v2));
    out.torsion = best[0].s;
    out.phi = angles_of(best[0].digits, best[0].last, grid, k);
    if (k == 0 || refine_iters == 0) return out;
    for (std::size_t l = 0; l < steps.size(); ++l) {
        if (l > 0 && best[l].s == best[l - 1].s && best[l].digits == best[l - 1].digits &&
            best[l].last == best[l - 1].last) {
            continue;
        }
        auto phi = angles_of(best[l].digits, best[l].last, grid, k);
        const double f = optimize(p, best[l].s, phi, refine_iters, +1, Complex{});
        const double v = std::sqrt(f);
        if (v > out.value) {
            out.value = v;
            out.torsion = best[l].s;
            out.phi = phi;
        }
    }
    return out;
}

double torus_max(const CharacterPolynomial& p, int grid, int refine_iters) {
    return torus_max_point(p, grid, refine_iters).value;
}

// --- Samples --------------------------------------------------------------------------

SpectrumSample spectrum_sample(const DiscreteMeasure& mu, int grid, int refine, std::size_t point_budget) {
    const CharacterPolynomial p = char_polynomial(mu);
    check_dims(p);
    if (grid < 1) throw InvalidArgument("spectrum_sample: grid must be >= 1");
    const std::size_t k = p.free_dims();
    int g = grid;
    auto total = [&](int gg) {
        double t = static_cast<double>(p.order);
        for (std::size_t i = 0; i < k; ++i) t *= gg;
        return t;
    };
    while (g > 1 && total(g) > static_cast<double>(point_budget)) --g;

    SpectrumSample out;
    out.refine = refine;
    out.torsion_order = p.order;
    out.resolution.assign(k, g);
    if (mu.empty()) {
        out.points.push_back(Complex{});
        return out;
    }
    TorusGrid tg(p, g);
    const std::size_t rows = tg.rows_per_torsion();
    const std::size_t len = tg.row_length();
    out.points.resize(static_cast<std::size_t>(p.order) * rows * len);
    for (std::int64_t s = 0; s < p.order; ++s) {
        const auto tw = torsion_weights(p, s);
        parallel_for(rows, [&](std::size_t b, std::size_t e) {
            std::vector<double> re, im;
            std::vector<std::int64_t> digits;
            for (std::size_t prefix = b; prefix < e; ++prefix) {
                tg.prefix_digits(prefix, digits);
                tg.row(s, tw, digits, re, im);
                Complex* dst = out.points.data() + (static_cast<std::size_t>(s) * rows + prefix) * len;
                for (std::size_t i = 0; i < len; ++i) dst[i] = {re[i], im[i]};
            }
        });
    }
    return out;
}

SpectrumSample transform_closure_sample(const MixedMeasure& mu, std::int64_t N, Subset subset) {
    if (N < 0) throw InvalidArgument("transform_closure_sample: N must be >= 0");
    std::vector<std::int64_t> ns;
    for (std::int64_t n = -N; n <= N; ++n) {
        const bool even = n % 2 == 0;
        if (subset == Subset::All || (subset == Subset::Even && even) || (subset == Subset::Odd && !even)) {
            ns.push_back(n);
        }
    }
    SpectrumSample out;
    if (ns.empty()) return out;
    const FourierEvaluator fe(mu);
    out.points.resize(ns.size());
    parallel_for(ns.size(), [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) out.points[i] = fe(ns[i]);
    });
    return out;
}

std::vector<Complex> disk_grid(double radius, double tol) {
    if (!(tol > 0.0)) throw InvalidArgument("disk_grid: tol must be > 0");
    if (!(radius >= 0.0)) throw InvalidArgument("disk_grid: radius must be >= 0");
    std::vector<Complex> pts{Complex{}};
    if (radius == 0.0) return pts;
    const int nr = static_cast<int>(std::ceil(2.0 / tol));
    const int na = static_cast<int>(std::ceil(kTwoPi / tol));
    for (int i = 1; i <= nr; ++i) {
        const double r = radius * i / nr;
        for (int j = 0; j < na; ++j) {
            const double t = kTwoPi * j / na;
            pts.emplace_back(r * std::cos(t), r * std::sin(t));
        }
    }
    return pts;
}

double spectrum_covering_radius(const CharacterPolynomial& p, const SpectrumSample& cloud,
                                std::span<const Complex> reference) {
    if (reference.empty()) throw InvalidArgument("spectrum_covering_radius: empty reference set");
    if (cloud.points.empty()) throw InvalidArgument("spectrum_covering_radius: empty spectrum sample");
    const std::size_t k = p.free_dims();
    const int g = k == 0 ? 1 : cloud.resolution.at(0);
    std::size_t per_torsion = 1;
    for (std::size_t i = 0; i < k; ++i) per_torsion *= static_cast<std::size_t>(g);
    const bool decodable = cloud.points.size() == per_torsion * static_cast<std::size_t>(p.order);

    // One index per torsion value: the descent cannot leave its torsion class,
    // so each class gets its own starting point.
    std::vector<NearestPointIndex> classes;
    if (decodable) {
        for (std::int64_t s = 0; s < p.order; ++s) {
            classes.emplace_back(std::span<const Complex>(cloud.points).subspan(static_cast<std::size_t>(s) * per_torsion,
                                                                                per_torsion));
        }
    } else {
        classes.emplace_back(cloud.points);
    }
    const bool refine = decodable && cloud.refine > 0 && k > 0;
    constexpr double kConverged = 1e-24;
    constexpr std::size_t kExtraStarts = 256;
    // Bound on |grad p| times half the grid cell diagonal.
    double lip = 0.0;
    for (const auto& t : p.terms) {
        double e2 = 0.0;
        for (const auto e : t.e) e2 += static_cast<double>(e) * static_cast<double>(e);
        lip += std::abs(t.c) * std::sqrt(e2);
    }
    const double reach = lip * (kTwoPi / g) * std::sqrt(static_cast<double>(k)) / 2.0 * (1.0 + 1e-9) + 1e-12;

    std::vector<double> dist(reference.size());
    parallel_for(reference.size(), [&](std::size_t b, std::size_t e) {
        std::vector<NearestPointIndex::Hit> hits(classes.size());
        for (std::size_t r = b; r < e; ++r) {
            double d2 = std::numeric_limits<double>::infinity();
            for (std::size_t c = 0; c < classes.size(); ++c) {
                hits[c] = classes[c].nearest(reference[r]);
                d2 = std::min(d2, hits[c].dist2);
            }
            // Starts from one grid point, then from a half-cell offset: grid points
            // can be exact critical points of |p - w|^2 (e.g. where p vanishes by
            // symmetry).
            auto attempt = [&](std::size_t c, std::size_t lin) {
                std::vector<double> phi(k);
                for (std::size_t i = k; i-- > 0;) {
                    phi[i] = kTwoPi * (static_cast<double>(lin % static_cast<std::size_t>(g)) / static_cast<double>(g));
                    lin /= static_cast<std::size_t>(g);
                }
                const auto s = static_cast<std::int64_t>(c);
                std::vector<double> shifted = phi;
                d2 = std::min(d2, descend_to(p, s, phi, cloud.refine, reference[r]));
                if (d2 <= kConverged) return;
                for (std::size_t i = 0; i < k; ++i) shifted[i] += kTwoPi * (0.5 - 0.1 * static_cast<double>(i)) / g;
                d2 = std::min(d2, descend_to(p, s, shifted, cloud.refine, reference[r]));
            };
            for (std::size_t c = 0; refine && d2 > kConverged && c < classes.size(); ++c) attempt(c, hits[c].index);
            // Local minima: the true preimage has a grid point within half a cell
            // diagonal, whose value is within `reach` of w. Retry from every such
            // grid value, closest first.
            for (std::size_t c = 0; refine && d2 > kConverged && c < classes.size(); ++c) {
                const auto cls = std::span<const Complex>(cloud.points).subspan(c * per_torsion, per_torsion);
                std::vector<std::pair<double, std::size_t>> near;
                for (std::size_t j = 0; j < cls.size(); ++j) {
                    const double e2 = std::norm(cls[j] - reference[r]);
                    if (e2 <= reach * reach) near.emplace_back(e2, j);
                }
                std::sort(near.begin(), near.end());
                std::size_t used = 0;
                for (std::size_t j = 1; j < near.size() && used < kExtraStarts && d2 > kConverged; ++j) {
                    // Distinct values only: p may ignore some directions of the torus.
                    if (cls[near[j].second] == cls[near[j - 1].second]) continue;
                    attempt(c, near[j].second);
                    ++used;
                }
            }
            dist[r] = std::sqrt(d2);
        }
    });
    double worst = 0.0;
    for (const double d : dist) worst = std::max(worst, d);
    return worst;
}

NaturalSpectrumCheck natural_spectrum_check(const DiscreteMeasure& mu, std::int64_t N, int grid, double tol) {
    NaturalSpectrumCheck out;
    out.tol = tol;
    out.N = N;
    const SpectrumSample spec = spectrum_sample(mu, grid);
    out.spectrum_resolution = spec.resolution;
    const SpectrumSample tr = transform_closure_sample(MixedMeasure(mu), N, Subset::All);
    out.distance = hausdorff(spec.points, tr.points);
    out.natural = out.distance < tol;
    return out;
}

}  // namespace natspec
