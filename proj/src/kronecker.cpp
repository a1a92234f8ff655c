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

#include "natspec/kronecker.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "natspec/angle.hpp"
#include "natspec/errors.hpp"
#include "natspec/kernels.hpp"

namespace natspec {

std::string_view to_string(KroneckerMethod m) { return m == KroneckerMethod::Lattice ? "lattice" : "scan"; }

std::string_view to_string(Parity p) {
    switch (p) {
        case Parity::Even: return "even";
        case Parity::Odd: return "odd";
        default: return "any";
    }
}

KroneckerMethod parse_method(std::string_view s) {
    if (s == "scan") return KroneckerMethod::Scan;
    if (s == "lattice") return KroneckerMethod::Lattice;
    throw InvalidArgument("unknown method '" + std::string(s) + "' (expected scan|lattice)");
}

Parity parse_parity(std::string_view s) {
    if (s == "any" || s == "all") return Parity::Any;
    if (s == "even") return Parity::Even;
    if (s == "odd") return Parity::Odd;
    throw InvalidArgument("unknown parity '" + std::string(s) + "' (expected any|even|odd)");
}

double chordal_distance(double t, double x) { return std::abs(std::polar(1.0, t) - std::polar(1.0, x)); }

namespace {

struct Verified {
    bool ok = false;
    double ea = 0.0;
    double eb = 0.0;
};

Verified verify(const KroneckerProblem& p, std::int64_t n) {
    const auto dn = static_cast<double>(n);
    Verified v;
    v.ea = chordal_distance(dn * p.alpha, p.target_x);
    v.eb = chordal_distance(dn * p.beta, p.target_y);
    v.ok = v.ea < p.epsilon && v.eb < p.epsilon;
    return v;
}

void validate(const KroneckerProblem& p) {
    if (!(p.epsilon > 0.0)) throw InvalidArgument("kronecker: epsilon must be > 0");
    if (p.n_max < 1) throw InvalidArgument("kronecker: n_max must be >= 1");
    if (!(p.alpha > 0.0 && p.alpha < kTwoPi) || !(p.beta > 0.0 && p.beta < kTwoPi)) {
        throw InvalidArgument("kronecker: alpha and beta must lie in (0, 2*pi)");
    }
    if (p.min_abs_n < 0) throw InvalidArgument("kronecker: min_abs_n must be >= 0");
}

/// Half-width, in turns, of the arc where the chordal distance stays below eps,
/// widened slightly so the turn-domain prefilter never rejects a true solution.
double prefilter_threshold(double eps) {
    if (eps >= 2.0) return 1.0;
    return std::asin(eps / 2.0) / M_PI * (1.0 + 1e-6) + 1e-9;
}

double frac_turns(double radians) {
    const double t = radians / kTwoPi;
    return t - std::floor(t);
}

NotFound not_found(const KroneckerProblem& p, std::int64_t lo, std::int64_t hi) {
    std::int64_t best_n = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::int64_t m = lo; m <= hi; ++m) {
        for (const std::int64_t n : {m, -m}) {
            const auto v = verify(p, n);
            const double e = std::max(v.ea, v.eb);
            if (e < best) {
                best = e;
                best_n = n;
            }
            if (m == 0) break;
        }
    }
    return NotFound("kronecker: no n with |n| <= " + std::to_string(p.n_max) + " meets epsilon; best n = " +
                        std::to_string(best_n) + " with error " + std::to_string(best),
                    best_n, best);
}

KroneckerSolution scan(const KroneckerProblem& p) {
    KroneckerSolution sol;
    sol.method = KroneckerMethod::Scan;
    std::int64_t m = p.min_abs_n;
    if (m == 0) {
        ++sol.evaluations;
        const auto v = verify(p, 0);
        if (v.ok) {
            sol.n = 0;
            sol.err_alpha = v.ea;
            sol.err_beta = v.eb;
            return sol;
        }
        m = 1;
    }
    const double a = frac_turns(p.alpha);
    const double b = frac_turns(p.beta);
    const double x = frac_turns(p.target_x);
    const double y = frac_turns(p.target_y);
    const double thr = prefilter_threshold(p.epsilon);
    const auto& k = kernels::active();
    constexpr std::int64_t kChunk = 1 << 16;
    while (m <= p.n_max) {
        const std::int64_t end = std::min(p.n_max + 1, m + kChunk);
        const auto hit = k.torus_scan(a, b, x, y, thr, thr, m, end);
        if (hit.m < 0) {
            sol.evaluations += 2 * (end - m);
            m = end;
            continue;
        }
        sol.evaluations += 2 * (hit.m - m + 1);
        for (const auto& [flag, n] : {std::pair{hit.plus, hit.m}, std::pair{hit.minus, -hit.m}}) {
            if (!flag) continue;
            const auto v = verify(p, n);
            if (v.ok) {
                sol.n = n;
                sol.err_alpha = v.ea;
                sol.err_beta = v.eb;
                return sol;
            }
        }
        m = hit.m + 1;
    }
    throw not_found(p, p.min_abs_n, p.n_max);
}

// --- Lattice reduction in dimension 3 -----------------------------------------

using Vec3 = std::array<long double, 3>;

long double dot(const Vec3& u, const Vec3& v) { return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]; }

struct Reduced {
    std::array<Vec3, 3> rows;
    std::array<std::array<std::int64_t, 3>, 3> unimodular;  // rows = unimodular * original
};

void gram_schmidt(const std::array<Vec3, 3>& b, std::array<Vec3, 3>& star, std::array<std::array<long double, 3>, 3>& mu) {
    for (int i = 0; i < 3; ++i) {
        star[i] = b[i];
        for (int j = 0; j < i; ++j) {
            mu[i][j] = dot(b[i], star[j]) / dot(star[j], star[j]);
            for (int c = 0; c < 3; ++c) star[i][c] -= mu[i][j] * star[j][c];
        }
    }
}

Reduced lll(std::array<Vec3, 3> b) {
    Reduced r;
    r.unimodular = {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
    std::array<Vec3, 3> star{};
    std::array<std::array<long double, 3>, 3> mu{};
    constexpr long double kDelta = 0.99L;
    int k = 1;
    for (int guard = 0; k < 3 && guard < 10000; ++guard) {
        gram_schmidt(b, star, mu);
        for (int j = k - 1; j >= 0; --j) {
            const long double q = std::nearbyint(mu[k][j]);
            if (q != 0.0L) {
                for (int c = 0; c < 3; ++c) {
                    b[k][c] -= q * b[j][c];
                    r.unimodular[k][c] -= static_cast<std::int64_t>(q) * r.unimodular[j][c];
                }
                gram_schmidt(b, star, mu);
            }
        }
        if (dot(star[k], star[k]) >= (kDelta - mu[k][k - 1] * mu[k][k - 1]) * dot(star[k - 1], star[k - 1])) {
            ++k;
        } else {
            std::swap(b[k], b[k - 1]);
            std::swap(r.unimodular[k], r.unimodular[k - 1]);
            k = std::max(k - 1, 1);
        }
    }
    r.rows = b;
    return r;
}

}  // namespace

namespace detail {

std::int64_t lattice_candidate(double a_turns, double b_turns, double x_turns, double y_turns, double weight) {
    // Lattice vector for integers (n, p, q):  (weight*n, n*a + p, n*b + q).
    const std::array<Vec3, 3> original = {{{static_cast<long double>(weight), a_turns, b_turns}, {0, 1, 0}, {0, 0, 1}}};
    const Reduced red = lll(original);
    std::array<Vec3, 3> star{};
    std::array<std::array<long double, 3>, 3> mu{};
    gram_schmidt(red.rows, star, mu);
    Vec3 t = {0.0L, x_turns, y_turns};
    std::array<long double, 3> coord{};
    for (int i = 2; i >= 0; --i) {
        coord[i] = std::nearbyint(dot(t, star[i]) / dot(star[i], star[i]));
        for (int c = 0; c < 3; ++c) t[c] -= coord[i] * red.rows[i][c];
    }
    long double n = 0.0L;
    for (int i = 0; i < 3; ++i) n += coord[i] * static_cast<long double>(red.unimodular[i][0]);
    if (!(std::fabs(n) < 9.0e15L)) return 0;
    return static_cast<std::int64_t>(n);
}

}  // namespace detail

namespace {

KroneckerSolution lattice(const KroneckerProblem& p) {
    const double a = frac_turns(p.alpha);
    const double b = frac_turns(p.beta);
    const double x = frac_turns(p.target_x);
    const double y = frac_turns(p.target_y);
    // Arc half-width in turns; a weight of (delta/s)^3 puts the typical
    // nearest-plane residual near delta/s while keeping |n| ~ s^3/delta^2.
    const double delta = prefilter_threshold(std::min(p.epsilon, 1.9));
    std::optional<KroneckerSolution> best;
    std::int64_t evaluations = 0;
    for (const double s : {2.0, 4.0, 8.0}) {
        const double weight = std::pow(delta / s, 3.0);
        const std::int64_t center = detail::lattice_candidate(a, b, x, y, weight);
        for (std::int64_t d = -8; d <= 8; ++d) {
            const std::int64_t n = center + d;
            const std::int64_t abs_n = n < 0 ? -n : n;
            if (abs_n > p.n_max || abs_n < p.min_abs_n) continue;
            ++evaluations;
            const auto v = verify(p, n);
            if (!v.ok) continue;
            const bool better = !best || abs_n < std::abs(best->n) || (abs_n == std::abs(best->n) && n > best->n);
            if (better) best = KroneckerSolution{n, v.ea, v.eb, 0, KroneckerMethod::Lattice};
        }
    }
    if (best) {
        best->evaluations = evaluations;
        return *best;
    }
    KroneckerSolution s = scan(p);
    s.evaluations += evaluations;
    return s;
}

}  // namespace

KroneckerSolution solve(const KroneckerProblem& p) {
    validate(p);
    return p.method == KroneckerMethod::Lattice ? lattice(p) : scan(p);
}

// --- Disk maps ------------------------------------------------------------------

namespace {

Complex clamp_to_disk(Complex w) {
    const double r = std::abs(w);
    if (r > 1.0 + 1e-12) throw OutOfDisk("point lies outside the closed unit disk");
    return r > 1.0 ? w / r : w;
}

/// d with |w + d| = |w - d| = 1, d orthogonal to w.
Complex half_chord(Complex w) {
    const double r = std::abs(w);
    if (r == 0.0) return {1.0, 0.0};
    const double h = std::sqrt(std::max(0.0, 1.0 - r * r));
    return Complex{0.0, h} * (w / r);
}

}  // namespace

std::pair<Complex, Complex> disk_preimage(Complex w, bool flip) {
    w = clamp_to_disk(w);
    Complex d = half_chord(w);
    if (flip) d = -d;
    return {w + d, w - d};
}

std::pair<Complex, Complex> disk_preimage_shifted(Complex w, double alpha, double beta, bool flip) {
    const auto [z0, u0] = disk_preimage(w, flip);
    return {z0 * std::polar(1.0, alpha), u0 * std::polar(1.0, beta)};
}

Complex rho_hat(double alpha, double beta, std::int64_t n) {
    const auto dn = static_cast<double>(n);
    return 0.5 * (std::polar(1.0, -dn * alpha) + std::polar(1.0, -dn * beta));
}

HitResult hit_target(double alpha, double beta, Complex w, double epsilon, Parity parity, std::int64_t n_max,
                     KroneckerMethod method) {
    if (!(epsilon > 0.0)) throw InvalidArgument("hit_target: epsilon must be > 0");
    if (n_max < 1) throw InvalidArgument("hit_target: n_max must be >= 1");
    w = clamp_to_disk(w);

    // n = scale*m + offset, solved in (scale*alpha, scale*beta).
    const std::int64_t scale = parity == Parity::Any ? 1 : 2;
    const std::int64_t offset = parity == Parity::Odd ? 1 : 0;
    const double a = std::fmod(scale * alpha, kTwoPi);
    const double b = std::fmod(scale * beta, kTwoPi);
    const std::int64_t m_max = parity == Parity::Any ? n_max : (n_max - offset) / 2;
    if (m_max < 0 || (m_max == 0 && parity == Parity::Odd && n_max < 1)) {
        throw NotFound("hit_target: n_max too small for the requested parity", 0, 2.0);
    }

    std::optional<HitResult> best;
    std::int64_t evaluations = 0;
    std::int64_t best_fail_n = 0;
    double best_fail_err = std::numeric_limits<double>::infinity();
    auto abs64 = [](std::int64_t v) { return v < 0 ? -v : v; };

    for (const bool flip : {false, true}) {
        const auto [z, u] = parity == Parity::Odd ? disk_preimage_shifted(w, alpha, beta, flip) : disk_preimage(w, flip);
        KroneckerProblem p;
        p.alpha = a;
        p.beta = b;
        p.target_x = -std::arg(z);
        p.target_y = -std::arg(u);
        p.epsilon = epsilon / 2.0;
        p.n_max = std::max<std::int64_t>(1, m_max);
        p.method = method;
        if (best) {
            // Nothing beyond the current best can win the |n| tie-break.
            const std::int64_t limit = (abs64(best->n) + 1) / scale + 1;
            p.n_max = std::min(p.n_max, limit);
        }
        try {
            const auto sol = solve(p);
            evaluations += sol.evaluations;
            const std::int64_t n = scale * sol.n + offset;
            if (abs64(n) > n_max) continue;
            const Complex value = rho_hat(alpha, beta, n);
            const double err = std::abs(value - w);
            if (err >= epsilon) continue;
            const bool better = !best || abs64(n) < abs64(best->n) || (abs64(n) == abs64(best->n) && n > best->n);
            if (better) best = HitResult{n, value, err, 0};
        } catch (const NotFound& nf) {
            const std::int64_t n = scale * nf.best_n() + offset;
            const double err = std::abs(rho_hat(alpha, beta, n) - w);
            if (err < best_fail_err) {
                best_fail_err = err;
                best_fail_n = n;
            }
        }
    }
    if (!best) {
        throw NotFound("hit_target: no n of parity " + std::string(to_string(parity)) + " within n_max", best_fail_n,
                       best_fail_err);
    }
    best->evaluations = evaluations;
    return *best;
}

}  // namespace natspec
