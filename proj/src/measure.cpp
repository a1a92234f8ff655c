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

#include "natspec/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "natspec/errors.hpp"

namespace natspec {

namespace {

inline Complex cmul(Complex a, Complex b) {
    return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

inline bool is_dropped(Complex w, double drop_tol) {
    if (drop_tol <= 0.0) return w.real() == 0.0 && w.imag() == 0.0;
    return std::abs(w) <= drop_tol;
}

std::int64_t to_int64(const boost::multiprecision::cpp_int& v) {
    if (v > std::numeric_limits<std::int64_t>::max() / 4 || v < std::numeric_limits<std::int64_t>::min() / 4) {
        throw CoefficientOverflow("torsion denominator too large for lattice coordinates");
    }
    return static_cast<std::int64_t>(v);
}

std::int64_t checked_lcm(std::int64_t a, std::int64_t b) {
    const std::int64_t g = std::gcd(a, b);
    return detail::checked_mul(a / g, b);
}

void require_same_basis(const GeneratorBasis& a, const GeneratorBasis& b, const char* what) {
    if (!(a == b)) throw BasisMismatch(std::string(what) + ": measures are over different generator bases");
}

}  // namespace

// --- DiscreteMeasure ----------------------------------------------------------

DiscreteMeasure::DiscreteMeasure(GeneratorBasis basis) : basis_(std::move(basis)) {}

DiscreteMeasure DiscreteMeasure::dirac(const GeneratorBasis& basis, const Angle& at, Complex weight) {
    DiscreteMeasure m(basis);
    m.add(at, weight);
    return m;
}

void DiscreteMeasure::add(const Angle& at, Complex weight) {
    if (at.rank() != basis_.size()) throw BasisMismatch("atom position rank differs from the measure basis");
    auto it = atoms_.find(at);
    if (it == atoms_.end()) {
        if (!is_dropped(weight, 0.0)) atoms_.emplace(at, weight);
        return;
    }
    it->second += weight;
    if (is_dropped(it->second, 0.0)) atoms_.erase(it);
}

Complex DiscreteMeasure::weight(const Angle& at) const {
    auto it = atoms_.find(at);
    return it == atoms_.end() ? Complex{} : it->second;
}

DiscreteMeasure DiscreteMeasure::rebased(const GeneratorBasis& extended) const {
    if (!extended.extends(basis_)) throw BasisMismatch("rebased: target basis does not extend the measure basis");
    DiscreteMeasure out(extended);
    for (const auto& [at, w] : atoms_) out.atoms_.emplace(at.extended(extended.size()), w);
    return out;
}

std::vector<std::size_t> DiscreteMeasure::used_generators() const {
    std::vector<bool> used(basis_.size(), false);
    for (const auto& [at, w] : atoms_) {
        for (std::size_t i = 0; i < at.rank(); ++i) used[i] = used[i] || at.coeffs()[i] != 0;
    }
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < used.size(); ++i) {
        if (used[i]) out.push_back(i);
    }
    return out;
}

DiscreteMeasure& DiscreteMeasure::operator+=(const DiscreteMeasure& other) {
    require_same_basis(basis_, other.basis_, "add");
    for (const auto& [at, w] : other.atoms_) add(at, w);
    return *this;
}

DiscreteMeasure& DiscreteMeasure::operator*=(Complex c) {
    for (auto it = atoms_.begin(); it != atoms_.end();) {
        it->second = cmul(c, it->second);
        it = is_dropped(it->second, 0.0) ? atoms_.erase(it) : std::next(it);
    }
    return *this;
}

DiscreteMeasure operator+(DiscreteMeasure a, const DiscreteMeasure& b) { return a += b; }
DiscreteMeasure operator*(Complex c, DiscreteMeasure a) { return a *= c; }

// --- TrigPolyDensity ----------------------------------------------------------

std::int64_t TrigPolyDensity::degree() const {
    if (coeffs_.empty()) return 0;
    return std::max(std::abs(coeffs_.begin()->first), std::abs(coeffs_.rbegin()->first));
}

void TrigPolyDensity::add(std::int64_t k, Complex c) {
    auto it = coeffs_.find(k);
    if (it == coeffs_.end()) {
        if (!is_dropped(c, 0.0)) coeffs_.emplace(k, c);
        return;
    }
    it->second += c;
    if (is_dropped(it->second, 0.0)) coeffs_.erase(it);
}

Complex TrigPolyDensity::coeff(std::int64_t k) const {
    auto it = coeffs_.find(k);
    return it == coeffs_.end() ? Complex{} : it->second;
}

Complex TrigPolyDensity::evaluate(double t) const {
    Complex s{};
    for (const auto& [k, c] : coeffs_) s += cmul(c, std::polar(1.0, static_cast<double>(k) * t));
    return s;
}

TrigPolyDensity& TrigPolyDensity::operator+=(const TrigPolyDensity& other) {
    for (const auto& [k, c] : other.coeffs_) add(k, c);
    return *this;
}

TrigPolyDensity& TrigPolyDensity::operator*=(Complex c) {
    for (auto it = coeffs_.begin(); it != coeffs_.end();) {
        it->second = cmul(c, it->second);
        it = is_dropped(it->second, 0.0) ? coeffs_.erase(it) : std::next(it);
    }
    return *this;
}

// --- MixedMeasure -------------------------------------------------------------

MixedMeasure& MixedMeasure::operator+=(const MixedMeasure& other) {
    disc += other.disc;
    ac += other.ac;
    return *this;
}

MixedMeasure& MixedMeasure::operator*=(Complex c) {
    disc *= c;
    ac *= c;
    return *this;
}

MixedMeasure operator+(MixedMeasure a, const MixedMeasure& b) { return a += b; }
MixedMeasure operator-(MixedMeasure a, const MixedMeasure& b) { return a += (-1.0) * b; }
MixedMeasure operator*(Complex c, MixedMeasure a) { return a *= c; }

// --- Fixed measures -----------------------------------------------------------

DiscreteMeasure make_theta0(const GeneratorBasis& basis) {
    DiscreteMeasure m(basis);
    m.add(Angle::zero(basis.size()), 0.5);
    m.add(Angle::pi(basis.size()), 0.5);
    return m;
}

DiscreteMeasure make_theta1(const GeneratorBasis& basis) {
    DiscreteMeasure m(basis);
    m.add(Angle::zero(basis.size()), 0.5);
    m.add(Angle::pi(basis.size()), -0.5);
    return m;
}

DiscreteMeasure make_rho(const GeneratorBasis& basis, const Angle& alpha, const Angle& beta) {
    auto is_generator = [&](const Angle& a) {
        if (a.rank() != basis.size() || a.turns() != 0) return false;
        int ones = 0;
        for (auto c : a.coeffs()) {
            if (c == 1) {
                ++ones;
            } else if (c != 0) {
                return false;
            }
        }
        return ones == 1;
    };
    if (!is_generator(alpha) || !is_generator(beta)) {
        throw InvalidArgument("make_rho: alpha and beta must be generators of the basis");
    }
    if (alpha == beta) throw InvalidArgument("make_rho: alpha and beta must be distinct");
    DiscreteMeasure m(basis);
    m.add(alpha, 0.5);
    m.add(beta, 0.5);
    return m;
}

// --- Lattice coordinates ------------------------------------------------------

LatticeForm to_lattice(const DiscreteMeasure& mu, std::int64_t order_multiple) {
    LatticeForm f;
    f.rank = mu.basis().size();
    std::int64_t order = std::max<std::int64_t>(1, order_multiple);
    for (const auto& [at, w] : mu.atoms()) {
        order = checked_lcm(order, to_int64(boost::multiprecision::denominator(at.turns())));
    }
    f.order = order;
    f.torsion.reserve(mu.size());
    f.coeffs.reserve(mu.size() * f.rank);
    f.weights.reserve(mu.size());
    for (const auto& [at, w] : mu.atoms()) {
        const auto num = to_int64(boost::multiprecision::numerator(at.turns()));
        const auto den = to_int64(boost::multiprecision::denominator(at.turns()));
        f.torsion.push_back(detail::checked_mul(num, order / den));
        f.coeffs.insert(f.coeffs.end(), at.coeffs().begin(), at.coeffs().end());
        f.weights.push_back(w);
    }
    return f;
}

DiscreteMeasure from_lattice(const LatticeForm& f, const GeneratorBasis& basis) {
    if (f.rank != basis.size()) throw BasisMismatch("from_lattice: rank differs from basis size");
    DiscreteMeasure m(basis);
    for (std::size_t j = 0; j < f.size(); ++j) {
        auto c = f.coeffs_of(j);
        m.add(Angle(Rational(f.torsion[j], f.order), std::vector<std::int64_t>(c.begin(), c.end())), f.weights[j]);
    }
    return m;
}

LatticeForm with_order(const LatticeForm& f, std::int64_t new_order) {
    if (new_order % f.order != 0) throw InvalidArgument("with_order: new order must be a multiple");
    LatticeForm g = f;
    const std::int64_t k = new_order / f.order;
    g.order = new_order;
    for (auto& m : g.torsion) m = detail::checked_mul(m, k);
    return g;
}

LatticeForm convolve(const LatticeForm& a_in, const LatticeForm& b_in, const ConvolveOptions& opts) {
    if (a_in.rank != b_in.rank) throw BasisMismatch("convolve: lattice ranks differ");
    const std::int64_t order = checked_lcm(a_in.order, b_in.order);
    const LatticeForm a = a_in.order == order ? a_in : with_order(a_in, order);
    const LatticeForm b = b_in.order == order ? b_in : with_order(b_in, order);
    const std::size_t rank = a.rank;

    LatticeForm out;
    out.order = order;
    out.rank = rank;
    if (a.size() == 0 || b.size() == 0) return out;

    // Box of the output support: per generator [lo, lo + span).
    std::vector<std::int64_t> lo_a(rank), lo_b(rank), lo(rank), span(rank);
    bool fits = true;
    __int128 cells = order;
    for (std::size_t i = 0; i < rank; ++i) {
        std::int64_t amin = std::numeric_limits<std::int64_t>::max(), amax = std::numeric_limits<std::int64_t>::min();
        std::int64_t bmin = amin, bmax = amax;
        for (std::size_t j = 0; j < a.size(); ++j) {
            amin = std::min(amin, a.coeffs[j * rank + i]);
            amax = std::max(amax, a.coeffs[j * rank + i]);
        }
        for (std::size_t j = 0; j < b.size(); ++j) {
            bmin = std::min(bmin, b.coeffs[j * rank + i]);
            bmax = std::max(bmax, b.coeffs[j * rank + i]);
        }
        lo_a[i] = amin;
        lo_b[i] = bmin;
        lo[i] = detail::checked_add(amin, bmin);
        const std::int64_t hi = detail::checked_add(amax, bmax);
        span[i] = detail::checked_add(detail::checked_add(hi, -lo[i]), 1);
        cells *= span[i];
        if (cells > (static_cast<__int128>(1) << 62)) fits = false;
    }
    if (!fits) throw CoefficientOverflow("convolve: output support box too large for a 64-bit key");

    std::vector<std::uint64_t> stride(rank);
    std::uint64_t s = 1;
    for (std::size_t i = 0; i < rank; ++i) {
        stride[i] = s;
        s *= static_cast<std::uint64_t>(span[i]);
    }
    auto linear = [&](const LatticeForm& f, const std::vector<std::int64_t>& base, std::size_t j) {
        std::uint64_t key = 0;
        for (std::size_t i = 0; i < rank; ++i) {
            key += static_cast<std::uint64_t>(f.coeffs[j * rank + i] - base[i]) * stride[i];
        }
        return key;
    };
    std::vector<std::uint64_t> lin_a(a.size()), lin_b(b.size());
    for (std::size_t j = 0; j < a.size(); ++j) lin_a[j] = linear(a, lo_a, j);
    for (std::size_t j = 0; j < b.size(); ++j) lin_b[j] = linear(b, lo_b, j);

    const auto L = static_cast<std::uint64_t>(order);
    auto key_of = [&](std::size_t i, std::size_t j) {
        std::uint64_t t = static_cast<std::uint64_t>(a.torsion[i] + b.torsion[j]);
        if (t >= L) t -= L;
        return t + L * (lin_a[i] + lin_b[j]);
    };

    auto emit = [&](std::uint64_t key, Complex w) {
        if (is_dropped(w, opts.drop_tol)) return;
        out.torsion.push_back(static_cast<std::int64_t>(key % L));
        std::uint64_t lin = key / L;
        for (std::size_t i = 0; i < rank; ++i) {
            const auto sp = static_cast<std::uint64_t>(span[i]);
            out.coeffs.push_back(static_cast<std::int64_t>(lin % sp) + lo[i]);
            lin /= sp;
        }
        out.weights.push_back(w);
    };

    const auto pairs = static_cast<__int128>(a.size()) * static_cast<__int128>(b.size());
    constexpr __int128 kDenseLimit = 1 << 22;
    if (cells <= kDenseLimit && cells <= 16 * pairs + 1024) {
        std::vector<Complex> acc(static_cast<std::size_t>(cells));
        std::vector<bool> touched(static_cast<std::size_t>(cells), false);
        for (std::size_t i = 0; i < a.size(); ++i) {
            for (std::size_t j = 0; j < b.size(); ++j) {
                const auto k = key_of(i, j);
                acc[k] += cmul(a.weights[i], b.weights[j]);
                touched[k] = true;
            }
        }
        for (std::size_t k = 0; k < acc.size(); ++k) {
            if (touched[k]) emit(k, acc[k]);
        }
        return out;
    }

    // Sparse path: same (i, j) accumulation order per key as the dense path.
    std::vector<std::pair<std::uint64_t, Complex>> terms;
    terms.reserve(static_cast<std::size_t>(pairs));
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) terms.emplace_back(key_of(i, j), cmul(a.weights[i], b.weights[j]));
    }
    std::stable_sort(terms.begin(), terms.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    for (std::size_t p = 0; p < terms.size();) {
        Complex acc{};
        const auto key = terms[p].first;
        for (; p < terms.size() && terms[p].first == key; ++p) acc += terms[p].second;
        emit(key, acc);
    }
    return out;
}

// --- Convolution ----------------------------------------------------------------

DiscreteMeasure convolve(const DiscreteMeasure& a, const DiscreteMeasure& b, const ConvolveOptions& opts) {
    require_same_basis(a.basis(), b.basis(), "convolve");
    return from_lattice(convolve(to_lattice(a), to_lattice(b), opts), a.basis());
}

MixedMeasure convolve(const MixedMeasure& a, const MixedMeasure& b, const ConvolveOptions& opts) {
    require_same_basis(a.basis(), b.basis(), "convolve");
    MixedMeasure out(convolve(a.disc, b.disc, opts));
    if (a.ac.empty() && b.ac.empty()) return out;

    const FourierEvaluator fa(MixedMeasure(a.disc));
    const FourierEvaluator fb(MixedMeasure(b.disc));
    TrigPolyDensity ac;
    std::vector<std::int64_t> ks;
    for (const auto& [k, c] : a.ac.coeffs()) ks.push_back(k);
    for (const auto& [k, c] : b.ac.coeffs()) ks.push_back(k);
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
    for (const auto k : ks) {
        const Complex ca = a.ac.coeff(k);
        const Complex cb = b.ac.coeff(k);
        Complex sum{};
        if (ca != Complex{}) sum += cmul(ca, fb.discrete(k));
        if (cb != Complex{}) sum += cmul(fa.discrete(k), cb);
        if (ca != Complex{} && cb != Complex{}) sum += cmul(ca, cb);
        if (!is_dropped(sum, opts.drop_tol)) ac.add(k, sum);
    }
    out.ac = std::move(ac);
    return out;
}

MixedMeasure convolve_power(const MixedMeasure& mu, int k, const ConvolutionBudget& budget,
                            const ConvolveOptions& opts) {
    if (k < 0) throw InvalidArgument("convolve_power: k must be >= 0");
    MixedMeasure p = mu;
    for (int i = 1; i <= k; ++i) {
        const auto pairs = static_cast<double>(p.disc.size()) * static_cast<double>(p.disc.size());
        if (pairs > static_cast<double>(budget.max_pair_products)) {
            throw BudgetExceeded("convolve_power: pair-product budget exceeded at power 2^" + std::to_string(i), i - 1);
        }
        MixedMeasure next = convolve(p, p, opts);
        if (next.disc.size() > budget.max_atoms || next.ac.degree() > budget.max_degree) {
            throw BudgetExceeded("convolve_power: support budget exceeded at power 2^" + std::to_string(i), i - 1);
        }
        p = std::move(next);
    }
    return p;
}

// --- Norms ----------------------------------------------------------------------

double tv_norm(const DiscreteMeasure& mu) {
    double s = 0.0;
    for (const auto& [at, w] : mu.atoms()) s += std::abs(w);
    return s;
}

NormEstimate l1_norm(const TrigPolyDensity& f) {
    if (f.empty()) return {};
    // Trapezoid rule on the periodic |f| at M and 2M points, then one
    // Richardson step. |f| has kinks where f vanishes, so the rule is O(h^2).
    const std::int64_t degree = f.degree();
    const std::size_t m = static_cast<std::size_t>(std::max<std::int64_t>(4096, 64 * degree));
    const std::size_t m2 = 2 * m;
    std::vector<Complex> table(m2);
    for (std::size_t j = 0; j < m2; ++j) {
        table[j] = std::polar(1.0, kTwoPi * static_cast<double>(j) / static_cast<double>(m2));
    }
    std::vector<Complex> values(m2);
    for (const auto& [k, c] : f.coeffs()) {
        const auto step = static_cast<std::size_t>(((k % static_cast<std::int64_t>(m2)) + static_cast<std::int64_t>(m2)) %
                                                   static_cast<std::int64_t>(m2));
        std::size_t idx = 0;
        for (std::size_t j = 0; j < m2; ++j) {
            values[j] += cmul(c, table[idx]);
            idx += step;
            if (idx >= m2) idx -= m2;
        }
    }
    double coarse = 0.0, fine_odd = 0.0;
    for (std::size_t j = 0; j < m2; j += 2) coarse += std::abs(values[j]);
    for (std::size_t j = 1; j < m2; j += 2) fine_odd += std::abs(values[j]);
    const double i_m = coarse / static_cast<double>(m);
    const double i_2m = (coarse + fine_odd) / static_cast<double>(m2);
    const double extrapolated = i_2m + (i_2m - i_m) / 3.0;
    const double rounding = 64.0 * std::numeric_limits<double>::epsilon() * std::abs(i_2m) * std::log2(static_cast<double>(m2));
    return {extrapolated, std::abs(i_2m - i_m) + rounding};
}

NormEstimate tv_norm(const MixedMeasure& mu) {
    const NormEstimate ac = l1_norm(mu.ac);
    return {tv_norm(mu.disc) + ac.value, ac.error};
}

// --- Fourier-Stieltjes coefficients -----------------------------------------------

Complex root_of_unity(std::int64_t r, std::int64_t order) {
    r %= order;
    if (r < 0) r += order;
    if ((4 * r) % order == 0) {
        switch ((4 * r) / order) {
            case 0: return {1.0, 0.0};
            case 1: return {0.0, -1.0};
            case 2: return {-1.0, 0.0};
            default: return {0.0, 1.0};
        }
    }
    return std::polar(1.0, -kTwoPi * static_cast<double>(r) / static_cast<double>(order));
}

FourierEvaluator::FourierEvaluator(const MixedMeasure& mu) : FourierEvaluator(to_lattice(mu.disc), mu.basis(), mu.ac) {}

FourierEvaluator::FourierEvaluator(const LatticeForm& f, const GeneratorBasis& basis, TrigPolyDensity ac)
    : ac_(std::move(ac)) {
    if (f.rank != basis.size()) throw BasisMismatch("FourierEvaluator: rank differs from basis size");
    torsion_order_ = f.order;
    torsion_ = f.torsion;
    weights_ = f.weights;
    free_phase_.resize(f.size());
    for (std::size_t j = 0; j < f.size(); ++j) {
        double phase = 0.0;
        for (std::size_t i = 0; i < f.rank; ++i) {
            phase += static_cast<double>(f.coeffs[j * f.rank + i]) * basis[i].value;
        }
        free_phase_[j] = phase;
    }
    roots_.resize(static_cast<std::size_t>(torsion_order_));
    for (std::int64_t r = 0; r < torsion_order_; ++r) roots_[static_cast<std::size_t>(r)] = root_of_unity(r, torsion_order_);
}

Complex FourierEvaluator::discrete(std::int64_t n) const {
    const std::int64_t order = torsion_order_;
    std::int64_t nn = n % order;
    if (nn < 0) nn += order;
    Complex sum{};
    for (std::size_t j = 0; j < weights_.size(); ++j) {
        const auto r = static_cast<std::int64_t>((static_cast<__int128>(nn) * torsion_[j]) % order);
        double c = 1.0, s = 0.0;
        if (free_phase_[j] != 0.0) {
            const double phase = -static_cast<double>(n) * free_phase_[j];
            c = std::cos(phase);
            s = std::sin(phase);
        }
        // Quarter-turn torsion factors are applied as exact rotations.
        Complex p;
        if ((4 * r) % order == 0) {
            switch ((4 * r) / order) {
                case 0: p = {c, s}; break;
                case 1: p = {s, -c}; break;
                case 2: p = {-c, -s}; break;
                default: p = {-s, c}; break;
            }
        } else {
            p = cmul(roots_[static_cast<std::size_t>(r)], Complex{c, s});
        }
        sum += cmul(weights_[j], p);
    }
    return sum;
}

Complex FourierEvaluator::operator()(std::int64_t n) const { return discrete(n) + ac_.coeff(n); }

Complex fourier_coefficient(const MixedMeasure& mu, std::int64_t n) { return FourierEvaluator(mu)(n); }

std::pair<MixedMeasure, MixedMeasure> parity_projections(const MixedMeasure& mu) {
    const MixedMeasure t0(make_theta0(mu.basis()));
    const MixedMeasure t1(make_theta1(mu.basis()));
    return {convolve(mu, t0), convolve(mu, t1)};
}

}  // namespace natspec
