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

#include "natspec/hausdorff.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "natspec/errors.hpp"
#include "natspec/kernels.hpp"
#include "natspec/parallel.hpp"

namespace natspec {

NearestPointIndex::NearestPointIndex(std::span<const std::complex<double>> all) {
    if (all.empty()) throw InvalidArgument("nearest-point index over an empty cloud");
    // Exact duplicates (common: character images are often constant along
    // some torsion class) would pile up in one bucket; keep the first index.
    std::vector<std::size_t> order(all.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (all[a].real() != all[b].real()) return all[a].real() < all[b].real();
        if (all[a].imag() != all[b].imag()) return all[a].imag() < all[b].imag();
        return a < b;
    });
    std::vector<std::size_t> keep;
    keep.reserve(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        if (i == 0 || all[order[i]] != all[order[i - 1]]) keep.push_back(order[i]);
    }
    std::sort(keep.begin(), keep.end());
    std::vector<std::complex<double>> cloud(keep.size());
    for (std::size_t i = 0; i < keep.size(); ++i) cloud[i] = all[keep[i]];
    double x1 = -std::numeric_limits<double>::infinity(), y1 = x1;
    x0_ = std::numeric_limits<double>::infinity();
    y0_ = x0_;
    for (const auto& p : cloud) {
        x0_ = std::min(x0_, p.real());
        y0_ = std::min(y0_, p.imag());
        x1 = std::max(x1, p.real());
        y1 = std::max(y1, p.imag());
    }
    const double w = x1 - x0_, h = y1 - y0_;
    const double target_cells = std::max(1.0, static_cast<double>(cloud.size()) / 2.0);
    // The second term keeps nearly collinear clouds from producing a huge
    // grid; together they bound the cell count by about target_cells.
    cell_ = std::max(std::sqrt(w * h / target_cells), std::max(w, h) / target_cells);
    if (!(cell_ > 0.0)) cell_ = 1.0;
    nx_ = static_cast<std::size_t>(std::floor(w / cell_)) + 1;
    ny_ = static_cast<std::size_t>(std::floor(h / cell_)) + 1;

    auto cell_of = [&](const std::complex<double>& p) {
        const auto cx = std::min(nx_ - 1, static_cast<std::size_t>((p.real() - x0_) / cell_));
        const auto cy = std::min(ny_ - 1, static_cast<std::size_t>((p.imag() - y0_) / cell_));
        return cy * nx_ + cx;
    };
    start_.assign(nx_ * ny_ + 1, 0);
    for (const auto& p : cloud) ++start_[cell_of(p) + 1];
    for (std::size_t c = 0; c < nx_ * ny_; ++c) start_[c + 1] += start_[c];
    std::vector<std::size_t> fill(start_.begin(), start_.end() - 1);
    xs_.resize(cloud.size());
    ys_.resize(cloud.size());
    ids_.resize(cloud.size());
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const auto slot = fill[cell_of(cloud[i])]++;
        xs_[slot] = cloud[i].real();
        ys_[slot] = cloud[i].imag();
        ids_[slot] = keep[i];
    }
}

namespace {

template <class Visit>
void ring_search(std::complex<double> q, double x0, double y0, double cell, std::size_t nx, std::size_t ny,
                 const double& best, Visit&& visit) {
    auto clampi = [](double v, std::size_t n) {
        if (!(v > 0.0)) return std::ptrdiff_t{0};
        return static_cast<std::ptrdiff_t>(std::min<double>(v, static_cast<double>(n - 1)));
    };
    const std::ptrdiff_t cx = clampi(std::floor((q.real() - x0) / cell), nx);
    const std::ptrdiff_t cy = clampi(std::floor((q.imag() - y0) / cell), ny);
    const auto snx = static_cast<std::ptrdiff_t>(nx), sny = static_cast<std::ptrdiff_t>(ny);
    const std::ptrdiff_t rmax = std::max(snx, sny);
    for (std::ptrdiff_t r = 0; r <= rmax; ++r) {
        for (std::ptrdiff_t y = cy - r; y <= cy + r; ++y) {
            if (y < 0 || y >= sny) continue;
            const bool edge_row = (y == cy - r || y == cy + r);
            for (std::ptrdiff_t x = cx - r; x <= cx + r; x += (edge_row || r == 0) ? 1 : 2 * r) {
                if (x >= 0 && x < snx) visit(static_cast<std::size_t>(y) * nx + static_cast<std::size_t>(x));
                if (r == 0) break;
            }
        }
        // Cells in ring r+1 are at least r full cells away.
        const double reach = static_cast<double>(r) * cell;
        if (best < reach * reach) break;
    }
}

}  // namespace

NearestPointIndex::Hit NearestPointIndex::nearest(std::complex<double> q) const {
    Hit hit{0, std::numeric_limits<double>::infinity()};
    ring_search(q, x0_, y0_, cell_, nx_, ny_, hit.dist2, [&](std::size_t c) {
        for (std::size_t s = start_[c]; s < start_[c + 1]; ++s) {
            const double dx = xs_[s] - q.real(), dy = ys_[s] - q.imag();
            const double d = dx * dx + dy * dy;
            if (d < hit.dist2 || (d == hit.dist2 && ids_[s] < hit.index)) {
                hit.dist2 = d;
                hit.index = ids_[s];
            }
        }
    });
    return hit;
}

double NearestPointIndex::nearest_dist2(std::complex<double> q) const {
    const auto& k = kernels::active();
    double best = std::numeric_limits<double>::infinity();
    ring_search(q, x0_, y0_, cell_, nx_, ny_, best, [&](std::size_t c) {
        const std::size_t b = start_[c], e = start_[c + 1];
        if (b == e) return;
        const double d = k.min_dist2(q.real(), q.imag(), xs_.data() + b, ys_.data() + b, e - b);
        best = d < best ? d : best;
    });
    return best;
}

double directed_hausdorff(std::span<const std::complex<double>> from, std::span<const std::complex<double>> to) {
    if (from.empty() || to.empty()) throw InvalidArgument("hausdorff distance of an empty point set");
    const NearestPointIndex index(to);
    std::vector<double> d2(from.size());
    parallel_for(from.size(), [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) d2[i] = index.nearest_dist2(from[i]);
    });
    double worst = 0.0;
    for (const double d : d2) worst = std::max(worst, d);
    return std::sqrt(worst);
}

double hausdorff(std::span<const std::complex<double>> a, std::span<const std::complex<double>> b) {
    return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

}  // namespace natspec
