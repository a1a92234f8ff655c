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
#include <limits>

#include "natspec/kernels.hpp"

namespace natspec::kernels::scalar {

void complex_axpy(double ar, double ai, const double* u_re, const double* u_im, double* re, double* im,
                  std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = ar * u_re[i] - ai * u_im[i];
        const double xi = ar * u_im[i] + ai * u_re[i];
        re[i] += xr;
        im[i] += xi;
    }
}

ArgMax max_abs2(const double* re, const double* im, std::size_t n) {
    ArgMax best;
    for (std::size_t i = 0; i < n; ++i) {
        const double v = re[i] * re[i] + im[i] * im[i];
        if (v > best.value) {
            best.value = v;
            best.index = i;
        }
    }
    return best;
}

double min_dist2(double qx, double qy, const double* xs, const double* ys, std::size_t n) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = xs[i] - qx;
        const double dy = ys[i] - qy;
        const double d = dx * dx + dy * dy;
        best = d < best ? d : best;
    }
    return best;
}

namespace {
inline bool passes(double n, double a, double b, double x, double y, double thr_a, double thr_b) {
    const double pa = n * a - x;
    const double pb = n * b - y;
    const double ra = std::fabs(pa - std::nearbyint(pa));
    const double rb = std::fabs(pb - std::nearbyint(pb));
    return ra < thr_a && rb < thr_b;
}
}  // namespace

ScanHit torus_scan(double a, double b, double x, double y, double thr_a, double thr_b, std::int64_t m_begin,
                   std::int64_t m_end) {
    for (std::int64_t m = m_begin; m < m_end; ++m) {
        const double n = static_cast<double>(m);
        const bool p = passes(n, a, b, x, y, thr_a, thr_b);
        const bool q = passes(-n, a, b, x, y, thr_a, thr_b);
        if (p || q) return ScanHit{m, p, q};
    }
    return {};
}

}  // namespace natspec::kernels::scalar
