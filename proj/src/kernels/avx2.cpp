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

// Compiled with -mavx2 only; never called unless the CPU reports AVX2.

#include <immintrin.h>

#include <cmath>
#include <limits>

#include "natspec/kernels.hpp"

namespace natspec::kernels::avx2 {

void complex_axpy(double ar, double ai, const double* u_re, const double* u_im, double* re, double* im,
                  std::size_t n) {
    const __m256d var = _mm256_set1_pd(ar);
    const __m256d vai = _mm256_set1_pd(ai);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d ur = _mm256_loadu_pd(u_re + i);
        const __m256d ui = _mm256_loadu_pd(u_im + i);
        const __m256d xr = _mm256_sub_pd(_mm256_mul_pd(var, ur), _mm256_mul_pd(vai, ui));
        const __m256d xi = _mm256_add_pd(_mm256_mul_pd(var, ui), _mm256_mul_pd(vai, ur));
        _mm256_storeu_pd(re + i, _mm256_add_pd(_mm256_loadu_pd(re + i), xr));
        _mm256_storeu_pd(im + i, _mm256_add_pd(_mm256_loadu_pd(im + i), xi));
    }
    scalar::complex_axpy(ar, ai, u_re + i, u_im + i, re + i, im + i, n - i);
}

ArgMax max_abs2(const double* re, const double* im, std::size_t n) {
    if (n == 0) return {};
    __m256d vmax = _mm256_set1_pd(-1.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d r = _mm256_loadu_pd(re + i);
        const __m256d m = _mm256_loadu_pd(im + i);
        const __m256d v = _mm256_add_pd(_mm256_mul_pd(r, r), _mm256_mul_pd(m, m));
        vmax = _mm256_max_pd(vmax, v);
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, vmax);
    double best = lanes[0];
    for (int l = 1; l < 4; ++l) best = lanes[l] > best ? lanes[l] : best;
    for (std::size_t j = i; j < n; ++j) {
        const double v = re[j] * re[j] + im[j] * im[j];
        best = v > best ? v : best;
    }
    // First index attaining the maximum, matching the scalar tie-break.
    for (std::size_t j = 0; j < n; ++j) {
        if (re[j] * re[j] + im[j] * im[j] == best) return ArgMax{j, best};
    }
    return {};
}

double min_dist2(double qx, double qy, const double* xs, const double* ys, std::size_t n) {
    const __m256d vx = _mm256_set1_pd(qx);
    const __m256d vy = _mm256_set1_pd(qy);
    __m256d vmin = _mm256_set1_pd(std::numeric_limits<double>::infinity());
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(xs + i), vx);
        const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(ys + i), vy);
        vmin = _mm256_min_pd(vmin, _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy)));
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, vmin);
    double best = lanes[0];
    for (int l = 1; l < 4; ++l) best = lanes[l] < best ? lanes[l] : best;
    const double tail = scalar::min_dist2(qx, qy, xs + i, ys + i, n - i);
    return tail < best ? tail : best;
}

namespace {

inline __m256d wrap_abs(__m256d p) {
    const __m256d r = _mm256_sub_pd(p, _mm256_round_pd(p, _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC));
    return _mm256_andnot_pd(_mm256_set1_pd(-0.0), r);
}

}  // namespace

ScanHit torus_scan(double a, double b, double x, double y, double thr_a, double thr_b, std::int64_t m_begin,
                   std::int64_t m_end) {
    const __m256d va = _mm256_set1_pd(a);
    const __m256d vb = _mm256_set1_pd(b);
    const __m256d vx = _mm256_set1_pd(x);
    const __m256d vy = _mm256_set1_pd(y);
    const __m256d ta = _mm256_set1_pd(thr_a);
    const __m256d tb = _mm256_set1_pd(thr_b);
    const __m256d step = _mm256_set1_pd(4.0);
    const __m256d sign = _mm256_set1_pd(-0.0);

    std::int64_t m = m_begin;
    __m256d vn = _mm256_setr_pd(static_cast<double>(m), static_cast<double>(m + 1), static_cast<double>(m + 2),
                                static_cast<double>(m + 3));
    for (; m + 4 <= m_end; m += 4) {
        const __m256d neg = _mm256_xor_pd(vn, sign);
        const __m256d ok_p =
            _mm256_and_pd(_mm256_cmp_pd(wrap_abs(_mm256_sub_pd(_mm256_mul_pd(vn, va), vx)), ta, _CMP_LT_OQ),
                          _mm256_cmp_pd(wrap_abs(_mm256_sub_pd(_mm256_mul_pd(vn, vb), vy)), tb, _CMP_LT_OQ));
        const __m256d ok_m =
            _mm256_and_pd(_mm256_cmp_pd(wrap_abs(_mm256_sub_pd(_mm256_mul_pd(neg, va), vx)), ta, _CMP_LT_OQ),
                          _mm256_cmp_pd(wrap_abs(_mm256_sub_pd(_mm256_mul_pd(neg, vb), vy)), tb, _CMP_LT_OQ));
        const int mp = _mm256_movemask_pd(ok_p);
        const int mm = _mm256_movemask_pd(ok_m);
        if ((mp | mm) != 0) {
            const int lane = __builtin_ctz(static_cast<unsigned>(mp | mm));
            return ScanHit{m + lane, ((mp >> lane) & 1) != 0, ((mm >> lane) & 1) != 0};
        }
        vn = _mm256_add_pd(vn, step);
    }
    return scalar::torus_scan(a, b, x, y, thr_a, thr_b, m, m_end);
}

}  // namespace natspec::kernels::avx2
