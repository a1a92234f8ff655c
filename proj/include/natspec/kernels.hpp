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

#pragma once

// Data-parallel inner loops. Every kernel has a scalar reference version and,
// when the build and the CPU allow it, an AVX2 version selected at runtime.
// Variants are required to return bit-identical results; the build disables
// floating-point contraction so both perform the same IEEE operations.

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace natspec::kernels {

enum class Isa { Scalar, Avx2 };

std::string_view isa_name(Isa isa);

/// Best ISA the running CPU supports (and the build compiled in).
Isa detected_isa();
/// ISA used by the dispatching entry points below. Starts as detected_isa()
/// unless NATSPEC_FORCE_SCALAR is set in the environment.
Isa active_isa();
/// Returns the previous ISA. Requesting Avx2 on an unsupported CPU selects Scalar.
Isa set_active_isa(Isa isa);

/// re[i] += ar*u_re[i] - ai*u_im[i];  im[i] += ar*u_im[i] + ai*u_re[i]
using ComplexAxpyFn = void (*)(double ar, double ai, const double* u_re, const double* u_im, double* re,
                               double* im, std::size_t n);

struct ArgMax {
    std::size_t index = 0;
    double value = -1.0;
};

/// First index maximizing re^2 + im^2 (n >= 1).
using MaxAbs2Fn = ArgMax (*)(const double* re, const double* im, std::size_t n);

/// min_i (xs[i]-qx)^2 + (ys[i]-qy)^2, or +inf when n == 0.
using MinDist2Fn = double (*)(double qx, double qy, const double* xs, const double* ys, std::size_t n);

struct ScanHit {
    std::int64_t m = -1;  ///< first magnitude with a hit, -1 if none
    bool plus = false;    ///< n = +m passed the prefilter
    bool minus = false;   ///< n = -m passed the prefilter
};

/// Searches m in [m_begin, m_end) for the first magnitude where n = +m or
/// n = -m has |wrap(n*a - x)| < thr_a and |wrap(n*b - y)| < thr_b, with wrap
/// the signed distance to the nearest integer (all quantities in turns).
using TorusScanFn = ScanHit (*)(double a, double b, double x, double y, double thr_a, double thr_b,
                                std::int64_t m_begin, std::int64_t m_end);

struct KernelTable {
    ComplexAxpyFn complex_axpy;
    MaxAbs2Fn max_abs2;
    MinDist2Fn min_dist2;
    TorusScanFn torus_scan;
};

const KernelTable& table(Isa isa);
inline const KernelTable& active() { return table(active_isa()); }

namespace scalar {
void complex_axpy(double ar, double ai, const double* u_re, const double* u_im, double* re, double* im,
                  std::size_t n);
ArgMax max_abs2(const double* re, const double* im, std::size_t n);
double min_dist2(double qx, double qy, const double* xs, const double* ys, std::size_t n);
ScanHit torus_scan(double a, double b, double x, double y, double thr_a, double thr_b, std::int64_t m_begin,
                   std::int64_t m_end);
}  // namespace scalar

#if defined(NATSPEC_HAVE_AVX2)
namespace avx2 {
void complex_axpy(double ar, double ai, const double* u_re, const double* u_im, double* re, double* im,
                  std::size_t n);
ArgMax max_abs2(const double* re, const double* im, std::size_t n);
double min_dist2(double qx, double qy, const double* xs, const double* ys, std::size_t n);
ScanHit torus_scan(double a, double b, double x, double y, double thr_a, double thr_b, std::int64_t m_begin,
                   std::int64_t m_end);
}  // namespace avx2
#endif

}  // namespace natspec::kernels
