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

#include <atomic>
#include <cstdlib>

#include "natspec/kernels.hpp"

namespace natspec::kernels {

namespace {

constexpr KernelTable kScalarTable{scalar::complex_axpy, scalar::max_abs2, scalar::min_dist2, scalar::torus_scan};

#if defined(NATSPEC_HAVE_AVX2)
constexpr KernelTable kAvx2Table{avx2::complex_axpy, avx2::max_abs2, avx2::min_dist2, avx2::torus_scan};
#endif

Isa initial_isa() {
    const char* force = std::getenv("NATSPEC_FORCE_SCALAR");
    if (force != nullptr && *force != '\0' && *force != '0') return Isa::Scalar;
    return detected_isa();
}

std::atomic<Isa>& current() {
    static std::atomic<Isa> isa{initial_isa()};
    return isa;
}

}  // namespace

std::string_view isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

Isa detected_isa() {
#if defined(NATSPEC_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    static const bool has_avx2 = __builtin_cpu_supports("avx2");
    if (has_avx2) return Isa::Avx2;
#endif
    return Isa::Scalar;
}

Isa active_isa() { return current().load(std::memory_order_relaxed); }

Isa set_active_isa(Isa isa) {
    if (isa == Isa::Avx2 && detected_isa() != Isa::Avx2) isa = Isa::Scalar;
    return current().exchange(isa);
}

const KernelTable& table(Isa isa) {
#if defined(NATSPEC_HAVE_AVX2)
    if (isa == Isa::Avx2 && detected_isa() == Isa::Avx2) return kAvx2Table;
#endif
    (void)isa;
    return kScalarTable;
}

}  // namespace natspec::kernels
