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

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace natspec {

/// sup_{a in from} dist(a, to), exact over the finite clouds.
double directed_hausdorff(std::span<const std::complex<double>> from, std::span<const std::complex<double>> to);

/// max of both directed distances. Throws InvalidArgument on empty input.
double hausdorff(std::span<const std::complex<double>> a, std::span<const std::complex<double>> b);

/// Index of the nearest point of `cloud` to each query (first index on ties).
class NearestPointIndex {
public:
    explicit NearestPointIndex(std::span<const std::complex<double>> cloud);

    struct Hit {
        std::size_t index = 0;
        double dist2 = 0.0;
    };
    Hit nearest(std::complex<double> q) const;
    double nearest_dist2(std::complex<double> q) const;

private:
    double x0_ = 0.0, y0_ = 0.0, cell_ = 1.0;
    std::size_t nx_ = 1, ny_ = 1;
    std::vector<std::size_t> start_;  // CSR offsets per cell
    std::vector<double> xs_, ys_;
    std::vector<std::size_t> ids_;
};

}  // namespace natspec
