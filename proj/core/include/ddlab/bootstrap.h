// Copyright 2026 The ddlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DDLAB_BOOTSTRAP_H
#define DDLAB_BOOTSTRAP_H

#include <cstdint>
#include <span>

namespace ddlab {

struct BootstrapResult {
    double mean = 0;         // mean of the bootstrap distribution
    double sample_mean = 0;
    double lo = 0;           // 2.5th percentile
    double hi = 0;           // 97.5th percentile
    double halfwidth = 0;    // (hi − lo)/2
    double standard_error = 0;  // SD of the bootstrap distribution
};

/// Percentile bootstrap of the mean. Resample r draws from its own stream
/// keyed by (seed, r), so the result depends only on the inputs. Throws
/// InvalidInput on empty input or resamples < 1.
BootstrapResult bootstrap(std::span<const double> samples, int resamples, std::uint64_t seed);

/// Linear-interpolation quantile of sorted data, q ∈ [0, 1].
double sorted_quantile(std::span<const double> sorted, double q);

}  // namespace ddlab

#endif
