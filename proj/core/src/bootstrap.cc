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

#include "ddlab/bootstrap.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "ddlab/error.h"
#include "ddlab/random.h"

namespace ddlab {

double sorted_quantile(std::span<const double> sorted, double q) {
    if (sorted.empty()) {
        throw InvalidInput("sorted_quantile: empty input");
    }
    double pos = q * static_cast<double>(sorted.size() - 1);
    auto i = static_cast<std::size_t>(std::floor(pos));
    if (i + 1 >= sorted.size()) return sorted.back();
    double frac = pos - static_cast<double>(i);
    return sorted[i] + frac * (sorted[i + 1] - sorted[i]);
}

BootstrapResult bootstrap(std::span<const double> samples, int resamples, std::uint64_t seed) {
    if (samples.empty()) {
        throw InvalidInput("bootstrap: no samples");
    }
    if (resamples < 1) {
        throw InvalidInput("bootstrap: resamples must be >= 1");
    }
    const std::uint64_t n = samples.size();
    BootstrapResult r;
    double sum = 0;
    for (double x : samples) sum += x;
    r.sample_mean = sum / static_cast<double>(n);

    std::vector<double> means(static_cast<std::size_t>(resamples));
    for (int k = 0; k < resamples; ++k) {
        RandomStream rng{seed, stream_tag::kBootstrap, static_cast<std::uint64_t>(k)};
        double s = 0;
        for (std::uint64_t i = 0; i < n; ++i) s += samples[rng.below(n)];
        means[static_cast<std::size_t>(k)] = s / static_cast<double>(n);
    }
    double msum = 0;
    for (double m : means) msum += m;
    r.mean = msum / resamples;
    double ss = 0;
    for (double m : means) ss += (m - r.mean) * (m - r.mean);
    r.standard_error = resamples > 1 ? std::sqrt(ss / (resamples - 1)) : 0.0;
    std::sort(means.begin(), means.end());
    r.lo = sorted_quantile(means, 0.025);
    r.hi = sorted_quantile(means, 0.975);
    r.halfwidth = 0.5 * (r.hi - r.lo);
    return r;
}

}  // namespace ddlab
