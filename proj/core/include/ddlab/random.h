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

#ifndef DDLAB_RANDOM_H
#define DDLAB_RANDOM_H

#include <array>
#include <cstdint>
#include <initializer_list>
#include <limits>

namespace ddlab {

/// Deterministic random stream (xoshiro256**).
///
/// Streams are addressed by a key tuple such as (master seed, purpose tag,
/// run index, trajectory index). The key words are folded through SplitMix64
/// into the 256-bit state, so stream k of seed s is the same no matter which
/// other streams were drawn first or on which thread. This is what lets sweep
/// cells and bootstrap resamples run in any order and still reproduce.
///
/// Satisfies UniformRandomBitGenerator, so it can drive <random>
/// distributions; the helpers below are preferred where bit-portability
/// across standard libraries matters.
class RandomStream {
   public:
    using result_type = std::uint64_t;

    explicit RandomStream(std::uint64_t seed = 0);
    RandomStream(std::initializer_list<std::uint64_t> key);

    static constexpr result_type min() {
        return 0;
    }
    static constexpr result_type max() {
        return std::numeric_limits<result_type>::max();
    }
    result_type operator()();

    /// Uniform on [0, 1) with 53 random bits.
    double uniform();
    /// Uniform on [lo, hi).
    double uniform(double lo, double hi);
    /// Standard normal (Box-Muller, cached pair).
    double normal();
    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n);
    /// Binomial(n, p) sample.
    std::uint64_t binomial(std::uint64_t n, double p);

    /// Sub-stream keyed under this stream's origin key plus `index`.
    RandomStream child(std::uint64_t index) const;

   private:
    std::array<std::uint64_t, 4> state_{};
    std::uint64_t origin_ = 0;
    double spare_normal_ = 0;
    bool has_spare_ = false;
};

/// Purpose tags mixed into stream keys.
namespace stream_tag {
inline constexpr std::uint64_t kHaar = 0x4841415200000000ULL;
inline constexpr std::uint64_t kTrajectory = 0x5452414A00000000ULL;
inline constexpr std::uint64_t kShots = 0x53484F5400000000ULL;
inline constexpr std::uint64_t kBootstrap = 0x424F4F5400000000ULL;
inline constexpr std::uint64_t kResample = 0x5245534D00000000ULL;
inline constexpr std::uint64_t kCoupling = 0x434F555000000000ULL;
inline constexpr std::uint64_t kBath = 0x4241544800000000ULL;
}  // namespace stream_tag

}  // namespace ddlab

#endif
