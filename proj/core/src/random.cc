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

#include "ddlab/random.h"

#include <cmath>
#include <numbers>
#include <random>

namespace ddlab {

namespace {

std::uint64_t splitmix64(std::uint64_t &x) {
    std::uint64_t z = (x += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

std::uint64_t fold_key(std::initializer_list<std::uint64_t> key) {
    std::uint64_t acc = 0x243F6A8885A308D3ULL;
    for (std::uint64_t word : key) {
        std::uint64_t mix = acc ^ word;
        acc = splitmix64(mix);
    }
    return acc;
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed) : RandomStream({seed}) {
}

RandomStream::RandomStream(std::initializer_list<std::uint64_t> key) : origin_(fold_key(key)) {
    std::uint64_t x = origin_;
    for (auto &s : state_) {
        s = splitmix64(x);
    }
}

RandomStream::result_type RandomStream::operator()() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double RandomStream::uniform() {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

double RandomStream::uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform();
}

double RandomStream::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_normal_;
    }
    double u1 = 0;
    do {
        u1 = uniform();
    } while (u1 <= 0);
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * std::numbers::pi * u2;
    spare_normal_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
}

std::uint64_t RandomStream::below(std::uint64_t n) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>((*this)()) * n) >> 64);
}

std::uint64_t RandomStream::binomial(std::uint64_t n, double p) {
    if (p <= 0 || n == 0) {
        return 0;
    }
    if (p >= 1) {
        return n;
    }
    std::binomial_distribution<std::uint64_t> dist(n, p);
    return dist(*this);
}

RandomStream RandomStream::child(std::uint64_t index) const {
    return RandomStream({origin_, index});
}

}  // namespace ddlab
