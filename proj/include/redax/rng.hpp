/* Copyright 2026 The redax Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
 */

#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <utility>

namespace redax {

/// Pipeline stages that draw randomness. Each owns an independent stream so that a change
/// in one stage's draw count never shifts another stage's draws.
enum class Stream : std::uint32_t {
    Entropy = 1,
    Shuffle = 2,
    Mapping = 3,
    Padding = 4,
    DummyCsb = 5,
    Randomize = 6,
    Cpi = 7,
};

/// mt19937 seeded through seed_seq{θ, stream}. Both are fully specified by the standard,
/// so the draw sequence is identical on every conforming platform.
class Rng {
public:
    Rng(std::uint32_t seed, Stream stream) {
        std::seed_seq seq{seed, static_cast<std::uint32_t>(stream)};
        engine_.seed(seq);
    }

    std::uint32_t next_u32() { return static_cast<std::uint32_t>(engine_()); }
    /// next_u32() % n; n must be positive.
    std::uint32_t below(std::uint32_t n) { return next_u32() % n; }
    /// The is_even(random(θ)) guard of the redaction loop.
    bool coin() { return (next_u32() & 1u) == 0; }
    std::uint64_t next_u64() {
        const std::uint64_t hi = next_u32();
        return (hi << 32) | next_u32();
    }

    /// Fisher-Yates: i from n-1 down to 1 swaps with j = below(i + 1).
    template <class T>
    void shuffle(std::span<T> items) {
        for (std::size_t i = items.size(); i-- > 1;) {
            const std::size_t j = below(static_cast<std::uint32_t>(i + 1));
            std::swap(items[i], items[j]);
        }
    }

private:
    std::mt19937 engine_;
};

/// splitmix64 finalizer; used to derive stimulus words from (seed, name) pairs.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

/// FNV-1a; stable across platforms, unlike std::hash.
inline std::uint64_t hash_name(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

} // namespace redax
