// Copyright 2026 The hopfrep Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef HOPFREP_RNG_HPP
#define HOPFREP_RNG_HPP

#include <cstdint>
#include <cstdlib>
#include <random>
#include <string>
#include <string_view>

namespace hopfrep {

inline std::uint64_t fnv1a(std::string_view s, std::uint64_t h = 0xcbf29ce484222325ULL) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Seeded stream. Only raw engine output is used so results do not depend on
// the standard library's distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), eng_(seed) {}

    std::uint64_t seed() const { return seed_; }
    std::uint64_t next() { return eng_(); }

    // Uniform-ish integer in [lo, hi].
    long range(long lo, long hi) {
        auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<long>(next() % span);
    }

    // Independent stream for a named subtask.
    Rng fork(std::string_view tag) const { return Rng(fnv1a(tag, seed_ ^ 0x9e3779b97f4a7c15ULL)); }

private:
    std::uint64_t seed_;
    std::mt19937_64 eng_;
};

// HOPFREP_SEED overrides the given seed when set.
inline std::uint64_t resolve_seed(std::uint64_t fallback) {
    if (const char* s = std::getenv("HOPFREP_SEED")) {
        try {
            return std::stoull(s);
        } catch (...) {
        }
    }
    return fallback;
}

inline constexpr int kDefaultRandomTrials = 64;

}  // namespace hopfrep

#endif  // HOPFREP_RNG_HPP
