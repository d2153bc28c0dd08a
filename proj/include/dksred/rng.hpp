#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace dksred {

/// Seeded generator used by every randomized routine.
///
/// Engine: std::mt19937_64 (its output sequence is fixed by the C++ standard),
/// seeded with a single 64-bit value. Bounded draws use rejection sampling on
/// the raw 64-bit output instead of std::uniform_int_distribution, whose
/// algorithm is implementation-defined. Together these make generator output a
/// pure function of the seed on every conforming toolchain.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, bound). bound must be positive.
    std::uint64_t below(std::uint64_t bound);

    /// Uniform in [lo, hi].
    std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }

    bool coin() { return (next() >> 63) != 0; }

    /// True with probability num/den.
    bool bernoulli(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

private:
    std::mt19937_64 engine_;
};

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// FNV-1a over the bytes of text.
std::uint64_t fnv1a64(std::string_view text);

/// Child seed for a labelled section: mix64(seed ^ fnv1a64(label)).
std::uint64_t derive_seed(std::uint64_t seed, std::string_view label);

}  // namespace dksred
