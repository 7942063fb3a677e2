#pragma once

#include <cstdint>
#include <random>

namespace elkies {

/// Default seed for every sampling run.
inline constexpr std::uint64_t kDefaultSeed = 0x5EA5EED5ULL;

/// Seeded generator with platform-independent bounded draws. The standard
/// distributions are implementation-defined, so they are not used for
/// anything that ends up in an output file.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [0, bound), bound >= 1, by rejection.
    std::uint64_t below(std::uint64_t bound);

    /// Uniform integer in [lo, hi].
    std::uint64_t between(std::uint64_t lo, std::uint64_t hi);

private:
    std::mt19937_64 engine_;
};

/// Stateless seed derivation for per-item streams (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t key) noexcept;

}  // namespace elkies
