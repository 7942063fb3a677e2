#pragma once

// Verification sweeps behind `elkies verify <target>`. Each returns a JSON
// report with at least {target, passed, checks, failures}.

#include "elkies/io.hpp"

#include <cstdint>
#include <optional>

namespace elkies::cli {

using io::Json;

Json verify_deuring_sweep(std::uint64_t min_p, std::uint64_t max_p, unsigned workers);

Json verify_complete_sums(std::uint64_t max_m, unsigned per_m, std::uint64_t seed);

Json verify_gcd_identity(std::int64_t max_uv, std::uint64_t max_m);

/// Periodicity of the long sum over odd square-free m <= max_m, plus the
/// ratio |sum| / (T/m + C^omega sqrt(m) log m) with C = 1 (reported, not asserted).
Json verify_long_sums(std::uint64_t max_m, unsigned periods);

/// Random admissible short-sum queries; each is checked for r_min .. r_min + r_span.
Json verify_short_sums(unsigned count, std::uint64_t max_m, unsigned r_span, std::uint64_t seed);

struct WInstance {
    std::uint64_t Q = 0, M = 3, L = 3, T = 1;
};

/// Random instances with Q in [q_lo, q_hi] (log-uniform), at most max_primes
/// primes in [M, L], and T <= max_T.
std::vector<WInstance> random_w_instances(unsigned count, std::uint64_t q_lo, std::uint64_t q_hi,
                                          unsigned max_primes, std::uint64_t max_T, std::uint64_t seed);

Json verify_w_equality(const std::vector<WInstance>& instances, unsigned workers, std::uint64_t budget);

}  // namespace elkies::cli
