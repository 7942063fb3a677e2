#pragma once

/**
 * @file search.hpp
 * @brief Scans over (p, t) for pairs whose small Elkies primes are scarce,
 *        the "no Elkies prime in [M, L]" condition, and the 4p - t^2
 *        representation checker.
 *
 * Classification depends only on t^2 - 4p, so scans enumerate trace pairs
 * directly; every t with t^2 <= 4p is realised by some curve, and
 * curve_with_trace can produce one on demand.
 */

#include "elkies/arith.hpp"
#include "elkies/classify.hpp"
#include "elkies/curves.hpp"
#include "elkies/rng.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace elkies {

/// Default cap on trace evaluations per scan.
inline constexpr std::uint64_t kDefaultScanBudget = 100'000'000ULL;

/// True iff (t^2 - 4p / l) != 1 for every prime l in [M, L].
bool check_cond1(const TracePair& pair, std::uint64_t M, std::uint64_t L);

enum class SearchMode { AllTraces, HasseSample };

struct SearchConfig {
    std::uint64_t prime_lo = 5;
    std::uint64_t prime_hi = 5;
    std::uint64_t L_cap = 3;
    SearchMode mode = SearchMode::AllTraces;
    std::uint64_t sample_k = 1;  ///< traces drawn per prime in HasseSample mode
    double threshold = 0.0;      ///< keep records with ratio_logp >= threshold
    unsigned workers = 1;
    std::uint64_t seed = kDefaultSeed;
    std::uint64_t budget = kDefaultScanBudget;  ///< max trace evaluations
    std::optional<std::pair<std::uint64_t, std::uint64_t>> cond1;  ///< (M, L) to test per record
    bool ramified_as_elkies = false;

    /// Throws DomainError on prime_lo < 5, L_cap < 3, sample_k < 1, lo > hi.
    void validate() const;
};

/// One scanned pair. When saturated, L_p holds the cap (L_p is then only
/// known to exceed it) and the ratios are lower bounds.
struct SearchRecord {
    TracePair pair{3, 0};
    std::uint64_t L_p = 0;
    bool saturated = false;
    BigInt elkies_product_at_cap = 1;
    double ratio_logp = 0.0;
    /// L_p / (log p logloglog p), present when logloglog p > 0 (p > e^e).
    std::optional<double> ratio_logloglog;
    /// (M, L) when condition cond1 was requested and held.
    std::optional<std::pair<std::uint64_t, std::uint64_t>> cond1_interval;

    friend bool operator==(const SearchRecord&, const SearchRecord&) = default;
};

struct ScanResult {
    std::vector<SearchRecord> records;  ///< ratio descending, then (p, t) ascending
    bool truncated = false;
    std::uint64_t primes_in_range = 0;
    std::uint64_t primes_scanned = 0;
    std::uint64_t traces_evaluated = 0;
};

/// Builds the record for one pair over an ascending prime list up to L_cap.
SearchRecord evaluate_pair(const TracePair& pair, std::span<const std::uint64_t> primes, std::uint64_t L_cap,
                           const ClassifyOptions& options = {},
                           std::optional<std::pair<std::uint64_t, std::uint64_t>> cond1 = std::nullopt);

/// Work is split by p; results are merged by a canonical sort, so the output
/// is identical for every worker count. If the budget would be exceeded,
/// only the longest prefix of primes that fits is scanned and `truncated`
/// is set.
ScanResult scan_primes(const SearchConfig& config);

/// The trace with the largest L_p for p (saturated counts as largest). Ties:
/// smaller Elkies product at the cap, then smaller |t|, then t > 0.
SearchRecord worst_trace(std::uint64_t p, std::uint64_t L_cap, const ClassifyOptions& options = {});

struct Representation {
    std::uint64_t p = 0;
    std::uint64_t t = 0;
};

/// Smallest t >= 0 (up to t_bound, default n) with (n + t^2)/4 prime. n must
/// be odd and >= 3. For n = 1 mod 4 nothing is found: 4p - t^2 is 0 or 3 mod 4.
std::optional<Representation> represent_4p_minus_t2(std::uint64_t n, std::optional<std::uint64_t> t_bound = std::nullopt);

/// Values n = 3 mod 4 in [n_lo, n_hi] with no representation. Throws
/// ResourceError when the range holds more than `budget` candidates.
std::vector<std::uint64_t> coverage_sweep(std::uint64_t n_lo, std::uint64_t n_hi,
                                          std::uint64_t budget = 10'000'000ULL);

struct CurveSample {
    CurveParams curve;
    ElkiesProfile profile;
};

/// Draws `samples` curves: p uniform over the primes in [p_lo, p_hi], then
/// (a, b) uniform over nonsingular pairs, all from one seeded stream. Traces
/// are counted and classified up to L on `workers` threads; the result
/// depends only on the arguments other than `workers`.
std::vector<CurveSample> sample_curve_profiles(std::uint64_t p_lo, std::uint64_t p_hi, std::uint64_t L,
                                               std::size_t samples, std::uint64_t seed, unsigned workers = 1,
                                               const ClassifyOptions& options = {});

}  // namespace elkies
