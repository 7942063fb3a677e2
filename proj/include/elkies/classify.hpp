#pragma once

/**
 * @file classify.hpp
 * @brief Elkies/Atkin classification of odd primes for a trace pair (p, t),
 *        the counters N_e and N_a, and the SEA bound L_p.
 *
 * An odd prime l != p is Elkies when (t^2 - 4p / l) = +1 and Atkin when it is
 * -1. Primes dividing t^2 - 4p are kept apart as Ramified; l = p is Excluded.
 * The product test "prod of Elkies primes > 4 sqrt(p)" is always decided on
 * integers as product^2 > 16p.
 */

#include "elkies/arith.hpp"
#include "elkies/curves.hpp"

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace elkies {

enum class Verdict { Elkies, Atkin, Ramified, Excluded };

std::string_view to_string(Verdict v) noexcept;
Verdict verdict_from_string(std::string_view s);

struct PrimeClass {
    std::uint64_t ell = 0;
    int symbol = 0;
    Verdict verdict = Verdict::Excluded;

    friend bool operator==(const PrimeClass&, const PrimeClass&) = default;
};

struct ClassifyOptions {
    /// Count ramified primes (symbol 0) as Elkies in N_e, the product and L_p.
    bool ramified_as_elkies = false;
};

/// Classification of one odd prime. Throws DomainError for ell = 2 or a
/// composite ell.
PrimeClass classify_prime(std::uint64_t ell, const TracePair& pair);

/// True when the prime contributes to the Elkies product under `options`.
bool counts_as_elkies(const PrimeClass& c, const ClassifyOptions& options) noexcept;

struct ElkiesProfile {
    explicit ElkiesProfile(const TracePair& pair) : pair(pair) {}

    TracePair pair;
    std::uint64_t L = 3;
    bool ramified_as_elkies = false;
    std::vector<PrimeClass> classes;  ///< odd primes 3 <= l <= L, ascending
    std::uint64_t n_e = 0;
    std::uint64_t n_a = 0;
    std::uint64_t n_ramified = 0;
    std::uint64_t n_excluded = 0;
    BigInt elkies_product = 1;
    /// 16p, the square of the 4 sqrt(p) threshold.
    BigInt threshold_squared = 0;
    /// Smallest Elkies prime <= L at which the product passes the threshold.
    std::optional<std::uint64_t> L_p;
};

ElkiesProfile classify_range(const TracePair& pair, std::uint64_t L, const ClassifyOptions& options = {});

/// Result of the L_p search. A saturated result means no prime up to `limit`
/// was enough; `product` is then the full Elkies product up to `limit`.
struct LpResult {
    std::optional<std::uint64_t> L_p;
    BigInt product = 1;
    std::uint64_t limit = 0;

    bool saturated() const noexcept { return !L_p.has_value(); }
};

LpResult compute_Lp(const TracePair& pair, std::uint64_t sieve_limit, const ClassifyOptions& options = {});

/// Same, over a caller-supplied ascending prime list (entries below 3 are
/// skipped). Used by the scanners to avoid re-sieving per trace.
LpResult compute_Lp(const TracePair& pair, std::span<const std::uint64_t> primes, std::uint64_t limit,
                    const ClassifyOptions& options = {});

struct HeuristicSummary {
    std::uint64_t L = 0;
    std::uint64_t pi_L = 0;       ///< primes <= L, including 2
    std::vector<double> ratios;   ///< n_e / pi(L), in input order
    double mean = 0.0;
    double spread = 0.0;          ///< population standard deviation
    double min = 0.0;
    double max = 0.0;
};

/// Compares N_e against pi(L)/2. Aggregates are computed over the sorted
/// ratios, so they do not depend on input order.
HeuristicSummary heuristic_deviation(std::span<const ElkiesProfile> profiles);

}  // namespace elkies
