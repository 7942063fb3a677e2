#pragma once

/**
 * @file charsums.hpp
 * @brief Exact evaluation of the quadratic character sums behind the
 *        low-Elkies construction: long and complete sums of (t^2 - a / m),
 *        incomplete sums of ((n-u)(n-v) / m) against their explicit bound,
 *        and the sieve sum W with its expansion into S(m).
 *
 * Sums are exact integers. Bounds and ratios are doubles.
 */

#include "elkies/arith.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace elkies {

/// Default work budget: Jacobi evaluations allowed per call.
inline constexpr std::uint64_t kDefaultWorkBudget = 1'000'000'000ULL;

/// sum_{|t| <= T} (t^2 - a / m) with m odd square-free, gcd(a, m) = 1.
struct LongSumQuery {
    std::int64_t a = 0;
    std::uint64_t m = 1;
    std::uint64_t T = 1;
};

/// |sum_{n=1}^{N} ((n-u)(n-v) / m)| with m odd square-free >= 3, every prime
/// factor of m at most N^{1/9}, and N^r > m^3.
struct ShortSumQuery {
    std::int64_t u = 0;
    std::int64_t v = 0;
    std::uint64_t m = 3;
    std::uint64_t N = 1;
    unsigned r = 1;
};

struct CharSumReport {
    std::string query;
    std::int64_t lhs = 0;
    std::optional<double> bound;
    std::optional<double> ratio;
    double wall_time_ms = 0.0;
};

/// Exact long sum. m = 1 gives 2T + 1.
std::int64_t long_sum(const LongSumQuery& q);

/// Long sum together with the empirical ratio |lhs| / (T/m + C^{omega(m)} sqrt(m) log m).
CharSumReport long_sum_report(const LongSumQuery& q, double C = 1.0);

/// sum over t mod m of (t^2 - a / m). Equals mu(m) for square-free m coprime to a.
std::int64_t complete_sum(std::int64_t a, std::uint64_t m);

/// Validates the hypotheses; throws DomainError naming the first violated one.
void check_short_sum_hypotheses(const ShortSumQuery& q);

/// 4N (gcd(u-v, m) m^{-1} tau(m)^{r^2+2r})^{1/(r 2^r)}, evaluated in logs.
double short_sum_bound(const ShortSumQuery& q);

/// Signed sum_{n=1}^{N} ((n-u)(n-v) / m) without hypothesis checks. Uses the
/// period-m structure of the summand: full periods times one period sum plus
/// a direct tail.
std::int64_t interval_quadratic_sum(std::int64_t u, std::int64_t v, std::uint64_t m, std::uint64_t N);

CharSumReport short_sum(const ShortSumQuery& q);

/// gcd((u-v)^2, m) == gcd(u-v, m). Throws DomainError when m is not square-free.
bool gcd_identity_check(std::int64_t u, std::int64_t v, std::uint64_t m);

struct ParamOverrides {
    std::uint64_t L = 0;
    std::uint64_t M = 0;
    std::uint64_t T = 0;
};

struct TheoremParams {
    std::uint64_t Q = 0;
    std::uint64_t L = 0;
    std::uint64_t M = 0;
    std::uint64_t T = 0;
    bool overridden = false;
    /// Product of all primes <= M, diagnostic for the size of the discarded part.
    BigInt small_prime_product = 1;
};

/// Without overrides: L = floor(0.3 log Q logloglog Q), M = floor(log Q / logloglog Q),
/// T = floor(sqrt Q), requiring Q > e^{e^e} ~ 3.81e6. With overrides: Q >= 16, values verbatim.
TheoremParams theorem_parameters(std::uint64_t Q, std::optional<ParamOverrides> overrides = std::nullopt);

/// Shared configuration for the W / S(m) evaluators. Primes p run over the
/// closed interval [ceil(Q/2), Q]; t runs over 1..T.
struct SieveSumConfig {
    std::uint64_t Q = 0;
    std::uint64_t T = 1;
    std::uint64_t M = 3;
    std::uint64_t L = 3;
    unsigned workers = 1;
    std::uint64_t work_budget = kDefaultWorkBudget;
    std::optional<std::uint64_t> subset_cap;
};

/// Primes p with Q/2 <= p <= Q.
std::vector<std::uint64_t> half_interval_primes(std::uint64_t Q);

/// W = sum_t sum_p prod_{l in [M, L]} (1 + (t^2 - 4p / l)), evaluated directly.
std::int64_t w_product(const SieveSumConfig& config);

struct SmEntry {
    std::uint64_t m = 1;
    std::int64_t S = 0;
};

struct WExpansion {
    std::int64_t W = 0;
    std::vector<SmEntry> table;  ///< one entry per m in the square-free set, ascending m
};

/// W as sum over square-free m of S(m), each S(m) evaluated with a composite
/// Jacobi symbol. Coefficient +1 for every m.
WExpansion w_expanded(const SieveSumConfig& config);

/// S(m) = sum_{1<=t<=T} sum_{Q/2<=p<=Q} (t^2 - 4p / m).
std::int64_t s_m(std::uint64_t m, std::uint64_t Q, std::uint64_t T, unsigned workers = 1,
                 std::uint64_t work_budget = kDefaultWorkBudget);

}  // namespace elkies
