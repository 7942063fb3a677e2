#include "elkies/charsums.hpp"

#include "elkies/errors.hpp"
#include "elkies/parallel.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <string>

namespace elkies {

namespace {

using u128 = unsigned __int128;
using i128 = __int128;

std::uint64_t reduce(i128 x, std::uint64_t m) {
    i128 r = x % static_cast<i128>(m);
    if (r < 0) r += m;
    return static_cast<std::uint64_t>(r);
}

std::uint64_t square_mod(std::uint64_t t, std::uint64_t m) {
    const std::uint64_t r = t % m;
    if (m <= (std::uint64_t{1} << 32)) return r * r % m;
    return static_cast<std::uint64_t>(static_cast<u128>(r) * r % m);
}

void require_odd_squarefree(std::uint64_t m, const char* where) {
    if (m == 0 || (m & 1) == 0)
        throw DomainError(std::string(where) + ": m must be odd and positive, got " + std::to_string(m));
    if (!is_squarefree(m))
        throw DomainError(std::string(where) + ": m=" + std::to_string(m) + " is not square-free");
}

void require_coprime(std::int64_t a, std::uint64_t m, const char* where) {
    if (gcd_u64(reduce(a, m), m) != 1)
        throw DomainError(std::string(where) + ": gcd(a, m) must be 1 (a=" + std::to_string(a) +
                          ", m=" + std::to_string(m) + ")");
}

void check_work(u128 work, std::uint64_t budget, const char* where) {
    if (work > budget)
        throw ResourceError(std::string(where) + ": needs " + std::to_string(static_cast<std::uint64_t>(
                                std::min<u128>(work, std::numeric_limits<std::uint64_t>::max()))) +
                            " Jacobi evaluations, work budget is " + std::to_string(budget));
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

/// sum_t sum_{p in block} (t^2 - 4p / m) for each modulus in `moduli`.
void accumulate_block(std::span<const std::uint64_t> primes, std::uint64_t T,
                      std::span<const std::uint64_t> moduli, std::vector<std::int64_t>& sums) {
    sums.assign(moduli.size(), 0);
    for (std::size_t j = 0; j < moduli.size(); ++j) {
        const std::uint64_t m = moduli[j];
        std::int64_t acc = 0;
        for (std::uint64_t p : primes) {
            const std::uint64_t four_p = reduce(static_cast<i128>(4) * p, m);
            for (std::uint64_t t = 1; t <= T; ++t) {
                std::uint64_t x = square_mod(t, m);
                x = x >= four_p ? x - four_p : x + (m - four_p);
                acc += jacobi_unchecked(x, m);
            }
        }
        sums[j] = acc;
    }
}

/// Contiguous blocks of the prime list; the count is fixed so per-block
/// partial sums, and therefore the totals, are schedule independent.
std::vector<std::span<const std::uint64_t>> split_blocks(const std::vector<std::uint64_t>& primes) {
    constexpr std::size_t kBlocks = 64;
    std::vector<std::span<const std::uint64_t>> blocks;
    const std::size_t n = primes.size();
    const std::size_t per = std::max<std::size_t>(1, (n + kBlocks - 1) / kBlocks);
    for (std::size_t i = 0; i < n; i += per)
        blocks.emplace_back(primes.data() + i, std::min(per, n - i));
    return blocks;
}

void validate_sieve_config(const SieveSumConfig& c, const char* where) {
    if (c.M < 3 || c.M > c.L)
        throw DomainError(std::string(where) + ": need 3 <= M <= L, got M=" + std::to_string(c.M) +
                          " L=" + std::to_string(c.L));
    if (c.T < 1) throw DomainError(std::string(where) + ": T must be >= 1");
    if (c.Q < 2) throw DomainError(std::string(where) + ": Q must be >= 2");
}

}  // namespace

std::int64_t long_sum(const LongSumQuery& q) {
    require_odd_squarefree(q.m, "long_sum");
    require_coprime(q.a, q.m, "long_sum");
    if (q.T < 1) throw DomainError("long_sum: T must be >= 1");
    const std::uint64_t a = reduce(q.a, q.m);
    i128 total = 0;
    for (std::uint64_t t = 0; t <= q.T; ++t) {
        std::uint64_t x = square_mod(t, q.m);
        x = x >= a ? x - a : x + (q.m - a);
        const int s = q.m == 1 ? 1 : jacobi_unchecked(x, q.m);
        total += t == 0 ? s : 2 * s;
    }
    return static_cast<std::int64_t>(total);
}

CharSumReport long_sum_report(const LongSumQuery& q, double C) {
    const auto start = std::chrono::steady_clock::now();
    CharSumReport report;
    report.query = "long_sum a=" + std::to_string(q.a) + " m=" + std::to_string(q.m) +
                   " T=" + std::to_string(q.T);
    report.lhs = long_sum(q);
    const double m = static_cast<double>(q.m);
    const double bound = static_cast<double>(q.T) / m +
                         std::pow(C, omega(static_cast<std::int64_t>(q.m))) * std::sqrt(m) * std::log(m);
    report.bound = bound;
    report.ratio = std::abs(static_cast<double>(report.lhs)) / bound;
    report.wall_time_ms = elapsed_ms(start);
    return report;
}

std::int64_t complete_sum(std::int64_t a, std::uint64_t m) {
    require_odd_squarefree(m, "complete_sum");
    require_coprime(a, m, "complete_sum");
    if (m == 1) return 1;
    const std::uint64_t ar = reduce(a, m);
    std::int64_t total = 0;
    for (std::uint64_t t = 0; t < m; ++t) {
        std::uint64_t x = square_mod(t, m);
        x = x >= ar ? x - ar : x + (m - ar);
        total += jacobi_unchecked(x, m);
    }
    return total;
}

void check_short_sum_hypotheses(const ShortSumQuery& q) {
    if (q.m < 3 || (q.m & 1) == 0)
        throw DomainError("short_sum: m must be odd and >= 3, got " + std::to_string(q.m));
    const Factorization f = factorize(q.m);
    if (!f.squarefree()) throw DomainError("short_sum: m=" + std::to_string(q.m) + " is not square-free");
    if (q.N < 1 || q.N > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()))
        throw DomainError("short_sum: N must lie in [1, 2^63)");
    if (q.r < 1) throw DomainError("short_sum: r must be a positive integer");
    const BigInt largest = f.largest_prime();
    if (boost::multiprecision::pow(largest, 9) > q.N)
        throw DomainError("short_sum: hypothesis 'all prime factors of m are at most N^(1/9)' fails: "
                          "largest prime " + std::to_string(f.largest_prime()) + ", N=" + std::to_string(q.N));
    const BigInt m = q.m;
    if (boost::multiprecision::pow(BigInt(q.N), q.r) <= m * m * m)
        throw DomainError("short_sum: hypothesis 'N^r > m^3' fails for r=" + std::to_string(q.r));
}

double short_sum_bound(const ShortSumQuery& q) {
    const std::uint64_t diff = reduce(static_cast<i128>(q.u) - q.v, q.m);
    const long double g = static_cast<long double>(gcd_u64(diff, q.m));
    const long double m = static_cast<long double>(q.m);
    const long double tau_m = static_cast<long double>(tau(static_cast<std::int64_t>(q.m)));
    const long double r = q.r;
    const long double inner = std::log(g) - std::log(m) + (r * r + 2 * r) * std::log(tau_m);
    const long double log_bound =
        std::log(4.0L) + std::log(static_cast<long double>(q.N)) + inner / (r * std::ldexp(1.0L, static_cast<int>(q.r)));
    return static_cast<double>(std::exp(log_bound));
}

std::int64_t interval_quadratic_sum(std::int64_t u, std::int64_t v, std::uint64_t m, std::uint64_t N) {
    if (m == 0 || (m & 1) == 0) throw DomainError("interval_quadratic_sum: m must be odd");
    auto term = [&](std::uint64_t n) {
        const std::uint64_t x = reduce(static_cast<i128>(n) - u, m);
        const std::uint64_t y = reduce(static_cast<i128>(n) - v, m);
        return jacobi_unchecked(static_cast<std::uint64_t>(static_cast<u128>(x) * y % m), m);
    };
    const std::uint64_t periods = N / m;
    const std::uint64_t tail = N % m;
    i128 total = 0;
    if (periods > 0) {
        std::int64_t period = 0;
        for (std::uint64_t n = 1; n <= m; ++n) period += term(n);
        total += static_cast<i128>(period) * periods;
    }
    for (std::uint64_t n = 1; n <= tail; ++n) total += term(n);
    return static_cast<std::int64_t>(total);
}

CharSumReport short_sum(const ShortSumQuery& q) {
    const auto start = std::chrono::steady_clock::now();
    check_short_sum_hypotheses(q);
    CharSumReport report;
    report.query = "short_sum u=" + std::to_string(q.u) + " v=" + std::to_string(q.v) + " m=" +
                   std::to_string(q.m) + " N=" + std::to_string(q.N) + " r=" + std::to_string(q.r);
    report.lhs = std::abs(interval_quadratic_sum(q.u, q.v, q.m, q.N));
    const double bound = short_sum_bound(q);
    report.bound = bound;
    report.ratio = static_cast<double>(report.lhs) / bound;
    report.wall_time_ms = elapsed_ms(start);
    return report;
}

bool gcd_identity_check(std::int64_t u, std::int64_t v, std::uint64_t m) {
    if (m == 0 || !is_squarefree(m))
        throw DomainError("gcd_identity_check: m=" + std::to_string(m) + " is not square-free");
    const std::uint64_t d = reduce(static_cast<i128>(u) - v, m);
    const auto d2 = static_cast<std::uint64_t>(static_cast<u128>(d) * d % m);
    return gcd_u64(d2, m) == gcd_u64(d, m);
}

TheoremParams theorem_parameters(std::uint64_t Q, std::optional<ParamOverrides> overrides) {
    TheoremParams params;
    params.Q = Q;
    if (overrides) {
        if (Q < 16) throw DomainError("theorem_parameters: Q must be >= 16");
        params.L = overrides->L;
        params.M = overrides->M;
        params.T = overrides->T;
        params.overridden = true;
    } else {
        // logloglog Q is already positive above e^e; the formulas are only
        // meaningful in the regime Q > e^{e^e}, which is enforced here.
        const double regime = std::exp(std::exp(std::exp(1.0)));
        const double log_q = std::log(static_cast<double>(Q));
        const double lll = std::log(std::log(log_q));
        if (!(static_cast<double>(Q) > regime && lll > 0.0))
            throw DomainError("theorem_parameters: Q=" + std::to_string(Q) +
                              " is not above e^(e^e) ~ 3.81e6, outside the regime where L, M are meaningful; "
                              "pass explicit (L, M, T) overrides");
        params.L = static_cast<std::uint64_t>(std::floor(0.3 * log_q * lll));
        params.M = static_cast<std::uint64_t>(std::floor(log_q / lll));
        params.T = isqrt(Q);
    }
    params.small_prime_product = primorial(params.M);
    return params;
}

std::vector<std::uint64_t> half_interval_primes(std::uint64_t Q) {
    return primes_in_range(Q / 2 + Q % 2, Q, std::max(Q, kDefaultSieveBudget));
}

std::int64_t w_product(const SieveSumConfig& c) {
    validate_sieve_config(c, "w_product");
    const auto ells = primes_in_range(c.M, c.L);
    const auto primes = half_interval_primes(c.Q);
    check_work(static_cast<u128>(c.T) * primes.size() * std::max<std::size_t>(1, ells.size()), c.work_budget,
               "w_product");

    std::vector<std::int64_t> per_prime(primes.size(), 0);
    detail::parallel_for(
        primes.size(), c.workers,
        [&](std::size_t i) {
            const std::uint64_t p = primes[i];
            std::vector<std::uint64_t> four_p(ells.size());
            for (std::size_t j = 0; j < ells.size(); ++j) four_p[j] = (4 * (p % ells[j])) % ells[j];
            std::int64_t acc = 0;
            for (std::uint64_t t = 1; t <= c.T; ++t) {
                std::int64_t term = 1;
                for (std::size_t j = 0; j < ells.size() && term != 0; ++j) {
                    const std::uint64_t ell = ells[j];
                    std::uint64_t x = square_mod(t, ell);
                    x = x >= four_p[j] ? x - four_p[j] : x + (ell - four_p[j]);
                    const int s = jacobi_unchecked(x, ell);
                    if (s < 0) term = 0;
                    else if (s > 0) term *= 2;
                }
                acc += term;
            }
            per_prime[i] = acc;
        },
        16);
    std::int64_t W = 0;
    for (std::int64_t v : per_prime) W += v;
    return W;
}

WExpansion w_expanded(const SieveSumConfig& c) {
    validate_sieve_config(c, "w_expanded");
    const SquarefreeSet set = enumerate_squarefree_products(c.M, c.L, c.subset_cap);
    std::vector<std::uint64_t> moduli;
    moduli.reserve(set.members.size());
    for (const BigInt& m : set.members) {
        if (m > BigInt(std::numeric_limits<std::int64_t>::max()))
            throw ResourceError("w_expanded: square-free product exceeds 63 bits");
        moduli.push_back(m.convert_to<std::uint64_t>());
    }
    const auto primes = half_interval_primes(c.Q);
    check_work(static_cast<u128>(c.T) * primes.size() * moduli.size(), c.work_budget, "w_expanded");

    const auto blocks = split_blocks(primes);
    std::vector<std::vector<std::int64_t>> partial(blocks.size());
    detail::parallel_for(blocks.size(), c.workers,
                         [&](std::size_t b) { accumulate_block(blocks[b], c.T, moduli, partial[b]); });

    WExpansion out;
    out.table.resize(moduli.size());
    for (std::size_t j = 0; j < moduli.size(); ++j) {
        out.table[j].m = moduli[j];
        for (const auto& sums : partial) out.table[j].S += sums[j];
        out.W += out.table[j].S;
    }
    return out;
}

std::int64_t s_m(std::uint64_t m, std::uint64_t Q, std::uint64_t T, unsigned workers, std::uint64_t work_budget) {
    require_odd_squarefree(m, "s_m");
    if (T < 1) throw DomainError("s_m: T must be >= 1");
    const auto primes = half_interval_primes(Q);
    check_work(static_cast<u128>(T) * primes.size(), work_budget, "s_m");
    if (m == 1) return static_cast<std::int64_t>(T * primes.size());
    const auto blocks = split_blocks(primes);
    const std::uint64_t moduli[] = {m};
    std::vector<std::vector<std::int64_t>> partial(blocks.size());
    detail::parallel_for(blocks.size(), workers,
                         [&](std::size_t b) { accumulate_block(blocks[b], T, moduli, partial[b]); });
    std::int64_t total = 0;
    for (const auto& sums : partial) total += sums[0];
    return total;
}

}  // namespace elkies
