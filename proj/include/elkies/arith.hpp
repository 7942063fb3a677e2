#pragma once

/**
 * @file arith.hpp
 * @brief Integer kernels: prime sieving, Jacobi symbols, multiplicative
 *        functions and square-free product sets.
 *
 * Everything here is a pure function of its arguments. Hot loops stay in
 * 64-bit words; products of many primes use BigInt.
 */

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace elkies {

using BigInt = boost::multiprecision::cpp_int;

/// Largest sieve limit accepted without an explicit override (~64 MiB of bits).
inline constexpr std::uint64_t kDefaultSieveBudget = std::uint64_t{1} << 32;

/// Default cap on the number of members of a square-free product set (2^30).
inline constexpr std::uint64_t kDefaultSubsetCap = std::uint64_t{1} << 30;

/// All primes <= limit in ascending order. Segmented, odd-only sieve.
std::vector<std::uint64_t> sieve_primes(std::uint64_t limit,
                                        std::uint64_t budget = kDefaultSieveBudget);

/// Primes in the closed interval [lo, hi]; empty when lo > hi.
std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi,
                                           std::uint64_t budget = kDefaultSieveBudget);

/// Number of primes <= limit.
std::uint64_t prime_pi(std::uint64_t limit);

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(std::uint64_t n);

/// Jacobi symbol (a/m) for odd m >= 1, by binary reciprocity.
/// Throws DomainError when m is even or zero.
int jacobi(std::int64_t a, std::uint64_t m);

/// Jacobi symbol with an already nonnegative top argument; m must be odd.
/// No validation, this is the inner-loop entry point.
int jacobi_unchecked(std::uint64_t a, std::uint64_t m) noexcept;

struct PrimePower {
    std::uint64_t prime;
    unsigned exponent;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// n = prod prime^exponent with strictly increasing primes.
struct Factorization {
    std::uint64_t n = 1;
    std::vector<PrimePower> factors;

    bool squarefree() const noexcept;
    /// 1 for n = 1.
    std::uint64_t largest_prime() const noexcept;
};

/// Trial division with a primality shortcut for the final cofactor. Fast
/// whenever n has at most one prime factor above ~10^7.
Factorization factorize(std::uint64_t n);

int mobius(std::int64_t n);
std::uint64_t tau(std::int64_t n);
int omega(std::int64_t n);
bool is_squarefree(std::uint64_t n);

/// floor(sqrt(n)), integer-exact.
std::uint64_t isqrt(std::uint64_t n) noexcept;

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) noexcept;

/// Products of distinct primes drawn from [lo, hi], including the empty product.
struct SquarefreeSet {
    std::uint64_t lo = 3;
    std::uint64_t hi = 3;
    std::vector<std::uint64_t> primes;  ///< primes in [lo, hi], ascending
    std::vector<BigInt> members;        ///< all 2^k subset products, ascending
};

/// Every subset product of the primes in [M, L]. Throws ResourceError (naming
/// the prime count k) when 2^k exceeds the member cap.
SquarefreeSet enumerate_squarefree_products(std::uint64_t M, std::uint64_t L,
                                            std::optional<std::uint64_t> cap = std::nullopt);

struct MertensSum {
    double sum = 0.0;        ///< sum of 1/l over primes M <= l <= L, ascending order
    double model = 0.0;      ///< log(log L / log M)
    double deviation = 0.0;  ///< sum - model
};

MertensSum mertens_interval_sum(std::uint64_t M, std::uint64_t L);

/// Product of all primes <= bound.
BigInt primorial(std::uint64_t bound);

}  // namespace elkies
