#include "elkies/arith.hpp"

#include "elkies/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

namespace elkies {

namespace {

using u128 = unsigned __int128;

constexpr std::uint64_t kSegmentOdds = std::uint64_t{1} << 18;

std::vector<std::uint64_t> base_primes(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    if (n < 2) return out;
    std::vector<bool> composite(n + 1, false);
    for (std::uint64_t i = 2; i * i <= n; ++i) {
        if (composite[i]) continue;
        for (std::uint64_t j = i * i; j <= n; j += i) composite[j] = true;
    }
    for (std::uint64_t i = 2; i <= n; ++i)
        if (!composite[i]) out.push_back(i);
    return out;
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

void require_positive(std::int64_t n, const char* what) {
    if (n <= 0)
        throw DomainError(std::string(what) + ": argument must be >= 1, got " + std::to_string(n));
}

}  // namespace

std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi, std::uint64_t budget) {
    if (hi > budget)
        throw ResourceError("sieve limit " + std::to_string(hi) + " exceeds sieve budget " +
                            std::to_string(budget));
    std::vector<std::uint64_t> out;
    if (hi < 2 || lo > hi) return out;
    if (lo <= 2) out.push_back(2);
    if (hi < 3) return out;

    const auto base = base_primes(isqrt(hi));
    std::uint64_t seg_lo = std::max<std::uint64_t>(lo, 3) | 1;
    std::vector<char> composite;
    while (seg_lo <= hi) {
        const std::uint64_t span = hi - seg_lo;
        const std::uint64_t count = std::min(span / 2 + 1, kSegmentOdds);
        const std::uint64_t seg_hi = seg_lo + 2 * (count - 1);
        composite.assign(count, 0);
        for (std::size_t i = 1; i < base.size(); ++i) {
            const std::uint64_t p = base[i];
            if (p * p > seg_hi) break;
            std::uint64_t first = std::max(p * p, (seg_lo + p - 1) / p * p);
            if ((first & 1) == 0) first += p;
            for (std::uint64_t j = (first - seg_lo) / 2; j < count; j += p) composite[j] = 1;
        }
        for (std::uint64_t j = 0; j < count; ++j)
            if (!composite[j]) out.push_back(seg_lo + 2 * j);
        if (seg_hi >= hi - 1) break;
        seg_lo = seg_hi + 2;
    }
    return out;
}

std::vector<std::uint64_t> sieve_primes(std::uint64_t limit, std::uint64_t budget) {
    if (limit < 2) throw DomainError("sieve_primes: limit must be >= 2");
    return primes_in_range(2, limit, budget);
}

std::uint64_t prime_pi(std::uint64_t limit) {
    if (limit < 2) return 0;
    return primes_in_range(2, limit, std::max(limit, kDefaultSieveBudget)).size();
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // These twelve bases are a deterministic witness set below 3.3e24.
    for (std::uint64_t a : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
        std::uint64_t x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int r = 1; r < s; ++r) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

int jacobi_unchecked(std::uint64_t a, std::uint64_t m) noexcept {
    a %= m;
    int result = 1;
    while (a != 0) {
        const int zeros = std::countr_zero(a);
        a >>= zeros;
        const std::uint64_t m8 = m & 7;
        if ((zeros & 1) && (m8 == 3 || m8 == 5)) result = -result;
        if (a & m & 2) result = -result;
        std::swap(a, m);
        a %= m;
    }
    return m == 1 ? result : 0;
}

int jacobi(std::int64_t a, std::uint64_t m) {
    if (m == 0 || (m & 1) == 0)
        throw DomainError("jacobi: modulus must be odd and positive, got " + std::to_string(m));
    const __int128 r = static_cast<__int128>(a) % static_cast<__int128>(m);
    const auto top = static_cast<std::uint64_t>(r < 0 ? r + m : r);
    return jacobi_unchecked(top, m);
}

bool Factorization::squarefree() const noexcept {
    return std::all_of(factors.begin(), factors.end(),
                       [](const PrimePower& f) { return f.exponent == 1; });
}

std::uint64_t Factorization::largest_prime() const noexcept {
    return factors.empty() ? 1 : factors.back().prime;
}

Factorization factorize(std::uint64_t n) {
    if (n == 0) throw DomainError("factorize: argument must be >= 1");
    Factorization f{n, {}};
    auto strip = [&](std::uint64_t d) {
        unsigned e = 0;
        while (n % d == 0) {
            n /= d;
            ++e;
        }
        if (e > 0) f.factors.push_back({d, e});
        return e > 0;
    };
    strip(2);
    if (n > 1 && !is_prime(n)) {
        for (std::uint64_t d = 3; n > 1 && d <= n / d; d += 2) {
            if (strip(d) && is_prime(n)) break;
        }
    }
    if (n > 1) f.factors.push_back({n, 1});
    return f;
}

int mobius(std::int64_t n) {
    require_positive(n, "mobius");
    const auto f = factorize(static_cast<std::uint64_t>(n));
    if (!f.squarefree()) return 0;
    return (f.factors.size() % 2 == 0) ? 1 : -1;
}

std::uint64_t tau(std::int64_t n) {
    require_positive(n, "tau");
    std::uint64_t t = 1;
    for (const auto& [p, e] : factorize(static_cast<std::uint64_t>(n)).factors) t *= e + 1;
    return t;
}

int omega(std::int64_t n) {
    require_positive(n, "omega");
    return static_cast<int>(factorize(static_cast<std::uint64_t>(n)).factors.size());
}

bool is_squarefree(std::uint64_t n) {
    return n != 0 && factorize(n).squarefree();
}

std::uint64_t isqrt(std::uint64_t n) noexcept {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
    while (static_cast<u128>(r) * r > n) --r;
    while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
    return r;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) noexcept {
    while (b != 0) {
        a %= b;
        std::swap(a, b);
    }
    return a;
}

SquarefreeSet enumerate_squarefree_products(std::uint64_t M, std::uint64_t L,
                                            std::optional<std::uint64_t> cap) {
    if (M < 3 || M > L)
        throw DomainError("enumerate_squarefree_products: need 3 <= M <= L, got M=" +
                          std::to_string(M) + " L=" + std::to_string(L));
    SquarefreeSet set;
    set.lo = M;
    set.hi = L;
    set.primes = primes_in_range(M, L);
    const std::size_t k = set.primes.size();
    const std::uint64_t limit = cap.value_or(kDefaultSubsetCap);
    if (k >= 63 || (std::uint64_t{1} << k) > limit)
        throw ResourceError("square-free set over [" + std::to_string(M) + ", " + std::to_string(L) +
                            "] has k=" + std::to_string(k) + " primes (2^k members), cap is " +
                            std::to_string(limit));
    set.members.reserve(std::size_t{1} << k);
    set.members.emplace_back(1);
    for (std::uint64_t p : set.primes) {
        const std::size_t n = set.members.size();
        for (std::size_t i = 0; i < n; ++i) set.members.push_back(set.members[i] * p);
    }
    std::sort(set.members.begin(), set.members.end());
    return set;
}

MertensSum mertens_interval_sum(std::uint64_t M, std::uint64_t L) {
    if (M < 3 || M >= L)
        throw DomainError("mertens_interval_sum: need 3 <= M < L, got M=" + std::to_string(M) +
                          " L=" + std::to_string(L));
    MertensSum out;
    for (std::uint64_t l : primes_in_range(M, L)) out.sum += 1.0 / static_cast<double>(l);
    out.model = std::log(std::log(static_cast<double>(L)) / std::log(static_cast<double>(M)));
    out.deviation = out.sum - out.model;
    return out;
}

BigInt primorial(std::uint64_t bound) {
    BigInt product = 1;
    if (bound < 2) return product;
    for (std::uint64_t p : sieve_primes(bound, std::max(bound, kDefaultSieveBudget))) product *= p;
    return product;
}

}  // namespace elkies
