#pragma once

// Brute-force reference implementations. Deliberately naive and independent
// of the library's evaluation paths; used only to produce expected values.

#include <cstdint>
#include <map>
#include <set>
#include <vector>

namespace oracle {

inline std::vector<std::uint64_t> eratosthenes(std::uint64_t n) {
    std::vector<bool> composite(n + 1, false);
    std::vector<std::uint64_t> out;
    for (std::uint64_t i = 2; i <= n; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (std::uint64_t j = i * i; j <= n; j += i) composite[j] = true;
    }
    return out;
}

inline bool trial_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = static_cast<std::uint64_t>(static_cast<unsigned __int128>(r) * b % m);
        b = static_cast<std::uint64_t>(static_cast<unsigned __int128>(b) * b % m);
        e >>= 1;
    }
    return r;
}

/// Legendre symbol by Euler's criterion, odd prime p.
inline int legendre(std::int64_t a, std::uint64_t p) {
    std::int64_t r = a % static_cast<std::int64_t>(p);
    if (r < 0) r += static_cast<std::int64_t>(p);
    if (r == 0) return 0;
    const std::uint64_t e = powmod(static_cast<std::uint64_t>(r), (p - 1) / 2, p);
    return e == 1 ? 1 : -1;
}

/// Jacobi symbol via factorization of m into primes and Euler's criterion.
inline int jacobi_by_factoring(std::int64_t a, std::uint64_t m) {
    int result = 1;
    for (std::uint64_t d = 3; m > 1; d += 2) {
        if (d * d > m) d = m;
        while (m % d == 0) {
            result *= legendre(a, d);
            m /= d;
        }
    }
    return result;
}

inline std::map<std::uint64_t, unsigned> factor(std::uint64_t n) {
    std::map<std::uint64_t, unsigned> f;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        while (n % d == 0) {
            ++f[d];
            n /= d;
        }
    if (n > 1) ++f[n];
    return f;
}

inline std::uint64_t divisor_count(std::uint64_t n) {
    std::uint64_t c = 0;
    for (std::uint64_t d = 1; d <= n; ++d) c += n % d == 0;
    return c;
}

/// #E(F_p) by enumerating every (x, y) plus the point at infinity.
inline std::uint64_t naive_points(std::uint64_t p, std::uint64_t a, std::uint64_t b) {
    std::uint64_t count = 1;
    for (std::uint64_t x = 0; x < p; ++x) {
        const std::uint64_t rhs = (x * x % p * x + a * x + b) % p;
        for (std::uint64_t y = 0; y < p; ++y)
            if (y * y % p == rhs) ++count;
    }
    return count;
}

inline bool singular(std::uint64_t p, std::uint64_t a, std::uint64_t b) {
    return (4 * (a * a % p * a % p) + 27 * (b * b % p)) % p == 0;
}

/// Traces attained by all nonsingular curves over F_p, by naive counting.
inline std::set<std::int64_t> naive_trace_set(std::uint64_t p) {
    std::set<std::int64_t> ts;
    for (std::uint64_t a = 0; a < p; ++a)
        for (std::uint64_t b = 0; b < p; ++b)
            if (!singular(p, a, b))
                ts.insert(static_cast<std::int64_t>(p) + 1 - static_cast<std::int64_t>(naive_points(p, a, b)));
    return ts;
}

/// The set of squares mod m, listed explicitly.
inline std::set<std::uint64_t> squares_mod(std::uint64_t m) {
    std::set<std::uint64_t> s;
    for (std::uint64_t x = 0; x < m; ++x) s.insert(x * x % m);
    return s;
}

/// W by the literal triple loop, symbols from Euler's criterion, Q/2 <= p <= Q.
inline std::int64_t naive_w(std::uint64_t Q, std::uint64_t T, const std::vector<std::uint64_t>& ells) {
    std::int64_t W = 0;
    for (std::uint64_t t = 1; t <= T; ++t)
        for (std::uint64_t p = 2; p <= Q; ++p) {
            if (2 * p < Q || !trial_prime(p)) continue;
            std::int64_t term = 1;
            for (std::uint64_t l : ells)
                term *= 1 + legendre(static_cast<std::int64_t>(t * t) - 4 * static_cast<std::int64_t>(p), l);
            W += term;
        }
    return W;
}

/// S(m) by the literal double loop with factorization-based Jacobi symbols.
inline std::int64_t naive_s(std::uint64_t m, std::uint64_t Q, std::uint64_t T) {
    std::int64_t S = 0;
    for (std::uint64_t t = 1; t <= T; ++t)
        for (std::uint64_t p = 2; p <= Q; ++p) {
            if (2 * p < Q || !trial_prime(p)) continue;
            S += jacobi_by_factoring(static_cast<std::int64_t>(t * t) - 4 * static_cast<std::int64_t>(p), m);
        }
    return S;
}

inline std::uint64_t gcd(std::uint64_t a, std::uint64_t b) {
    while (b) {
        a %= b;
        std::swap(a, b);
    }
    return a;
}

}  // namespace oracle
