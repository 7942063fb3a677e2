#include "elkies/classify.hpp"

#include "elkies/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace elkies {

namespace {

using u128 = unsigned __int128;

PrimeClass classify_known_prime(std::uint64_t ell, const TracePair& pair) noexcept {
    if (ell == pair.p()) return {ell, 0, Verdict::Excluded};
    const int symbol = jacobi_unchecked(pair.discriminant_mod(ell), ell);
    const Verdict v = symbol > 0 ? Verdict::Elkies : symbol < 0 ? Verdict::Atkin : Verdict::Ramified;
    return {ell, symbol, v};
}

u128 sixteen_p(const TracePair& pair) {
    return static_cast<u128>(16) * pair.p();
}

BigInt to_big(u128 v) {
    BigInt out = static_cast<std::uint64_t>(v >> 64);
    out <<= 64;
    out += static_cast<std::uint64_t>(v);
    return out;
}

}  // namespace

std::string_view to_string(Verdict v) noexcept {
    switch (v) {
        case Verdict::Elkies: return "Elkies";
        case Verdict::Atkin: return "Atkin";
        case Verdict::Ramified: return "Ramified";
        case Verdict::Excluded: return "Excluded";
    }
    return "?";
}

Verdict verdict_from_string(std::string_view s) {
    for (Verdict v : {Verdict::Elkies, Verdict::Atkin, Verdict::Ramified, Verdict::Excluded})
        if (to_string(v) == s) return v;
    throw DomainError("unknown verdict '" + std::string(s) + "'");
}

PrimeClass classify_prime(std::uint64_t ell, const TracePair& pair) {
    if (ell == 2) throw DomainError("classify_prime: l = 2 is never classified");
    if (!is_prime(ell)) throw DomainError("classify_prime: l=" + std::to_string(ell) + " is not prime");
    return classify_known_prime(ell, pair);
}

bool counts_as_elkies(const PrimeClass& c, const ClassifyOptions& options) noexcept {
    return c.verdict == Verdict::Elkies || (options.ramified_as_elkies && c.verdict == Verdict::Ramified);
}

ElkiesProfile classify_range(const TracePair& pair, std::uint64_t L, const ClassifyOptions& options) {
    if (L < 3) throw DomainError("classify_range: L must be >= 3, got " + std::to_string(L));
    ElkiesProfile profile(pair);
    profile.L = L;
    profile.ramified_as_elkies = options.ramified_as_elkies;
    profile.threshold_squared = to_big(sixteen_p(pair));
    for (std::uint64_t ell : primes_in_range(3, L)) {
        const PrimeClass c = classify_known_prime(ell, pair);
        profile.classes.push_back(c);
        if (counts_as_elkies(c, options)) {
            ++profile.n_e;
            profile.elkies_product *= ell;
            if (!profile.L_p && profile.elkies_product * profile.elkies_product > profile.threshold_squared)
                profile.L_p = ell;
        } else if (c.verdict == Verdict::Atkin) {
            ++profile.n_a;
        } else if (c.verdict == Verdict::Ramified) {
            ++profile.n_ramified;
        } else {
            ++profile.n_excluded;
        }
    }
    return profile;
}

LpResult compute_Lp(const TracePair& pair, std::span<const std::uint64_t> primes, std::uint64_t limit,
                    const ClassifyOptions& options) {
    // Until the threshold is crossed the product stays below 4 sqrt(p) < 2^33,
    // so one more factor always fits in 128 bits.
    const u128 threshold = sixteen_p(pair);
    u128 product = 1;
    LpResult result;
    result.limit = limit;
    for (std::uint64_t ell : primes) {
        if (ell < 3) continue;
        if (ell > limit) break;
        if (!counts_as_elkies(classify_known_prime(ell, pair), options)) continue;
        product *= ell;
        if ((product >> 64) != 0 || product * product > threshold) {
            result.L_p = ell;
            break;
        }
    }
    result.product = to_big(product);
    return result;
}

LpResult compute_Lp(const TracePair& pair, std::uint64_t sieve_limit, const ClassifyOptions& options) {
    if (sieve_limit < 3) return LpResult{std::nullopt, 1, sieve_limit};
    const auto primes = sieve_primes(sieve_limit);
    return compute_Lp(pair, primes, sieve_limit, options);
}

HeuristicSummary heuristic_deviation(std::span<const ElkiesProfile> profiles) {
    if (profiles.empty()) throw DomainError("heuristic_deviation: no profiles");
    HeuristicSummary s;
    s.L = profiles.front().L;
    s.pi_L = prime_pi(s.L);
    for (const auto& profile : profiles) {
        if (profile.L != s.L) throw DomainError("heuristic_deviation: profiles use different L");
        s.ratios.push_back(static_cast<double>(profile.n_e) / static_cast<double>(s.pi_L));
    }
    auto sorted = s.ratios;
    std::sort(sorted.begin(), sorted.end());
    const auto n = static_cast<double>(sorted.size());
    s.mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / n;
    double sq = 0.0;
    for (double r : sorted) sq += (r - s.mean) * (r - s.mean);
    s.spread = std::sqrt(sq / n);
    s.min = sorted.front();
    s.max = sorted.back();
    return s;
}

}  // namespace elkies
