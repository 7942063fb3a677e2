#include "oracles.hpp"

#include "elkies/classify.hpp"
#include "elkies/errors.hpp"
#include "elkies/rng.hpp"

#include <doctest.h>

using namespace elkies;

namespace {

/// Residue check by listing the squares mod l.
Verdict oracle_verdict(std::uint64_t ell, std::uint64_t p, std::int64_t t) {
    if (ell == p) return Verdict::Excluded;
    std::int64_t d = (t * t - 4 * static_cast<std::int64_t>(p)) % static_cast<std::int64_t>(ell);
    if (d < 0) d += static_cast<std::int64_t>(ell);
    if (d == 0) return Verdict::Ramified;
    return oracle::squares_mod(ell).contains(static_cast<std::uint64_t>(d)) ? Verdict::Elkies : Verdict::Atkin;
}

}  // namespace

TEST_CASE("classify_prime examples") {
    const TracePair pair(5, 0);
    // -20 = 1 mod 3
    CHECK(classify_prime(3, pair) == PrimeClass{3, 1, Verdict::Elkies});
    // -20 = 2 mod 11, and 2 is not a square mod 11
    CHECK_FALSE(oracle::squares_mod(11).contains(2));
    CHECK(classify_prime(11, pair) == PrimeClass{11, -1, Verdict::Atkin});
    CHECK(classify_prime(5, pair).verdict == Verdict::Excluded);
    CHECK_THROWS_AS(classify_prime(2, pair), DomainError);
    CHECK_THROWS_AS(classify_prime(9, pair), DomainError);
    // 1 - 28 = -27 = 0 mod 3
    CHECK(classify_prime(3, TracePair(7, 1)).verdict == Verdict::Ramified);
}

TEST_CASE("classify_prime agrees with explicit square lists") {
    for (std::uint64_t p = 3; p <= 200; ++p) {
        if (!oracle::trial_prime(p)) continue;
        const std::int64_t bound = hasse_trace_bound(p);
        for (std::int64_t t = -bound; t <= bound; ++t)
            for (std::uint64_t ell : {3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u}) {
                const TracePair pair(p, t);
                REQUIRE(classify_prime(ell, pair).verdict == oracle_verdict(ell, p, t));
                REQUIRE(classify_prime(ell, pair) == classify_prime(ell, TracePair(p, -t)));
            }
    }
}

TEST_CASE("classify_range examples") {
    const auto prof = classify_range(TracePair(5, 0), 11);
    REQUIRE(prof.classes.size() == 4);
    CHECK(prof.classes[0].verdict == Verdict::Elkies);
    CHECK(prof.classes[1].verdict == Verdict::Excluded);
    CHECK(prof.classes[2].verdict == Verdict::Elkies);
    CHECK(prof.classes[3].verdict == Verdict::Atkin);
    CHECK(prof.n_e == 2);
    CHECK(prof.n_a == 1);
    CHECK(prof.elkies_product == 21);
    CHECK(prof.threshold_squared == 80);
    CHECK(prof.L_p == std::optional<std::uint64_t>{7});

    const auto small = classify_range(TracePair(5, 0), 3);
    CHECK(small.classes.size() == 1);
    CHECK(small.n_e == 1);
    CHECK(small.elkies_product == 3);
    CHECK_FALSE(small.L_p.has_value());

    CHECK_THROWS_AS(classify_range(TracePair(5, 0), 2), DomainError);
}

TEST_CASE("profile bookkeeping and monotonicity") {
    Rng rng(5);
    for (int i = 0; i < 200; ++i) {
        std::uint64_t p;
        do {
            p = rng.between(3, 5000);
        } while (!oracle::trial_prime(p));
        const std::int64_t bound = hasse_trace_bound(p);
        const TracePair pair(p, static_cast<std::int64_t>(rng.between(0, 2 * bound)) - bound);
        BigInt prev_product = 1;
        std::uint64_t prev_count = 0;
        for (std::uint64_t L : {3u, 10u, 50u, 200u, 1000u}) {
            const auto prof = classify_range(pair, L);
            const std::uint64_t odd_primes = prime_pi(L) - 1;
            CHECK(prof.n_e + prof.n_a + prof.n_ramified + prof.n_excluded == odd_primes);
            if (p <= L) CHECK(prof.n_e + prof.n_a <= prime_pi(L) - 1);
            BigInt product = 1;
            for (const auto& c : prof.classes)
                if (c.verdict == Verdict::Elkies) product *= c.ell;
            CHECK(product == prof.elkies_product);
            CHECK(prof.elkies_product >= prev_product);
            CHECK(prof.n_e + prof.n_a >= prev_count);
            prev_product = prof.elkies_product;
            prev_count = prof.n_e + prof.n_a;
        }
    }
}

TEST_CASE("ramified-as-elkies convention") {
    const TracePair pair(7, 1);  // -27: l = 3 ramified
    const auto strict = classify_range(pair, 11);
    const auto loose = classify_range(pair, 11, {true});
    CHECK(strict.n_ramified == 1);
    CHECK(loose.n_ramified == 0);
    CHECK(loose.n_e == strict.n_e + 1);
    CHECK(loose.elkies_product == strict.elkies_product * 3);
    CHECK(loose.n_e + loose.n_a + loose.n_ramified + loose.n_excluded == prime_pi(11) - 1);
}

TEST_CASE("compute_Lp") {
    const LpResult r = compute_Lp(TracePair(5, 0), 100);
    CHECK(r.L_p == std::optional<std::uint64_t>{7});
    CHECK(r.product == 21);
    CHECK(21 * 21 > 16 * 5);
    CHECK(3 * 3 < 16 * 5);

    const LpResult sat = compute_Lp(TracePair(5, 0), 5);
    CHECK(sat.saturated());
    CHECK(sat.limit == 5);
    CHECK(sat.product == 3);

    // Minimality: the product before the last factor does not pass.
    Rng rng(11);
    for (int i = 0; i < 300; ++i) {
        std::uint64_t p;
        do {
            p = rng.between(5, 2'000'000);
        } while (!is_prime(p));
        const std::int64_t bound = hasse_trace_bound(p);
        const TracePair pair(p, static_cast<std::int64_t>(rng.between(0, 2 * bound)) - bound);
        const LpResult lp = compute_Lp(pair, 2000);
        if (lp.saturated()) continue;
        const BigInt sixteen_p = BigInt(16) * p;
        CHECK(lp.product % *lp.L_p == 0);
        const BigInt before = lp.product / *lp.L_p;
        CHECK(lp.product * lp.product > sixteen_p);
        CHECK(before * before <= sixteen_p);
        const auto prof = classify_range(pair, *lp.L_p);
        CHECK(prof.elkies_product == lp.product);
        CHECK(prof.L_p == lp.L_p);
    }
}

TEST_CASE("heuristic_deviation") {
    const auto prof = classify_range(TracePair(5, 0), 11);
    std::vector<ElkiesProfile> one{prof};
    auto s = heuristic_deviation(one);
    CHECK(s.pi_L == 5);
    CHECK(s.mean == doctest::Approx(2.0 / 5));
    CHECK(s.spread == 0.0);

    std::vector<ElkiesProfile> two{prof, prof};
    s = heuristic_deviation(two);
    CHECK(s.mean == 2.0 / 5);
    CHECK(s.spread == 0.0);

    std::vector<ElkiesProfile> mixed{prof, classify_range(TracePair(7, 1), 11)};
    std::vector<ElkiesProfile> reversed{mixed[1], mixed[0]};
    CHECK(heuristic_deviation(mixed).mean == heuristic_deviation(reversed).mean);
    CHECK(heuristic_deviation(mixed).spread == heuristic_deviation(reversed).spread);

    std::vector<ElkiesProfile> bad{prof, classify_range(TracePair(5, 0), 13)};
    CHECK_THROWS_AS(heuristic_deviation(bad), DomainError);
    CHECK_THROWS_AS(heuristic_deviation(std::vector<ElkiesProfile>{}), DomainError);
}
