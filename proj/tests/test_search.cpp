#include "oracles.hpp"

#include "elkies/errors.hpp"
#include "elkies/search.hpp"

#include <doctest.h>

#include <cmath>

using namespace elkies;

namespace {

struct OracleLp {
    std::uint64_t L_p = 0;
    bool saturated = true;
    std::uint64_t product = 1;
};

/// L_p from Euler-criterion symbols, and the Elkies product over the whole
/// range up to the cap (below 2^64 for caps <= 40).
OracleLp oracle_lp(std::uint64_t p, std::int64_t t, std::uint64_t cap) {
    OracleLp r;
    r.L_p = cap;
    const std::int64_t d = t * t - 4 * static_cast<std::int64_t>(p);
    for (std::uint64_t ell = 3; ell <= cap; ++ell) {
        if (!oracle::trial_prime(ell) || ell == p) continue;
        if (oracle::legendre(d, ell) != 1) continue;
        r.product *= ell;
        if (r.saturated && static_cast<unsigned __int128>(r.product) * r.product > 16 * p) {
            r.L_p = ell;
            r.saturated = false;
        }
    }
    return r;
}

SearchConfig small_config(std::uint64_t lo, std::uint64_t hi, std::uint64_t cap) {
    SearchConfig c;
    c.prime_lo = lo;
    c.prime_hi = hi;
    c.L_cap = cap;
    return c;
}

}  // namespace

TEST_CASE("check_cond1 examples") {
    CHECK(check_cond1(TracePair(7, 1), 3, 3));
    CHECK_FALSE(check_cond1(TracePair(5, 0), 3, 3));
    CHECK(check_cond1(TracePair(5, 0), 24, 28));
    CHECK_THROWS_AS(check_cond1(TracePair(5, 0), 2, 7), DomainError);
    CHECK_THROWS_AS(check_cond1(TracePair(5, 0), 11, 7), DomainError);
}

TEST_CASE("check_cond1 matches the Elkies product over [M, L]") {
    for (std::uint64_t p : {5u, 7u, 11u, 101u, 997u}) {
        const std::int64_t bound = hasse_trace_bound(p);
        for (std::int64_t t = -bound; t <= bound; ++t) {
            const TracePair pair(p, t);
            for (std::uint64_t M = 3; M <= 40; M += 3)
                for (std::uint64_t L = M; L <= 60; L += 7) {
                    BigInt product = 1;
                    for (const auto& c : classify_range(pair, L).classes)
                        if (c.ell >= M && c.verdict == Verdict::Elkies) product *= c.ell;
                    REQUIRE(check_cond1(pair, M, L) == (product == 1));
                }
        }
    }
}

TEST_CASE("scan over a single small prime") {
    const auto res = scan_primes(small_config(5, 5, 37));
    REQUIRE(res.records.size() == 9);
    CHECK_FALSE(res.truncated);
    CHECK(res.primes_scanned == 1);
    CHECK(res.traces_evaluated == 9);
    std::set<std::int64_t> ts;
    for (const auto& r : res.records) {
        ts.insert(r.pair.t());
        const auto want = oracle_lp(5, r.pair.t(), 37);
        CHECK(r.L_p == want.L_p);
        CHECK(r.saturated == want.saturated);
        CHECK(r.elkies_product_at_cap == want.product);
        CHECK(r.ratio_logp == doctest::Approx(static_cast<double>(want.L_p) / std::log(5.0)));
        if (r.pair.t() == 0) CHECK(r.L_p == 7);
    }
    CHECK(ts.size() == 9);
    for (std::size_t i = 1; i < res.records.size(); ++i) {
        const auto& a = res.records[i - 1];
        const auto& b = res.records[i];
        CHECK((a.ratio_logp > b.ratio_logp || (a.ratio_logp == b.ratio_logp && a.pair.t() < b.pair.t())));
    }
    // log log log 5 < 0
    CHECK_FALSE(res.records[0].ratio_logloglog.has_value());
}

TEST_CASE("scan threshold, validation and budget") {
    auto c = small_config(5, 7, 37);
    c.threshold = std::numeric_limits<double>::infinity();
    CHECK(scan_primes(c).records.empty());

    CHECK_THROWS_AS(scan_primes(small_config(7, 5, 37)), DomainError);
    CHECK_THROWS_AS(scan_primes(small_config(3, 5, 37)), DomainError);
    CHECK_THROWS_AS(scan_primes(small_config(5, 7, 2)), DomainError);

    c = small_config(5, 100, 50);
    c.budget = 30;
    const auto part = scan_primes(c);
    CHECK(part.truncated);
    CHECK(part.traces_evaluated <= 30);
    CHECK(part.primes_scanned < part.primes_in_range);
}

TEST_CASE("scan agrees with the oracle and is schedule independent") {
    auto c = small_config(3001, 3301, 40);
    c.cond1 = std::pair<std::uint64_t, std::uint64_t>{5, 13};
    const auto one = scan_primes(c);
    c.workers = 4;
    const auto four = scan_primes(c);
    CHECK(one.records == four.records);
    std::uint64_t expected = 0;
    for (std::uint64_t p = 3001; p <= 3301; ++p)
        if (oracle::trial_prime(p)) expected += 2 * static_cast<std::uint64_t>(std::sqrt(4.0 * p)) + 1;
    CHECK(one.records.size() == expected);
    for (std::size_t i = 0; i < one.records.size(); i += 97) {
        const auto& r = one.records[i];
        const auto want = oracle_lp(r.pair.p(), r.pair.t(), 40);
        CHECK(r.L_p == want.L_p);
        CHECK(r.saturated == want.saturated);
        CHECK(r.cond1_interval.has_value() == check_cond1(r.pair, 5, 13));
    }
}

TEST_CASE("hasse-sample mode") {
    auto c = small_config(1000, 1200, 60);
    c.mode = SearchMode::HasseSample;
    c.sample_k = 5;
    const auto a = scan_primes(c);
    const auto b = scan_primes(c);
    CHECK(a.records == b.records);
    CHECK(a.traces_evaluated == 5 * a.primes_scanned);
    c.seed += 1;
    CHECK_FALSE(scan_primes(c).records == a.records);
    c.sample_k = 0;
    CHECK_THROWS_AS(scan_primes(c), DomainError);
}

TEST_CASE("worst_trace") {
    const auto w = worst_trace(5, 37);
    OracleLp best{};
    std::int64_t best_t = 0;
    bool first = true;
    for (std::int64_t t = -4; t <= 4; ++t) {
        const auto o = oracle_lp(5, t, 37);
        auto better = [&] {
            if (first) return true;
            if (o.saturated != best.saturated) return o.saturated;
            if (o.L_p != best.L_p) return o.L_p > best.L_p;
            if (o.product != best.product) return o.product < best.product;
            if (std::abs(t) != std::abs(best_t)) return std::abs(t) < std::abs(best_t);
            return t > best_t;
        };
        if (better()) {
            best = o;
            best_t = t;
            first = false;
        }
    }
    CHECK(w.pair.t() == best_t);
    CHECK(w.L_p == best.L_p);

    const auto sat = worst_trace(5, 3);
    CHECK(sat.saturated);
    CHECK(oracle::legendre(sat.pair.t() * sat.pair.t() - 20, 3) != 1);

    for (std::uint64_t p : {11u, 101u, 1009u}) {
        const auto worst = worst_trace(p, 80);
        const auto t1 = scan_primes(small_config(p, p, 80));
        for (const auto& r : t1.records) CHECK(worst.ratio_logp >= r.ratio_logp);
        std::uint64_t prev = 0;
        for (std::uint64_t cap : {3u, 10u, 30u, 80u, 200u}) {
            const auto wc = worst_trace(p, cap);
            CHECK(wc.L_p >= prev);
            prev = wc.L_p;
        }
    }
}

TEST_CASE("represent_4p_minus_t2") {
    auto r = represent_4p_minus_t2(19);
    REQUIRE(r.has_value());
    CHECK(r->p == 5);
    CHECK(r->t == 1);
    CHECK_FALSE(represent_4p_minus_t2(13).has_value());
    CHECK_THROWS_AS(represent_4p_minus_t2(12), DomainError);
    CHECK_THROWS_AS(represent_4p_minus_t2(1), DomainError);
    for (std::uint64_t n = 3; n < 3000; n += 2) {
        std::optional<std::pair<std::uint64_t, std::uint64_t>> want;
        for (std::uint64_t t = 0; t <= n && !want; ++t)
            if ((n + t * t) % 4 == 0 && oracle::trial_prime((n + t * t) / 4)) want = {{(n + t * t) / 4, t}};
        const auto got = represent_4p_minus_t2(n);
        REQUIRE(got.has_value() == want.has_value());
        if (got) {
            CHECK(got->p == want->first);
            CHECK(got->t == want->second);
            CHECK(4 * got->p - got->t * got->t == n);
        }
    }
}

TEST_CASE("coverage_sweep") {
    CHECK(coverage_sweep(10, 5).empty());
    const auto ex = coverage_sweep(3, 2001);
    for (std::uint64_t n : ex) {
        CHECK(n % 4 == 3);
        CHECK_FALSE(represent_4p_minus_t2(n).has_value());
    }
    for (std::uint64_t n = 3; n <= 2001; n += 4)
        if (std::find(ex.begin(), ex.end(), n) == ex.end()) CHECK(represent_4p_minus_t2(n).has_value());
    CHECK_THROWS_AS(coverage_sweep(3, 1000, 10), ResourceError);
}

TEST_CASE("sample_curve_profiles") {
    const auto a = sample_curve_profiles(1000, 2000, 100, 30, 9, 1);
    const auto b = sample_curve_profiles(1000, 2000, 100, 30, 9, 3);
    REQUIRE(a.size() == 30);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].curve == b[i].curve);
        CHECK(a[i].profile.n_e == b[i].profile.n_e);
        const auto& c = a[i].curve;
        const auto n = oracle::naive_points(c.p(), c.a(), c.b());
        CHECK(a[i].profile.pair.t() == static_cast<std::int64_t>(c.p() + 1) - static_cast<std::int64_t>(n));
    }
    CHECK_THROWS_AS(sample_curve_profiles(1000, 2000, 100, 0, 9), DomainError);
    CHECK_THROWS_AS(sample_curve_profiles(24, 28, 100, 3, 9), DomainError);
}
