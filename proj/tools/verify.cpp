#include "verify.hpp"

#include "elkies/arith.hpp"
#include "elkies/charsums.hpp"
#include "elkies/curves.hpp"
#include "elkies/errors.hpp"
#include "elkies/rng.hpp"

#include <algorithm>
#include <bit>

namespace elkies::cli {

namespace {

Json base_report(const char* target) {
    Json j;
    j["target"] = target;
    j["passed"] = true;
    j["checks"] = 0;
    j["failures"] = Json::array();
    return j;
}

void note_failure(Json& report, Json detail) {
    report["passed"] = false;
    if (report["failures"].size() < 100) report["failures"].push_back(std::move(detail));
}

/// Uniform over the bit lengths of [lo, hi], then uniform inside the chosen
/// length: a cheap integer-only log-uniform draw.
std::uint64_t log_uniform(Rng& rng, std::uint64_t lo, std::uint64_t hi) {
    const int b_lo = std::bit_width(lo), b_hi = std::bit_width(hi);
    const int b = static_cast<int>(rng.between(b_lo, b_hi));
    const std::uint64_t from = std::max(lo, std::uint64_t{1} << (b - 1));
    const std::uint64_t to = b >= 64 ? hi : std::min(hi, (std::uint64_t{1} << b) - 1);
    return rng.between(from, to);
}

}  // namespace

Json verify_deuring_sweep(std::uint64_t min_p, std::uint64_t max_p, unsigned workers) {
    Json report = base_report("deuring");
    report["min_p"] = min_p;
    report["max_p"] = max_p;
    std::uint64_t checks = 0, traces = 0;
    for (std::uint64_t p : primes_in_range(std::max<std::uint64_t>(5, min_p), max_p)) {
        const DeuringReport r = verify_deuring(p, std::max(kDefaultSpectrumLimit, max_p), workers);
        ++checks;
        traces += r.traces_found;
        if (!r.passed) note_failure(report, Json{{"p", p}, {"missing", r.missing}});
    }
    report["checks"] = checks;
    report["traces_attained"] = traces;
    return report;
}

Json verify_complete_sums(std::uint64_t max_m, unsigned per_m, std::uint64_t seed) {
    Json report = base_report("complete-sum");
    report["max_m"] = max_m;
    report["per_m"] = per_m;
    report["seed"] = seed;
    std::uint64_t checks = 0, moduli = 0;
    for (std::uint64_t m = 1; m <= max_m; m += 2) {
        if (!is_squarefree(m)) continue;
        ++moduli;
        const int mu = mobius(static_cast<std::int64_t>(m));
        Rng rng(derive_seed(seed, m));
        for (unsigned i = 0; i < per_m; ++i) {
            std::uint64_t a;
            do {
                a = rng.below(std::max<std::uint64_t>(m, 2));
            } while (m > 1 && gcd_u64(a, m) != 1);
            const std::int64_t s = complete_sum(static_cast<std::int64_t>(a), m);
            ++checks;
            if (s != mu) note_failure(report, Json{{"a", a}, {"m", m}, {"sum", s}, {"mobius", mu}});
        }
    }
    report["checks"] = checks;
    report["moduli"] = moduli;
    return report;
}

Json verify_gcd_identity(std::int64_t max_uv, std::uint64_t max_m) {
    Json report = base_report("gcd");
    report["max_uv"] = max_uv;
    report["max_m"] = max_m;
    std::uint64_t checks = 0;
    for (std::uint64_t m = 1; m <= max_m; ++m) {
        if (!is_squarefree(m)) continue;
        for (std::int64_t u = 0; u <= max_uv; ++u)
            for (std::int64_t v = 0; v <= max_uv; ++v) {
                ++checks;
                if (!gcd_identity_check(u, v, m)) note_failure(report, Json{{"u", u}, {"v", v}, {"m", m}});
            }
    }
    report["checks"] = checks;

    // m = 4, u - v = 2: gcd(4, 4) = 4 but gcd(2, 4) = 2, so the square-free
    // precondition must reject it.
    bool rejected = false;
    try {
        gcd_identity_check(2, 0, 4);
    } catch (const DomainError&) {
        rejected = true;
    }
    report["non_squarefree_counterexample"] = {{"u", 2}, {"v", 0}, {"m", 4},
                                               {"gcd_square", gcd_u64(4, 4)}, {"gcd_plain", gcd_u64(2, 4)},
                                               {"rejected", rejected}};
    if (!rejected) note_failure(report, Json{{"counterexample_not_rejected", true}});
    return report;
}

Json verify_long_sums(std::uint64_t max_m, unsigned periods) {
    Json report = base_report("lemma-long");
    report["max_m"] = max_m;
    report["periods"] = periods;
    std::uint64_t checks = 0;
    double max_ratio = 0.0;
    Json worst = nullptr;
    for (std::uint64_t m = 1; m <= max_m; m += 2) {
        if (!is_squarefree(m)) continue;
        for (std::uint64_t a = 0; a < std::max<std::uint64_t>(m, 1); ++a) {
            if (gcd_u64(a, m) != 1) continue;
            const std::int64_t complete = complete_sum(static_cast<std::int64_t>(a), m);
            for (std::uint64_t k = 0; k < periods; ++k) {
                const std::uint64_t T = (m - 1) / 2 + k * m;
                if (T < 1) continue;
                const LongSumQuery q{static_cast<std::int64_t>(a), m, T};
                const std::int64_t expected = static_cast<std::int64_t>(2 * k + 1) * complete;
                ++checks;
                if (m > 1) {
                    const CharSumReport r = long_sum_report(q);
                    if (r.lhs != expected)
                        note_failure(report, Json{{"a", a}, {"m", m}, {"T", T}, {"sum", r.lhs}, {"expected", expected}});
                    if (*r.ratio > max_ratio) {
                        max_ratio = *r.ratio;
                        worst = Json{{"a", a}, {"m", m}, {"T", T}, {"sum", r.lhs}};
                    }
                } else if (long_sum(q) != expected) {
                    note_failure(report, Json{{"a", a}, {"m", m}, {"T", T}});
                }
            }
        }
    }
    report["checks"] = checks;
    report["max_ratio_C1"] = max_ratio;
    report["max_ratio_at"] = worst;
    return report;
}

Json verify_short_sums(unsigned count, std::uint64_t max_m, unsigned r_span, std::uint64_t seed) {
    // N ranges over [P^9, 2^62], so prime factors are capped at 113 (127^9 > 2^62).
    constexpr std::uint64_t kMaxPrimeFactor = 113;
    constexpr std::uint64_t kMaxN = std::uint64_t{1} << 62;
    Json report = base_report("lemma-short");
    report["count"] = count;
    report["max_m"] = max_m;
    report["r_span"] = r_span;
    report["seed"] = seed;
    if (max_m < 3) throw DomainError("verify lemma-short: max_m must be >= 3");

    Rng rng(seed);
    std::uint64_t checks = 0;
    double max_ratio = 0.0;
    Json worst = nullptr;
    for (unsigned done = 0; done < count;) {
        const std::uint64_t m = rng.between(3, max_m) | 1;
        if (m > max_m || !is_squarefree(m)) continue;
        const Factorization f = factorize(m);
        const std::uint64_t P = f.largest_prime();
        if (P > kMaxPrimeFactor) continue;
        std::uint64_t p9 = 1;
        for (int i = 0; i < 9; ++i) p9 *= P;
        const std::uint64_t N = log_uniform(rng, p9, kMaxN);
        const auto u = static_cast<std::int64_t>(rng.between(0, 2'000'000)) - 1'000'000;
        std::int64_t v;
        if (rng.below(3) == 0) {
            const std::uint64_t ell = f.factors[rng.below(f.factors.size())].prime;
            v = u + static_cast<std::int64_t>(ell * rng.between(0, 1000));
        } else {
            v = static_cast<std::int64_t>(rng.between(0, 2'000'000)) - 1'000'000;
        }
        unsigned r_min = 1;
        const BigInt m3 = BigInt(m) * m * m;
        while (boost::multiprecision::pow(BigInt(N), r_min) <= m3) ++r_min;

        for (unsigned r = r_min; r <= r_min + r_span; ++r) {
            const ShortSumQuery q{u, v, m, N, r};
            const CharSumReport rep = short_sum(q);
            ++checks;
            if (static_cast<double>(rep.lhs) > *rep.bound)
                note_failure(report, Json{{"query", rep.query}, {"lhs", rep.lhs}, {"bound", *rep.bound}});
            if (*rep.ratio > max_ratio) {
                max_ratio = *rep.ratio;
                worst = Json{{"query", rep.query}, {"lhs", rep.lhs}, {"bound", *rep.bound}};
            }
        }
        ++done;
    }
    report["checks"] = checks;
    report["max_ratio"] = max_ratio;
    report["max_ratio_at"] = worst;
    return report;
}

std::vector<WInstance> random_w_instances(unsigned count, std::uint64_t q_lo, std::uint64_t q_hi,
                                          unsigned max_primes, std::uint64_t max_T, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<WInstance> out;
    while (out.size() < count) {
        WInstance w;
        w.Q = log_uniform(rng, q_lo, q_hi);
        w.M = rng.between(3, 60);
        w.L = rng.between(w.M, w.M + 40);
        w.T = rng.between(1, max_T);
        if (primes_in_range(w.M, w.L).size() > max_primes) continue;
        out.push_back(w);
    }
    return out;
}

Json verify_w_equality(const std::vector<WInstance>& instances, unsigned workers, std::uint64_t budget) {
    Json report = base_report("w-equality");
    Json rows = Json::array();
    for (const WInstance& w : instances) {
        SieveSumConfig c;
        c.Q = w.Q;
        c.M = w.M;
        c.L = w.L;
        c.T = w.T;
        c.workers = workers;
        c.work_budget = budget;
        const std::int64_t direct = w_product(c);
        const WExpansion expanded = w_expanded(c);
        const auto primes = half_interval_primes(w.Q).size();
        const bool main_term_ok = expanded.table.front().m == 1 &&
                                  expanded.table.front().S == static_cast<std::int64_t>(w.T * primes);
        rows.push_back({{"Q", w.Q}, {"M", w.M}, {"L", w.L}, {"T", w.T},
                        {"moduli", expanded.table.size()}, {"W_product", direct}, {"W_expanded", expanded.W}});
        if (direct != expanded.W || !main_term_ok) note_failure(report, rows.back());
    }
    report["checks"] = instances.size();
    report["instances"] = rows;
    return report;
}

}  // namespace elkies::cli
