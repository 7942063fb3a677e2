#include "elkies/search.hpp"

#include "elkies/errors.hpp"
#include "elkies/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

namespace elkies {

namespace {

using u128 = unsigned __int128;

/// Multiplies many word-sized factors into a BigInt, flushing a 64-bit
/// accumulator only when it would overflow.
class ProductAccumulator {
public:
    void multiply(std::uint64_t f) {
        const u128 next = static_cast<u128>(word_) * f;
        if ((next >> 64) != 0) {
            big_ *= word_;
            word_ = f;
        } else {
            word_ = static_cast<std::uint64_t>(next);
        }
    }
    BigInt value() const { return big_ * word_; }

private:
    BigInt big_ = 1;
    std::uint64_t word_ = 1;
};

std::uint64_t traces_per_prime(const SearchConfig& c, std::uint64_t p) {
    const auto all = static_cast<std::uint64_t>(2 * hasse_trace_bound(p) + 1);
    return c.mode == SearchMode::AllTraces ? all : std::min(all, c.sample_k);
}

std::vector<std::int64_t> select_traces(const SearchConfig& c, std::uint64_t p) {
    const std::int64_t bound = hasse_trace_bound(p);
    std::vector<std::int64_t> ts;
    const auto all = static_cast<std::uint64_t>(2 * bound + 1);
    if (c.mode == SearchMode::AllTraces || c.sample_k >= all) {
        for (std::int64_t t = -bound; t <= bound; ++t) ts.push_back(t);
        return ts;
    }
    Rng rng(derive_seed(c.seed, p));
    std::set<std::int64_t> chosen;
    while (chosen.size() < c.sample_k)
        chosen.insert(static_cast<std::int64_t>(rng.below(all)) - bound);
    return {chosen.begin(), chosen.end()};
}

bool ranks_before(const SearchRecord& x, const SearchRecord& y) {
    if (x.ratio_logp != y.ratio_logp) return x.ratio_logp > y.ratio_logp;
    if (x.pair.p() != y.pair.p()) return x.pair.p() < y.pair.p();
    return x.pair.t() < y.pair.t();
}

/// Strictly worse for SEA: larger L_p, then smaller product, smaller |t|, t > 0.
bool is_worse(const SearchRecord& x, const SearchRecord& y) {
    if (x.saturated != y.saturated) return x.saturated;
    if (x.L_p != y.L_p) return x.L_p > y.L_p;
    if (x.elkies_product_at_cap != y.elkies_product_at_cap)
        return x.elkies_product_at_cap < y.elkies_product_at_cap;
    const std::int64_t ax = std::abs(x.pair.t()), ay = std::abs(y.pair.t());
    if (ax != ay) return ax < ay;
    return x.pair.t() > y.pair.t();
}

}  // namespace

bool check_cond1(const TracePair& pair, std::uint64_t M, std::uint64_t L) {
    if (M < 3 || M > L)
        throw DomainError("check_cond1: need 3 <= M <= L, got M=" + std::to_string(M) + " L=" + std::to_string(L));
    for (std::uint64_t ell : primes_in_range(M, L)) {
        if (ell == pair.p()) continue;  // l | q is neither Elkies nor Atkin
        if (jacobi_unchecked(pair.discriminant_mod(ell), ell) == 1) return false;
    }
    return true;
}

void SearchConfig::validate() const {
    if (prime_lo < 5) throw DomainError("search: prime_lo must be >= 5");
    if (prime_lo > prime_hi) throw DomainError("search: empty prime range (lo > hi)");
    if (prime_hi >= kMaxTracePrime) throw DomainError("search: prime_hi must be below 2^61");
    if (L_cap < 3) throw DomainError("search: L_cap must be >= 3");
    if (mode == SearchMode::HasseSample && sample_k < 1) throw DomainError("search: sample size k must be >= 1");
    if (cond1 && (cond1->first < 3 || cond1->first > cond1->second))
        throw DomainError("search: cond1 interval needs 3 <= M <= L");
}

SearchRecord evaluate_pair(const TracePair& pair, std::span<const std::uint64_t> primes, std::uint64_t L_cap,
                           const ClassifyOptions& options,
                           std::optional<std::pair<std::uint64_t, std::uint64_t>> cond1) {
    const u128 threshold = static_cast<u128>(16) * pair.p();
    u128 running = 1;
    std::optional<std::uint64_t> L_p;
    ProductAccumulator product;
    for (std::uint64_t ell : primes) {
        if (ell < 3) continue;
        if (ell > L_cap) break;
        PrimeClass c{ell, 0, Verdict::Excluded};
        if (ell != pair.p()) {
            c.symbol = jacobi_unchecked(pair.discriminant_mod(ell), ell);
            c.verdict = c.symbol > 0 ? Verdict::Elkies : c.symbol < 0 ? Verdict::Atkin : Verdict::Ramified;
        }
        if (!counts_as_elkies(c, options)) continue;
        product.multiply(ell);
        if (!L_p) {
            running *= ell;
            if ((running >> 64) != 0 || running * running > threshold) L_p = ell;
        }
    }

    SearchRecord r;
    r.pair = pair;
    r.saturated = !L_p.has_value();
    r.L_p = L_p.value_or(L_cap);
    r.elkies_product_at_cap = product.value();
    const double log_p = std::log(static_cast<double>(pair.p()));
    r.ratio_logp = static_cast<double>(r.L_p) / log_p;
    const double lll = std::log(std::log(log_p));
    if (lll > 0.0) r.ratio_logloglog = static_cast<double>(r.L_p) / (log_p * lll);
    if (cond1 && check_cond1(pair, cond1->first, cond1->second)) r.cond1_interval = cond1;
    return r;
}

ScanResult scan_primes(const SearchConfig& config) {
    config.validate();
    ScanResult result;
    auto primes = primes_in_range(config.prime_lo, config.prime_hi,
                                  std::max(config.prime_hi, kDefaultSieveBudget));
    result.primes_in_range = primes.size();

    std::uint64_t work = 0;
    std::size_t keep = 0;
    for (; keep < primes.size(); ++keep) {
        const std::uint64_t w = traces_per_prime(config, primes[keep]);
        if (work + w > config.budget) break;
        work += w;
    }
    result.truncated = keep < primes.size();
    primes.resize(keep);
    result.primes_scanned = keep;
    result.traces_evaluated = work;

    const auto small = sieve_primes(config.L_cap);
    const ClassifyOptions options{config.ramified_as_elkies};
    std::vector<std::vector<SearchRecord>> per_prime(primes.size());
    detail::parallel_for(primes.size(), config.workers, [&](std::size_t i) {
        const std::uint64_t p = primes[i];
        for (std::int64_t t : select_traces(config, p)) {
            SearchRecord r = evaluate_pair(TracePair(p, t), small, config.L_cap, options, config.cond1);
            if (r.ratio_logp >= config.threshold) per_prime[i].push_back(std::move(r));
        }
    });

    for (auto& records : per_prime)
        for (auto& r : records) result.records.push_back(std::move(r));
    std::sort(result.records.begin(), result.records.end(), ranks_before);
    return result;
}

SearchRecord worst_trace(std::uint64_t p, std::uint64_t L_cap, const ClassifyOptions& options) {
    if (L_cap < 3) throw DomainError("worst_trace: L_cap must be >= 3");
    const TracePair probe(p, 0);
    const auto small = sieve_primes(L_cap);
    const std::int64_t bound = hasse_trace_bound(p);
    SearchRecord best = evaluate_pair(probe, small, L_cap, options);
    for (std::int64_t t = -bound; t <= bound; ++t) {
        SearchRecord r = evaluate_pair(TracePair(p, t), small, L_cap, options);
        if (is_worse(r, best)) best = std::move(r);
    }
    return best;
}

std::optional<Representation> represent_4p_minus_t2(std::uint64_t n, std::optional<std::uint64_t> t_bound) {
    if (n < 3 || (n & 1) == 0)
        throw DomainError("represent_4p_minus_t2: n must be odd and >= 3, got " + std::to_string(n));
    if (n > (std::uint64_t{1} << 40)) throw DomainError("represent_4p_minus_t2: n above 2^40 is not supported");
    const std::uint64_t bound = t_bound.value_or(n);
    for (std::uint64_t t = 0; t <= bound; ++t) {
        const u128 s = static_cast<u128>(n) + static_cast<u128>(t) * t;
        if (s % 4 != 0) continue;
        const u128 p = s / 4;
        if ((p >> 64) != 0) break;
        if (is_prime(static_cast<std::uint64_t>(p))) return Representation{static_cast<std::uint64_t>(p), t};
    }
    return std::nullopt;
}

std::vector<std::uint64_t> coverage_sweep(std::uint64_t n_lo, std::uint64_t n_hi, std::uint64_t budget) {
    std::vector<std::uint64_t> exceptions;
    if (n_lo > n_hi) return exceptions;
    if ((n_hi - n_lo) / 4 + 1 > budget)
        throw ResourceError("coverage_sweep: range holds more than " + std::to_string(budget) + " candidates");
    std::uint64_t n = std::max<std::uint64_t>(n_lo, 3);
    n += (3 - n % 4 + 4) % 4;
    for (; n <= n_hi; n += 4)
        if (!represent_4p_minus_t2(n)) exceptions.push_back(n);
    return exceptions;
}

std::vector<CurveSample> sample_curve_profiles(std::uint64_t p_lo, std::uint64_t p_hi, std::uint64_t L,
                                               std::size_t samples, std::uint64_t seed, unsigned workers,
                                               const ClassifyOptions& options) {
    if (samples == 0) throw DomainError("sample_curve_profiles: sample size must be >= 1");
    if (p_lo < 5 || p_lo > p_hi) throw DomainError("sample_curve_profiles: need 5 <= p_lo <= p_hi");
    if (L < 3) throw DomainError("sample_curve_profiles: L must be >= 3");
    if (primes_in_range(p_lo, p_hi, std::max(p_hi, kDefaultSieveBudget)).empty())
        throw DomainError("sample_curve_profiles: no prime in range");

    Rng rng(seed);
    std::vector<CurveParams> curves;
    curves.reserve(samples);
    while (curves.size() < samples) {
        const std::uint64_t p = rng.between(p_lo, p_hi);
        if (!is_prime(p)) continue;
        for (;;) {
            const std::uint64_t a = rng.below(p), b = rng.below(p);
            if (is_singular(p, a, b)) continue;
            curves.emplace_back(p, a, b);
            break;
        }
    }

    std::vector<std::optional<CurveSample>> slots(samples);
    detail::parallel_for(samples, workers, [&](std::size_t i) {
        const CurveParams& c = curves[i];
        const PointCounter counter(c.p());
        const TracePair pair(c.p(), counter.trace(c.a(), c.b()));
        slots[i].emplace(CurveSample{c, classify_range(pair, L, options)});
    });
    std::vector<CurveSample> out;
    out.reserve(samples);
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

}  // namespace elkies
