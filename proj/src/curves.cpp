#include "elkies/curves.hpp"

#include "elkies/arith.hpp"
#include "elkies/errors.hpp"
#include "elkies/parallel.hpp"

#include <string>

namespace elkies {

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

void check_counting_limit(std::uint64_t p, std::uint64_t limit) {
    if (p > limit)
        throw ResourceError("point counting: p=" + std::to_string(p) + " exceeds counting limit " +
                            std::to_string(limit));
}

/// x^3 + a x mod p for every x; callers add b.
std::vector<std::uint32_t> cubic_base(std::uint64_t p, std::uint64_t a) {
    std::vector<std::uint32_t> base(p);
    for (std::uint64_t x = 0; x < p; ++x) {
        const std::uint64_t x3 = mulmod(mulmod(x, x, p), x, p);
        base[x] = static_cast<std::uint32_t>((x3 + mulmod(a, x, p)) % p);
    }
    return base;
}

std::int64_t character_sum(const std::vector<std::uint32_t>& base, const std::vector<std::int8_t>& chi,
                           std::uint32_t b, std::uint32_t p) {
    std::int64_t sum = 0;
    for (std::uint32_t v : base) {
        std::uint32_t w = v + b;
        if (w >= p) w -= p;
        sum += chi[w];
    }
    return sum;
}

}  // namespace

bool is_singular(std::uint64_t p, std::uint64_t a, std::uint64_t b) {
    const std::uint64_t a3 = mulmod(mulmod(a % p, a % p, p), a % p, p);
    const std::uint64_t b2 = mulmod(b % p, b % p, p);
    const u128 disc = static_cast<u128>(mulmod(4, a3, p)) + mulmod(27, b2, p);
    return disc % p == 0;
}

CurveParams::CurveParams(std::uint64_t p, std::uint64_t a, std::uint64_t b) : p_(p), a_(a), b_(b) {
    if (p < 5 || !is_prime(p))
        throw DomainError("curve: p must be a prime >= 5, got " + std::to_string(p));
    if (a >= p || b >= p)
        throw DomainError("curve: coefficients must be reduced mod p");
    if (is_singular(p, a, b))
        throw DomainError("curve: singular, 4a^3 + 27b^2 = 0 mod " + std::to_string(p));
}

std::int64_t hasse_trace_bound(std::uint64_t p) {
    return static_cast<std::int64_t>(isqrt(4 * p));
}

TracePair::TracePair(std::uint64_t p, std::int64_t t) : p_(p), t_(t) {
    if (p < 3 || !is_prime(p))
        throw DomainError("trace pair: p must be an odd prime, got " + std::to_string(p));
    if (p >= kMaxTracePrime) throw DomainError("trace pair: p above 2^61 is not supported");
    const std::int64_t bound = hasse_trace_bound(p);
    if (t > bound || t < -bound)
        throw DomainError("trace pair: t=" + std::to_string(t) + " violates t^2 <= 4p for p=" +
                          std::to_string(p));
}

std::uint64_t TracePair::discriminant_mod(std::uint64_t modulus) const noexcept {
    const __int128 d = static_cast<__int128>(t_) * t_ - static_cast<__int128>(4) * p_;
    __int128 r = d % static_cast<__int128>(modulus);
    if (r < 0) r += modulus;
    return static_cast<std::uint64_t>(r);
}

std::uint64_t count_points(const CurveParams& curve, std::uint64_t counting_limit) {
    const std::uint64_t p = curve.p();
    check_counting_limit(p, counting_limit);
    std::int64_t sum = 0;
    for (std::uint64_t x = 0; x < p; ++x) {
        const std::uint64_t f = (mulmod(mulmod(x, x, p), x, p) + mulmod(curve.a(), x, p) + curve.b()) % p;
        sum += jacobi_unchecked(f, p);
    }
    return static_cast<std::uint64_t>(static_cast<std::int64_t>(p) + 1 + sum);
}

TracePair trace(const CurveParams& curve, std::uint64_t counting_limit) {
    const auto n = static_cast<std::int64_t>(count_points(curve, counting_limit));
    return TracePair(curve.p(), static_cast<std::int64_t>(curve.p()) + 1 - n);
}

PointCounter::PointCounter(std::uint64_t p, std::uint64_t counting_limit) : p_(p) {
    if (p < 5 || !is_prime(p))
        throw DomainError("point counter: p must be a prime >= 5, got " + std::to_string(p));
    check_counting_limit(p, counting_limit);
    if (p >= (std::uint64_t{1} << 31)) throw ResourceError("point counter: p must be below 2^31");
    table_.assign(p, -1);
    table_[0] = 0;
    for (std::uint64_t x = 1; x <= p / 2; ++x) table_[x * x % p] = 1;
}

std::int64_t PointCounter::trace(std::uint64_t a, std::uint64_t b) const {
    return trace_from_base(base_for_a(a), b);
}

std::vector<std::uint32_t> PointCounter::base_for_a(std::uint64_t a) const {
    return cubic_base(p_, a % p_);
}

std::int64_t PointCounter::trace_from_base(const std::vector<std::uint32_t>& base, std::uint64_t b) const {
    return -character_sum(base, table_, static_cast<std::uint32_t>(b % p_), static_cast<std::uint32_t>(p_));
}

void PointCounter::traces_for_a(std::uint64_t a, std::vector<std::int64_t>& out) const {
    const auto base = cubic_base(p_, a % p_);
    out.resize(p_);
    for (std::uint64_t b = 0; b < p_; ++b)
        out[b] = -character_sum(base, table_, static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(p_));
}

std::vector<std::int64_t> TraceSpectrum::missing() const {
    std::vector<std::int64_t> out;
    const std::int64_t bound = hasse_trace_bound(p);
    for (std::int64_t t = -bound; t <= bound; ++t)
        if (!witnesses.contains(t)) out.push_back(t);
    return out;
}

TraceSpectrum trace_spectrum(std::uint64_t p, std::uint64_t spectrum_limit, unsigned workers) {
    if (p < 5 || !is_prime(p))
        throw DomainError("trace spectrum: p must be a prime >= 5, got " + std::to_string(p));
    if (p > spectrum_limit)
        throw ResourceError("trace spectrum: p=" + std::to_string(p) + " exceeds spectrum limit " +
                            std::to_string(spectrum_limit) + " (cost grows as p^3)");
    const PointCounter counter(p, std::max(p, kDefaultCountingLimit));
    const auto expected = static_cast<std::size_t>(2 * hasse_trace_bound(p) + 1);

    TraceSpectrum spectrum;
    spectrum.p = p;
    const std::uint64_t block = std::max(1u, workers);
    std::vector<std::vector<std::int64_t>> traces(block);
    for (std::uint64_t a0 = 0; a0 < p && spectrum.witnesses.size() < expected; a0 += block) {
        const std::uint64_t width = std::min(block, p - a0);
        detail::parallel_for(width, workers, [&](std::size_t i) { counter.traces_for_a(a0 + i, traces[i]); });
        for (std::uint64_t i = 0; i < width; ++i) {
            const std::uint64_t a = a0 + i;
            for (std::uint64_t b = 0; b < p; ++b) {
                if (is_singular(p, a, b)) continue;
                spectrum.witnesses.try_emplace(traces[i][b], p, a, b);
            }
        }
    }
    return spectrum;
}

std::optional<CurveParams> curve_with_trace(const TracePair& pair, std::uint64_t budget,
                                            std::uint64_t counting_limit) {
    const std::uint64_t p = pair.p();
    if (p < 5) throw DomainError("curve_with_trace: short Weierstrass form needs p >= 5");
    const PointCounter counter(p, counting_limit);
    std::uint64_t attempts = 0;
    for (std::uint64_t a = 0; a < p; ++a) {
        const auto base = counter.base_for_a(a);
        for (std::uint64_t b = 0; b < p; ++b) {
            if (is_singular(p, a, b)) continue;
            if (attempts++ >= budget) return std::nullopt;
            if (counter.trace_from_base(base, b) == pair.t()) return CurveParams(p, a, b);
        }
    }
    return std::nullopt;
}

DeuringReport verify_deuring(std::uint64_t p, std::uint64_t spectrum_limit, unsigned workers) {
    const auto spectrum = trace_spectrum(p, spectrum_limit, workers);
    DeuringReport report;
    report.p = p;
    report.missing = spectrum.missing();
    report.traces_found = spectrum.witnesses.size();
    report.traces_expected = static_cast<std::size_t>(2 * hasse_trace_bound(p) + 1);
    report.passed = report.missing.empty();
    return report;
}

}  // namespace elkies
