#pragma once

/**
 * @file curves.hpp
 * @brief Short Weierstrass curves y^2 = x^3 + ax + b over F_p (p >= 5),
 *        point counting by the Legendre character sum, and trace spectra.
 */

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace elkies {

inline constexpr std::uint64_t kDefaultCountingLimit = std::uint64_t{1} << 26;
inline constexpr std::uint64_t kDefaultSpectrumLimit = 3000;

/// Bound on p accepted by TracePair, so that t^2 - 4p stays well inside 128 bits
/// and 4p inside 64 bits.
inline constexpr std::uint64_t kMaxTracePrime = std::uint64_t{1} << 61;

/// A nonsingular curve over a prime field. Construction validates: p prime
/// and >= 5, a and b reduced, 4a^3 + 27b^2 != 0 mod p.
class CurveParams {
public:
    CurveParams(std::uint64_t p, std::uint64_t a, std::uint64_t b);

    std::uint64_t p() const noexcept { return p_; }
    std::uint64_t a() const noexcept { return a_; }
    std::uint64_t b() const noexcept { return b_; }

    friend auto operator<=>(const CurveParams&, const CurveParams&) = default;

private:
    std::uint64_t p_;
    std::uint64_t a_;
    std::uint64_t b_;
};

/// True when 4a^3 + 27b^2 == 0 mod p.
bool is_singular(std::uint64_t p, std::uint64_t a, std::uint64_t b);

/// (p, t) with p an odd prime and t^2 <= 4p.
class TracePair {
public:
    TracePair(std::uint64_t p, std::int64_t t);

    std::uint64_t p() const noexcept { return p_; }
    std::int64_t t() const noexcept { return t_; }

    /// t^2 - 4p reduced into [0, modulus).
    std::uint64_t discriminant_mod(std::uint64_t modulus) const noexcept;

    friend auto operator<=>(const TracePair&, const TracePair&) = default;

private:
    std::uint64_t p_;
    std::int64_t t_;
};

/// Largest |t| allowed by the Hasse bound: floor(2 sqrt p).
std::int64_t hasse_trace_bound(std::uint64_t p);

/// #E(F_p) = p + 1 + sum_x (x^3+ax+b / p), one Jacobi symbol per x.
std::uint64_t count_points(const CurveParams& curve,
                           std::uint64_t counting_limit = kDefaultCountingLimit);

TracePair trace(const CurveParams& curve, std::uint64_t counting_limit = kDefaultCountingLimit);

/// Bulk counter for many curves over one field. Holds the quadratic
/// character of F_p as a lookup table; results agree with count_points.
class PointCounter {
public:
    explicit PointCounter(std::uint64_t p, std::uint64_t counting_limit = kDefaultCountingLimit);

    std::uint64_t p() const noexcept { return p_; }

    /// Quadratic character of x mod p.
    int chi(std::uint64_t x) const noexcept { return table_[x % p_]; }

    /// Trace of y^2 = x^3 + ax + b (singularity not checked).
    std::int64_t trace(std::uint64_t a, std::uint64_t b) const;

    /// Traces for every b in [0, p) at fixed a; singular entries are left as
    /// computed and must be filtered by the caller.
    void traces_for_a(std::uint64_t a, std::vector<std::int64_t>& out) const;

    /// x^3 + ax mod p for every x, reusable across b.
    std::vector<std::uint32_t> base_for_a(std::uint64_t a) const;
    std::int64_t trace_from_base(const std::vector<std::uint32_t>& base, std::uint64_t b) const;

private:
    std::uint64_t p_;
    std::vector<std::int8_t> table_;
};

struct TraceSpectrum {
    std::uint64_t p = 0;
    /// First curve (a ascending, then b) attaining each trace.
    std::map<std::int64_t, CurveParams> witnesses;

    /// Traces with t^2 <= 4p that have no witness.
    std::vector<std::int64_t> missing() const;
};

/// Enumerates nonsingular (a, b) in lexicographic order and keeps the first
/// witness per trace. Stops early once every Hasse trace is attained, which
/// cannot change any first witness. Work is split by a across `workers`.
TraceSpectrum trace_spectrum(std::uint64_t p, std::uint64_t spectrum_limit = kDefaultSpectrumLimit,
                             unsigned workers = 1);

/// First curve in (a, b) order with the requested trace, trying at most
/// `budget` nonsingular curves. nullopt means the budget ran out.
std::optional<CurveParams> curve_with_trace(const TracePair& pair, std::uint64_t budget,
                                            std::uint64_t counting_limit = kDefaultCountingLimit);

struct DeuringReport {
    std::uint64_t p = 0;
    bool passed = false;
    std::size_t traces_expected = 0;
    std::size_t traces_found = 0;
    std::vector<std::int64_t> missing;
};

DeuringReport verify_deuring(std::uint64_t p, std::uint64_t spectrum_limit = kDefaultSpectrumLimit,
                             unsigned workers = 1);

}  // namespace elkies
