#pragma once

/**
 * @file io.hpp
 * @brief CSV and JSON emitters (and the search CSV reader) for profiles,
 *        scan records, character-sum reports and run manifests.
 *
 * Floating-point fields use the shortest round-trip decimal form, so a
 * written record parses back to the identical value. Big integers are
 * written as decimal strings.
 */

#include "elkies/charsums.hpp"
#include "elkies/classify.hpp"
#include "elkies/search.hpp"

#include <json.hpp>

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace elkies::io {

using Json = nlohmann::ordered_json;

std::string format_double(double x);
double parse_double(const std::string& s);

/// Columns p,t,ell,symbol,verdict; one row per classified prime.
void write_profile_csv(std::ostream& out, const ElkiesProfile& profile);

/// Keys p,t,L,n_e,n_a,n_ramified,elkies_product,L_p,saturated. L_p is null
/// when saturated.
Json profile_summary(const ElkiesProfile& profile);

inline constexpr const char* kSearchCsvHeader = "p,t,L_p,saturated,elkies_product,ratio_logp,ratio_logloglog";

/// Writes the search schema; cond1_M,cond1_L columns are appended only when
/// `with_cond1` is set.
void write_search_csv(std::ostream& out, const std::vector<SearchRecord>& records, bool with_cond1 = false);
std::string search_csv_row(const SearchRecord& r, bool with_cond1 = false);

/// Inverse of write_search_csv. Throws DomainError on malformed input.
std::vector<SearchRecord> read_search_csv(std::istream& in);

/// Columns m,S_m.
void write_sm_csv(std::ostream& out, const std::vector<SmEntry>& table);

/// {query, lhs (decimal string), bound, ratio, wall_time_ms}.
Json report_json(const CharSumReport& report, bool with_timing = true);

struct RunManifest {
    std::string subcommand;
    Json parameters = Json::object();
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> budget;
    bool truncated = false;
    double wall_time_ms = 0.0;
};

Json manifest_json(const RunManifest& manifest, bool with_timing = true);

std::string library_version();

}  // namespace elkies::io
