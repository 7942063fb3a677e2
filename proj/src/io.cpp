#include "elkies/io.hpp"

#include "elkies/errors.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

namespace elkies::io {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, sep)) out.push_back(field);
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

template <class Int>
Int parse_int(const std::string& s) {
    Int v{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) throw DomainError("csv: bad integer '" + s + "'");
    return v;
}

}  // namespace

std::string format_double(double x) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, ptr);
}

double parse_double(const std::string& s) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) throw DomainError("csv: bad number '" + s + "'");
    return v;
}

void write_profile_csv(std::ostream& out, const ElkiesProfile& profile) {
    out << "p,t,ell,symbol,verdict\n";
    for (const PrimeClass& c : profile.classes)
        out << profile.pair.p() << ',' << profile.pair.t() << ',' << c.ell << ',' << c.symbol << ','
            << to_string(c.verdict) << '\n';
}

Json profile_summary(const ElkiesProfile& profile) {
    Json j;
    j["p"] = profile.pair.p();
    j["t"] = profile.pair.t();
    j["L"] = profile.L;
    j["n_e"] = profile.n_e;
    j["n_a"] = profile.n_a;
    j["n_ramified"] = profile.n_ramified;
    j["elkies_product"] = profile.elkies_product.str();
    j["L_p"] = profile.L_p ? Json(*profile.L_p) : Json(nullptr);
    j["saturated"] = !profile.L_p.has_value();
    return j;
}

std::string search_csv_row(const SearchRecord& r, bool with_cond1) {
    std::string row = std::to_string(r.pair.p()) + ',' + std::to_string(r.pair.t()) + ',' + std::to_string(r.L_p) +
                      ',' + (r.saturated ? "1" : "0") + ',' + r.elkies_product_at_cap.str() + ',' +
                      format_double(r.ratio_logp) + ',' +
                      (r.ratio_logloglog ? format_double(*r.ratio_logloglog) : std::string());
    if (with_cond1) {
        row += ',';
        if (r.cond1_interval)
            row += std::to_string(r.cond1_interval->first) + ',' + std::to_string(r.cond1_interval->second);
        else
            row += ',';
    }
    return row;
}

void write_search_csv(std::ostream& out, const std::vector<SearchRecord>& records, bool with_cond1) {
    out << kSearchCsvHeader << (with_cond1 ? ",cond1_M,cond1_L" : "") << '\n';
    for (const auto& r : records) out << search_csv_row(r, with_cond1) << '\n';
}

std::vector<SearchRecord> read_search_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw DomainError("search csv: missing header");
    const std::string base = kSearchCsvHeader;
    bool with_cond1 = false;
    if (line == base + ",cond1_M,cond1_L") with_cond1 = true;
    else if (line != base) throw DomainError("search csv: unexpected header '" + line + "'");
    const std::size_t columns = with_cond1 ? 9 : 7;

    std::vector<SearchRecord> records;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split(line, ',');
        if (f.size() != columns) throw DomainError("search csv: wrong column count in '" + line + "'");
        SearchRecord r;
        r.pair = TracePair(parse_int<std::uint64_t>(f[0]), parse_int<std::int64_t>(f[1]));
        r.L_p = parse_int<std::uint64_t>(f[2]);
        if (f[3] != "0" && f[3] != "1") throw DomainError("search csv: saturated must be 0 or 1");
        r.saturated = f[3] == "1";
        r.elkies_product_at_cap = BigInt(f[4]);
        r.ratio_logp = parse_double(f[5]);
        if (!f[6].empty()) r.ratio_logloglog = parse_double(f[6]);
        if (with_cond1 && !f[7].empty())
            r.cond1_interval = std::pair{parse_int<std::uint64_t>(f[7]), parse_int<std::uint64_t>(f[8])};
        records.push_back(std::move(r));
    }
    return records;
}

void write_sm_csv(std::ostream& out, const std::vector<SmEntry>& table) {
    out << "m,S_m\n";
    for (const auto& e : table) out << e.m << ',' << e.S << '\n';
}

Json report_json(const CharSumReport& report, bool with_timing) {
    Json j;
    j["query"] = report.query;
    j["lhs"] = std::to_string(report.lhs);
    j["bound"] = report.bound ? Json(*report.bound) : Json(nullptr);
    j["ratio"] = report.ratio ? Json(*report.ratio) : Json(nullptr);
    j["wall_time_ms"] = with_timing ? report.wall_time_ms : 0.0;
    return j;
}

Json manifest_json(const RunManifest& m, bool with_timing) {
    Json j;
    j["subcommand"] = m.subcommand;
    j["parameters"] = m.parameters;
    j["seed"] = m.seed ? Json(*m.seed) : Json(nullptr);
    j["budget"] = m.budget ? Json(*m.budget) : Json(nullptr);
    j["version"] = library_version();
    j["truncated"] = m.truncated;
    j["wall_time_ms"] = with_timing ? m.wall_time_ms : 0.0;
    return j;
}

std::string library_version() {
    return ELKIES_VERSION;
}

}  // namespace elkies::io
