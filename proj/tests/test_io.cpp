#include "elkies/errors.hpp"
#include "elkies/io.hpp"
#include "elkies/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace elkies;

TEST_CASE("format_double round trips") {
    Rng rng(99);
    for (int i = 0; i < 2000; ++i) {
        const double x = std::ldexp(static_cast<double>(rng.next() >> 11), static_cast<int>(rng.below(80)) - 60);
        CHECK(io::parse_double(io::format_double(x)) == x);
    }
    CHECK(io::format_double(0.5) == "0.5");
    CHECK_THROWS_AS(io::parse_double("1.5x"), DomainError);
}

TEST_CASE("profile csv and summary") {
    const auto prof = classify_range(TracePair(5, 0), 11);
    std::ostringstream csv;
    io::write_profile_csv(csv, prof);
    CHECK(csv.str() ==
          "p,t,ell,symbol,verdict\n"
          "5,0,3,1,Elkies\n"
          "5,0,5,0,Excluded\n"
          "5,0,7,1,Elkies\n"
          "5,0,11,-1,Atkin\n");
    const auto j = io::profile_summary(prof);
    std::vector<std::string> keys;
    for (const auto& [k, v] : j.items()) keys.push_back(k);
    CHECK(keys == std::vector<std::string>{"p", "t", "L", "n_e", "n_a", "n_ramified", "elkies_product", "L_p",
                                           "saturated"});
    CHECK(j["elkies_product"] == "21");
    CHECK(j["L_p"] == 7);
    CHECK(j["saturated"] == false);
    CHECK(io::profile_summary(classify_range(TracePair(5, 0), 3))["L_p"].is_null());
}

TEST_CASE("search csv round trip") {
    SearchConfig c;
    c.prime_lo = 5;
    c.prime_hi = 400;
    c.L_cap = 60;
    c.cond1 = std::pair<std::uint64_t, std::uint64_t>{7, 19};
    const auto records = scan_primes(c).records;
    REQUIRE(records.size() > 100);
    bool some_cond1 = false, some_lll = false, some_sat = false;
    for (const auto& r : records) {
        some_cond1 |= r.cond1_interval.has_value();
        some_lll |= r.ratio_logloglog.has_value();
        some_sat |= r.saturated;
    }
    CHECK(some_cond1);
    CHECK(some_lll);
    CHECK(some_sat);

    std::stringstream with;
    io::write_search_csv(with, records, true);
    CHECK(io::read_search_csv(with) == records);

    std::stringstream without;
    io::write_search_csv(without, records);
    auto stripped = records;
    for (auto& r : stripped) r.cond1_interval.reset();
    const auto back = io::read_search_csv(without);
    CHECK(back == stripped);
    std::stringstream again;
    io::write_search_csv(again, back);
    CHECK(again.str() == without.str());

    std::istringstream header_only(io::kSearchCsvHeader);
    CHECK(io::read_search_csv(header_only).empty());
    std::istringstream bad(std::string(io::kSearchCsvHeader) + "\n5,0,7\n");
    CHECK_THROWS_AS(io::read_search_csv(bad), DomainError);
    std::istringstream wrong("p,t\n");
    CHECK_THROWS_AS(io::read_search_csv(wrong), DomainError);
}

TEST_CASE("sm csv, report and manifest json") {
    std::ostringstream sm;
    io::write_sm_csv(sm, {{1, 4}, {3, -2}});
    CHECK(sm.str() == "m,S_m\n1,4\n3,-2\n");

    CharSumReport r{"q", -5, 2.0, 2.5, 12.0};
    const auto j = io::report_json(r);
    CHECK(j["lhs"] == "-5");
    CHECK(j["wall_time_ms"] == 12.0);
    CHECK(io::report_json(r, false)["wall_time_ms"] == 0.0);
    CHECK(io::report_json({"q", 1, std::nullopt, std::nullopt, 0.0})["bound"].is_null());

    io::RunManifest m{"scan", {{"lo", 5}}, 7, 100, true, 3.5};
    const auto mj = io::manifest_json(m, false);
    CHECK(mj["subcommand"] == "scan");
    CHECK(mj["seed"] == 7);
    CHECK(mj["truncated"] == true);
    CHECK(mj["wall_time_ms"] == 0.0);
    CHECK(mj["version"] == io::library_version());
}
