#include "cli.hpp"

#include "verify.hpp"

#include "elkies/arith.hpp"
#include "elkies/charsums.hpp"
#include "elkies/classify.hpp"
#include "elkies/curves.hpp"
#include "elkies/errors.hpp"
#include "elkies/io.hpp"
#include "elkies/search.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>

namespace elkies::cli {

namespace {

namespace fs = std::filesystem;
using io::Json;

/// ELKIES_BUDGET overrides the built-in default budget of every command.
std::uint64_t default_budget(std::uint64_t fallback) {
    if (const char* env = std::getenv("ELKIES_BUDGET")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
        }
    }
    return fallback;
}

struct Common {
    std::string out_dir = ".";
    bool no_timing = false;
    unsigned workers = 1;
};

void add_common(CLI::App* sub, Common& c, bool with_workers) {
    sub->add_option("--out", c.out_dir, "Directory for output files")->capture_default_str();
    sub->add_flag("--no-timing", c.no_timing, "Write wall times as 0 so reruns are byte-identical");
    if (with_workers) sub->add_option("--workers", c.workers, "Worker threads")->capture_default_str();
}

class Output {
public:
    Output(const Common& c, std::ostream& out) : common_(c), out_(out), start_(std::chrono::steady_clock::now()) {
        fs::create_directories(c.out_dir);
    }

    void write(const std::string& name, const std::string& content) const {
        std::ofstream f(fs::path(common_.out_dir) / name, std::ios::binary);
        f << content;
        if (!f) throw std::runtime_error("cannot write " + (fs::path(common_.out_dir) / name).string());
    }
    void write_json(const std::string& name, const Json& j) const { write(name, j.dump(2) + "\n"); }

    void manifest(io::RunManifest m) const {
        m.wall_time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
        write_json("manifest.json", io::manifest_json(m, !common_.no_timing));
    }

    bool timing() const { return !common_.no_timing; }
    std::ostream& out() const { return out_; }

private:
    const Common& common_;
    std::ostream& out_;
    std::chrono::steady_clock::time_point start_;
};

std::string lp_text(const std::optional<std::uint64_t>& lp) {
    return lp ? std::to_string(*lp) : std::string("saturated");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Elkies/Atkin prime statistics, SEA bound L_p and character-sum experiments", "elkies"};
    app.require_subcommand(1);
    app.set_version_flag("--version", io::library_version());

    Common common;
    std::function<int()> action;

    // classify
    std::uint64_t cl_p = 0, cl_L = 100;
    std::optional<std::int64_t> cl_t;
    std::optional<std::uint64_t> cl_a, cl_b;
    bool ramified_as_elkies = false;
    auto* classify = app.add_subcommand("classify", "Elkies/Atkin profile of a trace pair or curve");
    classify->add_option("--p", cl_p, "Field prime")->required();
    auto* t_opt = classify->add_option("--t", cl_t, "Trace of Frobenius");
    auto* a_opt = classify->add_option("--a", cl_a, "Curve coefficient a");
    auto* b_opt = classify->add_option("--b", cl_b, "Curve coefficient b");
    t_opt->excludes(a_opt)->excludes(b_opt);
    a_opt->needs(b_opt);
    b_opt->needs(a_opt);
    classify->add_option("--L", cl_L, "Classify odd primes up to L")->capture_default_str();
    classify->add_flag("--ramified-as-elkies", ramified_as_elkies, "Count primes dividing t^2-4p as Elkies");
    add_common(classify, common, false);
    classify->callback([&] {
        action = [&]() -> int {
            if (!cl_t && !cl_a) {
                err << "classify: give either --t or --a/--b\n";
                return kUsage;
            }
            Output o(common, out);
            std::int64_t t;
            if (cl_t) {
                t = *cl_t;
            } else {
                t = trace(CurveParams(cl_p, *cl_a, *cl_b)).t();
            }
            const ElkiesProfile profile = classify_range(TracePair(cl_p, t), cl_L, {ramified_as_elkies});
            std::ostringstream csv;
            io::write_profile_csv(csv, profile);
            o.write("profile.csv", csv.str());
            o.write_json("profile.json", io::profile_summary(profile));
            Json params{{"p", cl_p}, {"t", t}, {"L", cl_L}, {"ramified_as_elkies", ramified_as_elkies}};
            if (cl_a) params["curve"] = {{"a", *cl_a}, {"b", *cl_b}};
            o.manifest({"classify", params});
            out << "p=" << cl_p << " t=" << t << " L=" << cl_L << " n_e=" << profile.n_e << " n_a=" << profile.n_a
                << " n_ramified=" << profile.n_ramified << " L_p=" << lp_text(profile.L_p) << "\n";
            return kOk;
        };
    });

    // count
    std::uint64_t ct_p = 0, ct_a = 0, ct_b = 0;
    auto* count = app.add_subcommand("count", "Count points on y^2 = x^3 + ax + b over F_p");
    count->add_option("--p", ct_p)->required();
    count->add_option("--a", ct_a)->required();
    count->add_option("--b", ct_b)->required();
    count->callback([&] {
        action = [&]() -> int {
            const CurveParams c(ct_p, ct_a, ct_b);
            const std::uint64_t n = count_points(c);
            out << "#E=" << n << " t=" << static_cast<std::int64_t>(ct_p) + 1 - static_cast<std::int64_t>(n) << "\n";
            return kOk;
        };
    });

    // spectrum
    std::uint64_t sp_p = 0;
    auto* spectrum = app.add_subcommand("spectrum", "First witness curve for every attained trace");
    spectrum->add_option("--p", sp_p)->required();
    add_common(spectrum, common, true);
    spectrum->callback([&] {
        action = [&]() -> int {
            Output o(common, out);
            const TraceSpectrum s = trace_spectrum(sp_p, kDefaultSpectrumLimit, common.workers);
            std::ostringstream csv;
            csv << "t,a,b\n";
            for (const auto& [t, c] : s.witnesses) csv << t << ',' << c.a() << ',' << c.b() << '\n';
            o.write("spectrum.csv", csv.str());
            o.manifest({"spectrum", {{"p", sp_p}}});
            out << "p=" << sp_p << " traces=" << s.witnesses.size() << " missing=" << s.missing().size() << "\n";
            return kOk;
        };
    });

    // witness
    std::uint64_t wi_p = 0, wi_budget = 0;
    std::int64_t wi_t = 0;
    auto* witness = app.add_subcommand("witness", "First curve (a, then b ascending) with a given trace");
    witness->add_option("--p", wi_p)->required();
    witness->add_option("--t", wi_t)->required();
    witness->add_option("--budget", wi_budget, "Curves to try (default: all)");
    witness->callback([&] {
        action = [&]() -> int {
            const TracePair pair(wi_p, wi_t);
            const auto c = curve_with_trace(pair, wi_budget ? wi_budget : std::numeric_limits<std::uint64_t>::max());
            if (!c) {
                out << "not found within budget\n";
                return kBudget;
            }
            out << "a=" << c->a() << " b=" << c->b() << "\n";
            return kOk;
        };
    });

    // lp
    std::uint64_t lp_p = 0, lp_limit = 1000;
    std::int64_t lp_t = 0;
    auto* lp = app.add_subcommand("lp", "Smallest l with prod of Elkies primes in [3, l] > 4 sqrt(p)");
    lp->add_option("--p", lp_p)->required();
    lp->add_option("--t", lp_t)->required();
    lp->add_option("--limit", lp_limit, "Sieve limit")->capture_default_str();
    lp->add_flag("--ramified-as-elkies", ramified_as_elkies);
    lp->callback([&] {
        action = [&]() -> int {
            const LpResult r = compute_Lp(TracePair(lp_p, lp_t), lp_limit, {ramified_as_elkies});
            out << "L_p=" << lp_text(r.L_p) << " product=" << r.product.str() << " limit=" << r.limit << "\n";
            return kOk;
        };
    });

    // scan
    SearchConfig scan_cfg;
    std::string scan_mode = "all-traces";
    std::optional<std::uint64_t> cond_M, cond_L;
    scan_cfg.budget = default_budget(kDefaultScanBudget);
    auto* scan = app.add_subcommand("scan", "Scan a prime range for pairs with large L_p / log p");
    scan->add_option("--lo", scan_cfg.prime_lo)->required();
    scan->add_option("--hi", scan_cfg.prime_hi)->required();
    scan->add_option("--lcap", scan_cfg.L_cap, "Classification bound")->required();
    scan->add_option("--mode", scan_mode, "all-traces or hasse-sample")
        ->check(CLI::IsMember({"all-traces", "hasse-sample"}))
        ->capture_default_str();
    scan->add_option("--k", scan_cfg.sample_k, "Traces per prime in hasse-sample mode")->capture_default_str();
    scan->add_option("--threshold", scan_cfg.threshold, "Minimal L_p / log p to report")->capture_default_str();
    scan->add_option("--budget", scan_cfg.budget, "Maximum trace evaluations")->capture_default_str();
    scan->add_option("--seed", scan_cfg.seed)->capture_default_str();
    scan->add_option("--cond1-M", cond_M, "Also test 'no Elkies prime in [M, L]'");
    scan->add_option("--cond1-L", cond_L);
    scan->add_flag("--ramified-as-elkies", scan_cfg.ramified_as_elkies);
    add_common(scan, common, true);
    scan->callback([&] {
        action = [&]() -> int {
            if (scan_cfg.prime_lo > scan_cfg.prime_hi) {
                err << "scan: empty range, --lo must not exceed --hi\n";
                return kUsage;
            }
            if (cond_M.has_value() != cond_L.has_value()) {
                err << "scan: --cond1-M and --cond1-L go together\n";
                return kUsage;
            }
            scan_cfg.mode = scan_mode == "all-traces" ? SearchMode::AllTraces : SearchMode::HasseSample;
            scan_cfg.workers = common.workers;
            if (cond_M) scan_cfg.cond1 = std::pair{*cond_M, *cond_L};
            Output o(common, out);
            const ScanResult r = scan_primes(scan_cfg);
            std::ostringstream csv;
            io::write_search_csv(csv, r.records, scan_cfg.cond1.has_value());
            o.write("scan.csv", csv.str());
            Json params{{"lo", scan_cfg.prime_lo}, {"hi", scan_cfg.prime_hi}, {"lcap", scan_cfg.L_cap},
                        {"mode", scan_mode}, {"k", scan_cfg.sample_k}, {"threshold", scan_cfg.threshold},
                        {"workers", scan_cfg.workers}, {"ramified_as_elkies", scan_cfg.ramified_as_elkies},
                        {"primes_in_range", r.primes_in_range}, {"primes_scanned", r.primes_scanned},
                        {"traces_evaluated", r.traces_evaluated}, {"records", r.records.size()}};
            if (scan_cfg.cond1) params["cond1"] = {scan_cfg.cond1->first, scan_cfg.cond1->second};
            o.manifest({"scan", params, scan_cfg.seed, scan_cfg.budget, r.truncated});
            out << "records=" << r.records.size() << " primes=" << r.primes_scanned << "/" << r.primes_in_range
                << " traces=" << r.traces_evaluated << (r.truncated ? " TRUNCATED" : "") << "\n";
            if (!r.records.empty()) {
                const SearchRecord& best = r.records.front();
                out << "max ratio_logp=" << io::format_double(best.ratio_logp) << " at p=" << best.pair.p()
                    << " t=" << best.pair.t() << " L_p=" << best.L_p << (best.saturated ? " (saturated)" : "")
                    << "\n";
            }
            return r.truncated ? kBudget : kOk;
        };
    });

    // worst
    std::uint64_t wt_p = 0, wt_cap = 100;
    auto* worst = app.add_subcommand("worst", "Trace of p with the largest L_p");
    worst->add_option("--p", wt_p)->required();
    worst->add_option("--lcap", wt_cap)->capture_default_str();
    worst->add_flag("--ramified-as-elkies", ramified_as_elkies);
    worst->callback([&] {
        action = [&]() -> int {
            const SearchRecord r = worst_trace(wt_p, wt_cap, {ramified_as_elkies});
            out << io::kSearchCsvHeader << "\n" << io::search_csv_row(r) << "\n";
            return kOk;
        };
    });

    // represent / coverage
    std::uint64_t rp_n = 0;
    auto* represent = app.add_subcommand("represent", "Write n = 4p - t^2 with p prime, smallest t");
    represent->add_option("--n", rp_n)->required();
    represent->callback([&] {
        action = [&]() -> int {
            const auto r = represent_4p_minus_t2(rp_n);
            if (r) out << "n=" << rp_n << " p=" << r->p << " t=" << r->t << "\n";
            else out << "n=" << rp_n << " not-found\n";
            return kOk;
        };
    });
    std::uint64_t cv_lo = 3, cv_hi = 1000;
    auto* coverage = app.add_subcommand("coverage", "List n = 3 mod 4 in a range with no 4p - t^2 form");
    coverage->add_option("--lo", cv_lo)->required();
    coverage->add_option("--hi", cv_hi)->required();
    add_common(coverage, common, false);
    coverage->callback([&] {
        action = [&]() -> int {
            Output o(common, out);
            const auto ex = coverage_sweep(cv_lo, cv_hi);
            std::ostringstream csv;
            csv << "n\n";
            for (auto n : ex) csv << n << '\n';
            o.write("coverage.csv", csv.str());
            o.manifest({"coverage", {{"lo", cv_lo}, {"hi", cv_hi}, {"exceptions", ex.size()}}});
            out << "exceptions=" << ex.size() << "\n";
            return kOk;
        };
    });

    // params
    std::uint64_t pr_Q = 0;
    std::optional<std::uint64_t> pr_L, pr_M, pr_T;
    auto* params = app.add_subcommand("params", "Parameters L, M, T for a given Q");
    params->add_option("--Q", pr_Q)->required();
    params->add_option("--L", pr_L);
    params->add_option("--M", pr_M);
    params->add_option("--T", pr_T);
    params->callback([&] {
        action = [&]() -> int {
            std::optional<ParamOverrides> ov;
            if (pr_L || pr_M || pr_T) {
                if (!(pr_L && pr_M && pr_T)) {
                    err << "params: overrides need all of --L --M --T\n";
                    return kUsage;
                }
                ov = ParamOverrides{*pr_L, *pr_M, *pr_T};
            }
            const TheoremParams tp = theorem_parameters(pr_Q, ov);
            out << "Q=" << tp.Q << " L=" << tp.L << " M=" << tp.M << " T=" << tp.T
                << " overridden=" << (tp.overridden ? 1 : 0) << " prod_{l<=M} l=" << tp.small_prime_product.str()
                << "\n";
            return kOk;
        };
    });

    // mertens
    std::uint64_t me_M = 3, me_L = 10;
    auto* mertens = app.add_subcommand("mertens", "Sum of 1/l over primes in [M, L] against log(log L / log M)");
    mertens->add_option("--M", me_M)->required();
    mertens->add_option("--L", me_L)->required();
    mertens->callback([&] {
        action = [&]() -> int {
            const MertensSum s = mertens_interval_sum(me_M, me_L);
            out << "sum=" << io::format_double(s.sum) << " model=" << io::format_double(s.model)
                << " deviation=" << io::format_double(s.deviation) << "\n";
            return kOk;
        };
    });

    // wsum
    SieveSumConfig ws;
    ws.work_budget = default_budget(kDefaultWorkBudget);
    auto* wsum = app.add_subcommand("wsum", "Sieve sum W by direct product and by expansion into S(m)");
    wsum->add_option("--Q", ws.Q)->required();
    wsum->add_option("--M", ws.M)->required();
    wsum->add_option("--L", ws.L)->required();
    wsum->add_option("--T", ws.T)->required();
    wsum->add_option("--budget", ws.work_budget, "Jacobi evaluations per sum")->capture_default_str();
    add_common(wsum, common, true);
    wsum->callback([&] {
        action = [&]() -> int {
            ws.workers = common.workers;
            Output o(common, out);
            const std::int64_t direct = w_product(ws);
            const WExpansion ex = w_expanded(ws);
            std::ostringstream csv;
            io::write_sm_csv(csv, ex.table);
            o.write("sm.csv", csv.str());
            Json w{{"Q", ws.Q}, {"M", ws.M}, {"L", ws.L}, {"T", ws.T},
                   {"primes", half_interval_primes(ws.Q).size()},
                   {"W_product", std::to_string(direct)}, {"W_expanded", std::to_string(ex.W)},
                   {"equal", direct == ex.W}};
            o.write_json("w.json", w);
            o.manifest({"wsum", {{"Q", ws.Q}, {"M", ws.M}, {"L", ws.L}, {"T", ws.T}, {"workers", ws.workers}},
                        std::nullopt, ws.work_budget});
            out << "W=" << direct << " W_expanded=" << ex.W << (direct == ex.W ? " equal" : " MISMATCH") << "\n";
            return direct == ex.W ? kOk : kVerificationFailed;
        };
    });

    // sm
    std::uint64_t sm_m = 1, sm_Q = 0, sm_T = 1;
    auto* sm = app.add_subcommand("sm", "S(m) = sum over 1<=t<=T, Q/2<=p<=Q of (t^2-4p / m)");
    sm->add_option("--m", sm_m)->required();
    sm->add_option("--Q", sm_Q)->required();
    sm->add_option("--T", sm_T)->required();
    add_common(sm, common, true);
    sm->callback([&] {
        action = [&]() -> int {
            out << "S(" << sm_m << ")=" << s_m(sm_m, sm_Q, sm_T, common.workers, default_budget(kDefaultWorkBudget))
                << "\n";
            return kOk;
        };
    });

    // longsum / complete / shortsum
    LongSumQuery lq;
    auto* longsum = app.add_subcommand("longsum", "sum_{|t|<=T} (t^2 - a / m)");
    longsum->add_option("--a", lq.a)->required();
    longsum->add_option("--m", lq.m)->required();
    longsum->add_option("--T", lq.T)->required();
    add_common(longsum, common, false);
    longsum->callback([&] {
        action = [&]() -> int {
            Output o(common, out);
            const CharSumReport r = long_sum_report(lq);
            o.write_json("report.json", io::report_json(r, o.timing()));
            out << r.query << " lhs=" << r.lhs << " ratio_C1=" << io::format_double(*r.ratio) << "\n";
            return kOk;
        };
    });
    std::int64_t cs_a = 1;
    std::uint64_t cs_m = 1;
    auto* complete = app.add_subcommand("complete", "sum over t mod m of (t^2 - a / m)");
    complete->add_option("--a", cs_a)->required();
    complete->add_option("--m", cs_m)->required();
    complete->callback([&] {
        action = [&]() -> int {
            out << "sum=" << complete_sum(cs_a, cs_m) << " mobius=" << mobius(static_cast<std::int64_t>(cs_m)) << "\n";
            return kOk;
        };
    });
    ShortSumQuery sq;
    auto* shortsum = app.add_subcommand("shortsum", "|sum_{n<=N} ((n-u)(n-v) / m)| against its explicit bound");
    shortsum->add_option("--u", sq.u)->required();
    shortsum->add_option("--v", sq.v)->required();
    shortsum->add_option("--m", sq.m)->required();
    shortsum->add_option("--N", sq.N)->required();
    shortsum->add_option("--r", sq.r)->required();
    add_common(shortsum, common, false);
    shortsum->callback([&] {
        action = [&]() -> int {
            Output o(common, out);
            const CharSumReport r = short_sum(sq);
            o.write_json("report.json", io::report_json(r, o.timing()));
            out << r.query << " lhs=" << r.lhs << " bound=" << io::format_double(*r.bound)
                << " ratio=" << io::format_double(*r.ratio) << "\n";
            return *r.ratio <= 1.0 ? kOk : kVerificationFailed;
        };
    });

    // verify
    std::string target;
    std::uint64_t v_min_p = 5, v_max_p = 500, v_max_m = 0, v_seed = kDefaultSeed;
    std::uint64_t v_budget = default_budget(kDefaultWorkBudget);
    unsigned v_per_m = 10, v_count = 100, v_r_span = 8, v_periods = 3, v_instances = 50;
    std::int64_t v_max_uv = 50;
    std::optional<std::uint64_t> v_Q, v_M, v_L, v_T;
    auto* verify = app.add_subcommand("verify", "Run a verification sweep; exit 0 iff every check passes");
    verify->add_option("target", target, "deuring | lemma-long | lemma-short | gcd | complete-sum | w-equality")
        ->required()
        ->check(CLI::IsMember({"deuring", "lemma-long", "lemma-short", "gcd", "complete-sum", "w-equality"}));
    verify->add_option("--min-p", v_min_p)->capture_default_str();
    verify->add_option("--max-p", v_max_p)->capture_default_str();
    verify->add_option("--max-m", v_max_m, "Modulus bound (target-specific default)");
    verify->add_option("--per-m", v_per_m)->capture_default_str();
    verify->add_option("--count", v_count)->capture_default_str();
    verify->add_option("--r-span", v_r_span)->capture_default_str();
    verify->add_option("--periods", v_periods)->capture_default_str();
    verify->add_option("--max-uv", v_max_uv)->capture_default_str();
    verify->add_option("--instances", v_instances)->capture_default_str();
    verify->add_option("--seed", v_seed)->capture_default_str();
    verify->add_option("--budget", v_budget)->capture_default_str();
    verify->add_option("--Q", v_Q);
    verify->add_option("--M", v_M);
    verify->add_option("--L", v_L);
    verify->add_option("--T", v_T);
    add_common(verify, common, true);
    verify->callback([&] {
        action = [&]() -> int {
            Output o(common, out);
            const auto start = std::chrono::steady_clock::now();
            Json report;
            if (target == "deuring") {
                report = verify_deuring_sweep(v_min_p, v_max_p, common.workers);
            } else if (target == "complete-sum") {
                report = verify_complete_sums(v_max_m ? v_max_m : 10'000, v_per_m, v_seed);
            } else if (target == "gcd") {
                report = verify_gcd_identity(v_max_uv, v_max_m ? v_max_m : 100);
            } else if (target == "lemma-long") {
                report = verify_long_sums(v_max_m ? v_max_m : 99, v_periods);
            } else if (target == "lemma-short") {
                report = verify_short_sums(v_count, v_max_m ? v_max_m : 1000, v_r_span, v_seed);
            } else {
                std::vector<WInstance> inst;
                if (v_Q || v_M || v_L || v_T) {
                    if (!(v_Q && v_M && v_L && v_T)) {
                        err << "verify w-equality: a single instance needs all of --Q --M --L --T\n";
                        return kUsage;
                    }
                    inst.push_back({*v_Q, *v_M, *v_L, *v_T});
                } else {
                    inst = random_w_instances(v_instances, 1'000, 100'000, 6, 500, v_seed);
                }
                report = verify_w_equality(inst, common.workers, v_budget);
            }
            report["wall_time_ms"] =
                o.timing() ? std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count()
                           : 0.0;
            o.write_json("verify_" + target + ".json", report);
            o.manifest({"verify", {{"target", target}}, v_seed, v_budget});
            const bool passed = report["passed"].get<bool>();
            out << "verify " << target << ": " << (passed ? "pass" : "FAIL") << " (" << report["checks"] << " checks)";
            if (target == "w-equality" && report["instances"].size() == 1)
                out << " W=" << report["instances"][0]["W_product"];
            out << "\n";
            return passed ? kOk : kVerificationFailed;
        };
    });

    // heuristic
    std::uint64_t he_lo = 1'000'000, he_hi = 2'000'000, he_L = 1000, he_seed = kDefaultSeed;
    std::size_t he_samples = 200;
    auto* heuristic = app.add_subcommand("heuristic", "N_e / pi(L) over random curves");
    heuristic->add_option("--lo", he_lo)->capture_default_str();
    heuristic->add_option("--hi", he_hi)->capture_default_str();
    heuristic->add_option("--L", he_L)->capture_default_str();
    heuristic->add_option("--samples", he_samples)->capture_default_str();
    heuristic->add_option("--seed", he_seed)->capture_default_str();
    heuristic->add_flag("--ramified-as-elkies", ramified_as_elkies);
    add_common(heuristic, common, true);
    heuristic->callback([&] {
        action = [&]() -> int {
            if (he_samples == 0) {
                err << "heuristic: sample size must be >= 1\n";
                return kUsage;
            }
            Output o(common, out);
            const auto samples =
                sample_curve_profiles(he_lo, he_hi, he_L, he_samples, he_seed, common.workers, {ramified_as_elkies});
            std::vector<ElkiesProfile> profiles;
            for (const auto& s : samples) profiles.push_back(s.profile);
            const HeuristicSummary h = heuristic_deviation(profiles);
            std::ostringstream csv;
            csv << "p,a,b,t,n_e,n_a,n_ramified,ratio\n";
            for (std::size_t i = 0; i < samples.size(); ++i) {
                const auto& s = samples[i];
                csv << s.curve.p() << ',' << s.curve.a() << ',' << s.curve.b() << ',' << s.profile.pair.t() << ','
                    << s.profile.n_e << ',' << s.profile.n_a << ',' << s.profile.n_ramified << ','
                    << io::format_double(h.ratios[i]) << '\n';
            }
            o.write("heuristic.csv", csv.str());
            o.write_json("heuristic.json", Json{{"L", h.L}, {"pi_L", h.pi_L}, {"samples", samples.size()},
                                                {"mean", h.mean}, {"spread", h.spread}, {"min", h.min},
                                                {"max", h.max}, {"seed", he_seed}});
            o.manifest({"heuristic",
                        {{"lo", he_lo}, {"hi", he_hi}, {"L", he_L}, {"samples", he_samples},
                         {"workers", common.workers}, {"ramified_as_elkies", ramified_as_elkies}},
                        he_seed});
            out << "samples=" << samples.size() << " L=" << h.L << " mean=" << io::format_double(h.mean)
                << " spread=" << io::format_double(h.spread) << "\n";
            return kOk;
        };
    });

    std::vector<std::string> argv_rest(args.begin() + (args.empty() ? 0 : 1), args.end());
    std::reverse(argv_rest.begin(), argv_rest.end());
    try {
        app.parse(argv_rest);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }
    if (!action) return kUsage;
    try {
        return action();
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kDomain;
    } catch (const ResourceError& e) {
        err << "budget: " << e.what() << "\n";
        return kBudget;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
}

}  // namespace elkies::cli
