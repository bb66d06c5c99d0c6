#include <sternct/sternct.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace {

using sternct::Int;
using nlohmann::json;

constexpr int kDefinitionCutoff = 26;

struct CommonOpts {
    bool json_out = false;
    bool verbose = false;
    bool force = false;
    std::string out_file;
    std::string cache_dir;
    int threads = 0; /* 0 = one worker per hardware thread */
};

int effective_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_flag("--json", o.json_out, "emit a JSON run report instead of the bare value");
    cmd->add_flag("--verbose", o.verbose, "human-readable report on stderr");
    cmd->add_option("--out", o.out_file, "write the decimal value (plus newline) to this file");
    cmd->add_option("--cache-dir", o.cache_dir,
                    "cache directory (overrides STERNCT_CACHE_DIR; default ./.sternct-cache)");
    cmd->add_option("--threads", o.threads, "cap on worker threads (0 = auto)");
}

std::string resolve_cache_dir(const CommonOpts& o) {
    if (!o.cache_dir.empty()) return o.cache_dir;
    return sternct::default_cache_dir();
}

/* usage problems (bad n, cutoff, wrong method for n) exit 2 before any work */
[[noreturn]] void usage_error(const std::string& msg) {
    std::cerr << "error: " << msg << "\n";
    std::exit(2);
}

void emit(const std::string& target, long long n, const std::string& method, const Int& value,
          long long elapsed_ms, long long cache_hits, const CommonOpts& o) {
    const std::string dec = sternct::to_decimal(value);
    if (!o.out_file.empty()) {
        std::ofstream f(o.out_file, std::ios::binary | std::ios::trunc);
        if (!f) usage_error("cannot open output file '" + o.out_file + "'");
        f << dec << "\n";
        if (!f.flush()) {
            std::cerr << "error: write to '" << o.out_file << "' failed\n";
            std::exit(1);
        }
    }
    if (o.verbose)
        std::cerr << target << "(" << n << ") via " << method << ": " << dec.size()
                  << " digits, " << elapsed_ms << " ms, " << cache_hits << " cache hits\n";
    if (o.json_out) {
        json rep;
        rep["target"] = target;
        rep["n"] = n;
        rep["method"] = method;
        rep["digits"] = static_cast<long long>(dec.size());
        rep["value"] = dec;
        rep["elapsed_ms"] = elapsed_ms;
        rep["cache_hits"] = cache_hits;
        std::cout << rep.dump() << "\n";
    } else if (o.out_file.empty()) {
        std::cout << dec << "\n";
    }
}

/*
 * The gf pipeline caches three artifacts keyed by content: the two P-recurrences
 * (split-independent) and the folded coefficient table (per split).  The loaded
 * recurrences must be installed before anything touches the prepared runners,
 * which latch on first use.
 */
Int run_gf(std::int64_t n, const CommonOpts& o, long long& cache_hits) {
    const std::string dir = resolve_cache_dir(o);
    cache_hits = 0;

    if (auto ru = sternct::load_recurrence(dir, "rec-u")) {
        sternct::set_rec_u(std::move(*ru));
        ++cache_hits;
    }
    if (auto rv = sternct::load_recurrence(dir, "rec-v")) {
        sternct::set_rec_v(std::move(*rv));
        ++cache_hits;
    }

    const sternct::SplitChoice sp = sternct::choose_split(n);
    sternct::CoeffTable table;
    if (auto cached = sternct::load_coeff_table(dir, sp.n, sp.m)) {
        table = std::move(*cached);
        ++cache_hits;
    } else {
        sternct::TPoly numerator;
        if (auto l = sternct::load_solved_numerator(dir, sp.n)) {
            numerator = std::move(*l);
            ++cache_hits;
        } else {
            numerator = sternct::solved_numerator(sp.n);
            sternct::store_solved_numerator(dir, sp.n, numerator);
        }
        table = sternct::build_coeff_table(sp.n, sp.m, &numerator);
        sternct::store_coeff_table(dir, table);
    }

    sternct::GfOptions opts;
    opts.threads = effective_threads(o.threads);
    opts.table = &table;
    Int value = sternct::omega_gf(n, opts);

    /* store after the run: rec_u()/rec_v() are now materialized either way */
    sternct::store_recurrence(dir, "rec-u", sternct::rec_u());
    sternct::store_recurrence(dir, "rec-v", sternct::rec_v());
    return value;
}

std::string pick_omega_method(long long n) {
    if (n <= 20) return "definition";
    if (n <= 300) return "transfer";
    return "gf";
}

int cmd_omega(long long n, std::string method, bool prune, const CommonOpts& o) {
    if (n < 0) usage_error("omega: n must be nonnegative");
    if (method.empty()) method = pick_omega_method(n);
    if (method == "definition" && n > kDefinitionCutoff && !o.force)
        usage_error("omega: definition method refuses n > " + std::to_string(kDefinitionCutoff) +
                    " (pass --force to override)");
    if (method != "definition" && n < 2)
        usage_error("omega: method '" + method + "' needs n >= 2");
    if (method == "transfer" && n > 2000)
        std::cerr << "note: transfer beyond n = 2000 is slow; the gf method is the intended tool\n";

    const auto t0 = std::chrono::steady_clock::now();
    Int value;
    long long cache_hits = 0;
    if (method == "definition") {
        value = sternct::omega_def(static_cast<int>(n));
    } else if (method == "transfer") {
        value = sternct::omega_transfer(n, prune);
    } else if (method == "gf") {
        value = run_gf(n, o, cache_hits);
    } else {
        usage_error("omega: unknown method '" + method + "'");
    }
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
    emit("omega", n, method, value, ms, cache_hits, o);
    return 0;
}

int cmd_nu(long long n, std::string method, const CommonOpts& o) {
    if (n < 0) usage_error("nu: n must be nonnegative");
    if (method.empty()) method = n <= 20 ? "definition" : "gf";
    if (method == "definition" && n > kDefinitionCutoff && !o.force)
        usage_error("nu: definition method refuses n > " + std::to_string(kDefinitionCutoff) +
                    " (pass --force to override)");

    const auto t0 = std::chrono::steady_clock::now();
    Int value;
    if (method == "definition") {
        value = sternct::nu_def(static_cast<int>(n));
    } else if (method == "gf") {
        value = sternct::nu_fast(n);
    } else {
        usage_error("nu: unknown method '" + method + "'");
    }
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
    emit("nu", n, method, value, ms, 0, o);
    return 0;
}

int cmd_ualpha(const std::string& alpha_arg, long long n, const CommonOpts& o) {
    if (n < 0) usage_error("ualpha: n must be nonnegative");
    if (n > kDefinitionCutoff && !o.force)
        usage_error("ualpha: n > " + std::to_string(kDefinitionCutoff) +
                    " exceeds the direct-expansion cutoff (pass --force to override)");
    std::vector<unsigned> alpha;
    std::stringstream ss(alpha_arg);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        try {
            const unsigned long v = std::stoul(tok);
            alpha.push_back(static_cast<unsigned>(v));
        } catch (const std::exception&) {
            usage_error("ualpha: bad exponent '" + tok + "' in --alpha");
        }
    }
    if (alpha.empty()) usage_error("ualpha: --alpha must list at least one exponent");

    const auto t0 = std::chrono::steady_clock::now();
    Int value = sternct::u_alpha_def(alpha, static_cast<int>(n));
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
    emit("ualpha", n, "definition", value, ms, 0, o);
    return 0;
}

/* ---- verify: invariant suites with a pass/fail line per check ---- */

struct VerifyState {
    int failures = 0;
    void report(const std::string& name, bool ok, const std::string& detail = "") {
        std::cout << (ok ? "PASS" : "FAIL") << "  " << name;
        if (!ok && !detail.empty()) std::cout << "  [" << detail << "]";
        std::cout << "\n";
        if (!ok) ++failures;
    }
};

const std::vector<const char*>& omega_golden() {
    static const std::vector<const char*> v = {
        "1", "3", "13", "55", "249", "1121", "5025", "22607", "101931", "460877", "2088687",
        "9482763", "43109307", "196163983", "893222041", "4069162197", "18543631161",
        "84525140297", "385343891847", "1756959373157", "8011450183181"};
    return v;
}

void suite_oracle(long long max_n, VerifyState& vs) {
    const long long top = std::min<long long>(max_n, 20);
    bool ok = true;
    std::string detail;
    for (long long i = 0; i <= top; ++i) {
        const Int got = sternct::omega_def(static_cast<int>(i));
        if (got != Int(omega_golden()[static_cast<std::size_t>(i)])) {
            ok = false;
            detail = "omega(" + std::to_string(i) + ") = " + sternct::to_decimal(got);
            break;
        }
    }
    vs.report("oracle: omega definition vs reference list, n <= " + std::to_string(top), ok,
              detail);

    ok = true;
    detail.clear();
    for (long long i = 0; i <= std::min<long long>(max_n, 20); ++i) {
        if (sternct::nu_fast(i) != sternct::nu_def(static_cast<int>(i))) {
            ok = false;
            detail = "nu mismatch at n = " + std::to_string(i);
            break;
        }
    }
    vs.report("oracle: nu recurrence vs definition, n <= " +
                  std::to_string(std::min<long long>(max_n, 20)),
              ok, detail);
}

void suite_cross(long long max_n, VerifyState& vs) {
    bool ok = true;
    std::string detail;
    /* full expansion beyond n = 20 costs gigabytes; the fast methods cover
     * the higher range against each other below */
    for (long long i = 2; i <= std::min<long long>(max_n, 20); ++i) {
        if (sternct::omega_transfer(i) != sternct::omega_def(static_cast<int>(i))) {
            ok = false;
            detail = "transfer vs definition at n = " + std::to_string(i);
            break;
        }
    }
    vs.report("cross: transfer vs definition", ok, detail);

    ok = true;
    detail.clear();
    for (long long i = 7; i <= max_n; ++i) {
        if (sternct::omega_gf(i) != sternct::omega_transfer(i)) {
            ok = false;
            detail = "gf vs transfer at n = " + std::to_string(i);
            break;
        }
    }
    vs.report("cross: gf vs transfer, 7 <= n <= " + std::to_string(max_n), ok, detail);
}

void suite_series(VerifyState& vs) {
    using namespace sternct;
    {
        const TruncSeries x = x_series(200);
        const QuadraticModel& q = QuadraticModel::instance();
        const TruncSeries res = TruncSeries::from_poly(q.A) * x * x +
                                TruncSeries::from_poly(q.B) * x +
                                TruncSeries::from_poly(q.C);
        vs.report("series: X(t) satisfies its quadratic to order 200", res.is_zero());
    }
    {
        bool ok = true;
        std::string detail;
        for (std::int64_t j : {0, -1, -2, -5, -10, -20}) {
            const TruncSeries direct = u_direct(j, 100);
            for (std::int64_t k = -j - 1; k <= 100 && ok; ++k)
                if (run_rec_u(j, k) != direct.coeff(k)) {
                    ok = false;
                    detail = "u mismatch at j = " + std::to_string(j) + ", k = " + std::to_string(k);
                }
            if (!ok) break;
        }
        vs.report("series: u recurrence vs direct expansion to order 100", ok, detail);
    }
    {
        bool ok = true;
        std::string detail;
        const TruncSeries direct = v_direct(100);
        for (std::int64_t k = -1; k <= 100; ++k)
            if (run_rec_v(k) != direct.coeff(k)) {
                ok = false;
                detail = "v mismatch at k = " + std::to_string(k);
                break;
            }
        vs.report("series: v recurrence vs direct expansion to order 100", ok, detail);
    }
}

int cmd_verify(long long max_n, const std::string& suites) {
    if (max_n < 0) usage_error("verify: --max-n must be nonnegative");
    if (suites != "oracle" && suites != "cross" && suites != "series" && suites != "all")
        usage_error("verify: --suites must be one of oracle|cross|series|all");
    VerifyState vs;
    if (suites == "oracle" || suites == "all") suite_oracle(max_n, vs);
    if (suites == "cross" || suites == "all") suite_cross(max_n, vs);
    if (suites == "series" || suites == "all") suite_series(vs);
    if (vs.failures > 0) {
        std::cout << vs.failures << " check(s) failed\n";
        return 1;
    }
    std::cout << "all checks passed\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact coefficient-correlation sums of Stern-like polynomial products"};
    app.require_subcommand(1);

    CommonOpts onu, oom, oua;
    long long n_nu = 0, n_om = 0, n_ua = 0, max_n = 20;
    std::string m_nu, m_om, alpha, suites = "all";
    bool prune = true;

    CLI::App* nu = app.add_subcommand("nu", "sum of squared coefficients of the plain product");
    nu->add_option("--n", n_nu, "index")->required();
    nu->add_option("--method", m_nu, "definition|gf (default: by size)");
    nu->add_flag("--force", onu.force, "override the definition-method cutoff");
    add_common(nu, onu);

    CLI::App* om = app.add_subcommand("omega", "sum of squared coefficients of the shifted product");
    om->add_option("--n", n_om, "index")->required();
    om->add_option("--method", m_om, "definition|transfer|gf (default: by size)");
    om->add_flag("--prune,!--no-prune", prune, "window pruning in the transfer iteration");
    om->add_flag("--force", oom.force, "override the definition-method cutoff");
    add_common(om, oom);

    CLI::App* ua = app.add_subcommand("ualpha", "correlation sum with an exponent pattern");
    ua->add_option("--alpha", alpha, "comma-separated exponents, e.g. 2 or 1,1")->required();
    ua->add_option("--n", n_ua, "index")->required();
    ua->add_flag("--force", oua.force, "override the direct-expansion cutoff");
    add_common(ua, oua);

    CLI::App* ve = app.add_subcommand("verify", "run the invariant suites");
    ve->add_option("--max-n", max_n, "upper index for the value-based suites (default 20)");
    ve->add_option("--suites", suites, "oracle|cross|series|all (default all)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (nu->parsed()) return cmd_nu(n_nu, m_nu, onu);
        if (om->parsed()) return cmd_omega(n_om, m_om, prune, oom);
        if (ua->parsed()) return cmd_ualpha(alpha, n_ua, oua);
        if (ve->parsed()) return cmd_verify(max_n, suites);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
