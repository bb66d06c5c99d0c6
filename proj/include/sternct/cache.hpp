#pragma once

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "genfun.hpp"
#include "holonomic.hpp"
#include "tpoly.hpp"

namespace sternct {

/* environment fallback; an explicit --cache-dir flag wins over this */
inline std::string default_cache_dir() {
    const char* env = std::getenv("STERNCT_CACHE_DIR");
    return (env != nullptr && *env != '\0') ? std::string(env)
                                            : std::string("./.sternct-cache");
}

namespace detail {

inline std::string cache_path(const std::string& dir, const std::string& kind,
                              std::int64_t p1, std::int64_t p2) {
    return dir + "/" + kind + "-" + std::to_string(p1) + "-" + std::to_string(p2) +
           ".txt";
}

inline bool cache_header_ok(std::istream& in, const std::string& kind,
                            std::int64_t p1, std::int64_t p2) {
    std::string magic, k;
    int version = 0;
    std::int64_t a = 0, b = 0;
    if (!(in >> magic >> version >> k >> a >> b)) return false;
    return magic == "STERNCT-CACHE" && version == 1 && k == kind && a == p1 && b == p2;
}

inline bool parse_int(const std::string& tok, Int& out) {
    return !tok.empty() && mpz_set_str(out.get_mpz_t(), tok.c_str(), 10) == 0;
}

inline bool parse_rat(const std::string& tok, Rat& out) {
    if (tok.empty() || mpq_set_str(out.get_mpq_t(), tok.c_str(), 10) != 0) return false;
    if (mpz_sgn(mpq_denref(out.get_mpq_t())) == 0) return false;
    mpq_canonicalize(out.get_mpq_t());
    return true;
}

}  // namespace detail

/* `i j value` records (coeff-table, l-num kinds) */
struct IntRecord {
    std::int64_t i = 0;
    std::int64_t j = 0;
    Int v;
};

/* `r alpha beta value` records (rec-u, rec-v kinds) */
struct RatRecord {
    std::int64_t r = 0;
    std::int64_t a = 0;
    std::int64_t b = 0;
    Rat v;
};

inline bool cache_store_ints(const std::string& dir, const std::string& kind,
                             std::int64_t p1, std::int64_t p2,
                             const std::vector<IntRecord>& recs) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    const std::string path = detail::cache_path(dir, kind, p1, p2);
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) return false;
        out << "STERNCT-CACHE 1 " << kind << ' ' << p1 << ' ' << p2 << '\n';
        for (const IntRecord& r : recs)
            out << r.i << ' ' << r.j << ' ' << r.v.get_str() << '\n';
        if (!out) return false;
    }
    std::filesystem::rename(tmp, path, ec);
    return !ec;
}

inline std::optional<std::vector<IntRecord>> cache_load_ints(const std::string& dir,
                                                             const std::string& kind,
                                                             std::int64_t p1,
                                                             std::int64_t p2) {
    std::ifstream in(detail::cache_path(dir, kind, p1, p2));
    if (!in || !detail::cache_header_ok(in, kind, p1, p2)) return std::nullopt;
    std::vector<IntRecord> recs;
    for (;;) {
        IntRecord r;
        std::string tok;
        if (!(in >> r.i)) break;
        /* a record that starts must be whole */
        if (!(in >> r.j >> tok) || !detail::parse_int(tok, r.v)) return std::nullopt;
        recs.push_back(std::move(r));
    }
    if (!in.eof()) return std::nullopt; /* non-numeric garbage */
    return recs;
}

inline bool cache_store_rats(const std::string& dir, const std::string& kind,
                             std::int64_t p1, std::int64_t p2,
                             const std::vector<RatRecord>& recs) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    const std::string path = detail::cache_path(dir, kind, p1, p2);
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) return false;
        out << "STERNCT-CACHE 1 " << kind << ' ' << p1 << ' ' << p2 << '\n';
        for (const RatRecord& r : recs)
            out << r.r << ' ' << r.a << ' ' << r.b << ' ' << r.v.get_str() << '\n';
        if (!out) return false;
    }
    std::filesystem::rename(tmp, path, ec);
    return !ec;
}

inline std::optional<std::vector<RatRecord>> cache_load_rats(const std::string& dir,
                                                             const std::string& kind,
                                                             std::int64_t p1,
                                                             std::int64_t p2) {
    std::ifstream in(detail::cache_path(dir, kind, p1, p2));
    if (!in || !detail::cache_header_ok(in, kind, p1, p2)) return std::nullopt;
    std::vector<RatRecord> recs;
    for (;;) {
        RatRecord r;
        std::string tok;
        if (!(in >> r.r)) break;
        if (!(in >> r.a >> r.b >> tok) || !detail::parse_rat(tok, r.v)) return std::nullopt;
        recs.push_back(std::move(r));
    }
    if (!in.eof()) return std::nullopt;
    return recs;
}

/* --- coeff-table: records are (i, j, a_ij) with j = -slot --- */

inline bool store_coeff_table(const std::string& dir, const CoeffTable& tab) {
    std::vector<IntRecord> recs;
    for (std::size_t i = 0; i < tab.a.size(); ++i)
        for (std::size_t d = 0; d < tab.a[i].size(); ++d)
            recs.push_back(IntRecord{static_cast<std::int64_t>(i),
                                     -static_cast<std::int64_t>(d), tab.a[i][d]});
    return cache_store_ints(dir, "coeff-table", tab.n_seed, tab.m, recs);
}

inline std::optional<CoeffTable> load_coeff_table(const std::string& dir, int n_seed,
                                                  std::int64_t m) {
    auto recs = cache_load_ints(dir, "coeff-table", n_seed, m);
    if (!recs) return std::nullopt;
    CoeffTable tab;
    tab.n_seed = n_seed;
    tab.m = m;
    std::int64_t rows = 0;
    for (const IntRecord& r : *recs) rows = std::max(rows, r.i + 1);
    tab.a.resize(static_cast<std::size_t>(rows));
    for (std::size_t i = 0; i < tab.a.size(); ++i) {
        const std::int64_t dmax = m - static_cast<std::int64_t>(i);
        if (dmax >= 0) tab.a[i].assign(static_cast<std::size_t>(dmax) + 1, Int(0));
    }
    for (const IntRecord& r : *recs) {
        const std::int64_t d = -r.j;
        if (r.i < 0 || d < 0 || d >= static_cast<std::int64_t>(tab.a[static_cast<std::size_t>(r.i)].size()))
            return std::nullopt;
        tab.a[static_cast<std::size_t>(r.i)][static_cast<std::size_t>(d)] = r.v;
    }
    return tab;
}

/* --- l-num: the solved numerator, records (t-power, x-power, coefficient) --- */

inline bool store_solved_numerator(const std::string& dir, int n_seed, const TPoly& l) {
    std::vector<IntRecord> recs;
    for (std::size_t i = 0; i < l.coeffs().size(); ++i) {
        const LaurentPoly& p = l.coeffs()[i];
        if (p.is_zero()) continue;
        for (std::int64_t e = p.ldeg(); e <= p.deg(); ++e)
            if (sgn(p.coeff(e)) != 0)
                recs.push_back(IntRecord{static_cast<std::int64_t>(i), e, p.coeff(e)});
    }
    return cache_store_ints(dir, "l-num", n_seed, 0, recs);
}

inline std::optional<TPoly> load_solved_numerator(const std::string& dir, int n_seed) {
    auto recs = cache_load_ints(dir, "l-num", n_seed, 0);
    if (!recs || recs->empty()) return std::nullopt;
    std::int64_t rows = 0;
    for (const IntRecord& r : *recs) {
        if (r.i < 0) return std::nullopt;
        rows = std::max(rows, r.i + 1);
    }
    std::vector<std::map<std::int64_t, Int>> sparse(static_cast<std::size_t>(rows));
    for (const IntRecord& r : *recs)
        sparse[static_cast<std::size_t>(r.i)][r.j] = r.v;
    std::vector<LaurentPoly> slices(static_cast<std::size_t>(rows));
    for (std::size_t i = 0; i < sparse.size(); ++i) {
        if (sparse[i].empty()) continue;
        const std::int64_t lo = sparse[i].begin()->first;
        const std::int64_t hi = sparse[i].rbegin()->first;
        std::vector<Int> dense(static_cast<std::size_t>(hi - lo) + 1);
        for (const auto& [e, v] : sparse[i]) dense[static_cast<std::size_t>(e - lo)] = v;
        slices[i] = LaurentPoly(std::move(dense), lo);
    }
    return TPoly(std::move(slices));
}

/* --- rec-u / rec-v: records (r, k-exponent, j-exponent, rational) --- */

inline bool store_recurrence(const std::string& dir, const std::string& kind,
                             const RecurrenceOp& rec) {
    std::vector<RatRecord> recs;
    for (std::size_t r = 0; r < rec.c.size(); ++r) {
        const BiPoly& p = rec.c[r];
        for (std::int64_t a = 0; a <= p.outer_degree(); ++a) {
            const QPoly& q = p.coeff(static_cast<std::size_t>(a));
            for (std::int64_t b = 0; b <= q.degree(); ++b)
                if (sgn(q.coeff(static_cast<std::size_t>(b))) != 0)
                    recs.push_back(RatRecord{static_cast<std::int64_t>(r), a, b,
                                             q.coeff(static_cast<std::size_t>(b))});
        }
    }
    return cache_store_rats(dir, kind, 0, 0, recs);
}

inline std::optional<RecurrenceOp> load_recurrence(const std::string& dir,
                                                   const std::string& kind) {
    auto recs = cache_load_rats(dir, kind, 0, 0);
    if (!recs || recs->empty()) return std::nullopt;
    std::int64_t order = 0, kdeg = 0, jdeg = 0;
    for (const RatRecord& r : *recs) {
        if (r.r < 0 || r.a < 0 || r.b < 0) return std::nullopt;
        order = std::max(order, r.r);
        kdeg = std::max(kdeg, r.a);
        jdeg = std::max(jdeg, r.b);
    }
    std::vector<std::vector<std::vector<Rat>>> grid(
        static_cast<std::size_t>(order) + 1,
        std::vector<std::vector<Rat>>(static_cast<std::size_t>(kdeg) + 1,
                                      std::vector<Rat>(static_cast<std::size_t>(jdeg) + 1,
                                                       Rat(0))));
    for (const RatRecord& r : *recs)
        grid[static_cast<std::size_t>(r.r)][static_cast<std::size_t>(r.a)]
            [static_cast<std::size_t>(r.b)] = r.v;
    std::vector<BiPoly> c(static_cast<std::size_t>(order) + 1);
    for (std::size_t r = 0; r < c.size(); ++r) {
        std::vector<QPoly> outer(grid[r].size());
        for (std::size_t a = 0; a < grid[r].size(); ++a) outer[a] = QPoly(grid[r][a]);
        c[r] = BiPoly(std::move(outer));
    }
    return RecurrenceOp{std::move(c)};
}

}  // namespace sternct
