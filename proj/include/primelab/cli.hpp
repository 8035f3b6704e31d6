// cli.hpp
// Subcommand front end. run_command parses argv-style arguments, runs one
// subcommand and writes its Report; exit codes are 0 (success, including
// empty findings), 2 (usage error) and 1 (internal error or, for reproduce,
// a golden mismatch).

#pragma once

#include <charconv>
#include <chrono>
#include <filesystem>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "primelab/crt.hpp"
#include "primelab/density.hpp"
#include "primelab/exact_counts.hpp"
#include "primelab/goldbach.hpp"
#include "primelab/prime_cache.hpp"
#include "primelab/probes.hpp"
#include "primelab/report.hpp"
#include "primelab/reproduce.hpp"
#include "primelab/residue.hpp"
#include "primelab/schinzel.hpp"
#include "primelab/sieve.hpp"

namespace primelab {

// Bad argument values discovered after parsing.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

namespace cli {

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

inline u64 parse_u64(const std::string& s, const std::string& what) {
    u64 v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw UsageError("invalid " + what + ": '" + s + "'");
    return v;
}

inline std::vector<u64> parse_list(const std::string& s, const std::string& what) {
    std::vector<u64> out;
    for (const auto& part : split(s, ',')) out.push_back(parse_u64(part, what));
    return out;
}

inline AdmissibleTuple parse_tuple(const std::string& s) { return AdmissibleTuple(parse_list(s, "tuple offset")); }

// Prime tables, optionally backed by a cache file.
class TableSource {
public:
    explicit TableSource(std::string path) : path_(std::move(path)) {}

    PrimeTable get(u64 limit, Report& r) {
        if (!path_.empty() && std::filesystem::exists(path_)) {
            PrimeTable t = load_cache(std::filesystem::path(path_));
            if (t.limit() >= limit) {
                r.params["cache"] = "hit";
                return t;
            }
        }
        PrimeTable t = sieve_primes(limit);
        if (!path_.empty()) {
            save_cache(t, std::filesystem::path(path_));
            r.params["cache"] = "written";
        }
        return t;
    }

private:
    std::string path_;
};

inline Json count_row(const CountReport& c) {
    Json row = Json::object();
    row["x"] = c.x;
    row["formula"] = c.formula_evaluated ? Json(c.formula_value) : Json(nullptr);
    row["oracle"] = c.oracle_value;
    row["delta"] = c.formula_evaluated ? Json(c.delta()) : Json(nullptr);
    Json corr = Json::object();
    for (const auto& [k, v] : c.corrections) corr[k] = v;
    row["corrections"] = corr;
    return row;
}

inline Json estimate_row(const EstimateReport& e) {
    Json row = Json::object();
    row["x"] = e.x;
    row["estimate"] = num(e.estimate);
    row["oracle"] = e.oracle ? Json(*e.oracle) : Json(nullptr);
    row["ratio"] = e.ratio ? num(*e.ratio) : Json(nullptr);
    row["params"] = to_json(e.params);
    return row;
}

inline std::string pair_text(const PrimePair& p) {
    return "(" + std::to_string(p.first) + "," + std::to_string(p.second) + ")";
}

struct Options {
    // count / estimate
    std::string kind;
    std::vector<u64> xs;
    u64 random_count = 0;
    u64 random_max = 0;
    std::string tuple = "2";
    std::string spec = "twin";
    u64 budget = kDefaultTermBudget;
    u64 a = 1, b = 2;
    i64 q = 2;
    std::string ap_kind = "prime";
    std::optional<double> constant;
    // primes
    u64 limit = 0;
    bool list = false;
    std::vector<u64> tests;
    // crt
    std::vector<std::string> congruences;
    std::vector<std::string> allow;
    u64 lo = 0, hi = 0;
    bool count_only = false;
    // goldbach
    u64 even = 0;
    std::string mode = "exact";
    bool zero_eta = false;
    bool span = false;
    std::optional<u64> refine;
    std::optional<u64> lower_end;
    // twin-crt
    std::string prefix = "2,3,5";
    u64 bound = 49;
    bool lower = false;
    // partition
    std::string part_a, part_b, mu, nu;
    std::string sign = "+";
    // schinzel
    u64 num = 0, den = 0, max_k = 1000;
    // bertrand / hl
    std::string alpha = "2";
    bool alpha_given = false;
    u64 n_min = 1, n_max = 0;
    bool twin = false;
    u64 x_max = 0, y_max = 0;
    // xi
    std::vector<double> sigmas;
    std::optional<u64> sum_n;
    double s = 2.0;
    std::optional<u64> euler_p;
    // witness
    std::optional<u64> wk, wn, wq;
    // reproduce
    std::string corrupt;
};

inline std::vector<u64> count_points(const Options& o, u64 seed, u64 lo) {
    std::vector<u64> xs = o.xs;
    if (o.random_count > 0) {
        if (o.random_max < lo) throw UsageError("--max must be >= " + std::to_string(lo));
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<u64> dist(lo, o.random_max);
        for (u64 i = 0; i < o.random_count; ++i) xs.push_back(dist(rng));
    }
    if (xs.empty()) throw UsageError("give --x values or --random K --max X");
    return xs;
}

inline void run_primes(const Options& o, TableSource& src, Report& r) {
    const PrimeTable t = src.get(o.limit, r);
    r.params["limit"] = o.limit;
    r.params["count"] = t.pi(o.limit);
    const auto ps = t.primes_up_to(o.limit);
    r.params["largest"] = ps.empty() ? Json(nullptr) : Json(ps.back());
    for (u64 n : o.tests) {
        Json row = Json::object();
        row["n"] = n;
        row["is_prime"] = is_prime(n, t);
        r.rows.push_back(row);
    }
    if (o.list)
        for (std::size_t i = 0; i < ps.size(); ++i) r.rows.push_back(Json{{"index", i + 1}, {"prime", ps[i]}});
    if (o.tests.empty() && !o.list) r.rows.push_back(Json{{"limit", o.limit}, {"count", t.pi(o.limit)}});
}

inline void run_count(const Options& o, u64 seed, TableSource& src, Report& r) {
    r.params["kind"] = o.kind;
    const u64 lo = o.kind == "twin" ? 9 : 4;
    const auto xs = count_points(o, seed, lo);
    r.params["seed"] = seed;
    u64 top = 0;
    for (u64 x : xs) top = std::max(top, x);
    if (o.kind == "mersenne" || o.kind == "fermat") {
        for (u64 x : xs) {
            const auto c = o.kind == "mersenne" ? mersenne_exact_count(x) : fermat_exact_count(x);
            r.rows.push_back(count_row(c));
            for (const auto& n : c.notes) r.warn(n);
        }
        r.warn("exponent sieves use the multiplicative order of 2 mod p, a divisor of p - 1, as the period");
        return;
    }
    const PrimeTable t = src.get(top + 8, r);
    if (o.kind == "pi") {
        for (u64 x : xs) r.rows.push_back(count_row(legendre_pi(x, t, o.budget)));
    } else if (o.kind == "twin") {
        for (u64 x : xs) r.rows.push_back(count_row(twin_count_formula(x, t, o.budget)));
    } else if (o.kind == "tuple") {
        const auto tuple = parse_tuple(o.tuple);
        r.params["tuple"] = tuple.to_string();
        for (u64 x : xs) r.rows.push_back(count_row(tuple_count_formula(x, tuple, t, o.budget)));
    } else if (o.kind == "survivors") {
        r.params["spec"] = o.spec;
        for (u64 x : xs) {
            const auto primes = sieving_prime_set(x, t);
            ResidueSpec spec;
            if (o.spec == "twin")
                spec = twin_spec(primes);
            else if (o.spec == "sophie")
                spec = sophie_spec(primes);
            else if (o.spec == "prime")
                spec = prime_spec(primes);
            else if (o.spec == "tuple")
                spec = tuple_spec(primes, parse_tuple(o.tuple));
            else
                throw UsageError("unknown --spec " + o.spec);
            const auto s = survivor_breakdown(x, spec, o.budget);
            u64 oracle = 0;
            for (u64 n = 1; n <= x; ++n) oracle += spec.admits(n);
            Json row = Json::object();
            row["x"] = x;
            row["survivors"] = s.complete ? Json(s.total) : Json(nullptr);
            row["oracle"] = oracle;
            row["delta"] = s.complete ? Json(s.total - static_cast<i64>(oracle)) : Json(nullptr);
            row["nodes"] = s.nodes;
            if (!s.complete) r.warn("term budget exceeded; inclusion-exclusion not evaluated");
            r.rows.push_back(row);
        }
    } else {
        throw UsageError("unknown count kind " + o.kind);
    }
    for (const auto& row : r.rows)
        if (row.contains("formula") && row["formula"].is_null())
            r.warn("term budget exceeded for some x; those rows are oracle-only");
}

inline void run_estimate(const Options& o, u64 seed, TableSource& src, Report& r) {
    r.params["kind"] = o.kind;
    if (o.kind == "twin-constant") {
        for (const auto& row : twin_constant_probe(o.xs))
            r.rows.push_back(Json{{"x", row.x}, {"u", num(row.u)}, {"implied_c", num(row.implied_c)}});
        return;
    }
    auto add = [&](const EstimateReport& e) {
        r.rows.push_back(estimate_row(e));
        for (const auto& w : e.warnings) r.warn(w);
    };
    if (o.kind == "mersenne" || o.kind == "fermat") {
        for (u64 x : count_points(o, seed, 4)) add(o.kind == "mersenne" ? mersenne_estimate(x) : fermat_estimate(x));
        return;
    }
    const auto xs = count_points(o, seed, 4);
    u64 top = 0;
    for (u64 x : xs) top = std::max(top, x);
    const PrimeTable t = src.get(top + 8, r);
    for (u64 x : xs) {
        if (o.kind == "psi")
            add(psi_estimate(x, t));
        else if (o.kind == "omega")
            add(omega_estimate(x, t));
        else if (o.kind == "omega-k")
            add(omega_k_estimate(x, parse_tuple(o.tuple), t));
        else if (o.kind == "ap-psi")
            add(ap_psi_estimate(x, o.a, o.b, t));
        else if (o.kind == "ap-omega")
            add(ap_omega_estimate(x, o.a, o.b, t));
        else if (o.kind == "ap-asymptotic")
            add(ap_asymptotic(x, o.a, o.b, o.ap_kind == "twin" ? ApKind::twin : ApKind::prime, t, o.constant));
        else if (o.kind == "primitive-root")
            add(primitive_root_census(o.q, o.a, o.b, x, t));
        else
            throw UsageError("unknown estimate kind " + o.kind);
    }
}

inline void run_crt(const Options& o, Report& r) {
    if (o.congruences.empty() == o.allow.empty())
        throw UsageError("crt: give either r:m congruences or --allow p=r1,r2,... entries");
    if (!o.congruences.empty()) {
        CongruenceSystem sys;
        for (const auto& tok : o.congruences) {
            const auto parts = split(tok, ':');
            if (parts.size() != 2) throw UsageError("crt: congruence must look like r:m, got '" + tok + "'");
            const u64 m = parse_u64(parts[1], "modulus");
            if (m == 0) throw UsageError("crt: modulus must be positive");
            sys.push_back({parse_u64(parts[0], "residue") % m, m});
        }
        const auto sol = crt_solve(sys);
        r.rows.push_back(Json{{"value", big(sol.value)}, {"modulus", big(sol.modulus)}});
        return;
    }
    std::vector<ChoiceSpec::Entry> entries;
    for (const auto& tok : o.allow) {
        const auto parts = split(tok, '=');
        if (parts.size() != 2) throw UsageError("crt: --allow must look like p=r1,r2, got '" + tok + "'");
        entries.push_back({parse_u64(parts[0], "modulus"), parse_list(parts[1], "residue")});
    }
    const ChoiceSpec spec(std::move(entries));
    r.params["class_count"] = big(choice_count(spec));
    r.params["modulus"] = big(spec.modulus());
    if (o.count_only) {
        r.rows.push_back(Json{{"class_count", big(choice_count(spec))}});
        return;
    }
    if (o.hi < o.lo) throw UsageError("crt: --hi must be >= --lo");
    CrtStream stream(spec, o.lo, o.hi);
    r.params["lo"] = o.lo;
    r.params["hi"] = o.hi;
    r.params["enumeration"] = stream.mode() == EnumerationMode::product ? "product" : "range_scan";
    for (u64 n : stream) r.rows.push_back(Json{{"n", n}});
    if (r.rows.empty()) r.warn("no admissible integer in range");
}

inline void run_goldbach(const Options& o, Report& r) {
    const SplitPlan plan = build_split_plan(o.even);
    r.params["two_n"] = o.even;
    r.params["mode"] = o.mode;
    r.params["sieving_primes"] = u64_list(plan.primes);
    r.params["beta"] = u64_list(plan.beta);
    r.params["class_count"] = big(plan.class_count());
    const auto g = goldbach_enumerate(o.even, o.mode == "guided" ? GoldbachMode::guided : GoldbachMode::exact,
                                      o.zero_eta);
    r.params["candidates"] = g.candidates;
    r.params["unit_candidate"] = g.unit_candidate;
    r.params["enumeration"] = g.enumeration == EnumerationMode::product ? "product" : "range_scan";
    r.params["pairs"] = g.pairs.size();
    for (const auto& pr : g.pairs) {
        const bool zero = std::find(g.zero_eta_pairs.begin(), g.zero_eta_pairs.end(), pr) != g.zero_eta_pairs.end();
        r.rows.push_back(Json{{"kind", "pair"}, {"p", pr.first}, {"q", pr.second}, {"zero_eta", zero}});
    }
    if (g.pairs.empty()) r.warn("no pair found");
    if (g.unit_candidate) r.warn("the unit 1 satisfies every split congruence; excluded from pairs");
    if (o.span) {
        const auto s = span_report(o.even);
        Json row{{"kind", "span"}, {"feasible", s.feasible}, {"modulus", big(s.modulus)},
                 {"threshold", big(s.threshold)}, {"bound_all_u2", big(s.bound_all_u2)},
                 {"bound_all_u1", big(s.bound_all_u1)}};
        if (s.feasible) {
            row["candidate_count"] = s.candidate_count;
            row["candidate_min"] = s.candidate_min;
            row["candidate_max"] = s.candidate_max;
            row["span"] = s.span;
            row["flag"] = s.flag;
        }
        if (!s.note.empty()) r.warn("span: " + s.note);
        r.rows.push_back(row);
    }
    if (o.refine) {
        const auto f = goldbach_refine(o.even, *o.refine);
        Json row{{"kind", "refine"}, {"t", *o.refine}};
        row["p"] = f.pair ? Json(f.pair->first) : Json(nullptr);
        row["q"] = f.pair ? Json(f.pair->second) : Json(nullptr);
        row["s"] = f.divisor ? Json(*f.divisor) : Json(nullptr);
        row["divisors_tried"] = u64_list(f.divisors_tried);
        if (!f.pair) r.warn("refine: no divisor produced a pair");
        r.rows.push_back(row);
    }
    if (o.lower_end) {
        const auto p = lower_end_probe(6, *o.lower_end);
        r.rows.push_back(Json{{"kind", "lower_end"},
                              {"range_max", *o.lower_end},
                              {"groups", p.groups},
                              {"forbidden_at_lower_end", p.forbidden_at_lower_end},
                              {"frequency", num(p.frequency())},
                              {"expected", num(p.expected)}});
    }
}

inline void run_twin_crt(const Options& o, Report& r) {
    const auto primes = parse_list(o.prefix, "prime");
    const auto t = twin_crt_search(primes, o.bound, o.lower ? TwinOrientation::lower : TwinOrientation::upper);
    r.params["primes"] = u64_list(primes);
    r.params["bound"] = o.bound;
    r.params["orientation"] = o.lower ? "(n, n+2)" : "(n-2, n)";
    r.params["candidates"] = u64_list(t.candidates);
    r.params["certification_bound"] = t.certification_bound;
    r.params["discarded"] = t.discarded;
    for (const auto& h : t.pairs)
        r.rows.push_back(Json{{"p", h.pair.first}, {"q", h.pair.second}, {"certified", h.certified}});
    if (t.pairs.empty()) r.warn("no twin pair in range");
}

inline void run_partition(const Options& o, Report& r) {
    if (o.sign != "+" && o.sign != "-") throw UsageError("partition: --sign must be + or -");
    const auto a = parse_list(o.part_a, "prime"), b = parse_list(o.part_b, "prime");
    const auto mu = o.mu.empty() ? std::vector<u64>(a.size(), 1) : parse_list(o.mu, "exponent");
    const auto nu = o.nu.empty() ? std::vector<u64>(b.size(), 1) : parse_list(o.nu, "exponent");
    const auto p = partition_probe(a, b, mu, nu, o.sign == "+");
    r.rows.push_back(Json{{"alpha", big(p.alpha)},
                          {"bound", big(p.bound)},
                          {"verdict", p.verdict == PartitionVerdict::prime_by_construction ? "PRIME-BY-CONSTRUCTION"
                                                                                           : "OUT-OF-RANGE"},
                          {"is_prime", p.is_prime ? Json(*p.is_prime) : Json(nullptr)}});
}

inline void run_schinzel(const Options& o, Report& r) {
    const auto s = schinzel_search(o.num, o.den, o.max_k);
    r.params["num"] = o.num;
    r.params["den"] = o.den;
    r.params["gcd"] = s.gcd;
    r.params["m"] = s.m;
    r.params["n"] = s.n;
    r.params["max_k"] = o.max_k;
    r.params["k"] = s.k ? Json(*s.k) : Json(nullptr);
    r.params["p"] = s.k ? Json(s.p) : Json(nullptr);
    r.params["q"] = s.k ? Json(s.q) : Json(nullptr);
    r.params["verified"] = s.k ? verify_shifted_quotient(s.m, s.n, s.p, s.q) : false;
    r.params["filtered"] = s.filtered;
    r.params["tested"] = s.tested;
    if (s.gcd > 1) r.warn("input reduced by gcd " + std::to_string(s.gcd));
    if (!s.k) r.warn("no k <= " + std::to_string(o.max_k) + " gives a prime pair");
    if (s.window.empty()) {
        r.warn("prime window is empty for this k");
        return;
    }
    // remainder-sequence tables over the final window
    const auto t = schinzel_table(s.m, s.n, s.k ? *s.k : o.max_k, s.window);
    auto row = [&](const std::string& name, const std::vector<u64>& vals) {
        Json j{{"row", name}};
        for (std::size_t i = 0; i < t.primes.size(); ++i) j[std::to_string(t.primes[i])] = vals[i];
        r.rows.push_back(j);
    };
    row("mod", t.primes);
    row(std::to_string(2 * s.m), t.two_m.remainders);
    row(std::to_string(2 * s.n), t.two_n.remainders);
    row("k=" + std::to_string(s.k ? *s.k : o.max_k), t.k.remainders);
    Json allowed{{"row", "allowed"}};
    for (std::size_t i = 0; i < t.primes.size(); ++i) {
        std::string v;
        for (u64 l : t.allowed[i]) v += (v.empty() ? "" : " ") + std::to_string(l);
        allowed[std::to_string(t.primes[i])] = v;
    }
    r.rows.push_back(allowed);
}

inline void run_bertrand(const Options& o, Report& r) {
    Ratio alpha;
    try {
        alpha = parse_ratio(o.alpha);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    ScanResult<u64> s;
    if (o.twin && !o.alpha_given) {
        s = twin_bertrand_scan(o.n_min, o.n_max);
    } else if (o.twin) {
        s = twin_bertrand_alpha_scan(alpha, o.n_min, o.n_max);
    } else {
        s = bertrand_scan(alpha, o.n_min, o.n_max);
    }
    r.params = to_json(s.params);
    r.params["twin"] = o.twin;
    r.params["failures"] = s.failures.size();
    r.params["largest_failure"] = s.largest_failure ? Json(*s.largest_failure) : Json(nullptr);
    for (u64 n : s.failures) r.rows.push_back(Json{{"failure", n}});
    if (s.failures.empty()) r.warn("no failures in range");
}

inline void run_hl(const Options& o, Report& r) {
    const auto h = hl_inequality_scan(o.x_max, o.y_max);
    r.params = to_json(h.scan.params);
    r.params["checked"] = h.checked;
    r.params["failures"] = h.scan.failures.size();
    r.params["equalities"] = h.equalities;
    if (h.scan.largest_failure)
        r.params["largest_failure"] = pair_text(*h.scan.largest_failure);
    for (const auto& row : h.rows)
        r.rows.push_back(Json{{"y", row.y},
                              {"pi_y", row.pi_y},
                              {"max_window", row.max_window},
                              {"argmax_x", row.argmax_x},
                              {"slack", static_cast<i64>(row.pi_y) - static_cast<i64>(row.max_window)}});
    if (h.scan.failures.empty()) r.warn("no failures: pi(x + y) <= pi(x) + pi(y) on the whole grid");
}

inline void run_xi(const Options& o, Report& r) {
    if (o.sigmas.empty() && !o.sum_n && !o.euler_p) throw UsageError("xi: give --sigma, --sum or --euler");
    if (!o.sigmas.empty()) {
        for (const auto& row : xi_sigma_probe(o.sigmas))
            r.rows.push_back(Json{{"kind", "sigma"},
                                  {"sigma", num(row.sigma)},
                                  {"log_xi", num(row.log_xi)},
                                  {"prime_sum", num(row.prime_sum)},
                                  {"residual", num(row.residual)},
                                  {"log_inv_sigma", num(row.log_inv_sigma)},
                                  {"ratio", num(row.ratio)}});
        r.warn("ratio log xi / log(1/sigma) is reported without an asserted limit");
    }
    if (o.sum_n) {
        r.params["s"] = num(o.s);
        r.params["N"] = *o.sum_n;
        if (o.s > 1.0) {
            r.rows.push_back(
                Json{{"kind", "partial_sum"}, {"s", num(o.s)}, {"N", *o.sum_n}, {"value", num(xi_partial_sum(o.s, *o.sum_n))}});
        } else {
            std::vector<u64> grid;
            for (u64 n = 10; n < *o.sum_n; n *= 10) grid.push_back(n);
            grid.push_back(*o.sum_n);
            for (const auto& g : xi_growth_table(o.s, grid))
                r.rows.push_back(Json{{"kind", "growth"}, {"s", num(o.s)}, {"N", g.n}, {"value", num(g.partial)},
                                      {"log_N", num(g.log_n)}});
            r.warn("s <= 1: divergence probe, growth table only");
        }
    }
    if (o.euler_p) {
        const double e = xi_euler_product(o.s, *o.euler_p);
        const double series = xi_smooth_series(o.s, *o.euler_p, u64{1'000'000'000'000'000'000});
        r.rows.push_back(Json{{"kind", "euler"},
                              {"s", num(o.s)},
                              {"P", *o.euler_p},
                              {"product", num(e)},
                              {"smooth_series", num(series)},
                              {"difference", num(e - series)}});
    }
}

inline void run_witness(const Options& o, Report& r) {
    WitnessVerdict v;
    if (o.wq) {
        if (o.wk || o.wn) throw UsageError("mersenne-witness: give --q or --k/--n, not both");
        v = mersenne_witness_for(*o.wq);
    } else {
        if (!o.wk || !o.wn) throw UsageError("mersenne-witness: give --k and --n (or --q)");
        v = mersenne_composite_witness(*o.wk, *o.wn);
        r.params["k"] = *o.wk;
        r.params["n"] = *o.wn;
    }
    r.rows.push_back(Json{{"q", v.q},
                          {"verdict", v.witness ? "WITNESS" : "NOT-APPLICABLE"},
                          {"divisor", v.witness ? Json(v.divisor) : Json(nullptr)},
                          {"failed_condition", v.failed_condition},
                          {"mersenne_mod_2q1", v.residue},
                          {"verified_exact", v.verified_exact}});
}

}  // namespace cli

inline int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    using namespace cli;
    CLI::App app{"primelab: prime sieving, exact counts, CRT searches and probes"};
    app.name("primelab");
    app.require_subcommand(1);
    std::string format = "json", cache;
    u64 seed = 1;
    app.add_option("--format", format, "json, csv or table")->check(CLI::IsMember({"json", "csv", "table"}));
    app.add_option("--cache", cache, "prime cache file (read if present, written when sieving)");
    app.add_option("--seed", seed, "seed for randomized points");
    app.fallthrough();

    Options o;
    auto* primes = app.add_subcommand("primes", "sieve and list or test primes");
    primes->add_option("--limit", o.limit, "sieve limit")->required();
    primes->add_flag("--list", o.list, "one row per prime");
    primes->add_option("--test", o.tests, "numbers to test for primality");

    auto* count = app.add_subcommand("count", "exact counting formulas against brute force");
    count->add_option("kind", o.kind, "pi, twin, tuple, survivors, mersenne, fermat")
        ->required()
        ->check(CLI::IsMember({"pi", "twin", "tuple", "survivors", "mersenne", "fermat"}));
    count->add_option("--x", o.xs, "bounds");
    count->add_option("--random", o.random_count, "number of random bounds");
    count->add_option("--max", o.random_max, "largest random bound");
    count->add_option("--tuple", o.tuple, "offsets such as 2,6,8");
    count->add_option("--spec", o.spec, "survivor spec: twin, sophie, prime, tuple");
    count->add_option("--budget", o.budget, "inclusion-exclusion term budget");

    auto* estimate = app.add_subcommand("estimate", "density heuristics against brute force");
    estimate->add_option("kind", o.kind)
        ->required()
        ->check(CLI::IsMember({"psi", "omega", "omega-k", "ap-psi", "ap-omega", "ap-asymptotic", "mersenne", "fermat",
                               "twin-constant", "primitive-root"}));
    estimate->add_option("--x", o.xs, "bounds");
    estimate->add_option("--random", o.random_count, "number of random bounds");
    estimate->add_option("--max", o.random_max, "largest random bound");
    estimate->add_option("--tuple", o.tuple, "offsets such as 2,6,8");
    estimate->add_option("--a", o.a, "progression start");
    estimate->add_option("--b", o.b, "progression step");
    estimate->add_option("--q", o.q, "base for primitive-root census");
    estimate->add_option("--ap-kind", o.ap_kind)->check(CLI::IsMember({"prime", "twin"}));
    estimate->add_option("--constant", o.constant, "twin constant override");

    auto* crt = app.add_subcommand("crt", "solve congruences or enumerate allowed residues");
    crt->add_option("congruences", o.congruences, "r:m tokens");
    crt->add_option("--allow", o.allow, "p=r1,r2,... per prime");
    crt->add_option("--lo", o.lo, "range start");
    crt->add_option("--hi", o.hi, "range end");
    crt->add_flag("--count", o.count_only, "only the class count");

    auto* goldbach = app.add_subcommand("goldbach", "Goldbach pairs through remainder splits");
    goldbach->add_option("--even", o.even, "even number >= 6")->required();
    goldbach->add_option("--mode", o.mode)->check(CLI::IsMember({"exact", "guided"}));
    goldbach->add_flag("--allow-zero-eta", o.zero_eta, "include pairs whose smaller member is a sieving prime");
    goldbach->add_flag("--span", o.span, "span of suitable candidates over one period");
    goldbach->add_option("--refine", o.refine, "candidate above 2n to refine");
    goldbach->add_option("--lower-end", o.lower_end, "measure lower-end frequency over even numbers up to this");

    auto* twin_crt = app.add_subcommand("twin-crt", "twin pairs from CRT classes");
    twin_crt->add_option("--primes", o.prefix, "prime prefix such as 2,3,5");
    twin_crt->add_option("--bound", o.bound, "exclusive bound on n");
    twin_crt->add_flag("--lower", o.lower, "pairs (n, n+2) instead of (n-2, n)");

    auto* partition = app.add_subcommand("partition", "signed products over a split prime prefix");
    partition->add_option("--a", o.part_a, "first part, e.g. 2,5")->required();
    partition->add_option("--b", o.part_b, "second part, e.g. 3")->required();
    partition->add_option("--mu", o.mu, "exponents for the first part");
    partition->add_option("--nu", o.nu, "exponents for the second part");
    partition->add_option("--sign", o.sign, "+ or -");

    auto* schinzel = app.add_subcommand("schinzel", "m/n as (p+1)/(q+1) with p, q prime");
    schinzel->add_option("--num", o.num)->required();
    schinzel->add_option("--den", o.den)->required();
    schinzel->add_option("--max-k", o.max_k);

    auto* bertrand = app.add_subcommand("bertrand", "interval scans for primes or twin pairs");
    auto* alpha_opt = bertrand->add_option("--alpha", o.alpha, "decimal in (1, 2]; with --twin selects the generalized form");
    bertrand->add_option("--min", o.n_min);
    bertrand->add_option("--max", o.n_max)->required();
    bertrand->add_flag("--twin", o.twin, "twin pairs, both members inside the interval");

    auto* hl = app.add_subcommand("hl-scan", "pi(x + y) <= pi(x) + pi(y) over a grid");
    hl->add_option("--xmax", o.x_max)->required();
    hl->add_option("--ymax", o.y_max)->required();

    auto* xi = app.add_subcommand("xi", "sum of 2^Omega(n) / n^s and its Euler product");
    xi->add_option("--sigma", o.sigmas, "sigma values in (0, 1)");
    xi->add_option("--sum", o.sum_n, "partial sum up to N");
    xi->add_option("--s", o.s, "exponent");
    xi->add_option("--euler", o.euler_p, "Euler product over p <= P, with a smooth-series cross-check");

    auto* witness = app.add_subcommand("mersenne-witness", "composite Mersenne numbers from q = k 2^n - 1");
    witness->add_option("--k", o.wk);
    witness->add_option("--n", o.wn);
    witness->add_option("--q", o.wq);

    auto* reproduce = app.add_subcommand("reproduce", "regenerate every worked example");
    reproduce->add_option("--corrupt", o.corrupt, "alter one golden value (self-test)");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    }

    o.alpha_given = alpha_opt->count() > 0;
    const Format fmt = parse_format(format);
    auto* sub = app.get_subcommands().front();
    Report r;
    r.command = sub->get_name();
    TableSource src(cache);
    const auto start = std::chrono::steady_clock::now();
    int code = 0;
    try {
        if (sub == primes)
            run_primes(o, src, r);
        else if (sub == count)
            run_count(o, seed, src, r);
        else if (sub == estimate)
            run_estimate(o, seed, src, r);
        else if (sub == crt)
            run_crt(o, r);
        else if (sub == goldbach)
            run_goldbach(o, r);
        else if (sub == twin_crt)
            run_twin_crt(o, r);
        else if (sub == partition)
            run_partition(o, r);
        else if (sub == schinzel)
            run_schinzel(o, r);
        else if (sub == bertrand)
            run_bertrand(o, r);
        else if (sub == hl)
            run_hl(o, r);
        else if (sub == xi)
            run_xi(o, r);
        else if (sub == witness)
            run_witness(o, r);
        else if (sub == reproduce) {
            r = reproduce_examples(o.corrupt);
            if (reproduce_mismatches(r) > 0) code = 1;
        }
    } catch (const CacheError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n\n" << sub->help();
        return 2;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << "\n\n" << sub->help();
        return 2;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return 1;
    }
    r.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    write_report(out, r, fmt);
    // CSV carries rows only; warnings go to the error stream
    if (fmt == Format::csv)
        for (const auto& w : r.warnings) err << "warning: " << w << '\n';
    return code;
}

}  // namespace primelab
