// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <string>

#include "oracles.hpp"
#include "primelab/primelab.hpp"

using namespace primelab;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

Outcome golden_examples() {
    const auto t = Clock::now();
    const auto r = reproduce_examples();
    const u64 bad = reproduce_mismatches(r);
    const double s = seconds_since(t);
    return {bad == 0 && s < 60,
            std::to_string(r.rows.size()) + " checks, " + std::to_string(bad) + " mismatches, " + std::to_string(s) + " s"};
}

Outcome legendre_exactness() {
    const auto t = Clock::now();
    const u64 top = 10'000'000;
    const auto pi = oracle::prefix_pi(top);
    const auto table = sieve_primes(top);
    u64 bad = 0, checked = 0, fallback = 0;
    auto check = [&](u64 x) {
        const auto r = legendre_pi(x, table);
        ++checked;
        if (!r.formula_evaluated) ++fallback;
        if (!r.formula_evaluated || r.formula_value != static_cast<i64>(pi[x])) ++bad;
    };
    for (u64 x = 4; x <= 100'000; ++x) check(x);
    std::mt19937_64 rng(20240601);
    std::uniform_int_distribution<u64> dist(4, top);
    for (int i = 0; i < 50; ++i) check(dist(rng));
    const double s = seconds_since(t);
    return {bad == 0 && s < 300, std::to_string(checked) + " x values, " + std::to_string(bad) + " mismatches (" +
                                     std::to_string(fallback) + " unevaluated), " + std::to_string(s) + " s"};
}

Outcome survivor_exactness() {
    const u64 top = 10'000;
    const auto table = sieve_primes(100);
    const AdmissibleTuple t26({2, 6}), t268({2, 6, 8});
    struct Family {
        const char* name;
        std::function<ResidueSpec(std::span<const u64>)> make;
    };
    const std::vector<Family> families{
        {"twin", [](auto ps) { return twin_spec(ps); }},
        {"sophie", [](auto ps) { return sophie_spec(ps); }},
        {"(2,6)", [&](auto ps) { return tuple_spec(ps, t26); }},
        {"(2,6,8)", [&](auto ps) { return tuple_spec(ps, t268); }},
    };
    u64 bad = 0, checked = 0;
    std::string first_bad;
    for (const auto& f : families) {
        std::size_t k = 0;
        ResidueSpec spec;
        u64 running = 0, last = 0;
        for (u64 x = 4; x <= top; ++x) {
            const auto ps = sieving_prime_set(x, table);
            if (ps.size() != k) {
                k = ps.size();
                spec = f.make(ps);
                running = 0;
                last = 0;
            }
            for (u64 n = last + 1; n <= x; ++n) running += spec.admits(n);
            last = x;
            ++checked;
            if (survivor_count(x, spec) != running) {
                if (!bad) first_bad = std::string(f.name) + " x=" + std::to_string(x);
                ++bad;
            }
        }
    }
    return {bad == 0, std::to_string(checked) + " (spec, x) cases, " + std::to_string(bad) + " mismatches" +
                          (bad ? ", first " + first_bad : "")};
}

Outcome goldbach_completeness() {
    u64 bad = 0, empty = 0, evens = 0, total_pairs = 0;
    for (u64 e = 6; e <= 10'000; e += 2) {
        ++evens;
        const auto r = goldbach_enumerate(e, GoldbachMode::exact, true);
        if (r.pairs != oracle::goldbach_pairs(e)) ++bad;
        if (r.pairs.empty()) ++empty;
        total_pairs += r.pairs.size();
    }
    return {bad == 0 && empty == 0, std::to_string(evens) + " evens, " + std::to_string(bad) + " mismatches, " +
                                        std::to_string(empty) + " without a pair, " + std::to_string(total_pairs) +
                                        " pairs"};
}

Outcome span_scan() {
    u64 feasible = 0, infeasible = 0, violations = 0;
    std::string first;
    for (u64 e = 6; e <= 5000; e += 2) {
        const auto r = span_report(e);
        if (!r.feasible) {
            ++infeasible;
            continue;
        }
        ++feasible;
        if (!r.flag) {
            if (!violations) first = std::to_string(e);
            ++violations;
        }
    }
    return {violations == 0, std::to_string(feasible) + " feasible, " + std::to_string(infeasible) + " infeasible, " +
                                 std::to_string(violations) + " violations" + (violations ? ", first 2n=" + first : "")};
}

Outcome estimator_bands() {
    const auto table = sieve_primes(1'000'000);
    const auto pi = oracle::prefix_pi(1'000'000);
    const auto f = oracle::flags(1'000'002);
    bool ok = true;
    std::string detail;
    for (u64 x : {100u, 1000u, 10000u, 100000u, 1000000u}) {
        u64 twins = 0;
        for (u64 p = 2; p + 2 <= x; ++p) twins += f[p] && f[p + 2];
        const double psi = psi_estimate(x, table).estimate / static_cast<double>(pi[x]);
        const double om = omega_estimate(x, table).estimate / static_cast<double>(twins);
        ok = ok && psi >= 0.8 && psi <= 1.3 && om >= 0.7 && om <= 1.5;
        char buf[96];
        std::snprintf(buf, sizeof buf, "%sx=%llu psi/pi=%.4f omega/T=%.4f", detail.empty() ? "" : "; ",
                      static_cast<unsigned long long>(x), psi, om);
        detail += buf;
    }
    return {ok, detail};
}

Outcome twin_bertrand() {
    const auto tb = twin_bertrand_scan(7, 10'000);
    const auto b = bertrand_scan(2.0, 1, 100'000);
    return {tb.failures.empty() && b.failures.empty(),
            "twin [7, 10^4] failures " + std::to_string(tb.failures.size()) + ", alpha=2 [1, 10^5] failures " +
                std::to_string(b.failures.size())};
}

Outcome hl_scan() {
    const auto t = Clock::now();
    const auto h = hl_inequality_scan(1000, 1000);
    const double s = seconds_since(t);
    return {h.scan.failures.empty() && s < 30, std::to_string(h.checked) + " pairs, " +
                                                   std::to_string(h.scan.failures.size()) + " failures, " +
                                                   std::to_string(h.equalities) + " equalities, " + std::to_string(s) + " s"};
}

Outcome exponent_sieves() {
    u64 bad = 0, cases = 0;
    for (u64 p = 3; p <= 1000; p += 2) {
        if (!oracle::prime(p)) continue;
        for (u64 u = 1; u <= 64; ++u) {
            u64 m = 0, f = 0;
            for (u64 q = 1; q <= u; ++q) {
                const u64 r = oracle::pow_mod(2, q, p);
                m += r == 1;
                f += r == p - 1;
            }
            ++cases;
            bad += mersenne_prime_hits(u, p) != m;
            bad += fermat_prime_hits(u, p) != f;
        }
    }
    const auto mc = mersenne_exact_count(8192);
    const auto fc = fermat_exact_count(70000);
    const bool counts = mc.oracle_value == 5 && mc.formula_value == 5 && fc.oracle_value == 5 && fc.formula_value == 5;
    return {bad == 0 && counts, std::to_string(cases) + " (p, u) cases, " + std::to_string(bad) +
                                    " mismatches; Mersenne <= 2^13: " + std::to_string(mc.formula_value) +
                                    ", Fermat <= 70000: " + std::to_string(fc.formula_value)};
}

Outcome xi_identity() {
    const double euler = xi_euler_product(2.0, 5);
    const double series = xi_smooth_series(2.0, 5, u64{1} << 62);
    const double gap = std::abs(euler - series);
    const auto rows = xi_sigma_probe({0.5, 0.2, 0.1, 0.05});
    bool bounded = true;
    char buf[256];
    std::snprintf(buf, sizeof buf, "|euler - series| = %.3g", gap);
    std::string detail = buf;
    for (const auto& r : rows) {
        bounded = bounded && std::abs(r.residual) < 10;
        std::snprintf(buf, sizeof buf, "; sigma=%g residual=%.4f ratio=%.4f", r.sigma, r.residual, r.ratio);
        detail += buf;
    }
    return {gap < 1e-9 && bounded, detail};
}

Outcome filter_soundness() {
    u64 pairs = 0, bad = 0, filtered = 0;
    for (u64 n = 2; n <= 30; ++n)
        for (u64 m = 1; m < n; ++m) {
            if (std::gcd(m, n) != 1) continue;
            ++pairs;
            const auto f = schinzel_search(m, n, 500);
            filtered += f.filtered;
            if (f.k != schinzel_naive(m, n, 500)) ++bad;
        }
    return {bad == 0, std::to_string(pairs) + " coprime pairs, " + std::to_string(bad) + " disagreements, " +
                          std::to_string(filtered) + " k values filtered"};
}

Outcome witness_verdicts() {
    bool ok = true;
    std::string detail;
    for (u64 q : {11u, 23u}) {
        const auto v = mersenne_witness_for(q);
        const bool divides = v.witness && v.verified_exact && oracle::pow_mod(2, q, v.divisor) == 1;
        ok = ok && divides;
        detail += "q=" + std::to_string(q) + (divides ? " WITNESS " + std::to_string(v.divisor) : " no witness") + "; ";
    }
    const auto five = mersenne_witness_for(5);
    ok = ok && !five.witness;
    detail += "q=5 " + std::string(five.witness ? "WITNESS" : "NOT-APPLICABLE (" + five.failed_condition + ")");
    return {ok, detail};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"golden examples", golden_examples},
        {"Legendre exactness", legendre_exactness},
        {"survivor-count exactness", survivor_exactness},
        {"Goldbach completeness", goldbach_completeness},
        {"span scan", span_scan},
        {"estimator bands", estimator_bands},
        {"twin-Bertrand and Bertrand", twin_bertrand},
        {"Hardy-Littlewood inequality", hl_scan},
        {"Mersenne/Fermat exponent sieves", exponent_sieves},
        {"xi identity and sigma probe", xi_identity},
        {"Schinzel filter soundness", filter_soundness},
        {"witness verdicts", witness_verdicts},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t = Clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::printf("AC%zu %s %s: %s [%.1f s]\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first, o.detail.c_str(),
                    seconds_since(t));
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed ? 1 : 0;
}
