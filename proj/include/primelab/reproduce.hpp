// reproduce.hpp
// Regenerates every worked example and table as golden checks. Each check
// compares an expected string with the computed one; a named check can be
// corrupted on purpose to exercise the mismatch path.

#pragma once

#include <chrono>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "primelab/exact_counts.hpp"
#include "primelab/goldbach.hpp"
#include "primelab/report.hpp"
#include "primelab/residue.hpp"
#include "primelab/schinzel.hpp"

namespace primelab {

struct GoldenCheck {
    std::string name;
    std::string expected;
    std::function<std::string()> compute;
    std::string note;  // explains an expected value that differs from the commonly quoted one
};

namespace detail {

inline std::string join(const std::vector<u64>& v) {
    std::string s;
    for (u64 x : v) s += (s.empty() ? "" : " ") + std::to_string(x);
    return s;
}

inline std::string join_pairs(const std::vector<PrimePair>& v) {
    std::string s;
    for (const auto& [a, b] : v) s += (s.empty() ? "(" : " (") + std::to_string(a) + "," + std::to_string(b) + ")";
    return s;
}

inline std::vector<PrimePair> certified(const TwinSearch& t) {
    std::vector<PrimePair> out;
    for (const auto& h : t.pairs)
        if (h.certified) out.push_back(h.pair);
    return out;
}

inline std::string allowed_sets(u64 m, u64 n, const std::vector<u64>& primes) {
    std::string s;
    const auto spec = lambda_filter(m, n, primes);
    for (const auto& e : spec.entries())
        s += (s.empty() ? "" : "; ") + std::to_string(e.prime) + ":{" + join(e.allowed) + "}";
    return s;
}

inline std::string remainders(i64 x, const std::vector<u64>& primes) {
    return join(remainder_sequence(x, primes).remainders);
}

}  // namespace detail

inline std::vector<GoldenCheck> golden_checks() {
    using detail::join;
    using detail::join_pairs;
    std::vector<GoldenCheck> c;

    // twin count T(20)
    c.push_back({"twin20.twin_formula", "4", [] { return std::to_string(twin_count_formula(20).formula_value); }, ""});
    c.push_back({"twin20.twin_oracle", "4", [] { return std::to_string(twin_count_formula(20).oracle_value); }, ""});
    c.push_back({"twin20.expansion", "20 -4 -12 = 4",
                 [] {
                     const auto r = twin_count_formula(20);
                     return "20 " + std::to_string(*r.correction("uniform_A")) + " " +
                            std::to_string(*r.correction("uniform_B")) + " = " +
                            std::to_string(*r.correction("uniform_identity"));
                 },
                 "grouped as 20 + (-10+3+3) + (-6-6)"});
    c.push_back({"twin20.pairs", "(3,5) (5,7) (11,13) (17,19)",
                 [] { return join_pairs(twin_pairs(20, sieve_primes(22))); }, ""});

    // tight tuples
    c.push_back({"tight_tuples", "(2) | (2,6) (4,6) | (2,6,8)", [] {
                     std::string s;
                     for (std::size_t k = 2; k <= 4; ++k) {
                         if (k > 2) s += " | ";
                         std::string part;
                         for (const auto& t : tight_tuples(k)) part += (part.empty() ? "" : " ") + t.to_string();
                         s += part;
                     }
                     return s;
                 }, ""});

    // Goldbach split enumeration for 2n = 100
    c.push_back({"goldbach100.remainders", "0 1 0 2", [] { return join(build_split_plan(100).beta); }, ""});
    c.push_back({"goldbach100.class_count", "20", [] { return build_split_plan(100).class_count().str(); }, ""});
    c.push_back({"goldbach100.candidates", "11 17 29 41 47 53 59 71 83 89 101 113 131 137 143 167 173 179 197 209",
                 [] { return join(crt_enumerate(build_split_plan(100).choice_spec(), 2, 210)); }, ""});
    c.push_back({"goldbach100.below_2n", "10",
                 [] { return std::to_string(crt_enumerate(build_split_plan(100).choice_spec(), 2, 99).size()); }, ""});
    c.push_back({"goldbach100.pairs", "(11,89) (17,83) (29,71) (41,59) (47,53)",
                 [] { return join_pairs(goldbach_enumerate(100).pairs); }, ""});
    c.push_back({"goldbach100.zero_eta", "(3,97)",
                 [] { return join_pairs(goldbach_enumerate(100, GoldbachMode::exact, true).zero_eta_pairs); }, ""});

    // fixed-prefix group (1, 2, 2, eta)
    c.push_back({"goldbach100.fixed_prefix", "1:197 2:107 3:17 4:137 5:47 6:167", [] {
                     auto g = fixed_prefix_group(100, {1, 2, 2});
                     std::sort(g.begin(), g.end(), [](const auto& a, const auto& b) { return a.eta_last < b.eta_last; });
                     std::string s;
                     for (const auto& m : g)
                         s += (s.empty() ? "" : " ") + std::to_string(m.eta_last) + ":" + std::to_string(m.value);
                     return s;
                 }, ""});
    c.push_back({"goldbach100.fixed_prefix_lower_end", "17", [] {
                     return std::to_string(fixed_prefix_group(100, {1, 2, 2}).front().value);
                 }, ""});
    c.push_back({"goldbach100.fixed_prefix_forbidden", "107", [] {
                     for (const auto& m : fixed_prefix_group(100, {1, 2, 2}))
                         if (!m.allowed) return std::to_string(m.value);
                     return std::string("none");
                 }, ""});

    c.push_back({"goldbach100.refine137", "(47,53) s=29", [] {
                     const auto r = goldbach_refine(100, 137);
                     if (!r.pair) return std::string("none");
                     return join_pairs({*r.pair}) + " s=" + std::to_string(*r.divisor);
                 }, ""});

    c.push_back({"twin_crt_235.n", "13 19 31 43", [] {
                     std::vector<u64> ns;
                     for (const auto& p : detail::certified(twin_crt_search({2, 3, 5}, 49))) ns.push_back(p.second);
                     return join(ns);
                 }, ""});
    c.push_back({"twin_crt_235.pairs", "(11,13) (17,19) (29,31) (41,43)",
                 [] { return join_pairs(detail::certified(twin_crt_search({2, 3, 5}, 49))); }, ""});
    c.push_back({"twin_crt_2357.candidates", "11 17 29 41 59 71 101 107 137 149 167 179 191 197 209",
                 [] { return join(twin_crt_search({2, 3, 5, 7}, 210, TwinOrientation::lower).candidates); }, ""});
    c.push_back({"twin_crt_2357.pairs", "(11,13) (17,19) (29,31) (41,43) (59,61) (71,73) (101,103) (107,109)",
                 [] { return join_pairs(detail::certified(twin_crt_search({2, 3, 5, 7}, 121, TwinOrientation::lower))); },
                 ""});

    // shifted-prime quotient 11/13
    c.push_back({"quotient_11_13.rem22_p2", "0 1", [] { return detail::remainders(22, {2, 3}); }, ""});
    c.push_back({"quotient_11_13.rem26_p2", "0 2", [] { return detail::remainders(26, {2, 3}); }, ""});
    c.push_back({"quotient_11_13.lambda_p2", "2:{0 1}; 3:{0}", [] { return detail::allowed_sets(11, 13, {2, 3}); }, ""});
    c.push_back({"quotient_11_13.window_k3", "2 3 5 7", [] { return join(schinzel_window(11, 13, 3)); }, ""});
    c.push_back({"quotient_11_13.rem22_p4", "0 1 2 1", [] { return detail::remainders(22, {2, 3, 5, 7}); },
                 "corrected: 22 mod 3 = 1, not 2"});
    c.push_back({"quotient_11_13.rem26_p4", "0 2 1 5", [] { return detail::remainders(26, {2, 3, 5, 7}); }, ""});
    c.push_back({"quotient_11_13.lambda_p4", "5:{0 2 4}; 7:{0 2 4 5 6}", [] { return detail::allowed_sets(11, 13, {5, 7}); },
                 ""});
    c.push_back({"quotient_11_13.rem_k3", "1 0 3 3", [] { return detail::remainders(3, {2, 3, 5, 7}); }, ""});
    c.push_back({"quotient_11_13.rejected", "k=3 rejected, k=6 rejected", [] {
                     auto v = [](u64 k) { return std::string(schinzel_rejects(11, 13, k) ? "rejected" : "kept"); };
                     return "k=3 " + v(3) + ", k=6 " + v(6);
                 }, ""});
    c.push_back({"quotient_11_13.window_k9", "2 3 5 7 11 13", [] { return join(schinzel_window(11, 13, 9)); }, ""});
    c.push_back({"quotient_11_13.rem22_p6", "0 1 2 1 0 9", [] { return detail::remainders(22, {2, 3, 5, 7, 11, 13}); },
                 "corrected: 22 mod 3 = 1, not 2"});
    c.push_back({"quotient_11_13.rem26_p6", "0 2 1 5 4 0", [] { return detail::remainders(26, {2, 3, 5, 7, 11, 13}); }, ""});
    c.push_back({"quotient_11_13.lambda_p6", "11:{0 1 2 4 5 6 7 8 9 10}; 13:{0 1 2 4 5 6 7 8 9 10 11 12}",
                 [] { return detail::allowed_sets(11, 13, {11, 13}); },
                 "corrected: 1 is allowed for p = 11; only 3 satisfies 4 lambda = 1 (mod 11)"});
    c.push_back({"quotient_11_13.rem_k9", "1 0 4 2 9 9", [] { return detail::remainders(9, {2, 3, 5, 7, 11, 13}); }, ""});
    c.push_back({"quotient_11_13.result", "k=9 (197,233)", [] {
                     const auto r = schinzel_search(11, 13, 100);
                     if (!r.k) return std::string("none");
                     return "k=" + std::to_string(*r.k) + " " + join_pairs({{r.p, r.q}});
                 }, ""});
    c.push_back({"quotient_11_13.verify", "true",
                 [] { return std::string(verify_shifted_quotient(11, 13, 197, 233) ? "true" : "false"); }, ""});
    return c;
}

// One row per check; `corrupt` names a check whose expected value is altered.
inline Report reproduce_examples(const std::string& corrupt = "") {
    const auto start = std::chrono::steady_clock::now();
    auto checks = golden_checks();
    if (!corrupt.empty()) {
        bool found = false;
        for (auto& c : checks)
            if (c.name == corrupt) {
                c.expected += " [corrupted]";
                found = true;
            }
        if (!found) throw std::invalid_argument("reproduce: no golden check named " + corrupt);
    }
    Report r;
    r.command = "reproduce";
    u64 mismatches = 0;
    for (const auto& c : checks) {
        std::string actual;
        try {
            actual = c.compute();
        } catch (const std::exception& e) {
            actual = std::string("error: ") + e.what();
        }
        const bool ok = actual == c.expected;
        if (!ok) {
            ++mismatches;
            r.warn("mismatch in " + c.name);
        }
        Json row = Json::object();
        row["check"] = c.name;
        row["expected"] = c.expected;
        row["actual"] = actual;
        row["status"] = ok ? "match" : "MISMATCH";
        row["note"] = c.note;
        r.rows.push_back(std::move(row));
    }
    r.params["checks"] = checks.size();
    r.params["mismatches"] = mismatches;
    r.params["corrupted"] = corrupt;
    r.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    return r;
}

inline u64 reproduce_mismatches(const Report& r) { return r.params.at("mismatches").get<u64>(); }

}  // namespace primelab
