#include <gtest/gtest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "primelab/crt.hpp"
#include "primelab/density.hpp"
#include "primelab/exact_counts.hpp"
#include "primelab/goldbach.hpp"

using namespace primelab;

TEST(Legendre, SmallRangeExact) {
    const auto pi = oracle::prefix_pi(5000);
    const auto t = sieve_primes(5000);
    for (u64 x = 4; x <= 5000; ++x) {
        const auto r = legendre_pi(x, t);
        ASSERT_TRUE(r.formula_evaluated);
        ASSERT_EQ(r.formula_value, static_cast<i64>(pi[x])) << x;
        ASSERT_EQ(r.delta(), 0);
    }
}

TEST(Legendre, FrozenValues) {
    for (auto [x, c] : oracle::kPi) {
        if (x < 4) continue;
        const auto r = legendre_pi(x);
        EXPECT_EQ(r.formula_value, static_cast<i64>(c)) << x;
        EXPECT_EQ(r.oracle_value, c);
    }
}

TEST(Legendre, BudgetExceededFallsBackToOracle) {
    const auto r = legendre_pi(100000, 10);
    EXPECT_FALSE(r.formula_evaluated);
    EXPECT_EQ(r.oracle_value, 9592u);
    EXPECT_THROW(legendre_pi(3), std::invalid_argument);
}

TEST(TwinCount, ExampleTwenty) {
    const auto r = twin_count_formula(20);
    EXPECT_EQ(r.formula_value, 4);
    EXPECT_EQ(r.oracle_value, 4u);
    EXPECT_EQ(*r.correction("uniform_A"), -4);
    EXPECT_EQ(*r.correction("uniform_B"), -12);
    EXPECT_EQ(*r.correction("uniform_identity"), 4);
}

TEST(TwinCount, FrozenValues) {
    for (auto [x, c] : oracle::kTwin) {
        const auto r = twin_count_formula(x);
        EXPECT_EQ(r.oracle_value, c) << x;
        if (r.formula_evaluated) {
            EXPECT_EQ(r.formula_value, static_cast<i64>(c)) << x;
        }
    }
}

TEST(TupleCount, FrozenValues) {
    const AdmissibleTuple quad({2, 6, 8}), t26({2, 6}), t46({4, 6});
    for (auto [x, c] : oracle::kQuad268) EXPECT_EQ(tuple_count_formula(x, quad).formula_value, static_cast<i64>(c)) << x;
    for (auto [x, c] : oracle::kTriple26) EXPECT_EQ(tuple_count_formula(x, t26).formula_value, static_cast<i64>(c)) << x;
    for (auto [x, c] : oracle::kTriple46) EXPECT_EQ(tuple_count_formula(x, t46).formula_value, static_cast<i64>(c)) << x;
    EXPECT_EQ(oracle::tuple_count(20, {2, 6, 8}), 2u);
}

TEST(Survivors, MatchDirectEnumeration) {
    const auto t = sieve_primes(100);
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<ResidueSpec::Entry> entries;
        for (u64 p : t.primes()) {
            if (rng() % 3 == 0) continue;
            std::vector<u64> f;
            for (u64 r = 0; r < p && f.size() + 1 < p; ++r)
                if (rng() % 3 == 0) f.push_back(r);
            if (!f.empty()) entries.push_back({p, f});
        }
        const ResidueSpec spec(entries);
        const u64 x = rng() % 3000 + 1;
        u64 direct = 0;
        for (u64 n = 1; n <= x; ++n) direct += spec.admits(n);
        ASSERT_EQ(survivor_count(x, spec), direct) << "trial " << trial << " x " << x;
    }
}

TEST(Survivors, BreakdownParts) {
    const auto t = sieve_primes(10);
    const auto b = survivor_breakdown(20, twin_spec(sieving_prime_set(20, t)));
    EXPECT_EQ(b.x_term, 20);
    EXPECT_EQ(b.total, static_cast<u64>(b.x_term + b.with_first + b.without_first));
    EXPECT_TRUE(b.complete);
}

TEST(ExponentSieves, OrdersMatchDirectFiltering) {
    for (u64 p = 3; p < 300; p += 2) {
        if (!oracle::prime(p)) continue;
        for (u64 u = 1; u <= 64; ++u) {
            u64 m = 0, f = 0;
            for (u64 q = 1; q <= u; ++q) {
                m += oracle::pow_mod(2, q, p) == 1;
                f += oracle::pow_mod(2, q, p) == p - 1;
            }
            ASSERT_EQ(mersenne_prime_hits(u, p), m) << p << " " << u;
            ASSERT_EQ(fermat_prime_hits(u, p), f) << p << " " << u;
        }
    }
    EXPECT_EQ(multiplicative_order(2, 7), 3u);
    EXPECT_EQ(multiplicative_order(2, 11), 10u);
    EXPECT_THROW(multiplicative_order(7, 7), std::invalid_argument);
}

TEST(ExponentSieves, FrozenCounts) {
    for (auto [x, c] : oracle::kMersenne) {
        const auto r = mersenne_exact_count(x);
        EXPECT_EQ(r.oracle_value, c) << x;
        EXPECT_EQ(r.formula_value, static_cast<i64>(c)) << x;
    }
    for (auto [x, c] : oracle::kFermat) {
        const auto r = fermat_exact_count(x);
        EXPECT_EQ(r.oracle_value, c) << x;
        EXPECT_EQ(r.formula_value, static_cast<i64>(c)) << x;
    }
    EXPECT_THROW(mersenne_exact_count((u64{1} << 50) + 1), std::invalid_argument);
}

TEST(Density, Bands) {
    const auto t = sieve_primes(1'000'000);
    for (u64 x : {100u, 1000u, 10000u, 100000u, 1000000u}) {
        const auto psi = psi_estimate(x, t);
        EXPECT_GE(*psi.ratio, 0.8) << x;
        EXPECT_LE(*psi.ratio, 1.3) << x;
        const auto om = omega_estimate(x, t);
        EXPECT_GE(*om.ratio, 0.7) << x;
        EXPECT_LE(*om.ratio, 1.5) << x;
    }
}

TEST(Density, TableMustReachX) {
    const auto t = sieve_primes(100);
    EXPECT_THROW(psi_estimate(1000, t), std::out_of_range);
    EXPECT_THROW(omega_estimate(5, t), std::invalid_argument);
}

TEST(Density, RoundSignificant) {
    EXPECT_DOUBLE_EQ(round_significant(1.23456789, 3), 1.23);
    EXPECT_DOUBLE_EQ(round_significant(123456.0, 2), 120000.0);
    EXPECT_EQ(round_significant(0.0, 4), 0.0);
}

TEST(Crt, Solve) {
    const auto s = crt_solve({{2, 3}, {3, 5}, {2, 7}});
    EXPECT_EQ(s.value, 23);
    EXPECT_EQ(s.modulus, 105);
    EXPECT_THROW(crt_solve({{1, 4}, {1, 6}}), NonCoprimeModuli);
    EXPECT_THROW(crt_solve({}), std::invalid_argument);
    EXPECT_THROW(crt_solve({{5, 5}}), std::invalid_argument);
    // large moduli exceed 64 bits
    const auto big = crt_solve({{1, 1'000'000'007}, {2, 998'244'353}, {3, 1'000'000'009}});
    EXPECT_EQ(big.value % 1'000'000'007, 1);
    EXPECT_EQ(big.value % 998'244'353, 2);
    EXPECT_EQ(big.value % 1'000'000'009, 3);
}

TEST(Crt, EnumerationModesAgree) {
    const ChoiceSpec spec({{2, {1}}, {3, {1, 2}}, {5, {1, 2, 4}}, {7, {3, 5, 6}}});
    EXPECT_EQ(choice_count(spec), 18);
    const auto a = crt_enumerate(spec, 1, 1000, EnumerationMode::product);
    const auto b = crt_enumerate(spec, 1, 1000, EnumerationMode::range_scan);
    EXPECT_EQ(a, b);
    std::vector<u64> direct;
    for (u64 n = 1; n <= 1000; ++n)
        if (spec.admits(n)) direct.push_back(n);
    EXPECT_EQ(a, direct);
    EXPECT_THROW(crt_enumerate(spec, 10, 5), std::invalid_argument);
    EXPECT_THROW(ChoiceSpec({{4, {1}}, {6, {1}}}), NonCoprimeModuli);
}

TEST(Goldbach, SplitPlanHundred) {
    const auto plan = build_split_plan(100);
    EXPECT_EQ(plan.primes, (std::vector<u64>{2, 3, 5, 7}));
    EXPECT_EQ(plan.beta, (std::vector<u64>{0, 1, 0, 2}));
    EXPECT_EQ(plan.class_count(), 20);
    EXPECT_THROW(build_split_plan(101), std::invalid_argument);
    EXPECT_THROW(build_split_plan(4), std::invalid_argument);
}

TEST(Goldbach, HundredPairs) {
    const auto r = goldbach_enumerate(100);
    const std::vector<PrimePair> expect{{11, 89}, {17, 83}, {29, 71}, {41, 59}, {47, 53}};
    EXPECT_EQ(r.pairs, expect);
    const auto z = goldbach_enumerate(100, GoldbachMode::exact, true);
    EXPECT_EQ(z.zero_eta_pairs, (std::vector<PrimePair>{{3, 97}}));
    EXPECT_EQ(z.pairs.size(), 6u);
    const auto g = goldbach_enumerate(100, GoldbachMode::guided, true);
    EXPECT_EQ(g.pairs, (std::vector<PrimePair>{{3, 97}}));
}

TEST(Goldbach, MatchesDirectScan) {
    for (u64 e = 6; e <= 2000; e += 2) {
        const auto r = goldbach_enumerate(e, GoldbachMode::exact, true);
        ASSERT_EQ(r.pairs, oracle::goldbach_pairs(e)) << e;
    }
    for (auto [e, c] : oracle::kGoldbachCount)
        EXPECT_EQ(goldbach_enumerate(e, GoldbachMode::exact, true).pairs.size(), c) << e;
}

TEST(Goldbach, Span) {
    for (u64 e : {16u, 26u, 36u, 100u}) {
        const auto s = span_report(e);
        EXPECT_TRUE(s.feasible) << e;
        EXPECT_TRUE(s.flag) << e;
    }
}

TEST(Goldbach, FixedPrefix) {
    const auto g = fixed_prefix_group(100, {1, 2, 2});
    ASSERT_EQ(g.size(), 6u);
    EXPECT_EQ(g.front().value, 17u);
    EXPECT_EQ(g.back().value, 197u);
    u64 forbidden = 0;
    for (const auto& m : g)
        if (!m.allowed) forbidden = m.value;
    EXPECT_EQ(forbidden, 107u);
}

TEST(Goldbach, Refine) {
    const auto r = goldbach_refine(100, 137);
    ASSERT_TRUE(r.pair);
    EXPECT_EQ(*r.pair, (PrimePair{47, 53}));
    EXPECT_EQ(*r.divisor, 29u);
    EXPECT_THROW(goldbach_refine(100, 90), std::invalid_argument);
    EXPECT_THROW(goldbach_refine(100, 139), std::invalid_argument);
}

TEST(Goldbach, Partition) {
    // 2 * 5 - 3 = 7 < 49
    const auto p = partition_probe({2, 5}, {3}, {1, 1}, {1}, false);
    EXPECT_EQ(p.alpha, 7);
    EXPECT_EQ(p.bound, 49);
    EXPECT_EQ(p.verdict, PartitionVerdict::prime_by_construction);
    const auto q = partition_probe({2, 5}, {3}, {3, 1}, {1}, true);
    EXPECT_EQ(q.alpha, 43);
    const auto far = partition_probe({2}, {3}, {10}, {1}, true);
    EXPECT_EQ(far.verdict, PartitionVerdict::out_of_range);
    EXPECT_THROW(partition_probe({2}, {5}, {1}, {1}, true), std::invalid_argument);
}

TEST(Goldbach, TwinCrt) {
    const auto s = twin_crt_search({2, 3, 5}, 49);
    std::vector<PrimePair> certified;
    for (const auto& h : s.pairs)
        if (h.certified) certified.push_back(h.pair);
    EXPECT_EQ(certified, (std::vector<PrimePair>{{11, 13}, {17, 19}, {29, 31}, {41, 43}}));
    EXPECT_EQ(s.certification_bound, 49u);
    const auto small = twin_crt_search({2, 3}, 25);
    for (const auto& h : small.pairs) EXPECT_TRUE(oracle::prime(h.pair.first) && oracle::prime(h.pair.second));
    EXPECT_THROW(twin_crt_search({2, 5}, 50), std::invalid_argument);
}
