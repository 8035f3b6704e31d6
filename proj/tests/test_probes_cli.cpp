#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <numeric>
#include <sstream>

#include "oracles.hpp"
#include "primelab/cli.hpp"
#include "primelab/probes.hpp"
#include "primelab/reproduce.hpp"
#include "primelab/schinzel.hpp"

using namespace primelab;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_command(args, out, err);
    return {code, out.str(), err.str()};
}

Json run_json(const std::vector<std::string>& args) {
    const auto r = run(args);
    EXPECT_EQ(r.code, 0) << r.err;
    return Json::parse(r.out);
}

}  // namespace

TEST(Schinzel, ElevenThirteen) {
    const auto r = schinzel_search(11, 13, 100);
    ASSERT_TRUE(r.k);
    EXPECT_EQ(*r.k, 9u);
    EXPECT_EQ(r.p, 197u);
    EXPECT_EQ(r.q, 233u);
    EXPECT_TRUE(verify_shifted_quotient(11, 13, 197, 233));
    EXPECT_FALSE(verify_shifted_quotient(11, 13, 196, 232));
    EXPECT_TRUE(schinzel_rejects(11, 13, 3));
    EXPECT_TRUE(schinzel_rejects(11, 13, 6));
    EXPECT_FALSE(schinzel_rejects(11, 13, 9));
}

TEST(Schinzel, LambdaSets) {
    EXPECT_EQ(lambda_disallowed(11, 13, 2), (std::vector<u64>{}));
    EXPECT_EQ(lambda_disallowed(11, 13, 3), (std::vector<u64>{1, 2}));
    EXPECT_EQ(lambda_disallowed(11, 13, 11), (std::vector<u64>{3}));
    for (u64 p : {3u, 5u, 7u, 11u, 13u, 17u})
        for (u64 l : lambda_disallowed(11, 13, p))
            EXPECT_TRUE((2 * 11 * l) % p == 1 || (2 * 13 * l) % p == 1) << p << " " << l;
}

TEST(Schinzel, ReducesAndValidates) {
    const auto r = schinzel_search(22, 26, 100);
    EXPECT_EQ(r.gcd, 2u);
    EXPECT_EQ(r.m, 11u);
    EXPECT_EQ(*r.k, 9u);
    EXPECT_THROW(schinzel_search(0, 3, 10), std::invalid_argument);
    EXPECT_EQ(*schinzel_search(1, 2, 10).k, 2u);
}

TEST(Schinzel, FilteredEqualsNaiveSmall) {
    for (u64 n = 2; n <= 15; ++n)
        for (u64 m = 1; m < n; ++m) {
            if (std::gcd(m, n) != 1) continue;
            EXPECT_EQ(schinzel_search(m, n, 200).k, schinzel_naive(m, n, 200)) << m << "/" << n;
        }
}

TEST(Probes, Ratio) {
    const auto r = parse_ratio("1.25");
    EXPECT_EQ(r.num, 5u);
    EXPECT_EQ(r.den, 4u);
    EXPECT_EQ(r.floor_times(7), 8u);
    EXPECT_THROW(parse_ratio("1.2x"), std::invalid_argument);
    EXPECT_THROW(parse_ratio(""), std::invalid_argument);
    EXPECT_EQ(ratio_from_double(1.1).num, 11u);
}

TEST(Probes, Bertrand) {
    EXPECT_TRUE(bertrand_scan(2.0, 1, 20000).failures.empty());
    const auto f = bertrand_scan(parse_ratio("1.2"), 1, 1000).failures;
    EXPECT_EQ(f, (std::vector<u64>{1, 2, 3, 4, 5, 7, 8, 9, 13, 14, 19, 23, 24}));
    EXPECT_THROW(bertrand_scan(2.5, 1, 10), std::invalid_argument);
    EXPECT_THROW(bertrand_scan(1.0, 1, 10), std::invalid_argument);
}

TEST(Probes, TwinBertrand) {
    EXPECT_TRUE(twin_bertrand_scan(7, 3000).failures.empty());
    // x = 6: (11, 13) is not inside (6, 12)
    EXPECT_THROW(twin_bertrand_scan(6, 100), std::invalid_argument);
    const auto g = twin_bertrand_alpha_scan(parse_ratio("1.5"), 10, 40);
    for (u64 n : g.failures) {
        bool found = false;
        for (u64 p = n + 1; p + 2 <= n * 3 / 2; ++p) found = found || (oracle::prime(p) && oracle::prime(p + 2));
        EXPECT_FALSE(found) << n;
    }
}

TEST(Probes, HardyLittlewood) {
    const auto h = hl_inequality_scan(200, 200);
    EXPECT_TRUE(h.scan.failures.empty());
    EXPECT_EQ(h.checked, 199u * 199u);
    ASSERT_EQ(h.rows.size(), 199u);
    const auto pi = oracle::prefix_pi(400);
    for (const auto& row : h.rows) {
        EXPECT_EQ(row.pi_y, pi[row.y]);
        EXPECT_LE(row.max_window, row.pi_y);
        EXPECT_EQ(pi[row.argmax_x + row.y] - pi[row.argmax_x], row.max_window);
    }
}

TEST(Probes, Xi) {
    EXPECT_EQ(big_omega(8), 3u);
    EXPECT_EQ(big_omega(1), 0u);
    EXPECT_EQ(big_omega(720), 7u);
    EXPECT_NEAR(xi_partial_sum(2.0, 4), 1.0 + 0.5 + 2.0 / 9 + 4.0 / 16, 1e-12);
    EXPECT_NEAR(xi_euler_product(2.0, 2), 2.0, 1e-12);
    EXPECT_NEAR(xi_euler_product(2.0, 3), 2.0 * 9.0 / 7.0, 1e-12);
    EXPECT_NEAR(xi_euler_product(2.0, 5), xi_smooth_series(2.0, 5, u64{1} << 62), 1e-9);
    EXPECT_THROW(xi_euler_product(1.0, 3), std::invalid_argument);
    EXPECT_THROW(xi_partial_sum(1.0, 10), std::invalid_argument);
}

TEST(Probes, SigmaResidualBounded) {
    const auto rows = xi_sigma_probe({0.5, 0.2, 0.1, 0.05});
    ASSERT_EQ(rows.size(), 4u);
    for (const auto& r : rows) {
        EXPECT_LT(std::abs(r.residual), 10.0) << r.sigma;
        EXPECT_GT(r.ratio, 0.0);
    }
}

TEST(Probes, Witness) {
    for (u64 q : {11u, 23u}) {
        const auto v = mersenne_witness_for(q);
        EXPECT_TRUE(v.witness);
        EXPECT_TRUE(v.verified_exact);
        EXPECT_EQ(v.divisor, 2 * q + 1);
        EXPECT_EQ(oracle::pow_mod(2, q, v.divisor), 1u);
    }
    const auto five = mersenne_witness_for(5);
    EXPECT_FALSE(five.witness);
    EXPECT_EQ(five.failed_condition, "q is not 3 mod 4");
    EXPECT_EQ(mersenne_witness_for(9).failed_condition, "q is not prime");
    EXPECT_EQ(mersenne_witness_for(7).failed_condition, "2q + 1 is not prime");
    EXPECT_EQ(mersenne_composite_witness(3, 2).q, 11u);
}

TEST(Report, JsonRoundTrip) {
    Report r;
    r.command = "demo";
    r.params["x"] = 5;
    r.rows.push_back(Json{{"a", 1}, {"b", num(1.0 / 3.0)}, {"c", {{"d", "x,y"}}}});
    r.warn("careful");
    r.warn("careful");
    r.runtime_ms = 3;
    const auto back = report_from_json(Json::parse(report_json(r).dump()));
    EXPECT_EQ(report_json(back), report_json(r));
    EXPECT_EQ(r.warnings.size(), 1u);
    EXPECT_EQ(report_csv(r), "a,b,c.d\n1,0.333333333333,\"x,y\"\n");
    EXPECT_EQ(big(BigInt(1) << 70), Json("1180591620717411303424"));
    EXPECT_TRUE(num(std::nan("")).is_null());
}

TEST(Cli, TwinCountExample) {
    const auto j = run_json({"count", "twin", "--x", "20"});
    ASSERT_EQ(j["rows"].size(), 1u);
    EXPECT_EQ(j["rows"][0]["formula"], 4);
    EXPECT_EQ(j["rows"][0]["oracle"], 4);
}

TEST(Cli, CsvMatchesJsonNumbers) {
    const auto j = run_json({"estimate", "psi", "--x", "1000", "--x", "100000"});
    const auto csv = run({"--format", "csv", "estimate", "psi", "--x", "1000", "--x", "100000"});
    ASSERT_EQ(csv.code, 0);
    for (const auto& row : j["rows"]) EXPECT_NE(csv.out.find(row["estimate"].dump()), std::string::npos) << csv.out;
}

TEST(Cli, GoldbachExact) {
    const auto j = run_json({"goldbach", "--even", "100", "--mode", "exact"});
    EXPECT_EQ(j["rows"].size(), 5u);
}

TEST(Cli, Schinzel) {
    const auto j = run_json({"schinzel", "--num", "11", "--den", "13"});
    EXPECT_EQ(j["params"]["k"], 9);
    EXPECT_EQ(j["params"]["p"], 197);
    EXPECT_EQ(j["params"]["q"], 233);
}

TEST(Cli, SeedDeterminism) {
    const std::vector<std::string> args{"--seed", "7", "count", "pi", "--random", "5", "--max", "100000"};
    auto a = run_json(args), b = run_json(args);
    a.erase("runtime_ms");
    b.erase("runtime_ms");
    EXPECT_EQ(a, b);
    auto c = run_json({"--seed", "8", "count", "pi", "--random", "5", "--max", "100000"});
    c.erase("runtime_ms");
    EXPECT_NE(a, c);
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"nonsense"}).code, 2);
    EXPECT_EQ(run({"goldbach", "--even", "101"}).code, 2);
    EXPECT_EQ(run({"crt", "1:4", "1:6"}).code, 2);
    EXPECT_EQ(run({"count", "pi", "--x", "3"}).code, 2);
    EXPECT_EQ(run({"--format", "xml", "primes", "--limit", "10"}).code, 2);
    // empty findings still succeed
    EXPECT_EQ(run({"bertrand", "--alpha", "2", "--max", "100"}).code, 0);
}

TEST(Cli, CacheFile) {
    const auto path = std::filesystem::temp_directory_path() / "primelab_cli_test.bin";
    std::filesystem::remove(path);
    const auto a = run_json({"--cache", path.string(), "primes", "--limit", "1000"});
    ASSERT_TRUE(std::filesystem::exists(path));
    const auto b = run_json({"--cache", path.string(), "primes", "--limit", "500"});
    EXPECT_EQ(a["params"]["count"], 168);
    EXPECT_EQ(b["params"]["count"], 95);
    {
        std::ofstream bad(path, std::ios::binary);
        bad << "garbage";
    }
    EXPECT_EQ(run({"--cache", path.string(), "primes", "--limit", "100"}).code, 1);
    std::filesystem::remove(path);
}

TEST(Cli, Reproduce) {
    const auto ok = run({"reproduce"});
    EXPECT_EQ(ok.code, 0) << ok.out;
    EXPECT_EQ(Json::parse(ok.out)["params"]["mismatches"], 0);
    const auto bad = run({"reproduce", "--corrupt", "goldbach100.pairs"});
    EXPECT_EQ(bad.code, 1);
    EXPECT_EQ(Json::parse(bad.out)["params"]["mismatches"], 1);
    EXPECT_EQ(run({"reproduce", "--corrupt", "no.such.check"}).code, 2);
}
