// density.hpp
// Closed-form density heuristics (sieve products and asymptotic forms) for
// primes, twins, k-tuples, primes in progressions and Mersenne/Fermat primes,
// each paired with a brute-force count.

#pragma once

#include <cmath>
#include <cstdio>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "primelab/arith.hpp"
#include "primelab/exact_counts.hpp"
#include "primelab/params.hpp"
#include "primelab/residue.hpp"
#include "primelab/sieve.hpp"

namespace primelab {

struct EstimateReport {
    u64 x = 0;
    double estimate = 0.0;
    std::optional<u64> oracle;
    std::optional<double> ratio;  // estimate / oracle, 6 significant digits
    Params params;
    std::vector<std::string> warnings;
};

// Rounds to the given number of significant digits.
inline double round_significant(double v, int digits = 6) {
    if (v == 0.0 || !std::isfinite(v)) return v;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return std::strtod(buf, nullptr);
}

inline constexpr u64 kCompensatedProductThreshold = 1'000'000;

// Neumaier-compensated running sum.
class CompensatedSum {
public:
    void add(double v) {
        const double t = sum_ + v;
        if (std::fabs(sum_) >= std::fabs(v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// lead * prod over primes of (1 - u(p) / d(p)), ascending. Above the threshold
// the product is formed as exp of a compensated sum of log1p terms.
template <typename Weight>
double sieve_product(double lead, std::span<const u64> primes, Weight&& weight, bool use_logs) {
    if (!use_logs) {
        double v = lead;
        for (u64 p : primes) v *= 1.0 - weight(p);
        return v;
    }
    CompensatedSum s;
    for (u64 p : primes) s.add(std::log1p(-weight(p)));
    return lead * std::exp(s.value());
}

// Successive partial products lead, lead*(1 - w(p_1)), ... (for monotonicity checks).
template <typename Weight>
std::vector<double> partial_products(double lead, std::span<const u64> primes, Weight&& weight) {
    std::vector<double> out{lead};
    for (u64 p : primes) out.push_back(out.back() * (1.0 - weight(p)));
    return out;
}

namespace detail {

inline void finish(EstimateReport& r) {
    if (r.oracle && *r.oracle > 0) r.ratio = round_significant(r.estimate / static_cast<double>(*r.oracle));
}

inline double twin_weight(u64 p) { return p == 2 ? 0.5 : 2.0 / static_cast<double>(p); }

inline std::span<const u64> root_primes(u64 x, const PrimeTable& table) {
    return table.primes_up_to(isqrt(x));
}

inline std::string join_u(const std::vector<u64>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

inline void require_table(u64 x, const PrimeTable& table, const char* who) {
    if (table.limit() < x) throw std::out_of_range(std::string(who) + ": table does not reach x");
}

}  // namespace detail

// x * prod_{p <= sqrt x} (1 - 1/p) against pi(x).
inline EstimateReport psi_estimate(u64 x, const PrimeTable& table) {
    if (x < 4) throw std::invalid_argument("psi_estimate: x must be >= 4");
    detail::require_table(x, table, "psi_estimate");
    EstimateReport r;
    r.x = x;
    r.estimate = sieve_product(static_cast<double>(x), detail::root_primes(x, table),
                               [](u64 p) { return 1.0 / static_cast<double>(p); }, x > kCompensatedProductThreshold);
    r.oracle = table.pi(x);
    detail::finish(r);
    return r;
}

// (x/2) * prod_{2 < p <= sqrt x} (1 - 2/p) against T(x).
inline EstimateReport omega_estimate(u64 x, const PrimeTable& table) {
    if (x < 9) throw std::invalid_argument("omega_estimate: x must be >= 9");
    detail::require_table(x, table, "omega_estimate");
    EstimateReport r;
    r.x = x;
    r.estimate = sieve_product(static_cast<double>(x), detail::root_primes(x, table), detail::twin_weight,
                               x > kCompensatedProductThreshold);
    r.oracle = brute_twin_count(x, table);
    detail::finish(r);
    return r;
}

// x * prod_{p <= sqrt x} (1 - u_p/p), u_p = number of forbidden residues of the tuple.
inline EstimateReport omega_k_estimate(u64 x, const AdmissibleTuple& tuple, const PrimeTable& table) {
    if (x < 9) throw std::invalid_argument("omega_k_estimate: x must be >= 9");
    detail::require_table(x, table, "omega_k_estimate");
    const auto primes = detail::root_primes(x, table);
    std::vector<u64> us;
    for (u64 p : primes) us.push_back(tuple_forbidden(tuple, p).size());
    EstimateReport r;
    r.x = x;
    std::size_t i = 0;
    r.estimate = sieve_product(
        static_cast<double>(x), primes,
        [&](u64 p) { return static_cast<double>(us[i++]) / static_cast<double>(p); },
        x > kCompensatedProductThreshold);
    r.oracle = brute_tuple_count(x, tuple.offsets(), table);
    r.params.emplace_back("tuple", tuple.to_string());
    r.params.emplace_back("u", detail::join_u(us));
    detail::finish(r);
    return r;
}

// ---------------------------------------------------------------------------
// Arithmetic progressions a + k b
// ---------------------------------------------------------------------------

enum class ApKind { prime, twin };

// Step between the two members of a generalized twin pair: consecutive terms
// when every term is odd (b even), every other term when parity alternates.
inline u64 ap_twin_step(u64 b) { return b % 2 == 0 ? 1 : 2; }

inline u64 ap_prime_count(u64 x, u64 a, u64 b, const PrimeTable& table) {
    detail::require_table(x, table, "ap_prime_count");
    u64 c = 0;
    for (u64 n = a; n <= x; n += b) c += n >= 2 && table.contains(n);
    return c;
}

inline u64 ap_twin_count(u64 x, u64 a, u64 b, const PrimeTable& table) {
    detail::require_table(x, table, "ap_twin_count");
    const u64 gap = ap_twin_step(b) * b;
    u64 c = 0;
    for (u64 n = a; n + gap <= x; n += b) c += n >= 2 && table.contains(n) && table.contains(n + gap);
    return c;
}

namespace detail {

inline void check_ap(u64 x, u64 a, u64 b, const char* who) {
    if (b == 0) throw std::invalid_argument(std::string(who) + ": step must be positive");
    if (std::gcd(a, b) != 1) throw std::invalid_argument(std::string(who) + ": gcd(a, b) must be 1");
    if (x <= a) throw std::invalid_argument(std::string(who) + ": x must exceed a");
}

inline void ap_common(EstimateReport& r, u64 x, u64 a, u64 b, std::span<const u64> primes) {
    r.params.emplace_back("a", static_cast<i64>(a));
    r.params.emplace_back("b", static_cast<i64>(b));
    r.params.emplace_back("leading_factor", static_cast<double>(x - a) / static_cast<double>(b));
    for (u64 p : primes)
        if (b % p == 0)
            r.warnings.push_back("sieving prime " + std::to_string(p) +
                                 " divides b; its local factor is applied unchanged");
    if (b == 1 && a != 0)
        r.warnings.push_back("leading factor " + std::to_string(x - a) + " differs from x = " + std::to_string(x) +
                             " by the offset a");
}

}  // namespace detail

inline EstimateReport ap_psi_estimate(u64 x, u64 a, u64 b, const PrimeTable& table) {
    detail::check_ap(x, a, b, "ap_psi_estimate");
    detail::require_table(x, table, "ap_psi_estimate");
    const auto primes = detail::root_primes(x, table);
    EstimateReport r;
    r.x = x;
    r.estimate = sieve_product(static_cast<double>(x - a) / static_cast<double>(b), primes,
                               [](u64 p) { return 1.0 / static_cast<double>(p); }, x > kCompensatedProductThreshold);
    r.oracle = ap_prime_count(x, a, b, table);
    detail::ap_common(r, x, a, b, primes);
    detail::finish(r);
    return r;
}

inline EstimateReport ap_omega_estimate(u64 x, u64 a, u64 b, const PrimeTable& table) {
    detail::check_ap(x, a, b, "ap_omega_estimate");
    detail::require_table(x, table, "ap_omega_estimate");
    const auto primes = detail::root_primes(x, table);
    EstimateReport r;
    r.x = x;
    r.estimate = sieve_product(static_cast<double>(x - a) / static_cast<double>(b), primes, detail::twin_weight,
                               x > kCompensatedProductThreshold);
    r.oracle = ap_twin_count(x, a, b, table);
    detail::ap_common(r, x, a, b, primes);
    r.params.emplace_back("pair_step", static_cast<i64>(ap_twin_step(b)));
    detail::finish(r);
    return r;
}

// ---------------------------------------------------------------------------
// Twin constant probe
// ---------------------------------------------------------------------------

struct TwinConstantRow {
    u64 x;
    double u;         // prod_{2 < p <= sqrt x} (1 - 2/p)
    double implied_c; // u * (log x)^2 / 4
};

inline std::vector<TwinConstantRow> twin_constant_probe(const std::vector<u64>& grid) {
    u64 prev = 0;
    for (u64 x : grid) {
        if (x < 100) throw std::invalid_argument("twin_constant_probe: grid points must be >= 100");
        if (x <= prev) throw std::invalid_argument("twin_constant_probe: grid must be ascending");
        prev = x;
    }
    std::vector<TwinConstantRow> rows;
    if (grid.empty()) return rows;
    const auto table = sieve_primes(isqrt(grid.back()));
    for (u64 x : grid) {
        auto primes = table.primes_up_to(isqrt(x)).subspan(1);  // odd primes only
        const double u = sieve_product(1.0, primes, [](u64 p) { return 2.0 / static_cast<double>(p); },
                                       x > kCompensatedProductThreshold);
        const double l = std::log(static_cast<double>(x));
        rows.push_back({x, u, u * l * l / 4.0});
    }
    return rows;
}

inline constexpr u64 kTwinConstantX = 1'000'000'000'000;

inline double default_twin_constant() {
    static const double c = twin_constant_probe({kTwinConstantX}).front().implied_c;
    return c;
}

// y / log y (prime) or 2 C y / (log y)^2 (twin) with y = (x - a) / b.
inline EstimateReport ap_asymptotic(u64 x, u64 a, u64 b, ApKind kind, const PrimeTable& table,
                                    std::optional<double> twin_constant = std::nullopt) {
    if (b == 0) throw std::invalid_argument("ap_asymptotic: step must be positive");
    if (std::gcd(a, b) != 1) throw std::invalid_argument("ap_asymptotic: gcd(a, b) must be 1");
    if (x <= a + b) throw std::invalid_argument("ap_asymptotic: (x - a) / b must exceed 1");
    detail::require_table(x, table, "ap_asymptotic");
    const double y = static_cast<double>(x - a) / static_cast<double>(b);
    const double l = std::log(y);
    EstimateReport r;
    r.x = x;
    r.params.emplace_back("a", static_cast<i64>(a));
    r.params.emplace_back("b", static_cast<i64>(b));
    r.params.emplace_back("kind", std::string(kind == ApKind::prime ? "prime" : "twin"));
    if (kind == ApKind::prime) {
        r.estimate = y / l;
        r.oracle = ap_prime_count(x, a, b, table);
    } else {
        const double c = twin_constant ? *twin_constant : default_twin_constant();
        r.params.emplace_back("C", c);
        r.estimate = 2.0 * c * y / (l * l);
        r.oracle = ap_twin_count(x, a, b, table);
    }
    detail::finish(r);
    return r;
}

// ---------------------------------------------------------------------------
// Mersenne / Fermat
// ---------------------------------------------------------------------------

namespace detail {

inline EstimateReport exponent_estimate(u64 x, bool fermat) {
    if (x < 9) throw std::invalid_argument("exponent estimate: x must be >= 9");
    const auto table = sieve_primes(isqrt(x));
    auto odd = table.primes().subspan(1);
    EstimateReport r;
    r.x = x;
    const double u = std::log(static_cast<double>(x)) / std::log(2.0);
    r.estimate = sieve_product(u, odd, [](u64 p) { return 1.0 / static_cast<double>(p - 1); },
                               x > kCompensatedProductThreshold);
    u64 count = 0;
    for (u64 q = 1; q < 63; ++q) {
        const u64 v = fermat ? (u64{1} << q) + 1 : (u64{1} << q) - 1;
        if (v > x) break;
        count += is_prime(v);
    }
    r.oracle = count;
    r.params.emplace_back("u", u);
    detail::finish(r);
    return r;
}

}  // namespace detail

inline EstimateReport mersenne_estimate(u64 x) { return detail::exponent_estimate(x, false); }
inline EstimateReport fermat_estimate(u64 x) { return detail::exponent_estimate(x, true); }

// ---------------------------------------------------------------------------
// Primitive roots in progressions
// ---------------------------------------------------------------------------

inline bool is_perfect_square(i64 q) {
    if (q < 0) return false;
    const u64 r = isqrt(static_cast<u64>(q));
    return r * r == static_cast<u64>(q);
}

inline bool is_primitive_root(i64 q, u64 p) {
    if (mod_floor(q, p) == 0) return false;
    return multiplicative_order(q, p) == p - 1;
}

inline EstimateReport primitive_root_census(i64 q, u64 a, u64 b, u64 x, const PrimeTable& table) {
    if (q == 0 || q == 1 || q == -1) throw std::invalid_argument("primitive_root_census: Q must not be 0, 1 or -1");
    if (is_perfect_square(q)) throw std::invalid_argument("primitive_root_census: Q must not be a perfect square");
    detail::check_ap(x, a, b, "primitive_root_census");
    if (x <= a + b) throw std::invalid_argument("primitive_root_census: (x - a) / b must exceed 1");
    detail::require_table(x, table, "primitive_root_census");
    u64 count = 0;
    for (u64 p : table.primes_up_to(x))
        if (p % b == a % b && is_primitive_root(q, p)) ++count;
    const double y = static_cast<double>(x - a) / static_cast<double>(b);
    const double shape = y / std::log(y);
    EstimateReport r;
    r.x = x;
    r.oracle = count;
    const double fitted = static_cast<double>(count) / shape;
    r.estimate = fitted * shape;
    r.params.emplace_back("Q", q);
    r.params.emplace_back("a", static_cast<i64>(a));
    r.params.emplace_back("b", static_cast<i64>(b));
    r.params.emplace_back("A", fitted);
    detail::finish(r);
    return r;
}

}  // namespace primelab
