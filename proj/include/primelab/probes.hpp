// probes.hpp
// Interval scans (Bertrand variants, pi(x + y) <= pi(x) + pi(y)), the
// Dirichlet series sum 2^Omega(n) / n^s with its Euler product, and
// composite-Mersenne witnesses from Sophie Germain pairs.

#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/special_functions/zeta.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "primelab/arith.hpp"
#include "primelab/density.hpp"
#include "primelab/params.hpp"
#include "primelab/sieve.hpp"

namespace primelab {

template <typename Point>
struct ScanResult {
    Params params;
    u64 lo = 0, hi = 0;
    std::vector<Point> failures;  // ascending
    std::optional<Point> largest_failure;
};

// Exact decimal alpha = num / den.
struct Ratio {
    u64 num = 1, den = 1;
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    u64 floor_times(u64 n) const { return static_cast<u64>(static_cast<u128>(num) * n / den); }
    std::string to_string() const;
};

inline Ratio parse_ratio(const std::string& text) {
    Ratio r{0, 1};
    bool dot = false, digits = false;
    for (char c : text) {
        if (c == '.' && !dot) {
            dot = true;
            continue;
        }
        if (c < '0' || c > '9') throw std::invalid_argument("parse_ratio: not a decimal: " + text);
        if (r.num > (u64{1} << 59) / 10) throw std::invalid_argument("parse_ratio: too many digits: " + text);
        digits = true;
        r.num = r.num * 10 + static_cast<u64>(c - '0');
        if (dot) r.den *= 10;
    }
    if (!digits) throw std::invalid_argument("parse_ratio: not a decimal: " + text);
    const u64 g = std::gcd(r.num, r.den);
    if (g > 1) {
        r.num /= g;
        r.den /= g;
    }
    return r;
}

// Shortest round-trip decimal of a double, read back exactly.
inline Ratio ratio_from_double(double v) {
    if (!std::isfinite(v) || v <= 0) throw std::invalid_argument("ratio_from_double: need a positive finite value");
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed);
    return parse_ratio(std::string(buf, res.ptr));
}

inline std::string Ratio::to_string() const {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, value());
    return std::string(buf, res.ptr);
}

namespace detail {

inline void check_alpha(const Ratio& a, const char* who) {
    // 1 < alpha <= 2
    if (!(a.num > a.den && a.num <= 2 * a.den))
        throw std::invalid_argument(std::string(who) + ": alpha must lie in (1, 2]");
}

template <typename Point>
inline void finish_scan(ScanResult<Point>& r) {
    if (!r.failures.empty()) r.largest_failure = r.failures.back();
}

}  // namespace detail

// Failures: n with no prime in (n, floor(alpha n)].
inline ScanResult<u64> bertrand_scan(const Ratio& alpha, u64 n_min, u64 n_max) {
    detail::check_alpha(alpha, "bertrand_scan");
    if (n_min < 1) throw std::invalid_argument("bertrand_scan: n_min must be >= 1");
    if (n_max < n_min) throw std::invalid_argument("bertrand_scan: n_max must be >= n_min");
    ScanResult<u64> r;
    r.params = {{"alpha", alpha.to_string()}, {"n_min", static_cast<i64>(n_min)}, {"n_max", static_cast<i64>(n_max)}};
    r.lo = n_min;
    r.hi = n_max;
    const auto table = sieve_primes(alpha.floor_times(n_max) + 1);
    for (u64 n = n_min; n <= n_max; ++n)
        if (table.pi(alpha.floor_times(n)) == table.pi(n)) r.failures.push_back(n);
    detail::finish_scan(r);
    return r;
}

inline ScanResult<u64> bertrand_scan(double alpha, u64 n_min, u64 n_max) {
    return bertrand_scan(ratio_from_double(alpha), n_min, n_max);
}

namespace detail {

// next_twin[i] = smallest p >= i with (p, p + 2) twin primes, or 0.
inline std::vector<u64> next_twin_table(u64 limit) {
    const auto table = sieve_primes(limit + 2);
    std::vector<u64> next(limit + 2, 0);
    u64 cur = 0;
    for (u64 i = limit + 1; i-- > 0;) {
        if (i + 2 <= table.limit() && table.contains(i) && table.contains(i + 2)) cur = i;
        next[i] = cur;
    }
    return next;
}

}  // namespace detail

// Failures: x with no twin pair (p, p + 2) satisfying x < p and p + 2 < 2x.
inline ScanResult<u64> twin_bertrand_scan(u64 x_min, u64 x_max) {
    if (x_min < 7) throw std::invalid_argument("twin_bertrand_scan: x_min must be >= 7");
    if (x_max < x_min) throw std::invalid_argument("twin_bertrand_scan: x_max must be >= x_min");
    ScanResult<u64> r;
    r.params = {{"x_min", static_cast<i64>(x_min)}, {"x_max", static_cast<i64>(x_max)},
                {"containment", std::string("both members in (x, 2x)")}};
    r.lo = x_min;
    r.hi = x_max;
    const auto next = detail::next_twin_table(2 * x_max);
    for (u64 x = x_min; x <= x_max; ++x) {
        const u64 p = next[x + 1];
        if (p == 0 || p + 2 >= 2 * x) r.failures.push_back(x);
    }
    detail::finish_scan(r);
    return r;
}

// Generalized form: failures are n with no twin pair n < p, p + 2 <= floor(alpha n).
inline ScanResult<u64> twin_bertrand_alpha_scan(const Ratio& alpha, u64 n_min, u64 n_max) {
    detail::check_alpha(alpha, "twin_bertrand_alpha_scan");
    if (n_min < 1) throw std::invalid_argument("twin_bertrand_alpha_scan: n_min must be >= 1");
    if (n_max < n_min) throw std::invalid_argument("twin_bertrand_alpha_scan: n_max must be >= n_min");
    ScanResult<u64> r;
    r.params = {{"alpha", alpha.to_string()}, {"n_min", static_cast<i64>(n_min)}, {"n_max", static_cast<i64>(n_max)},
                {"containment", std::string("n < p, p + 2 <= floor(alpha n)")}};
    r.lo = n_min;
    r.hi = n_max;
    const auto next = detail::next_twin_table(alpha.floor_times(n_max) + 1);
    for (u64 n = n_min; n <= n_max; ++n) {
        const u64 p = next[n + 1];
        if (p == 0 || p + 2 > alpha.floor_times(n)) r.failures.push_back(n);
    }
    detail::finish_scan(r);
    return r;
}

// ---------------------------------------------------------------------------
// pi(x + y) <= pi(x) + pi(y)
// ---------------------------------------------------------------------------

struct HlRow {
    u64 y = 0;
    u64 pi_y = 0;
    u64 max_window = 0;  // max over x of pi(x <-> x + y) = pi(x + y) - pi(x)
    u64 argmax_x = 0;    // smallest x attaining it
};

struct HlScan {
    ScanResult<std::pair<u64, u64>> scan;
    std::vector<HlRow> rows;  // one per y
    u64 checked = 0;
    u64 equalities = 0;       // pairs where the inequality is tight
};

inline HlScan hl_inequality_scan(u64 x_max, u64 y_max) {
    if (x_max < 2 || y_max < 2) throw std::invalid_argument("hl_inequality_scan: x_max and y_max must be >= 2");
    HlScan h;
    auto& r = h.scan;
    r.params = {{"x_max", static_cast<i64>(x_max)}, {"y_max", static_cast<i64>(y_max)}};
    r.lo = 2;
    r.hi = std::max(x_max, y_max);
    const auto table = sieve_primes(x_max + y_max);
    std::vector<u64> pi(x_max + y_max + 1, 0);
    for (u64 n = 1; n < pi.size(); ++n) pi[n] = pi[n - 1] + (table.contains(n) ? 1 : 0);
    for (u64 y = 2; y <= y_max; ++y) {
        HlRow row{y, pi[y], 0, 0};
        for (u64 x = 2; x <= x_max; ++x) {
            // pi(x + y) = pi(x) + pi(x <-> x + y)
            const u64 window = pi[x + y] - pi[x];
            if (window > row.max_window || row.argmax_x == 0) {
                row.max_window = window;
                row.argmax_x = x;
            }
            ++h.checked;
            if (window > pi[y])
                r.failures.emplace_back(x, y);
            else if (window == pi[y])
                ++h.equalities;
        }
        h.rows.push_back(row);
    }
    std::sort(r.failures.begin(), r.failures.end());
    detail::finish_scan(r);
    return h;
}

// ---------------------------------------------------------------------------
// sum 2^Omega(n) / n^s
// ---------------------------------------------------------------------------

inline u64 big_omega(u64 n) {
    if (n == 0) throw std::invalid_argument("big_omega: n must be >= 1");
    u64 c = 0;
    for (u64 d = 2; d <= n / d; ++d)
        while (n % d == 0) {
            n /= d;
            ++c;
        }
    return c + (n > 1 ? 1 : 0);
}

namespace detail {

// Omega(n) for n <= limit via smallest-prime-factor sieve.
inline std::vector<unsigned char> omega_table(u64 limit) {
    std::vector<std::uint32_t> spf(limit + 1, 0);
    std::vector<unsigned char> om(limit + 1, 0);
    for (u64 i = 2; i <= limit; ++i) {
        if (spf[i] == 0)
            for (u64 j = i; j <= limit; j += i)
                if (spf[j] == 0) spf[j] = static_cast<std::uint32_t>(i);
        om[i] = static_cast<unsigned char>(om[i / spf[i]] + 1);
    }
    return om;
}

inline constexpr u64 kMaxPartialSumTerms = 50'000'000;

}  // namespace detail

inline double xi_partial_sum(double s, u64 n) {
    if (!(s > 1.0)) throw std::invalid_argument("xi_partial_sum: s must be > 1 (use xi_growth_table for s <= 1)");
    if (n < 1) throw std::invalid_argument("xi_partial_sum: N must be >= 1");
    if (n > detail::kMaxPartialSumTerms) throw std::invalid_argument("xi_partial_sum: N too large");
    const auto om = detail::omega_table(n);
    CompensatedSum sum;
    for (u64 i = 1; i <= n; ++i) sum.add(std::ldexp(1.0, om[i]) / std::pow(static_cast<double>(i), s));
    return sum.value();
}

struct GrowthRow {
    u64 n = 0;
    double partial = 0.0;
    double log_n = 0.0;
};

// Partial sums on an ascending N grid; any real s is accepted.
inline std::vector<GrowthRow> xi_growth_table(double s, const std::vector<u64>& grid) {
    if (grid.empty()) throw std::invalid_argument("xi_growth_table: empty grid");
    if (!std::is_sorted(grid.begin(), grid.end()) || grid.front() < 1)
        throw std::invalid_argument("xi_growth_table: grid must be ascending and >= 1");
    if (grid.back() > detail::kMaxPartialSumTerms) throw std::invalid_argument("xi_growth_table: N too large");
    const auto om = detail::omega_table(grid.back());
    std::vector<GrowthRow> out;
    CompensatedSum sum;
    u64 i = 1;
    for (u64 n : grid) {
        for (; i <= n; ++i) sum.add(std::ldexp(1.0, om[i]) / std::pow(static_cast<double>(i), s));
        out.push_back({n, sum.value(), std::log(static_cast<double>(n))});
    }
    return out;
}

inline double xi_euler_product(double s, u64 p_max) {
    const auto table = sieve_primes(std::max<u64>(p_max, 2));
    double prod = 1.0;
    for (u64 p : table.primes()) {
        const double f = 2.0 / std::pow(static_cast<double>(p), s);
        if (!(f < 1.0))
            throw std::invalid_argument("xi_euler_product: divergent factor at p = " + std::to_string(p));
        prod /= (1.0 - f);
    }
    return prod;
}

// Sum of 2^Omega(n) / n^s over P-smooth n <= n_max.
inline double xi_smooth_series(double s, u64 p_max, u64 n_max) {
    const auto table = sieve_primes(std::max<u64>(p_max, 2));
    const auto ps = table.primes();
    std::vector<double> terms;
    // depth-first over exponent vectors, nondecreasing prime index
    struct Frame {
        u64 n;
        std::size_t idx;
        double w;
    };
    std::vector<Frame> stack{{1, 0, 1.0}};
    while (!stack.empty()) {
        const Frame f = stack.back();
        stack.pop_back();
        terms.push_back(f.w);
        for (std::size_t i = f.idx; i < ps.size(); ++i) {
            u64 next;
            if (!mul_within(f.n, ps[i], n_max, next)) break;
            stack.push_back({next, i, f.w * 2.0 / std::pow(static_cast<double>(ps[i]), s)});
        }
    }
    // smallest terms first
    std::sort(terms.begin(), terms.end());
    CompensatedSum sum;
    for (double t : terms) sum.add(t);
    return sum.value();
}

namespace detail {

inline int mobius(u64 k) {
    int mu = 1;
    for (u64 d = 2; d <= k / d; ++d)
        if (k % d == 0) {
            k /= d;
            if (k % d == 0) return 0;
            mu = -mu;
        }
    return k > 1 ? -mu : mu;
}

// Prime zeta P(t) = sum_p p^-t = sum_k mu(k)/k log zeta(k t), t > 1.
inline double prime_zeta(double t) {
    CompensatedSum sum;
    for (u64 k = 1;; ++k) {
        const double kt = static_cast<double>(k) * t;
        if (std::ldexp(1.0, -static_cast<int>(std::min(kt, 1000.0))) < 1e-20) break;
        const int mu = mobius(k);
        if (mu == 0) continue;
        sum.add(mu * std::log(boost::math::zeta(kt)) / static_cast<double>(k));
    }
    return sum.value();
}

inline constexpr u64 kSigmaProbeCutoff = 1000;

}  // namespace detail

struct SigmaRow {
    double sigma = 0.0;
    double log_xi = 0.0;        // log xi_T(1 + sigma)
    double prime_sum = 0.0;     // sum_p 2 / p^(1 + sigma), all primes
    double residual = 0.0;      // log_xi - prime_sum
    double log_inv_sigma = 0.0; // log(1 / sigma)
    double ratio = 0.0;         // log_xi / log(1 / sigma)
};

// log xi_T(s) = sum_p -log(1 - 2/p^s): exact factors for p <= 1000, and for
// larger p the expansion sum_m 2^m/m P_{>1000}(m s) with the prime zeta tail.
inline std::vector<SigmaRow> xi_sigma_probe(const std::vector<double>& sigmas) {
    const auto table = sieve_primes(detail::kSigmaProbeCutoff);
    const auto ps = table.primes();
    std::vector<SigmaRow> out;
    for (double sigma : sigmas) {
        if (!(sigma > 0.0 && sigma < 1.0)) throw std::invalid_argument("xi_sigma_probe: sigma must lie in (0, 1)");
        const double s = 1.0 + sigma;
        CompensatedSum head, head_lin;
        for (u64 p : ps) {
            const double f = 2.0 / std::pow(static_cast<double>(p), s);
            head.add(-std::log1p(-f));
            head_lin.add(f);
        }
        auto tail_zeta = [&](double t) {
            CompensatedSum c;
            c.add(detail::prime_zeta(t));
            for (u64 p : ps) c.add(-std::pow(static_cast<double>(p), -t));
            return c.value();
        };
        const double first_tail = tail_zeta(s);
        CompensatedSum log_xi;
        log_xi.add(head.value());
        log_xi.add(2.0 * first_tail);
        const double q = 2.0 / std::pow(static_cast<double>(detail::kSigmaProbeCutoff), s);
        for (u64 m = 2; m < 64; ++m) {
            const double bound = std::pow(q, static_cast<double>(m)) / static_cast<double>(m);
            if (bound < 1e-18) break;
            log_xi.add(std::ldexp(1.0, static_cast<int>(m)) / static_cast<double>(m) *
                       tail_zeta(static_cast<double>(m) * s));
        }
        SigmaRow row;
        row.sigma = sigma;
        row.log_xi = log_xi.value();
        row.prime_sum = head_lin.value() + 2.0 * first_tail;
        row.residual = row.log_xi - row.prime_sum;
        row.log_inv_sigma = std::log(1.0 / sigma);
        row.ratio = row.log_xi / row.log_inv_sigma;
        out.push_back(row);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Composite Mersenne witnesses
// ---------------------------------------------------------------------------

struct WitnessVerdict {
    bool witness = false;
    u64 q = 0;
    u64 divisor = 0;              // 2q + 1 when witness
    std::string failed_condition; // empty when witness
    bool verified_exact = false;  // arbitrary-precision re-check of 2^q = 1 (mod 2q + 1)
    u64 residue = 0;              // 2^q - 1 mod (2q + 1)
};

// q prime, 2q + 1 prime and q = 3 (mod 4) give (2q + 1) | 2^q - 1.
inline WitnessVerdict mersenne_witness_for(u64 q) {
    if (q < 3) throw std::invalid_argument("mersenne_witness: q must be >= 3");
    if (q >= (u64{1} << 62)) throw std::invalid_argument("mersenne_witness: q too large");
    WitnessVerdict v;
    v.q = q;
    const u64 d = 2 * q + 1;
    v.residue = (powmod(2, q, d) + d - 1) % d;
    if (!is_prime(q))
        v.failed_condition = "q is not prime";
    else if (!is_prime(d))
        v.failed_condition = "2q + 1 is not prime";
    else if (q % 4 != 3)
        v.failed_condition = "q is not 3 mod 4";
    if (!v.failed_condition.empty()) return v;
    if (v.residue != 0) throw std::logic_error("mersenne_witness: divisibility failed for q = " + std::to_string(q));
    const BigInt big = boost::multiprecision::powm(BigInt(2), BigInt(q), BigInt(d));
    v.verified_exact = big == 1;
    if (!v.verified_exact) throw std::logic_error("mersenne_witness: exact re-check failed");
    v.witness = true;
    v.divisor = d;
    return v;
}

// q = k 2^n - 1
inline WitnessVerdict mersenne_composite_witness(u64 k, u64 n) {
    if (k == 0) throw std::invalid_argument("mersenne_witness: k must be >= 1");
    if (n >= 62 || k > ((u64{1} << 62) >> n)) throw std::invalid_argument("mersenne_witness: k 2^n too large");
    const u64 kq = k << n;
    if (kq < 4) throw std::invalid_argument("mersenne_witness: q = k 2^n - 1 must be >= 3");
    return mersenne_witness_for(kq - 1);
}

}  // namespace primelab
