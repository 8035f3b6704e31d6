// schinzel.hpp
// Representing a positive rational m/n as (p + 1)/(q + 1) with p, q prime by
// searching k with p = 2mk - 1, q = 2nk - 1, using remainder-sequence filters
// on k over a growing window of small primes.

#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "primelab/arith.hpp"
#include "primelab/crt.hpp"
#include "primelab/residue.hpp"
#include "primelab/sieve.hpp"

namespace primelab {

// Residues lambda of k mod p that make 2mk - 1 or 2nk - 1 divisible by p.
inline std::vector<u64> lambda_disallowed(u64 m, u64 n, u64 p) {
    std::vector<u64> out;
    for (u64 c : {(2 * m) % p, (2 * n) % p})
        if (c != 0) out.push_back(invmod(c, p));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline ChoiceSpec lambda_filter(u64 m, u64 n, const std::vector<u64>& primes) {
    std::vector<ChoiceSpec::Entry> entries;
    for (u64 p : primes) {
        if (!is_prime(p)) throw std::invalid_argument("lambda_filter: modulus must be prime");
        const auto bad = lambda_disallowed(m, n, p);
        std::vector<u64> allowed;
        for (u64 l = 0; l < p; ++l)
            if (!std::binary_search(bad.begin(), bad.end(), l)) allowed.push_back(l);
        entries.push_back({p, allowed});
    }
    return ChoiceSpec(std::move(entries));
}

// Number of removed residues per prime (0, 1 or 2).
inline u64 lambda_removed(u64 m, u64 n, u64 p) { return lambda_disallowed(m, n, p).size(); }

inline bool verify_shifted_quotient(u64 m, u64 n, u64 p, u64 q) {
    if (p < 2 || q < 2) return false;
    return static_cast<u128>(p + 1) * n == static_cast<u128>(q + 1) * m && is_prime(p) && is_prime(q);
}

struct SchinzelResult {
    u64 m = 0, n = 0;        // reduced
    u64 gcd = 1;             // common factor removed from the input
    std::optional<u64> k;
    u64 p = 0, q = 0;
    u64 filtered = 0;        // k values rejected by the residue filter
    u64 tested = 0;          // k values given a primality test
    std::vector<u64> window; // prime window used for the final k
};

namespace detail {

// Primes p with p^2 < limit.
inline std::vector<u64> window_primes(const PrimeTable& table, u64 limit) {
    std::vector<u64> out;
    for (u64 p : table.primes()) {
        if (static_cast<u128>(p) * p >= limit) break;
        out.push_back(p);
    }
    return out;
}

// A disallowed lambda kills whichever of a, b it divides, unless that value
// is the window prime itself.
inline bool rejected(const std::vector<u64>& window, const std::vector<std::vector<u64>>& bad, u64 k, u64 a,
                     u64 b) {
    for (std::size_t i = 0; i < window.size(); ++i) {
        const u64 p = window[i];
        if (!std::binary_search(bad[i].begin(), bad[i].end(), k % p)) continue;
        if ((a % p == 0 && a != p) || (b % p == 0 && b != p)) return true;
    }
    return false;
}

}  // namespace detail

// Primes p with p^2 < 2 max(m, n) k.
inline std::vector<u64> schinzel_window(u64 m, u64 n, u64 k) {
    const u64 limit = 2 * std::max(m, n) * k;
    return detail::window_primes(sieve_primes(isqrt(limit) + 1), limit);
}

// Whether the filter discards k (m, n already reduced).
inline bool schinzel_rejects(u64 m, u64 n, u64 k) {
    const auto window = schinzel_window(m, n, k);
    std::vector<std::vector<u64>> bad;
    for (u64 p : window) bad.push_back(lambda_disallowed(m, n, p));
    return detail::rejected(window, bad, k, 2 * m * k - 1, 2 * n * k - 1);
}

// Smallest k <= k_max with 2mk - 1 and 2nk - 1 both prime. A residue class of
// k is rejected only when the prime it implicates is a proper divisor, so a
// value equal to a window prime is never filtered out.
inline SchinzelResult schinzel_search(u64 m, u64 n, u64 k_max) {
    if (m == 0 || n == 0) throw std::invalid_argument("schinzel_search: m and n must be positive");
    if (k_max == 0) throw std::invalid_argument("schinzel_search: k_max must be >= 1");
    SchinzelResult r;
    r.gcd = std::gcd(m, n);
    r.m = m / r.gcd;
    r.n = n / r.gcd;
    const u64 big = std::max(r.m, r.n);
    if (static_cast<u128>(2) * big * k_max >= (u128{1} << 62))
        throw std::invalid_argument("schinzel_search: 2 max(m, n) k_max exceeds the supported range");
    const auto table = sieve_primes(isqrt(2 * big * k_max) + 1);

    std::vector<u64> window;
    std::vector<std::vector<u64>> bad;
    for (u64 k = 1; k <= k_max; ++k) {
        // grow the window to p^2 < 2 max(m, n) k
        for (u64 p : detail::window_primes(table, 2 * big * k))
            if (window.empty() || p > window.back()) {
                window.push_back(p);
                bad.push_back(lambda_disallowed(r.m, r.n, p));
            }
        const u64 a = 2 * r.m * k - 1, b = 2 * r.n * k - 1;
        if (detail::rejected(window, bad, k, a, b)) {
            ++r.filtered;
            continue;
        }
        ++r.tested;
        if (is_prime(a) && is_prime(b)) {
            r.k = k;
            r.p = a;
            r.q = b;
            r.window = window;
            return r;
        }
    }
    r.window = window;
    return r;
}

// Reference search testing every k.
inline std::optional<u64> schinzel_naive(u64 m, u64 n, u64 k_max) {
    const u64 g = std::gcd(m, n);
    m /= g;
    n /= g;
    for (u64 k = 1; k <= k_max; ++k)
        if (is_prime(2 * m * k - 1) && is_prime(2 * n * k - 1)) return k;
    return std::nullopt;
}

// Remainder-sequence rows for 2m, 2n and k over a prime window, with allowed lambdas.
struct SchinzelTable {
    std::vector<u64> primes;
    RemainderSequence two_m, two_n, k;
    std::vector<std::vector<u64>> allowed;
};

inline SchinzelTable schinzel_table(u64 m, u64 n, u64 k, const std::vector<u64>& primes) {
    SchinzelTable t;
    t.primes = primes;
    t.two_m = remainder_sequence(static_cast<i64>(2 * m), primes);
    t.two_n = remainder_sequence(static_cast<i64>(2 * n), primes);
    t.k = remainder_sequence(static_cast<i64>(k), primes);
    const auto spec = lambda_filter(m, n, primes);
    for (const auto& e : spec.entries()) t.allowed.push_back(e.allowed);
    return t;
}

}  // namespace primelab
