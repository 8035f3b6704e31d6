// exact_counts.hpp
// Exact inclusion-exclusion counts (Legendre pi, residue-class survivors,
// twin and k-tuple formulas, order-based Mersenne/Fermat exponent sieves),
// each reported next to an independent brute-force count.

#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "primelab/arith.hpp"
#include "primelab/residue.hpp"
#include "primelab/sieve.hpp"

namespace primelab {

// Correction term names used below:
//   tail               k - 1 added to Legendre's phi(x, k)
//   phi                alternating floor sum over sieving-prime subsets
//   sieving_primes     k
//   pk_minus_one_tail  p_k - 1 (alternative tail, informational only)
//   survivors          inclusion-exclusion count over [1, x]
//   A, B               survivor terms with / without the first sieving prime
//   unit               survivor(s) that are not genuine (n = 1, negative members)
//   small_range        patterns lying entirely at or below sqrt(x)
//   straddle           patterns whose smallest member is <= sqrt(x) < largest
//   uniform_identity   uniform floor sum u * [x / P] variant plus small_range
//   sieve_count        exponent-sieve survivors q <= u
//   lambda             Mersenne / Fermat primes <= sqrt(x)
//   composite_survivor exponent survivors that are composite (only x = 8 for Fermat)
struct CountReport {
    u64 x = 0;
    i64 formula_value = 0;
    u64 oracle_value = 0;
    bool formula_evaluated = true;  // false: term budget exceeded, oracle-only
    std::vector<std::pair<std::string, i64>> corrections;
    std::vector<std::string> notes;

    i64 delta() const { return formula_value - static_cast<i64>(oracle_value); }

    std::optional<i64> correction(const std::string& name) const {
        for (const auto& [k, v] : corrections)
            if (k == name) return v;
        return std::nullopt;
    }
};

inline constexpr u64 kDefaultTermBudget = 400'000'000;

// ---------------------------------------------------------------------------
// Brute-force oracles
// ---------------------------------------------------------------------------

namespace detail {

inline const PrimeTable& table_for(u64 x, const PrimeTable* given, PrimeTable& local) {
    if (given && given->limit() >= x) return *given;
    local = sieve_primes(x);
    return local;
}

}  // namespace detail

// Number of p <= x with p, p + b_1, ..., p + b_{k-1} all prime and p + b_{k-1} <= x.
inline u64 brute_tuple_count(u64 x, std::span<const u64> offsets, const PrimeTable& table) {
    if (table.limit() < x) throw std::out_of_range("brute_tuple_count: table too small");
    const u64 last = offsets.empty() ? 0 : offsets.back();
    u64 count = 0;
    for (u64 p : table.primes()) {
        if (p > x || p + last > x) break;
        bool ok = true;
        for (u64 b : offsets)
            if (!table.contains(p + b)) {
                ok = false;
                break;
            }
        count += ok;
    }
    return count;
}

// Twin pairs (p - 2, p) with p <= x.
inline u64 brute_twin_count(u64 x, const PrimeTable& table) {
    const u64 two[] = {2};
    return brute_tuple_count(x, two, table);
}

// ---------------------------------------------------------------------------
// Legendre
// ---------------------------------------------------------------------------

// Alternating floor sum phi(x, k) = sum over squarefree d | p_1...p_k of mu(d) [x/d].
// Only d <= x contribute, so the search is pruned there. Returns nullopt when
// more than budget terms would be needed.
inline std::optional<i64> legendre_phi(u64 x, std::span<const u64> primes, u64 budget = kDefaultTermBudget) {
    i64 sum = static_cast<i64>(x);
    u64 terms = 1;
    bool exhausted = false;
    auto rec = [&](auto&& self, std::size_t start, u64 d, i64 sign) -> void {
        for (std::size_t j = start; j < primes.size(); ++j) {
            u64 dp;
            if (!mul_within(d, primes[j], x, dp)) break;
            if (++terms > budget) {
                exhausted = true;
                return;
            }
            sum -= sign * static_cast<i64>(x / dp);
            self(self, j + 1, dp, -sign);
            if (exhausted) return;
        }
    };
    rec(rec, 0, 1, 1);
    if (exhausted) return std::nullopt;
    return sum;
}

inline CountReport legendre_pi(u64 x, const PrimeTable& table, u64 budget = kDefaultTermBudget) {
    if (x < 4) throw std::invalid_argument("legendre_pi: x must be >= 4");
    if (table.limit() < x) throw std::out_of_range("legendre_pi: table does not reach x");
    auto primes = sieving_prime_set(x, table);
    const i64 k = static_cast<i64>(primes.size());
    CountReport r;
    r.x = x;
    r.oracle_value = table.pi(x);
    r.corrections.emplace_back("sieving_primes", k);
    r.corrections.emplace_back("tail", k - 1);
    r.corrections.emplace_back("pk_minus_one_tail", static_cast<i64>(primes.back()) - 1);
    auto phi = legendre_phi(x, primes, budget);
    if (!phi) {
        r.formula_evaluated = false;
        r.formula_value = static_cast<i64>(r.oracle_value);
        r.notes.push_back("term budget exceeded; oracle-only");
        return r;
    }
    r.corrections.emplace_back("phi", *phi);
    r.formula_value = *phi + k - 1;
    return r;
}

inline CountReport legendre_pi(u64 x, u64 budget = kDefaultTermBudget) {
    if (x < 4) throw std::invalid_argument("legendre_pi: x must be >= 4");
    return legendre_pi(x, sieve_primes(x), budget);
}

// ---------------------------------------------------------------------------
// Residue-class survivors
// ---------------------------------------------------------------------------

struct SurvivorBreakdown {
    u64 total = 0;
    i64 x_term = 0;      // empty subset
    i64 with_first = 0;  // subsets containing the first spec prime
    i64 without_first = 0;
    u64 nodes = 0;  // nonempty residue classes visited
    bool complete = true;
};

// Inclusion-exclusion over (prime, forbidden residue) choices. Each node is a
// CRT class (R mod P) with sign (-1)^depth contributing sign * #{n <= x : n = R (P)}.
// Empty classes are pruned with their whole subtree. Once P * p_j > x the child
// class holds at most one value n; summing such a child's subtree telescopes to
// sign * [n avoids the forbidden sets of all later primes], so the children of a
// node past that point contribute -sign * #{members with a hit at a later prime}.
inline SurvivorBreakdown survivor_breakdown(u64 x, const ResidueSpec& spec, u64 budget = kDefaultTermBudget) {
    SurvivorBreakdown out;
    out.x_term = static_cast<i64>(x);
    const auto entries = spec.entries();
    const std::size_t k = entries.size();
    if (k == 0 || x == 0) {
        out.total = x;
        return out;
    }

    std::vector<u64> ps(k);
    for (std::size_t i = 0; i < k; ++i) ps[i] = entries[i].prime;
    auto hit = [&](u64 n, std::size_t j) {
        const u64 r = n % ps[j];
        for (u64 f : entries[j].forbidden)
            if (f == r) return true;
        return false;
    };
    // sieving primes stay below 2^32, so residue products fit in 64 bits
    const bool narrow = ps.back() < (u64{1} << 32);
    auto mm = [narrow](u64 a, u64 b, u64 p) { return narrow ? a * b % p : mulmod(a, b, p); };
    std::vector<u64> forb_suffix(k + 1, 0);
    for (std::size_t j = k; j-- > 0;) forb_suffix[j] = forb_suffix[j + 1] + entries[j].forbidden.size();

    // inverse of p_i modulo p_j, for i < j
    std::vector<std::vector<u64>> inv(k);
    for (std::size_t i = 0; i < k; ++i) {
        inv[i].assign(k, 0);
        for (std::size_t j = i + 1; j < k; ++j) inv[i][j] = invmod(ps[i] % ps[j], ps[j]);
    }
    // per-depth inverse of the running modulus P modulo each p_j
    std::vector<std::vector<u64>> inv_p(k + 1, std::vector<u64>(k, 0));
    std::fill(inv_p[0].begin(), inv_p[0].end(), 1);

    i64 with_first = 0, without_first = 0;
    auto add = [&](bool first, i64 v) { (first ? with_first : without_first) += v; };

    auto rec = [&](auto&& self, std::size_t start, u64 R, u64 P, i64 sign, std::size_t depth, bool first) -> void {
        // first prime index whose child modulus exceeds x
        std::size_t coll = start;
        while (coll < k && static_cast<u128>(P) * ps[coll] <= x) ++coll;

        for (std::size_t j = start; j < coll; ++j) {
            const u64 p = ps[j];
            const u64 child_p = P * p;
            const u64 rm = R % p;
            const bool child_first = first || j == 0;
            auto& next_inv = inv_p[depth + 1];
            for (std::size_t l = j + 1; l < k; ++l) next_inv[l] = mm(inv_p[depth][l], inv[j][l], ps[l]);
            for (u64 r : entries[j].forbidden) {
                const u64 t = mm((r + p - rm) % p, inv_p[depth][j], p);
                const u64 child_r = R + P * t;
                const u64 cnt = count_congruent(x, child_r, child_p);
                if (cnt == 0) continue;
                if (++out.nodes > budget) {
                    out.complete = false;
                    return;
                }
                add(child_first, -sign * static_cast<i64>(cnt));
                self(self, j + 1, child_r, child_p, -sign, depth + 1, child_first);
                if (!out.complete) return;
            }
        }
        if (coll >= k) return;

        // singleton children, grouped either by class member or by (prime, residue)
        const u64 members = count_congruent(x, R % P, P);
        i64 grouped = 0;
        if (members <= forb_suffix[coll]) {
            u64 n = R == 0 ? P : R;
            for (u64 m = 0; m < members; ++m, n += P) {
                for (std::size_t j = coll; j < k; ++j)
                    if (hit(n, j)) {
                        ++grouped;
                        break;
                    }
            }
            out.nodes += members;
        } else {
            for (std::size_t j = coll; j < k; ++j) {
                const u64 p = ps[j];
                const u64 rm = R % p;
                for (u64 r : entries[j].forbidden) {
                    const u64 t = mm((r + p - rm) % p, inv_p[depth][j], p);
                    const u128 v = R + static_cast<u128>(P) * t;
                    if (v == 0 || v > x) continue;
                    bool last = true;
                    for (std::size_t l = j + 1; l < k && last; ++l) last = !hit(static_cast<u64>(v), l);
                    grouped += last;
                }
            }
            out.nodes += forb_suffix[coll];
        }
        add(first, -sign * grouped);
    };
    rec(rec, 0, 0, 1, 1, 0, false);

    if (!out.complete) return out;
    out.with_first = with_first;
    out.without_first = without_first;
    out.total = static_cast<u64>(out.x_term + with_first + without_first);
    return out;
}

inline u64 survivor_count(u64 x, const ResidueSpec& spec) {
    auto b = survivor_breakdown(x, spec, std::numeric_limits<u64>::max());
    return b.total;
}

// Uniform-floor variant: sum over subsets J of (-1)^|J| prod(u_p) [x / prod p].
inline std::optional<i64> uniform_floor_sum(u64 x, const ResidueSpec& spec, i64* with_first = nullptr,
                                            u64 budget = kDefaultTermBudget) {
    const auto entries = spec.entries();
    i64 a = 0, b = 0;
    u64 terms = 0;
    bool exhausted = false;
    auto rec = [&](auto&& self, std::size_t start, u64 d, i64 weight, bool first) -> void {
        for (std::size_t j = start; j < entries.size(); ++j) {
            u64 dp;
            if (!mul_within(d, entries[j].prime, x, dp)) break;
            if (++terms > budget) {
                exhausted = true;
                return;
            }
            const i64 w = -weight * static_cast<i64>(entries[j].forbidden.size());
            const bool f = first || j == 0;
            (f ? a : b) += w * static_cast<i64>(x / dp);
            self(self, j + 1, dp, w, f);
            if (exhausted) return;
        }
    };
    rec(rec, 0, 1, 1, false);
    if (exhausted) return std::nullopt;
    if (with_first) *with_first = a;
    return static_cast<i64>(x) + a + b;
}

// ---------------------------------------------------------------------------
// Twin and k-tuple formulas
// ---------------------------------------------------------------------------

namespace detail {

// Patterns counted by brute force near sqrt(x): returns {entirely <= root, straddling root}.
inline std::pair<u64, u64> small_range_split(u64 x, std::span<const u64> offsets, const PrimeTable& table) {
    const u64 root = isqrt(x);
    const u64 last = offsets.back();
    u64 below = 0, straddle = 0;
    for (u64 p : table.primes()) {
        if (p > root) break;
        if (p + last > x) continue;
        bool ok = true;
        for (u64 b : offsets)
            if (!is_prime(p + b, table)) {
                ok = false;
                break;
            }
        if (!ok) continue;
        (p + last <= root ? below : straddle) += 1;
    }
    return {below, straddle};
}

inline CountReport pattern_formula(u64 x, const AdmissibleTuple& tuple, const PrimeTable& table, u64 budget) {
    auto primes = sieving_prime_set(x, table);
    const auto spec = tuple_spec(primes, tuple);
    CountReport r;
    r.x = x;
    r.oracle_value = brute_tuple_count(x, tuple.offsets(), table);

    const auto [below, straddle] = small_range_split(x, tuple.offsets(), table);
    // survivors n whose smallest member n - b_last is below 2 are not genuine
    i64 spurious = 0;
    for (u64 n = 1; n <= std::min<u64>(x, tuple.diameter() + 1); ++n) spurious += spec.admits(n);

    auto sb = survivor_breakdown(x, spec, budget);
    if (!sb.complete) {
        r.formula_evaluated = false;
        r.formula_value = static_cast<i64>(r.oracle_value);
        r.notes.push_back("term budget exceeded; oracle-only");
        return r;
    }
    r.corrections.emplace_back("survivors", static_cast<i64>(sb.total));
    r.corrections.emplace_back("A", sb.with_first);
    r.corrections.emplace_back("B", sb.without_first);
    r.corrections.emplace_back("unit", -spurious);
    r.corrections.emplace_back("small_range", static_cast<i64>(below));
    r.corrections.emplace_back("straddle", static_cast<i64>(straddle));
    r.formula_value = static_cast<i64>(sb.total) - spurious + static_cast<i64>(below + straddle);

    i64 pa = 0;
    if (auto approx = uniform_floor_sum(x, spec, &pa, budget)) {
        r.corrections.emplace_back("uniform_identity", *approx + static_cast<i64>(below));
        r.corrections.emplace_back("uniform_A", pa);
        r.corrections.emplace_back("uniform_B", *approx - static_cast<i64>(x) - pa);
    }
    return r;
}

}  // namespace detail

inline CountReport twin_count_formula(u64 x, const PrimeTable& table, u64 budget = kDefaultTermBudget) {
    if (x < 9) throw std::invalid_argument("twin_count_formula: x must be >= 9");
    if (table.limit() < x) throw std::out_of_range("twin_count_formula: table does not reach x");
    return detail::pattern_formula(x, AdmissibleTuple({2}), table, budget);
}

inline CountReport twin_count_formula(u64 x, u64 budget = kDefaultTermBudget) {
    if (x < 9) throw std::invalid_argument("twin_count_formula: x must be >= 9");
    return twin_count_formula(x, sieve_primes(x), budget);
}

// Twin pairs (p - 2, p) with p <= x, listed.
inline std::vector<std::pair<u64, u64>> twin_pairs(u64 x, const PrimeTable& table) {
    std::vector<std::pair<u64, u64>> out;
    for (u64 p : table.primes()) {
        if (p + 2 > x) break;
        if (table.contains(p + 2)) out.emplace_back(p, p + 2);
    }
    return out;
}

inline CountReport tuple_count_formula(u64 x, const AdmissibleTuple& tuple, const PrimeTable& table,
                                       u64 budget = kDefaultTermBudget) {
    if (x < 4) throw std::invalid_argument("tuple_count_formula: x must be >= 4");
    if (table.limit() < x) throw std::out_of_range("tuple_count_formula: table does not reach x");
    return detail::pattern_formula(x, tuple, table, budget);
}

inline CountReport tuple_count_formula(u64 x, const AdmissibleTuple& tuple, u64 budget = kDefaultTermBudget) {
    if (x < 4) throw std::invalid_argument("tuple_count_formula: x must be >= 4");
    return tuple_count_formula(x, tuple, sieve_primes(x), budget);
}

// ---------------------------------------------------------------------------
// Multiplicative order and exponent sieves
// ---------------------------------------------------------------------------

inline u64 multiplicative_order(i64 a, u64 p) {
    if (!is_prime(p)) throw std::invalid_argument("multiplicative_order: modulus must be prime");
    const u64 base = mod_floor(a, p);
    if (base == 0) throw std::invalid_argument("multiplicative_order: p divides a");
    for (u64 d : divisors(p - 1))
        if (powmod(base, d, p) == 1) return d;
    throw std::logic_error("multiplicative_order: no order found");
}

// Number of q in [1, u] with p | 2^q - 1.
inline u64 mersenne_prime_hits(u64 u, u64 p) { return u / multiplicative_order(2, p); }

// Number of q in [1, u] with p | 2^q + 1.
inline u64 fermat_prime_hits(u64 u, u64 p) {
    const u64 d = multiplicative_order(2, p);
    if (d % 2) return 0;
    return count_congruent(u, d / 2, d);
}

inline constexpr u64 kMaxExponentSieveX = u64{1} << 50;

namespace detail {

// Order of 2 mod odd prime p when it is <= bound, else 0.
inline u64 small_order_of_two(u64 p, u64 bound) {
    u64 v = 1;
    for (u64 d = 1; d <= bound; ++d) {
        v = (v * 2) % p;
        if (v == 1) return d;
    }
    return 0;
}

inline u64 exponent_of_x(u64 x) { return bit_width(x) - 1; }

inline void check_exponent_x(u64 x, const char* who) {
    if (x < 4) throw std::invalid_argument(std::string(who) + ": x must be >= 4");
    if (x > kMaxExponentSieveX) throw std::invalid_argument(std::string(who) + ": x above 2^50 is not supported");
}

inline bool mersenne_is_prime(u64 q) { return q < 64 && is_prime((u64{1} << q) - 1); }
inline bool fermat_is_prime(u64 q) { return q < 63 && is_prime((u64{1} << q) + 1); }

}  // namespace detail

inline CountReport mersenne_exact_count(u64 x) {
    detail::check_exponent_x(x, "mersenne_exact_count");
    const u64 u = detail::exponent_of_x(x);
    const auto table = sieve_primes(isqrt(x));
    std::vector<u64> orders;
    for (u64 p : table.primes()) {
        if (p == 2) continue;
        if (u64 d = detail::small_order_of_two(p, u)) orders.push_back(d);
    }
    std::sort(orders.begin(), orders.end());

    // sum over subsets J of (-1)^|J| [u / lcm(ord_J)]; lcm > u ends a branch
    i64 sieve = static_cast<i64>(u);
    auto rec = [&](auto&& self, std::size_t start, u64 l, i64 sign) -> void {
        for (std::size_t j = start; j < orders.size(); ++j) {
            const u64 nl = std::lcm(l, orders[j]);
            if (nl > u) continue;
            sieve -= sign * static_cast<i64>(u / nl);
            self(self, j + 1, nl, -sign);
        }
    };
    rec(rec, 0, 1, 1);

    CountReport r;
    r.x = x;
    i64 lambda = 0;
    for (u64 q = 1; q <= u; ++q) {
        const bool prime = detail::mersenne_is_prime(q);
        r.oracle_value += prime;
        if (prime && ((u64{1} << q) - 1) <= isqrt(x)) ++lambda;
    }
    r.corrections.emplace_back("sieve_count", sieve);
    r.corrections.emplace_back("unit", -1);
    r.corrections.emplace_back("lambda", lambda);
    r.formula_value = sieve - 1 + lambda;
    r.notes.push_back("exponents q range over all integers 1..u; p = 2 excluded from the sieve");
    return r;
}

inline CountReport fermat_exact_count(u64 x) {
    detail::check_exponent_x(x, "fermat_exact_count");
    const u64 u = detail::exponent_of_x(x);
    const auto table = sieve_primes(isqrt(x));
    std::vector<u64> orders;  // even orders d with d/2 <= u
    for (u64 p : table.primes()) {
        if (p == 2) continue;
        const u64 d = detail::small_order_of_two(p, 2 * u);
        if (d != 0 && d % 2 == 0) orders.push_back(d);
    }
    std::sort(orders.begin(), orders.end());

    // q = d/2 (mod d) for several d is solvable iff all d share the same 2-adic
    // valuation; the joint class is then q = L/2 (mod L), L = lcm
    i64 sieve = static_cast<i64>(u);
    auto rec = [&](auto&& self, std::size_t start, u64 l, i64 sign) -> void {
        for (std::size_t j = start; j < orders.size(); ++j) {
            if (l != 1 && __builtin_ctzll(l) != __builtin_ctzll(orders[j])) continue;
            const u64 nl = std::lcm(l, orders[j]);
            if (nl / 2 > u) continue;
            sieve -= sign * static_cast<i64>(count_congruent(u, nl / 2, nl));
            self(self, j + 1, nl, -sign);
        }
    };
    rec(rec, 0, 1, 1);

    CountReport r;
    r.x = x;
    i64 lambda = 0;
    for (u64 q = 1; q <= u; ++q) {
        const bool prime = detail::fermat_is_prime(q);
        r.oracle_value += prime;
        if (prime && ((u64{1} << q) + 1) <= isqrt(x)) ++lambda;
    }
    // 2^u + 1 may exceed x by one and be composite with no factor <= sqrt(x)
    i64 composite = 0;
    const u64 top = (u64{1} << u) + 1;
    if (top > x && !is_prime(top)) {
        bool clean = true;
        for (u64 p : table.primes())
            if (p != 2 && top % p == 0) clean = false;
        composite = clean;
    }
    r.corrections.emplace_back("sieve_count", sieve);
    r.corrections.emplace_back("lambda", lambda);
    r.corrections.emplace_back("composite_survivor", -composite);
    r.corrections.emplace_back("with_unit_correction", sieve + lambda - 1);
    r.formula_value = sieve + lambda - composite;
    r.notes.push_back("no unit correction: q = 1 gives the prime 3");
    return r;
}

}  // namespace primelab
