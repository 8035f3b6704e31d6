// residue.hpp
// Residue bookkeeping: periodicity of arithmetic progressions mod p,
// forbidden residue sets for twin / Sophie Germain / k-tuple patterns,
// admissibility of offset tuples, and remainder sequences.

#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "primelab/arith.hpp"
#include "primelab/sieve.hpp"

namespace primelab {

using ResidueSet = std::vector<u64>;  // sorted, deduplicated

namespace detail {

inline void require_prime(u64 p, const char* who) {
    if (!is_prime(p)) throw std::invalid_argument(std::string(who) + ": modulus " + std::to_string(p) + " is not prime");
}

inline ResidueSet normalize(ResidueSet s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

}  // namespace detail

// Per-prime forbidden residue sets. Primes strictly increasing, each set a
// proper subset of Z/p.
class ResidueSpec {
public:
    struct Entry {
        u64 prime;
        ResidueSet forbidden;
        friend bool operator==(const Entry&, const Entry&) = default;
    };

    ResidueSpec() = default;

    explicit ResidueSpec(std::vector<Entry> entries) : entries_(std::move(entries)) {
        u64 prev = 0;
        for (auto& e : entries_) {
            if (e.prime <= prev) throw std::invalid_argument("ResidueSpec: primes must be strictly increasing");
            prev = e.prime;
            e.forbidden = detail::normalize(std::move(e.forbidden));
            for (u64 r : e.forbidden)
                if (r >= e.prime) throw std::invalid_argument("ResidueSpec: residue out of range");
            if (e.forbidden.size() >= e.prime)
                throw std::invalid_argument("ResidueSpec: every residue of " + std::to_string(e.prime) + " is forbidden");
        }
    }

    std::span<const Entry> entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

    // true when n avoids every forbidden class
    bool admits(u64 n) const {
        for (const auto& e : entries_) {
            u64 r = n % e.prime;
            if (std::binary_search(e.forbidden.begin(), e.forbidden.end(), r)) return false;
        }
        return true;
    }

    friend bool operator==(const ResidueSpec&, const ResidueSpec&) = default;

private:
    std::vector<Entry> entries_;
};

// ---------------------------------------------------------------------------
// Arithmetic progressions a + k*b reduced mod p
// ---------------------------------------------------------------------------

struct ApResidues {
    enum class Kind { permutation, constant };
    Kind kind;
    std::vector<u64> cycle;  // length p for permutation, one value for constant
    u64 period() const { return kind == Kind::permutation ? cycle.size() : 1; }
};

inline ApResidues ap_residue_sequence(i64 a, u64 b, u64 p) {
    detail::require_prime(p, "ap_residue_sequence");
    if (b == 0) throw std::invalid_argument("ap_residue_sequence: step must be positive");
    const u64 a0 = mod_floor(a, p);
    if (b % p == 0) return {ApResidues::Kind::constant, {a0}};
    std::vector<u64> cycle(p);
    u64 v = a0, step = b % p;
    for (u64 k = 0; k < p; ++k) {
        cycle[k] = v;
        v = (v + step) % p;
    }
    return {ApResidues::Kind::permutation, std::move(cycle)};
}

// ---------------------------------------------------------------------------
// Forbidden sets
// ---------------------------------------------------------------------------

// Upper member n of (n-2, n) must avoid 0 and 2 mod p.
inline ResidueSet twin_forbidden(u64 p) {
    detail::require_prime(p, "twin_forbidden");
    return detail::normalize({0, 2 % p});
}

// p of (p, 2p+1) must avoid 0 and the beta with 2*beta + 1 = 0 (mod p).
inline ResidueSet sophie_forbidden(u64 p) {
    detail::require_prime(p, "sophie_forbidden");
    if (p == 2) return {0};
    return {0, (p - 1) / 2};
}

class AdmissibleTuple;
bool is_admissible(std::span<const u64> offsets);

// Offsets b_1 < ... < b_{k-1} whose pattern {0, b_1, ...} misses a residue
// class modulo every prime q <= k.
class AdmissibleTuple {
public:
    explicit AdmissibleTuple(std::vector<u64> offsets) : offsets_(std::move(offsets)) {
        if (offsets_.empty()) throw std::invalid_argument("AdmissibleTuple: need at least one offset");
        if (!is_admissible(offsets_)) throw std::invalid_argument("AdmissibleTuple: offsets are not admissible");
    }

    std::span<const u64> offsets() const { return offsets_; }
    std::size_t k() const { return offsets_.size() + 1; }
    u64 diameter() const { return offsets_.back(); }

    std::string to_string() const {
        std::string s = "(";
        for (std::size_t i = 0; i < offsets_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(offsets_[i]);
        }
        return s + ")";
    }

    friend bool operator==(const AdmissibleTuple&, const AdmissibleTuple&) = default;

private:
    std::vector<u64> offsets_;
};

inline bool is_admissible(std::span<const u64> offsets) {
    u64 prev = 0;
    for (u64 b : offsets) {
        if (b <= prev) throw std::invalid_argument("is_admissible: offsets must be strictly increasing positive");
        prev = b;
    }
    const u64 k = offsets.size() + 1;
    for (u64 q = 2; q <= k; ++q) {
        if (!is_prime(q)) continue;
        std::vector<bool> hit(q, false);
        hit[0] = true;
        for (u64 b : offsets) hit[b % q] = true;
        if (std::all_of(hit.begin(), hit.end(), [](bool h) { return h; })) return false;
    }
    return true;
}

// Shifted variable n = p + b_{k-1}: the members p + b are n - (b_{k-1} - b),
// so n must avoid (b_{k-1} - b) mod q for b in {0} U offsets.
inline ResidueSet tuple_forbidden(const AdmissibleTuple& tuple, u64 p) {
    detail::require_prime(p, "tuple_forbidden");
    const u64 last = tuple.diameter();
    ResidueSet s{last % p};
    for (u64 b : tuple.offsets()) s.push_back((last - b) % p);
    return detail::normalize(std::move(s));
}

// All admissible (k-1)-tuples of minimal diameter; exhaustive over offsets <= 2k^2.
inline std::vector<AdmissibleTuple> tight_tuples(std::size_t k) {
    if (k < 2 || k > 5) throw std::invalid_argument("tight_tuples: k must be in [2, 5]");
    const u64 bound = 2 * k * k;
    const std::size_t len = k - 1;
    std::vector<std::vector<u64>> best;
    u64 best_diameter = UINT64_MAX;
    std::vector<u64> cur;
    auto rec = [&](auto&& self, u64 start) -> void {
        if (cur.size() == len) {
            if (cur.back() > best_diameter || !is_admissible(cur)) return;
            if (cur.back() < best_diameter) {
                best_diameter = cur.back();
                best.clear();
            }
            best.push_back(cur);
            return;
        }
        for (u64 b = start; b <= bound && b <= best_diameter; ++b) {
            cur.push_back(b);
            self(self, b + 1);
            cur.pop_back();
        }
    };
    rec(rec, 1);
    std::vector<AdmissibleTuple> out;
    for (auto& t : best) out.emplace_back(std::move(t));
    return out;
}

// ---------------------------------------------------------------------------
// Remainder sequences
// ---------------------------------------------------------------------------

struct RemainderSequence {
    i64 subject;
    std::vector<u64> moduli;
    std::vector<u64> remainders;
};

inline RemainderSequence remainder_sequence(i64 x, std::span<const u64> primes) {
    if (primes.empty()) throw std::invalid_argument("remainder_sequence: need at least one prime");
    RemainderSequence seq{x, {primes.begin(), primes.end()}, {}};
    for (u64 p : primes) {
        detail::require_prime(p, "remainder_sequence");
        seq.remainders.push_back(mod_floor(x, p));
    }
    return seq;
}

// Forbidden spec over a list of primes, built from a per-prime rule.
template <typename Rule>
ResidueSpec make_spec(std::span<const u64> primes, Rule&& rule) {
    std::vector<ResidueSpec::Entry> entries;
    entries.reserve(primes.size());
    for (u64 p : primes) entries.push_back({p, rule(p)});
    return ResidueSpec(std::move(entries));
}

inline ResidueSpec twin_spec(std::span<const u64> primes) { return make_spec(primes, twin_forbidden); }
inline ResidueSpec sophie_spec(std::span<const u64> primes) { return make_spec(primes, sophie_forbidden); }
inline ResidueSpec prime_spec(std::span<const u64> primes) {
    return make_spec(primes, [](u64) { return ResidueSet{0}; });
}
inline ResidueSpec tuple_spec(std::span<const u64> primes, const AdmissibleTuple& tuple) {
    return make_spec(primes, [&](u64 p) { return tuple_forbidden(tuple, p); });
}

}  // namespace primelab
