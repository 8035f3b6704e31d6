// crt.hpp
// Chinese remainder solving with arbitrary-precision moduli and ascending
// enumeration of every integer whose residues lie in per-prime allowed sets.

#pragma once

#include <algorithm>
#include <iterator>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "primelab/arith.hpp"

namespace primelab {

struct Congruence {
    u64 residue;
    u64 modulus;
};

using CongruenceSystem = std::vector<Congruence>;

struct CrtSolution {
    BigInt value;    // canonical representative in [0, modulus)
    BigInt modulus;  // product of the moduli
};

// Raised when two moduli share a factor.
class NonCoprimeModuli : public std::domain_error {
public:
    NonCoprimeModuli(u64 a, u64 b)
        : std::domain_error("moduli " + std::to_string(a) + " and " + std::to_string(b) + " are not coprime"),
          first(a),
          second(b) {}
    u64 first;
    u64 second;
};

inline CrtSolution crt_solve(const CongruenceSystem& system) {
    if (system.empty()) throw std::invalid_argument("crt_solve: empty system");
    for (const auto& c : system) {
        if (c.modulus == 0) throw std::invalid_argument("crt_solve: modulus must be positive");
        if (c.residue >= c.modulus) throw std::invalid_argument("crt_solve: residue must be < modulus");
    }
    for (std::size_t i = 0; i < system.size(); ++i)
        for (std::size_t j = i + 1; j < system.size(); ++j)
            if (std::gcd(system[i].modulus, system[j].modulus) != 1)
                throw NonCoprimeModuli(system[i].modulus, system[j].modulus);

    BigInt value = 0, modulus = 1;
    for (const auto& c : system) {
        const u64 m = c.modulus;
        const u64 vm = static_cast<u64>(value % m);
        const u64 mm = static_cast<u64>(modulus % m);
        const u64 t = mulmod((c.residue + m - vm) % m, invmod(mm, m), m);
        value += modulus * t;
        modulus *= m;
    }
    for (const auto& c : system)
        if (static_cast<u64>(value % c.modulus) != c.residue)
            throw std::logic_error("crt_solve: verification failed");
    return {value, modulus};
}

// Ordered (modulus, allowed residues) entries with pairwise coprime moduli.
class ChoiceSpec {
public:
    struct Entry {
        u64 prime;
        std::vector<u64> allowed;  // sorted, nonempty
    };

    ChoiceSpec() = default;

    explicit ChoiceSpec(std::vector<Entry> entries) : entries_(std::move(entries)) {
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            auto& e = entries_[i];
            if (e.prime < 2) throw std::invalid_argument("ChoiceSpec: modulus must be >= 2");
            std::sort(e.allowed.begin(), e.allowed.end());
            e.allowed.erase(std::unique(e.allowed.begin(), e.allowed.end()), e.allowed.end());
            if (e.allowed.empty())
                throw std::invalid_argument("ChoiceSpec: empty allowed set for " + std::to_string(e.prime));
            if (e.allowed.back() >= e.prime) throw std::invalid_argument("ChoiceSpec: residue out of range");
            for (std::size_t j = 0; j < i; ++j)
                if (std::gcd(entries_[j].prime, e.prime) != 1) throw NonCoprimeModuli(entries_[j].prime, e.prime);
        }
    }

    std::span<const Entry> entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }

    bool admits(u64 n) const {
        for (const auto& e : entries_)
            if (!std::binary_search(e.allowed.begin(), e.allowed.end(), n % e.prime)) return false;
        return true;
    }

    BigInt modulus() const {
        BigInt m = 1;
        for (const auto& e : entries_) m *= e.prime;
        return m;
    }

private:
    std::vector<Entry> entries_;
};

// Number of CRT classes: product of allowed-set sizes.
inline BigInt choice_count(const ChoiceSpec& spec) {
    BigInt c = 1;
    for (const auto& e : spec.entries()) c *= e.allowed.size();
    return c;
}

enum class EnumerationMode { automatic, product, range_scan };

inline constexpr u64 kProductModeLimit = 1'000'000;

// Ascending stream of n in [lo, hi] admitted by a ChoiceSpec.
//
// Product mode builds the admissible residues modulo M once (dropping partial
// residues that already exceed hi) and walks them period by period. Range-scan
// mode steps through [lo, hi] keeping each n mod p incrementally.
class CrtStream {
public:
    CrtStream(const ChoiceSpec& spec, u64 lo, u64 hi, EnumerationMode mode = EnumerationMode::automatic)
        : spec_(spec), lo_(lo), hi_(hi) {
        if (hi < lo) throw std::invalid_argument("crt_enumerate: hi must be >= lo");
        if (mode == EnumerationMode::automatic)
            mode = choice_count(spec) <= kProductModeLimit ? EnumerationMode::product : EnumerationMode::range_scan;
        mode_ = mode;
        if (mode_ == EnumerationMode::product)
            init_product();
        else
            init_scan();
    }

    EnumerationMode mode() const { return mode_; }

    std::optional<u64> next() {
        return mode_ == EnumerationMode::product ? next_product() : next_scan();
    }

    std::vector<u64> collect() {
        std::vector<u64> out;
        while (auto v = next()) out.push_back(*v);
        return out;
    }

    class iterator {
    public:
        using iterator_category = std::input_iterator_tag;
        using value_type = u64;
        using difference_type = std::ptrdiff_t;
        using pointer = const u64*;
        using reference = const u64&;

        iterator() = default;
        explicit iterator(CrtStream* s) : s_(s) { advance(); }
        reference operator*() const { return cur_; }
        iterator& operator++() {
            advance();
            return *this;
        }
        void operator++(int) { advance(); }
        friend bool operator==(const iterator& a, const iterator& b) { return a.s_ == b.s_; }

    private:
        void advance() {
            if (auto v = s_->next())
                cur_ = *v;
            else
                s_ = nullptr;
        }
        CrtStream* s_ = nullptr;
        u64 cur_ = 0;
    };

    iterator begin() { return iterator(this); }
    iterator end() { return iterator(); }

private:
    void init_product() {
        // residues of the full system, pruned at hi while the running modulus grows
        std::vector<u64> res{0};
        u128 mod = 1;
        bool capped = false;  // running modulus already above hi
        for (const auto& e : spec_.entries()) {
            const u64 p = e.prime;
            std::vector<u64> next;
            next.reserve(res.size() * e.allowed.size());
            if (!capped) {
                const u64 m = static_cast<u64>(mod);
                const u64 inv = invmod(m % p, p);
                for (u64 r : res)
                    for (u64 a : e.allowed) {
                        const u64 t = mulmod((a + p - r % p) % p, inv, p);
                        const u128 v = r + static_cast<u128>(m) * t;
                        if (v <= hi_) next.push_back(static_cast<u64>(v));
                    }
                mod *= p;
                capped = mod > hi_;
            } else {
                // any lift adds a multiple of a modulus > hi, so only r itself survives
                for (u64 r : res)
                    if (std::binary_search(e.allowed.begin(), e.allowed.end(), r % p)) next.push_back(r);
            }
            res = std::move(next);
        }
        std::sort(res.begin(), res.end());
        residues_ = std::move(res);
        period_ = capped ? 0 : static_cast<u64>(mod);
        if (period_ == 0) {
            block_ = 0;
        } else {
            block_ = lo_ / period_ * period_;
        }
        index_ = 0;
    }

    std::optional<u64> next_product() {
        while (!done_) {
            if (index_ == residues_.size()) {
                if (period_ == 0 || residues_.empty() || hi_ - block_ < period_) {
                    done_ = true;
                    break;
                }
                block_ += period_;
                index_ = 0;
                continue;
            }
            const u128 v = static_cast<u128>(block_) + residues_[index_++];
            if (v > hi_) {
                done_ = true;
                break;
            }
            if (v >= lo_) return static_cast<u64>(v);
        }
        return std::nullopt;
    }

    void init_scan() {
        const auto entries = spec_.entries();
        rem_.resize(entries.size());
        table_.resize(entries.size());
        for (std::size_t i = 0; i < entries.size(); ++i) {
            rem_[i] = lo_ % entries[i].prime;
            auto& t = table_[i];
            t.assign(entries[i].prime, 0);
            for (u64 a : entries[i].allowed) t[a] = 1;
        }
        cur_ = lo_;
    }

    std::optional<u64> next_scan() {
        const auto entries = spec_.entries();
        while (!done_) {
            bool ok = true;
            for (std::size_t i = 0; i < rem_.size(); ++i)
                if (!table_[i][rem_[i]]) {
                    ok = false;
                    break;
                }
            const u64 n = cur_;
            if (cur_ == hi_)
                done_ = true;
            else {
                ++cur_;
                for (std::size_t i = 0; i < rem_.size(); ++i)
                    if (++rem_[i] == entries[i].prime) rem_[i] = 0;
            }
            if (ok) return n;
        }
        return std::nullopt;
    }

    const ChoiceSpec& spec_;
    u64 lo_, hi_;
    EnumerationMode mode_ = EnumerationMode::automatic;
    bool done_ = false;

    std::vector<u64> residues_;
    u64 period_ = 0;
    u64 block_ = 0;
    std::size_t index_ = 0;

    std::vector<u64> rem_;
    std::vector<std::vector<char>> table_;
    u64 cur_ = 0;
};

inline std::vector<u64> crt_enumerate(const ChoiceSpec& spec, u64 lo, u64 hi,
                                      EnumerationMode mode = EnumerationMode::automatic) {
    CrtStream s(spec, lo, hi, mode);
    return s.collect();
}

}  // namespace primelab
