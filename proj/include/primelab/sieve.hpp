// sieve.hpp
// Prime tables built by a segmented odd-only sieve of Eratosthenes, plus the
// primality certificate and residue-class counting that the counting and
// search modules build on.
//
// Membership encoding (shared with the on-disk cache):
//   bit i (LSB-first within byte i / 8)  ->  odd integer 2*i + 1
// 2 is stored only in the prime list.

#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "primelab/arith.hpp"

namespace primelab {

inline constexpr u64 kDefaultSegmentBits = u64{1} << 20;

class PrimeTable;
inline PrimeTable sieve_primes(u64 limit, u64 segment_bits = kDefaultSegmentBits);

class PrimeTable {
public:
    PrimeTable() = default;

    u64 limit() const { return limit_; }
    std::span<const u64> primes() const { return primes_; }
    std::size_t size() const { return primes_.size(); }
    const std::vector<std::uint8_t>& bitmap() const { return bitmap_; }

    // Primality lookup for 0 <= n <= limit().
    bool contains(u64 n) const {
        if (n > limit_) throw std::out_of_range("PrimeTable::contains: n exceeds table limit");
        if (n == 2) return true;
        if (n % 2 == 0) return false;
        u64 bit = n / 2;
        return (bitmap_[bit / 8] >> (bit % 8)) & 1U;
    }

    // Number of primes <= x, for x <= limit().
    u64 pi(u64 x) const {
        if (x > limit_) throw std::out_of_range("PrimeTable::pi: x exceeds table limit");
        return static_cast<u64>(std::upper_bound(primes_.begin(), primes_.end(), x) - primes_.begin());
    }

    // Primes p <= x as a view into the table (x may exceed limit()).
    std::span<const u64> primes_up_to(u64 x) const {
        auto end = std::upper_bound(primes_.begin(), primes_.end(), x);
        return {primes_.data(), static_cast<std::size_t>(end - primes_.begin())};
    }

    friend bool operator==(const PrimeTable&, const PrimeTable&) = default;

    // Bytes needed for the membership bitmap of a given limit.
    static constexpr u64 bitmap_bytes(u64 limit) { return (limit + 1 + 15) / 16; }

    // Rebuilds the prime list from a bitmap. Used by the cache loader.
    static PrimeTable from_bitmap(u64 limit, std::vector<std::uint8_t> bitmap) {
        PrimeTable t;
        t.limit_ = limit;
        t.bitmap_ = std::move(bitmap);
        if (limit >= 2) t.primes_.push_back(2);
        for (u64 byte = 0; byte < t.bitmap_.size(); ++byte) {
            std::uint8_t b = t.bitmap_[byte];
            while (b) {
                unsigned bit = static_cast<unsigned>(__builtin_ctz(b));
                b &= static_cast<std::uint8_t>(b - 1);
                t.primes_.push_back(2 * (byte * 8 + bit) + 1);
            }
        }
        return t;
    }

private:
    friend PrimeTable sieve_primes(u64, u64);

    u64 limit_ = 0;
    std::vector<u64> primes_;
    std::vector<std::uint8_t> bitmap_ = std::vector<std::uint8_t>(1, 0);
};

// Segmented sieve over odd numbers. Each segment covers segment_bits odd
// integers; base primes up to sqrt(limit) come from a small plain sieve.
inline PrimeTable sieve_primes(u64 limit, u64 segment_bits) {
    PrimeTable t;
    t.limit_ = limit;
    t.bitmap_.assign(PrimeTable::bitmap_bytes(limit), 0);
    if (limit < 2) return t;
    t.primes_.push_back(2);
    if (limit < 3) return t;
    if (segment_bits == 0) throw std::invalid_argument("sieve_primes: segment size must be positive");

    const u64 root = isqrt(limit);
    std::vector<bool> small(root + 1, true);
    std::vector<u64> base;
    for (u64 i = 3; i <= root; i += 2) {
        if (!small[i]) continue;
        base.push_back(i);
        for (u64 j = i * i; j <= root; j += 2 * i) small[j] = false;
    }

    // odd integers 2i+1 for i in [1, last_index]; index 0 is the unit 1
    const u64 last_index = (limit - 1) / 2;
    std::vector<std::uint8_t> seg;
    for (u64 lo = 1; lo <= last_index; lo += segment_bits) {
        const u64 hi = std::min(last_index, lo + segment_bits - 1);
        seg.assign(hi - lo + 1, 1);
        const u64 lo_val = 2 * lo + 1;
        const u64 hi_val = 2 * hi + 1;
        for (u64 p : base) {
            if (p * p > hi_val) break;
            u64 start = std::max(p * p, (lo_val + p - 1) / p * p);
            if (start % 2 == 0) start += p;
            for (u64 m = start; m <= hi_val; m += 2 * p) seg[(m - 1) / 2 - lo] = 0;
        }
        for (u64 i = 0; i < seg.size(); ++i) {
            if (!seg[i]) continue;
            const u64 idx = lo + i;
            t.bitmap_[idx / 8] |= static_cast<std::uint8_t>(1U << (idx % 8));
            t.primes_.push_back(2 * idx + 1);
        }
    }
    return t;
}

// Deterministic trial division. Every verdict is a certificate: n is prime
// iff no prime <= sqrt(n) divides it.
inline bool is_prime(u64 n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0 || n % 3 == 0) return false;
    for (u64 d = 5; d <= n / d; d += 6) {
        if (n % d == 0 || n % (d + 2) == 0) return false;
    }
    return true;
}

// Table-assisted variant: direct lookup when n is covered, trial division by
// table primes when sqrt(n) is covered, plain trial division otherwise.
inline bool is_prime(u64 n, const PrimeTable& table) {
    if (n <= table.limit()) return table.contains(n);
    if (isqrt(n) <= table.limit()) {
        for (u64 p : table.primes()) {
            if (p > n / p) break;
            if (n % p == 0) return false;
        }
        return true;
    }
    return is_prime(n);
}

// All primes p with p*p <= x (the first k primes with p_k^2 <= x < p_{k+1}^2).
inline std::vector<u64> sieving_prime_set(u64 x) {
    if (x < 4) throw std::invalid_argument("sieving_prime_set: x must be >= 4");
    PrimeTable t = sieve_primes(isqrt(x));
    auto ps = t.primes();
    return {ps.begin(), ps.end()};
}

inline std::span<const u64> sieving_prime_set(u64 x, const PrimeTable& table) {
    if (x < 4) throw std::invalid_argument("sieving_prime_set: x must be >= 4");
    const u64 root = isqrt(x);
    if (root > table.limit()) throw std::out_of_range("sieving_prime_set: table does not reach sqrt(x)");
    return table.primes_up_to(root);
}

// |{n in [1, x] : n = r (mod m)}|
constexpr u64 count_congruent(u64 x, u64 r, u64 m) {
    if (m == 0) throw std::invalid_argument("count_congruent: modulus must be positive");
    if (r >= m) throw std::invalid_argument("count_congruent: residue must be < modulus");
    if (r == 0) return x / m;
    if (r > x) return 0;
    return (x - r) / m + 1;
}

}  // namespace primelab
