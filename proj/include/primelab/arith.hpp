// arith.hpp
// Integer helpers shared by every module: exact square roots, overflow-safe
// modular multiplication and exponentiation, gcd/inverse, and the
// arbitrary-precision integer type used for CRT moduli.

#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace primelab {

using BigInt = boost::multiprecision::cpp_int;

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

inline std::string to_string(const BigInt& v) { return v.str(); }

// floor(sqrt(n)), exact for the whole 64-bit range
constexpr u64 isqrt(u64 n) {
    if (n < 2) return n;
    // Newton iteration from above
    u64 x = n;
    u64 y = x / 2 + 1;
    while (y < x) {
        x = y;
        y = (x + n / x) / 2;
    }
    return x;
}

// Least nonnegative residue of a (possibly negative) value.
constexpr u64 mod_floor(i64 a, u64 m) {
    if (a >= 0) return static_cast<u64>(a) % m;
    u64 neg = (static_cast<u64>(-(a + 1)) % m);  // avoids overflow on INT64_MIN
    return (m - 1 - neg);
}

constexpr u64 mulmod(u64 a, u64 b, u64 m) {
    return static_cast<u64>((static_cast<u128>(a) * b) % m);
}

constexpr u64 powmod(u64 base, u64 exp, u64 m) {
    if (m == 1) return 0;
    u64 result = 1;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

// Modular inverse of a mod m via extended Euclid; requires gcd(a, m) == 1.
inline u64 invmod(u64 a, u64 m) {
    if (m == 1) return 0;
    i128 t = 0, new_t = 1;
    i128 r = m, new_r = a % m;
    while (new_r != 0) {
        i128 q = r / new_r;
        i128 tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (r != 1) throw std::invalid_argument("invmod: argument is not invertible");
    if (t < 0) t += m;
    return static_cast<u64>(t);
}

// Writes a * b and returns true when the product does not exceed limit.
constexpr bool mul_within(u64 a, u64 b, u64 limit, u64& out) {
    if (a != 0 && b > limit / a) return false;
    out = a * b;
    return out <= limit;
}

// Number of bits needed to represent n, i.e. floor(log2 n) + 1 for n > 0.
constexpr unsigned bit_width(u64 n) {
    unsigned w = 0;
    while (n) {
        ++w;
        n >>= 1;
    }
    return w;
}

// Prime factors of n (distinct, ascending) by trial division.
inline std::vector<u64> distinct_prime_factors(u64 n) {
    std::vector<u64> out;
    if (n < 2) return out;
    if (n % 2 == 0) {
        out.push_back(2);
        while (n % 2 == 0) n /= 2;
    }
    for (u64 d = 3; d <= n / d; d += 2) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

// All positive divisors of n in ascending order.
inline std::vector<u64> divisors(u64 n) {
    std::vector<u64> small, large;
    for (u64 d = 1; d <= n / d; ++d) {
        if (n % d == 0) {
            small.push_back(d);
            if (d != n / d) large.push_back(n / d);
        }
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

}  // namespace primelab
