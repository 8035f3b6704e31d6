// Independent brute-force oracles and frozen reference values. Nothing here
// uses the library; the frozen values were computed separately by direct
// enumeration.

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace oracle {

using u64 = std::uint64_t;

inline bool prime(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Sieve flags for [0, n].
inline std::vector<char> flags(u64 n) {
    std::vector<char> f(n + 1, 1);
    f[0] = 0;
    if (n >= 1) f[1] = 0;
    for (u64 i = 2; i * i <= n; ++i)
        if (f[i])
            for (u64 j = i * i; j <= n; j += i) f[j] = 0;
    return f;
}

inline std::vector<u64> prefix_pi(u64 n) {
    const auto f = flags(n);
    std::vector<u64> pi(n + 1, 0);
    for (u64 i = 1; i <= n; ++i) pi[i] = pi[i - 1] + (f[i] ? 1 : 0);
    return pi;
}

// p <= x with p + b prime and p + b <= x for every offset b.
inline u64 tuple_count(u64 x, const std::vector<u64>& offsets) {
    const auto f = flags(x);
    u64 c = 0;
    for (u64 p = 2; p + offsets.back() <= x; ++p) {
        if (!f[p]) continue;
        bool ok = true;
        for (u64 b : offsets) ok = ok && f[p + b];
        c += ok;
    }
    return c;
}

inline std::vector<std::pair<u64, u64>> goldbach_pairs(u64 two_n) {
    std::vector<std::pair<u64, u64>> out;
    for (u64 p = 2; 2 * p <= two_n; ++p)
        if (prime(p) && prime(two_n - p)) out.emplace_back(p, two_n - p);
    return out;
}

inline u64 pow_mod(u64 b, u64 e, u64 m) {
    unsigned __int128 r = 1 % m, x = b % m;
    while (e) {
        if (e & 1) r = r * x % m;
        x = x * x % m;
        e >>= 1;
    }
    return static_cast<u64>(r);
}

// Frozen values (direct enumeration).
inline constexpr std::pair<u64, u64> kPi[] = {{10, 4},         {100, 25},        {1000, 168},      {10000, 1229},
                                              {100000, 9592}, {1000000, 78498}, {10000000, 664579}};
inline constexpr std::pair<u64, u64> kTwin[] = {{20, 4},      {100, 8},       {1000, 35},
                                                {10000, 205}, {100000, 1224}, {1000000, 8169}};
inline constexpr std::pair<u64, u64> kQuad268[] = {{20, 2}, {100, 2}, {1000, 5}, {10000, 12}, {100000, 38}};
inline constexpr std::pair<u64, u64> kTriple26[] = {{100, 4}, {1000, 15}, {10000, 55}};
inline constexpr std::pair<u64, u64> kTriple46[] = {{100, 4}, {1000, 15}, {10000, 57}};
inline constexpr std::pair<u64, u64> kGoldbachCount[] = {{6, 1}, {8, 1}, {100, 6}, {1000, 28}, {10000, 127}};
inline constexpr std::pair<u64, u64> kMersenne[] = {{8192, 5}, {1000000, 7}, {2147483648ULL, 8}};
inline constexpr std::pair<u64, u64> kFermat[] = {{8, 2}, {70000, 5}, {1099511627776ULL, 5}};

}  // namespace oracle
