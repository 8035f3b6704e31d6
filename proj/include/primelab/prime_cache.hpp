// prime_cache.hpp
// On-disk prime table cache.
//
// Layout (all integers little-endian):
//   offset 0   8 bytes   magic "PRIMSET1"
//   offset 8   8 bytes   limit (u64)
//   offset 16  B bytes   membership bitmap, B = ceil((limit + 1) / 16);
//                        bit i (LSB-first) marks odd integer 2i + 1 as prime
//   offset 16+B 8 bytes  prime count including 2 (u64), integrity check

#pragma once

#include <array>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <istream>
#include <iterator>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "primelab/sieve.hpp"

namespace primelab {

inline constexpr std::array<char, 8> kCacheMagic = {'P', 'R', 'I', 'M', 'S', 'E', 'T', '1'};

class CacheError : public std::runtime_error {
public:
    enum class Kind { bad_magic, limit_mismatch, truncated, trailing_bytes, count_mismatch, io };

    CacheError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

namespace detail {

inline void put_u64_le(std::ostream& out, u64 v) {
    std::array<char, 8> b{};
    for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
    out.write(b.data(), 8);
}

inline u64 get_u64_le(const unsigned char* p) {
    u64 v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
    return v;
}

}  // namespace detail

inline void save_cache(const PrimeTable& table, std::ostream& out) {
    out.write(kCacheMagic.data(), kCacheMagic.size());
    detail::put_u64_le(out, table.limit());
    const auto& bm = table.bitmap();
    out.write(reinterpret_cast<const char*>(bm.data()), static_cast<std::streamsize>(bm.size()));
    detail::put_u64_le(out, table.size());
    if (!out) throw CacheError(CacheError::Kind::io, "save_cache: write failed");
}

inline void save_cache(const PrimeTable& table, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw CacheError(CacheError::Kind::io, "save_cache: cannot open " + path.string());
    save_cache(table, out);
}

// Parses a cache image. expected_limit, when given, must match the stored limit.
inline PrimeTable load_cache(std::istream& in, std::optional<u64> expected_limit = std::nullopt) {
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (bytes.size() < 8) throw CacheError(CacheError::Kind::truncated, "load_cache: truncated header");
    if (std::memcmp(bytes.data(), kCacheMagic.data(), 8) != 0)
        throw CacheError(CacheError::Kind::bad_magic, "load_cache: bad magic");
    if (bytes.size() < 16) throw CacheError(CacheError::Kind::truncated, "load_cache: truncated header");
    const u64 limit = detail::get_u64_le(bytes.data() + 8);
    if (expected_limit && *expected_limit != limit)
        throw CacheError(CacheError::Kind::limit_mismatch,
                         "load_cache: stored limit " + std::to_string(limit) + " != expected " +
                             std::to_string(*expected_limit));
    const u64 nbytes = PrimeTable::bitmap_bytes(limit);
    const u64 payload = bytes.size() - 16;
    if (limit == UINT64_MAX || payload < nbytes || payload - nbytes < 8)
        throw CacheError(CacheError::Kind::truncated, "load_cache: truncated bitmap or count");
    if (payload - nbytes > 8) throw CacheError(CacheError::Kind::trailing_bytes, "load_cache: trailing bytes");

    std::vector<std::uint8_t> bitmap(bytes.begin() + 16, bytes.begin() + 16 + static_cast<std::ptrdiff_t>(nbytes));
    const u64 stored_count = detail::get_u64_le(bytes.data() + 16 + nbytes);

    // the unit and any odd value above limit must be clear
    bool stray = (bitmap[0] & 1U) != 0;
    for (u64 idx = (limit + 1) / 2; idx < nbytes * 8 && !stray; ++idx)
        stray = (bitmap[idx / 8] >> (idx % 8)) & 1U;
    PrimeTable t = PrimeTable::from_bitmap(limit, std::move(bitmap));
    if (stray || t.size() != stored_count)
        throw CacheError(CacheError::Kind::count_mismatch,
                         "load_cache: prime count check failed (stored " + std::to_string(stored_count) +
                             ", bitmap " + std::to_string(t.size()) + ")");
    return t;
}

inline PrimeTable load_cache(const std::filesystem::path& path, std::optional<u64> expected_limit = std::nullopt) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CacheError(CacheError::Kind::io, "load_cache: cannot open " + path.string());
    return load_cache(in, expected_limit);
}

}  // namespace primelab
