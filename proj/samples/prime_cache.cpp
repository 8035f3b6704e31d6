// Write a sieve to the binary cache format and read it back.
#include <cstdio>
#include <filesystem>

#include "primelab/prime_cache.hpp"

int main() {
    const auto path = std::filesystem::temp_directory_path() / "primelab_sample.cache";
    const auto table = primelab::sieve_primes(1'000'000);
    primelab::save_cache(table, path);
    const auto back = primelab::load_cache(path, 1'000'000);
    std::printf("%zu primes written, %zu read back\n", table.size(), back.size());
    std::filesystem::remove(path);
}
