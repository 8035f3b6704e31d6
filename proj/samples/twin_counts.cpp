// Inclusion-exclusion twin counts next to the brute-force count.
#include <cstdio>

#include "primelab/exact_counts.hpp"

int main() {
    const auto table = primelab::sieve_primes(100'010);
    for (primelab::u64 x : {20, 100, 1000, 10'000, 100'000}) {
        const auto r = primelab::twin_count_formula(x, table);
        std::printf("T(%llu): formula %lld, oracle %llu\n", static_cast<unsigned long long>(x),
                    static_cast<long long>(r.formula_value), static_cast<unsigned long long>(r.oracle_value));
    }
}
