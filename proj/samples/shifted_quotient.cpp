// m/n = (p + 1)/(q + 1) with p, q prime.
#include <cstdio>
#include <cstdlib>

#include "primelab/schinzel.hpp"

int main(int argc, char** argv) {
    const primelab::u64 m = argc > 2 ? std::strtoull(argv[1], nullptr, 10) : 11;
    const primelab::u64 n = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 13;
    const auto r = primelab::schinzel_search(m, n, 10'000);
    if (!r.k) {
        std::printf("no k found\n");
        return 0;
    }
    std::printf("%llu/%llu = (%llu+1)/(%llu+1), k = %llu\n", static_cast<unsigned long long>(m),
                static_cast<unsigned long long>(n), static_cast<unsigned long long>(r.p),
                static_cast<unsigned long long>(r.q), static_cast<unsigned long long>(*r.k));
}
