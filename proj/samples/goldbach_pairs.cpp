// Goldbach pairs of an even number from remainder splits, plus the span check.
#include <cstdio>
#include <cstdlib>

#include "primelab/goldbach.hpp"

int main(int argc, char** argv) {
    const primelab::u64 two_n = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 100;
    const auto g = primelab::goldbach_enumerate(two_n, primelab::GoldbachMode::exact, true);
    std::printf("%llu has %zu pairs:", static_cast<unsigned long long>(two_n), g.pairs.size());
    for (const auto& [p, q] : g.pairs) std::printf(" %llu+%llu", static_cast<unsigned long long>(p), static_cast<unsigned long long>(q));
    std::printf("\n");
    const auto s = primelab::span_report(two_n);
    if (s.feasible)
        std::printf("span %llu vs M - 2n = %s\n", static_cast<unsigned long long>(s.span), s.threshold.str().c_str());
}
