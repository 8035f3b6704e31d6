// goldbach.hpp
// Goldbach pairs through remainder splitting: 2n = p + q forces
// p = eta (mod p_i), q = delta (mod p_i) with eta + delta = 2n and both nonzero
// for every sieving prime p_i; CRT then yields every candidate p. Also span
// analysis of the candidate set, the divisor refinement, signed products of a
// split prime prefix, and CRT-driven twin searches.

#pragma once

#include <algorithm>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "primelab/arith.hpp"
#include "primelab/crt.hpp"
#include "primelab/sieve.hpp"

namespace primelab {

using PrimePair = std::pair<u64, u64>;

// All (eta, delta) with 1 <= eta, delta <= p - 1 and eta + delta = beta (mod p).
inline std::vector<PrimePair> split_remainder(u64 beta, u64 p) {
    if (p < 2) throw std::invalid_argument("split_remainder: modulus must be >= 2");
    if (beta >= p) throw std::invalid_argument("split_remainder: beta must be < p");
    std::vector<PrimePair> out;
    for (u64 eta = 1; eta < p; ++eta) {
        const u64 delta = (beta + p - eta) % p;
        if (delta != 0) out.emplace_back(eta, delta);
    }
    return out;
}

struct SplitPlan {
    u64 even_n = 0;
    std::vector<u64> primes;
    std::vector<u64> beta;
    std::vector<std::vector<PrimePair>> splits;

    // removed choices per prime: 1 when beta = 0, else 2
    u64 u(std::size_t i) const { return primes[i] - splits[i].size(); }

    std::vector<u64> eta_set(std::size_t i) const {
        std::vector<u64> s;
        for (const auto& [eta, delta] : splits[i]) s.push_back(eta);
        return s;
    }

    ChoiceSpec choice_spec() const {
        std::vector<ChoiceSpec::Entry> e;
        for (std::size_t i = 0; i < primes.size(); ++i) e.push_back({primes[i], eta_set(i)});
        return ChoiceSpec(std::move(e));
    }

    // N = prod (p_i - u_i)
    BigInt class_count() const { return choice_count(choice_spec()); }
};

inline SplitPlan build_split_plan(u64 two_n) {
    if (two_n < 6 || two_n % 2) throw std::invalid_argument("build_split_plan: need an even number >= 6");
    SplitPlan plan;
    plan.even_n = two_n;
    plan.primes = sieving_prime_set(two_n);
    for (u64 p : plan.primes) {
        plan.beta.push_back(two_n % p);
        plan.splits.push_back(split_remainder(two_n % p, p));
    }
    return plan;
}

// ---------------------------------------------------------------------------
// Pair enumeration
// ---------------------------------------------------------------------------

enum class GoldbachMode { exact, guided };

struct GoldbachResult {
    u64 two_n = 0;
    std::vector<PrimePair> pairs;            // p <= q, ascending in p
    std::vector<PrimePair> zero_eta_pairs;   // subset of pairs with p a sieving prime
    bool unit_candidate = false;             // 1 satisfies every split congruence
    u64 candidates = 0;                      // CRT candidates in (1, 2n) examined
    EnumerationMode enumeration = EnumerationMode::automatic;
};

namespace detail {

// A candidate below 2n is coprime to every sieving prime, as is its partner,
// so both must be prime; the trial-division check is kept as the certificate.
inline void certify_pair(u64 p, u64 q) {
    if (!is_prime(p) || !is_prime(q))
        throw std::logic_error("goldbach: candidate " + std::to_string(p) + " + " + std::to_string(q) +
                               " failed certification");
}

inline std::vector<PrimePair> zero_eta_pairs(u64 two_n, const std::vector<u64>& primes) {
    std::vector<PrimePair> out;
    for (u64 s : primes)
        if (2 * s <= two_n && is_prime(two_n - s)) out.emplace_back(s, two_n - s);
    return out;
}

}  // namespace detail

inline GoldbachResult goldbach_enumerate(u64 two_n, GoldbachMode mode = GoldbachMode::exact,
                                         bool allow_zero_eta = false) {
    const SplitPlan plan = build_split_plan(two_n);
    const ChoiceSpec spec = plan.choice_spec();
    GoldbachResult r;
    r.two_n = two_n;
    r.unit_candidate = spec.admits(1);

    std::vector<PrimePair> zero;
    if (allow_zero_eta) zero = detail::zero_eta_pairs(two_n, plan.primes);

    CrtStream stream(spec, 2, two_n - 2);
    r.enumeration = stream.mode();
    std::vector<PrimePair> found;
    while (auto c = stream.next()) {
        ++r.candidates;
        const u64 p = *c, q = two_n - p;
        if (p > q) {
            if (mode == GoldbachMode::exact) break;  // remaining candidates mirror earlier ones
            continue;
        }
        detail::certify_pair(p, q);
        found.emplace_back(p, q);
        if (mode == GoldbachMode::guided) break;
    }

    if (mode == GoldbachMode::guided) {
        // the first pair overall: zero-eta pairs start at sieving primes, which are smaller
        if (!zero.empty() && (found.empty() || zero.front().first < found.front().first)) {
            r.pairs = {zero.front()};
            r.zero_eta_pairs = {zero.front()};
        } else {
            r.pairs = found;
        }
        return r;
    }

    r.zero_eta_pairs = zero;
    r.pairs = zero;
    r.pairs.insert(r.pairs.end(), found.begin(), found.end());
    std::sort(r.pairs.begin(), r.pairs.end());
    return r;
}

// ---------------------------------------------------------------------------
// Span analysis
// ---------------------------------------------------------------------------

struct SpanReport {
    u64 two_n = 0;
    bool feasible = false;
    std::string note;
    std::vector<u64> primes;
    std::vector<u64> beta;
    BigInt modulus;        // M = prod p_i
    u64 candidate_count = 0;
    u64 candidate_min = 0;
    u64 candidate_max = 0;
    u64 span = 0;
    BigInt threshold;      // M - 2n (may be negative)
    BigInt bound_all_u2;   // smallest candidate if every u_i = 2
    BigInt bound_all_u1;   // smallest candidate if every u_i = 1
    bool unit_candidate = false;
    bool flag = false;     // span > M - 2n
};

// M - sum_{m=3}^{k} (p_1 ... p_{m-1}) (p_m - u)
inline BigInt smallest_candidate_bound(const std::vector<u64>& primes, u64 u) {
    BigInt m = 1;
    for (u64 p : primes) m *= p;
    BigInt prefix = 1;
    BigInt sum = 0;
    for (std::size_t i = 0; i < primes.size(); ++i) {
        if (i >= 2) sum += prefix * (primes[i] - u);
        prefix *= primes[i];
    }
    return m - sum;
}

inline SpanReport span_report(u64 two_n) {
    const SplitPlan plan = build_split_plan(two_n);
    const ChoiceSpec spec = plan.choice_spec();
    SpanReport r;
    r.two_n = two_n;
    r.primes = plan.primes;
    r.beta = plan.beta;
    r.modulus = spec.modulus();
    r.threshold = r.modulus - BigInt(two_n);
    r.bound_all_u2 = smallest_candidate_bound(plan.primes, 2);
    r.bound_all_u1 = smallest_candidate_bound(plan.primes, 1);
    r.unit_candidate = spec.admits(1);
    if (choice_count(spec) > kProductModeLimit) {
        r.note = "infeasible: candidate class count exceeds " + std::to_string(kProductModeLimit);
        return r;
    }
    r.feasible = true;
    const u64 m = static_cast<u64>(r.modulus);
    auto cands = crt_enumerate(spec, 2, m, EnumerationMode::product);
    // with no other class, 1 mod M is the only one in the period
    const bool unit_only = cands.empty();
    if (unit_only) cands.push_back(1);
    r.candidate_count = cands.size();
    r.candidate_min = cands.front();
    r.candidate_max = cands.back();
    r.span = r.candidate_max - r.candidate_min;
    r.flag = BigInt(r.span) > r.threshold;
    if (unit_only)
        r.note = "only the unit class; span is 0";
    else if (cands.size() == 1)
        r.note = "single candidate; span is 0";
    if (r.unit_candidate && !unit_only) r.note += std::string(r.note.empty() ? "" : "; ") + "unit candidate 1 excluded";
    return r;
}

// Members of the group obtained by fixing eta_1..eta_{k-1} and letting eta_k
// run over 1..p_k - 1 (including a forbidden value); ascending by value.
struct GroupMember {
    u64 eta_last;
    u64 value;
    bool allowed;
};

inline std::vector<GroupMember> fixed_prefix_group(u64 two_n, const std::vector<u64>& prefix) {
    const SplitPlan plan = build_split_plan(two_n);
    const std::size_t k = plan.primes.size();
    if (prefix.size() + 1 != k) throw std::invalid_argument("fixed_prefix_group: prefix must fix all but the last prime");
    const u64 pk = plan.primes.back();
    const auto allowed_last = plan.eta_set(k - 1);
    std::vector<GroupMember> out;
    for (u64 eta = 1; eta < pk; ++eta) {
        CongruenceSystem sys;
        for (std::size_t i = 0; i + 1 < k; ++i) sys.push_back({prefix[i] % plan.primes[i], plan.primes[i]});
        sys.push_back({eta, pk});
        const auto sol = crt_solve(sys);
        out.push_back({eta, static_cast<u64>(sol.value),
                       std::binary_search(allowed_last.begin(), allowed_last.end(), eta)});
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.value < b.value; });
    return out;
}

// Over every feasible even 2n in [lo, hi] whose last sieving prime has u = 2,
// and every allowed prefix choice: how often the forbidden eta_k member is the
// smallest element of its group.
struct LowerEndProbe {
    u64 groups = 0;
    u64 forbidden_at_lower_end = 0;
    double expected = 0.0;  // mean of 1 / (p_k - 1) over the same groups
    double frequency() const { return groups ? static_cast<double>(forbidden_at_lower_end) / groups : 0.0; }
};

inline LowerEndProbe lower_end_probe(u64 lo, u64 hi) {
    LowerEndProbe out;
    double expected_sum = 0.0;
    for (u64 two_n = std::max<u64>(6, lo + lo % 2); two_n <= hi; two_n += 2) {
        const SplitPlan plan = build_split_plan(two_n);
        const std::size_t k = plan.primes.size();
        if (plan.u(k - 1) != 2) continue;
        const ChoiceSpec spec = plan.choice_spec();
        if (choice_count(spec) > kProductModeLimit) continue;
        // prefix classes modulo P = p_1 ... p_{k-1}
        std::vector<ChoiceSpec::Entry> pe(spec.entries().begin(), spec.entries().end() - 1);
        if (pe.empty()) continue;
        const ChoiceSpec prefix(std::move(pe));
        const u64 P = static_cast<u64>(prefix.modulus());
        const u64 pk = plan.primes.back();
        const u64 forbidden = plan.beta.back();
        for (u64 base : crt_enumerate(prefix, 0, P - 1, EnumerationMode::product)) {
            // group members base + j P, j in [0, pk); their residue mod pk runs over everything
            u64 best_value = UINT64_MAX, best_eta = 0;
            for (u64 j = 0; j < pk; ++j) {
                const u64 v = base + j * P;
                const u64 eta = v % pk;
                if (eta == 0) continue;
                if (v < best_value) {
                    best_value = v;
                    best_eta = eta;
                }
            }
            ++out.groups;
            out.forbidden_at_lower_end += best_eta == forbidden;
            expected_sum += 1.0 / static_cast<double>(pk - 1);
        }
    }
    out.expected = out.groups ? expected_sum / static_cast<double>(out.groups) : 0.0;
    return out;
}

// ---------------------------------------------------------------------------
// Refinement of a candidate above 2n
// ---------------------------------------------------------------------------

struct RefineResult {
    std::optional<PrimePair> pair;
    std::optional<u64> divisor;  // the s that produced the pair
    std::vector<u64> divisors_tried;
};

inline RefineResult goldbach_refine(u64 two_n, u64 t) {
    const SplitPlan plan = build_split_plan(two_n);
    if (t <= two_n) throw std::invalid_argument("goldbach_refine: candidate must exceed 2n");
    if (!plan.choice_spec().admits(t))
        throw std::invalid_argument("goldbach_refine: " + std::to_string(t) + " is not a suitable candidate");
    const u64 n = two_n / 2;
    const u64 r = t - n;
    RefineResult out;
    for (u64 s : divisors(r)) {
        bool unit_square = true;
        for (u64 p : plan.primes)
            if (mulmod(s % p, s % p, p) != 1 % p) {
                unit_square = false;
                break;
            }
        if (!unit_square) continue;
        out.divisors_tried.push_back(s);
        const u64 rp = r / s;
        if (rp < n && is_prime(n - rp) && is_prime(n + rp)) {
            out.pair = PrimePair{n - rp, n + rp};
            out.divisor = s;
            return out;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Signed products over a split prime prefix
// ---------------------------------------------------------------------------

enum class PartitionVerdict { prime_by_construction, out_of_range };

struct PartitionProbe {
    BigInt alpha;
    BigInt bound;  // p_{k+1}^2
    PartitionVerdict verdict;
    std::optional<bool> is_prime;  // trial-division check when |alpha| fits 64 bits
};

inline PartitionProbe partition_probe(const std::vector<u64>& a, const std::vector<u64>& b,
                                      const std::vector<u64>& mu, const std::vector<u64>& nu, bool plus) {
    if (a.empty() || b.empty()) throw std::invalid_argument("partition_probe: both parts must be nonempty");
    if (mu.size() != a.size() || nu.size() != b.size())
        throw std::invalid_argument("partition_probe: one exponent per prime");
    for (u64 e : mu)
        if (e == 0) throw std::invalid_argument("partition_probe: exponents must be >= 1");
    for (u64 e : nu)
        if (e == 0) throw std::invalid_argument("partition_probe: exponents must be >= 1");
    std::vector<u64> all(a);
    all.insert(all.end(), b.begin(), b.end());
    std::sort(all.begin(), all.end());
    const auto table = sieve_primes(std::max<u64>(all.back(), 2) * 2 + 10);
    const auto first = table.primes();
    for (std::size_t i = 0; i < all.size(); ++i)
        if (all[i] != first[i])
            throw std::invalid_argument("partition_probe: parts must split a prefix 2, 3, 5, ... of the primes");
    const u64 next = first[all.size()];

    BigInt pa = 1, pb = 1;
    for (std::size_t i = 0; i < a.size(); ++i) pa *= boost::multiprecision::pow(BigInt(a[i]), static_cast<unsigned>(mu[i]));
    for (std::size_t i = 0; i < b.size(); ++i) pb *= boost::multiprecision::pow(BigInt(b[i]), static_cast<unsigned>(nu[i]));
    PartitionProbe out;
    out.alpha = plus ? BigInt(pa + pb) : BigInt(pa - pb);
    out.bound = BigInt(next) * next;
    const BigInt mag = abs(out.alpha);
    out.verdict = mag > 1 && mag < out.bound ? PartitionVerdict::prime_by_construction : PartitionVerdict::out_of_range;
    if (mag <= std::numeric_limits<u64>::max()) out.is_prime = is_prime(static_cast<u64>(mag));
    if (out.verdict == PartitionVerdict::prime_by_construction && out.is_prime && !*out.is_prime)
        throw std::logic_error("partition_probe: value below the bound is composite");
    return out;
}

// ---------------------------------------------------------------------------
// Twin pairs from CRT classes
// ---------------------------------------------------------------------------

enum class TwinOrientation {
    upper,  // (n - 2, n): n avoids 0 and 2
    lower   // (n, n + 2): n avoids 0 and p - 2
};

struct TwinHit {
    PrimePair pair;
    bool certified;  // larger member < p_{k+1}^2
};

struct TwinSearch {
    std::vector<u64> candidates;  // CRT values n in [1, bound)
    std::vector<TwinHit> pairs;
    u64 discarded = 0;  // candidates that are not genuine pairs
    u64 certification_bound = 0;
};

inline TwinSearch twin_crt_search(const std::vector<u64>& primes, u64 bound,
                                  TwinOrientation orientation = TwinOrientation::upper) {
    if (primes.empty()) throw std::invalid_argument("twin_crt_search: need at least one prime");
    if (bound < 2) throw std::invalid_argument("twin_crt_search: bound must be >= 2");
    const auto ref_table = sieve_primes(primes.back() * 2 + 10);
    const auto ref = ref_table.primes();
    for (std::size_t i = 0; i < primes.size(); ++i)
        if (primes[i] != ref[i]) throw std::invalid_argument("twin_crt_search: primes must be a prefix 2, 3, 5, ...");
    const u64 next = ref[primes.size()];

    std::vector<ChoiceSpec::Entry> entries;
    for (u64 p : primes) {
        const u64 bad = orientation == TwinOrientation::upper ? 2 % p : (p - 2) % p;
        std::vector<u64> allowed;
        for (u64 a = 1; a < p; ++a)
            if (a != bad) allowed.push_back(a);
        entries.push_back({p, allowed});
    }
    const ChoiceSpec spec(std::move(entries));

    TwinSearch out;
    out.certification_bound = next * next;
    out.candidates = crt_enumerate(spec, 1, bound - 1);  // n < bound
    for (u64 n : out.candidates) {
        const bool up = orientation == TwinOrientation::upper;
        if (up && n < 4) {
            ++out.discarded;
            continue;
        }
        const PrimePair pr = up ? PrimePair{n - 2, n} : PrimePair{n, n + 2};
        if (pr.first < 2) {
            ++out.discarded;
            continue;
        }
        const bool certified = pr.second < out.certification_bound;
        const bool genuine = is_prime(pr.first) && is_prime(pr.second);
        if (certified && !genuine) throw std::logic_error("twin_crt_search: certified pair failed verification");
        if (!genuine) {
            ++out.discarded;
            continue;
        }
        out.pairs.push_back({pr, certified});
    }
    return out;
}

}  // namespace primelab
