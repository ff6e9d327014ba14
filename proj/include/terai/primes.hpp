#ifndef TERAI_PRIMES_HPP
#define TERAI_PRIMES_HPP

#include <cstdint>
#include <vector>

namespace terai {

inline constexpr std::uint32_t kTrialDivisionBound = 10'000'000;

/* All primes below kTrialDivisionBound, sieved once per process. */
inline std::vector<std::uint32_t> const & small_primes()
{
    static std::vector<std::uint32_t> const primes = [] {
        std::vector<bool> composite(kTrialDivisionBound, false);
        std::vector<std::uint32_t> out;
        out.reserve(665'000);
        for (std::uint32_t i = 2; i < kTrialDivisionBound; ++i) {
            if (composite[i])
                continue;
            out.push_back(i);
            for (std::uint64_t j = std::uint64_t(i) * i; j < kTrialDivisionBound; j += i)
                composite[j] = true;
        }
        return out;
    }();
    return primes;
}

/* Prime factorization of a 64-bit value whose prime factors are all below
 * kTrialDivisionBound or whose cofactor after trial division is prime
 * (always the case when n < kTrialDivisionBound^2). Pairs (p, e). */
inline std::vector<std::pair<std::uint64_t, unsigned>> trial_factor(std::uint64_t n)
{
    std::vector<std::pair<std::uint64_t, unsigned>> out;
    for (std::uint32_t p : small_primes()) {
        if (std::uint64_t(p) * p > n)
            break;
        if (n % p != 0)
            continue;
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    if (n > 1)
        out.emplace_back(n, 1);
    return out;
}

} // namespace terai

#endif
