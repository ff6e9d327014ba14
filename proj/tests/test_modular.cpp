#include <gtest/gtest.h>

#include "support.hpp"

using namespace terai;
using support::I;

namespace {

std::vector<long> as_longs(std::vector<Int> const & v)
{
    std::vector<long> out;
    for (auto const & x : v)
        out.push_back(x.get_si());
    return out;
}

std::vector<std::pair<long, unsigned long>> pairs(Factorization const & f)
{
    std::vector<std::pair<long, unsigned long>> out;
    for (auto const & pp : f.factors())
        out.push_back({pp.prime.get_si(), pp.exponent});
    return out;
}

} // namespace

TEST(Factorize, Examples)
{
    using P = std::vector<std::pair<long, unsigned long>>;
    EXPECT_EQ(pairs(factorize(I(12))), (P{{2, 2}, {3, 1}}));
    EXPECT_EQ(factorize(I(1)).omega(), 0u);
    EXPECT_TRUE(factorize(I(1)).factors().empty());
    EXPECT_EQ(pairs(factorize(I(2783))), (P{{11, 2}, {23, 1}}));
    EXPECT_THROW(factorize(I(0)), domain_error);
}

TEST(Factorize, ProductAndOrdering)
{
    for (int i = 0; i < 500; ++i) {
        long const n = support::uniform(1, 1'000'000'000'000L);
        auto const f = factorize(I(n));
        Int prod = 1;
        Int last = 1;
        for (auto const & pp : f.factors()) {
            EXPECT_GT(pp.prime, last);
            EXPECT_GE(pp.exponent, 1u);
            EXPECT_TRUE(is_probable_prime(pp.prime));
            last = pp.prime;
            prod *= pow(pp.prime, pp.exponent);
        }
        EXPECT_EQ(prod, n);
        EXPECT_EQ(f.value(), n);
        EXPECT_EQ(int(f.omega()), oracle::omega(n));
    }
}

TEST(Factorize, CofactorsBeyondTrialDivision)
{
    Int const p = to_int("1099511627791");
    Int const q = to_int("2199023255579");
    auto const f = factorize(p * q * q * 4);
    ASSERT_EQ(f.omega(), 3u);
    EXPECT_EQ(f.factors()[1].prime, p);
    EXPECT_EQ(f.factors()[2].prime, q);
    EXPECT_EQ(f.factors()[2].exponent, 2u);
    Int const big = to_int("18446744073709551629");
    EXPECT_EQ(factorize(big * 3).factors()[1].prime, big);
}

TEST(Factorize, CapacityErrorBeyondBudget)
{
    // 129-bit product of two large primes
    Int const p = to_int("18446744073709551629");
    EXPECT_THROW(factorize(p * p * 2), capacity_error);
}

TEST(IsPrimePower, Examples)
{
    auto const a = is_prime_power(I(7));
    ASSERT_TRUE(a);
    EXPECT_EQ(a->prime, 7);
    EXPECT_EQ(a->exponent, 1u);
    auto const b = is_prime_power(I(49));
    ASSERT_TRUE(b);
    EXPECT_EQ(b->prime, 7);
    EXPECT_EQ(b->exponent, 2u);
    EXPECT_FALSE(is_prime_power(I(39)));
    EXPECT_THROW(is_prime_power(I(1)), domain_error);
}

TEST(SqrtModPrime, Examples)
{
    auto const r = sqrt_mod_prime(I(2), I(7));
    ASSERT_TRUE(r);
    EXPECT_TRUE(*r == 3 || *r == 4);
    EXPECT_FALSE(sqrt_mod_prime(I(3), I(5)));
    auto const s = sqrt_mod_prime(I(4), I(5));
    ASSERT_TRUE(s);
    EXPECT_TRUE(*s == 2 || *s == 3);
    EXPECT_EQ(sqrt_mod_prime(I(14), I(7)), I(0));
}

TEST(SqrtModPrime, TonelliShanksLargePrimes)
{
    // p = 1 (mod 2^k) exercises the full Tonelli-Shanks loop
    for (Int p : {to_int("1000000007"), to_int("998244353"), to_int("18446744073709551557"),
                  to_int("170141183460469231731687303715884105727")}) {
        for (int i = 0; i < 50; ++i) {
            Int const a = mod(I(support::uniform(1, 1L << 62)), p);
            auto const r = sqrt_mod_prime(a, p);
            bool const residue = mpz_legendre(a.get_mpz_t(), p.get_mpz_t()) >= 0;
            EXPECT_EQ(r.has_value(), residue);
            if (r) {
                EXPECT_EQ(mod(*r * *r, p), a);
            }
        }
    }
}

TEST(HenselLift, Examples)
{
    EXPECT_EQ(hensel_lift(I(3), I(2), I(7), 2), 10);
    EXPECT_EQ(hensel_lift(I(3), I(2), I(7), 1), 3);
    EXPECT_EQ(hensel_lift(I(2), I(4), I(5), 3), 2);
    EXPECT_THROW(hensel_lift(I(0), I(0), I(5), 2), singular_lift);
}

TEST(HenselLift, LiftsAreRoots)
{
    for (long p : {3L, 5L, 7L, 11L, 13L, 101L}) {
        for (unsigned long e = 1; e <= 6; ++e) {
            Int const pe = pow(I(p), e);
            for (long r = 1; r < p; ++r) {
                Int const a = I(r * r);
                Int const R = hensel_lift(I(r), a, I(p), e);
                EXPECT_EQ(mod(R * R - a, pe), 0);
                EXPECT_EQ(mod(R, I(p)), r);
            }
        }
    }
}

TEST(SqrtsMod2Pow, Examples)
{
    EXPECT_EQ(as_longs(sqrts_mod_2pow(I(1), 4)), (std::vector<long>{1, 7, 9, 15}));
    EXPECT_EQ(as_longs(sqrts_mod_2pow(I(17), 5)), (std::vector<long>{7, 9, 23, 25}));
    EXPECT_TRUE(sqrts_mod_2pow(I(3), 3).empty());
    EXPECT_EQ(as_longs(sqrts_mod_2pow(I(3), 1)), (std::vector<long>{1}));
    EXPECT_EQ(as_longs(sqrts_mod_2pow(I(5), 2)), (std::vector<long>{1, 3}));
    EXPECT_TRUE(sqrts_mod_2pow(I(3), 2).empty());
}

TEST(SqrtsMod2Pow, MatchesScan)
{
    for (unsigned long j = 1; j <= 12; ++j)
        for (long a = 1; a < 200; a += 2)
            EXPECT_EQ(as_longs(sqrts_mod_2pow(I(a), j)), oracle::sqrt_scan(a, 1L << j)) << a << " " << j;
}

TEST(SqrtsMod, Examples)
{
    EXPECT_EQ(as_longs(sqrts_mod(I(2), I(49))), (std::vector<long>{10, 39}));
    EXPECT_EQ(as_longs(sqrts_mod(I(1), I(16))), (std::vector<long>{1, 7, 9, 15}));
    EXPECT_EQ(as_longs(sqrts_mod(I(1), I(101))), (std::vector<long>{1, 100}));
}

TEST(SqrtsMod, MatchesScanRandomized)
{
    for (int i = 0; i < 200; ++i) {
        long const m = support::uniform(2, 20000);
        long const a = support::uniform(-50000, 50000);
        if (std::gcd(a, m) != 1)
            continue;
        EXPECT_EQ(as_longs(sqrts_mod(I(a), I(m))), oracle::sqrt_scan(a, m)) << a << " mod " << m;
    }
}

TEST(SqrtsMod, CompositeModuliMatchScan)
{
    for (long m : {9L, 12L, 27L, 45L, 100L, 121L, 360L, 1024L, 3465L})
        for (long a = -m; a < m; ++a) {
            if (std::gcd(a, m) != 1) {
                EXPECT_THROW(sqrts_mod(I(a), I(m)), domain_error);
                continue;
            }
            EXPECT_EQ(as_longs(sqrts_mod(I(a), I(m))), oracle::sqrt_scan(a, m)) << a << " mod " << m;
        }
}

TEST(SolveTeraiCongruence, Examples)
{
    auto const s4 = solve_terai_congruence(I(4), I(63));
    EXPECT_EQ(as_longs(s4.solutions), oracle::congruence_scan(4, 63));
    EXPECT_EQ(as_longs(s4.solutions), (std::vector<long>{7}));
    ASSERT_EQ(s4.forms.size(), 1u);
    EXPECT_EQ(s4.forms[0], (Form{I(16), I(14), I(7)}));
    EXPECT_EQ(as_longs(s4.raw_roots), (std::vector<long>{1, 7}));

    auto const s12 = solve_terai_congruence(I(12), I(2783));
    EXPECT_EQ(as_longs(s12.solutions), (std::vector<long>{7, 23}));
    EXPECT_EQ(as_longs(s12.solutions), oracle::congruence_scan(12, 2783));
    EXPECT_EQ(s12.forms, (std::vector<Form>{{I(48), I(14), I(59)}, {I(48), I(46), I(69)}}));
    EXPECT_EQ(s12.solutions.size(), std::size_t(1) << (factorize(I(12)).omega() - 1));
    EXPECT_TRUE(pairing_holds(s12));
}

TEST(SolveTeraiCongruence, Preconditions)
{
    EXPECT_THROW(solve_terai_congruence(I(6), I(7)), domain_error);
    EXPECT_THROW(solve_terai_congruence(I(4), I(8)), domain_error);
    EXPECT_THROW(solve_terai_congruence(I(12), I(9)), domain_error);
    EXPECT_THROW(solve_terai_congruence(I(4), I(-7)), domain_error);
}

TEST(SolveTeraiCongruence, MatchesScanAndForms)
{
    for (long k = 4; k <= 400; k += 4)
        for (long D = 1; D < 400; D += 2) {
            if (std::gcd(D, k) != 1)
                continue;
            auto const s = solve_terai_congruence(I(k), I(D));
            ASSERT_EQ(as_longs(s.solutions), oracle::congruence_scan(k, D)) << k << " " << D;
            for (std::size_t i = 0; i < s.forms.size(); ++i) {
                EXPECT_EQ(s.forms[i].a, 4 * k);
                EXPECT_EQ(s.forms[i].b, 2 * s.solutions[i]);
                EXPECT_EQ(discriminant(s.forms[i]), -4 * D);
                EXPECT_TRUE(is_primitive(s.forms[i]));
            }
            if (!s.solutions.empty()) {
                EXPECT_EQ(s.solutions.size(), std::size_t(1) << (oracle::omega(k) - 1));
            }
        }
}
