#ifndef TERAI_MODULAR_HPP
#define TERAI_MODULAR_HPP

/*
 * Factorization, square roots modulo prime powers and composite moduli,
 * and the congruence l^2 = -D (mod 4k) with its attached forms.
 */

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "terai/bigint.hpp"
#include "terai/errors.hpp"
#include "terai/form.hpp"
#include "terai/primes.hpp"

namespace terai {

struct PrimePower
{
    Int prime;
    unsigned long exponent;

    friend bool operator==(PrimePower const &, PrimePower const &) = default;
};

class Factorization
{
  public:
    Factorization() = default;

    /* Factors must have strictly increasing primes and positive exponents. */
    explicit Factorization(std::vector<PrimePower> factors)
        : factors_(std::move(factors))
    {
        for (std::size_t i = 0; i < factors_.size(); ++i) {
            if (factors_[i].exponent == 0)
                throw domain_error("zero exponent in factorization");
            if (i > 0 && !(factors_[i - 1].prime < factors_[i].prime))
                throw domain_error("factorization primes must increase");
            value_ *= pow(factors_[i].prime, factors_[i].exponent);
        }
    }

    Int const & value() const { return value_; }
    std::vector<PrimePower> const & factors() const { return factors_; }
    std::size_t omega() const { return factors_.size(); }

    unsigned long exponent_of(Int const & p) const
    {
        for (auto const & f : factors_)
            if (f.prime == p)
                return f.exponent;
        return 0;
    }

    /* Factorization of value^m. */
    Factorization raised(unsigned long m) const
    {
        if (m == 0)
            return {};
        std::vector<PrimePower> out = factors_;
        for (auto & f : out)
            f.exponent *= m;
        return Factorization(std::move(out));
    }

    /* Factorization of value * o. */
    Factorization times(Factorization const & o) const
    {
        std::vector<PrimePower> out = factors_;
        for (auto const & f : o.factors_) {
            auto it = std::find_if(out.begin(), out.end(),
                                   [&](PrimePower const & g) { return g.prime == f.prime; });
            if (it != out.end())
                it->exponent += f.exponent;
            else
                out.push_back(f);
        }
        std::sort(out.begin(), out.end(),
                  [](PrimePower const & x, PrimePower const & y) { return x.prime < y.prime; });
        return Factorization(std::move(out));
    }

    friend bool operator==(Factorization const & x, Factorization const & y)
    {
        return x.factors_ == y.factors_;
    }

  private:
    std::vector<PrimePower> factors_;
    Int value_{1};
};

inline bool is_probable_prime(Int const & n)
{
    // BPSW plus extra Miller-Rabin rounds; deterministic below 2^64
    return sgn(n) > 0 && mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

namespace detail {

// Largest cofactor (in bits) handed to Pollard rho.
inline constexpr std::size_t kRhoBitLimit = 128;

// Iterations of the rho walk before giving up, per polynomial.
inline constexpr unsigned long kRhoStepLimit = 1UL << 24;

/* A nontrivial factor of the odd composite n (Pollard rho, Brent), or
 * nothing within the step budget. */
inline std::optional<Int> pollard_brent(Int const & n)
{
    for (unsigned long c = 1; c <= 4; ++c) {
        Int y = 2, x, q = 1, g = 1, ys;
        unsigned long r = 1;
        unsigned long const m = 128;
        auto f = [&](Int const & v) { return mod(v * v + c, n); };
        do {
            x = y;
            for (unsigned long i = 0; i < r; ++i)
                y = f(y);
            unsigned long k = 0;
            do {
                ys = y;
                for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = mod(q * abs(x - y), n);
                }
                g = gcd(q, n);
                k += m;
            } while (k < r && g == 1);
            r *= 2;
        } while (g == 1 && r < kRhoStepLimit);
        if (g == n) {
            do {
                ys = f(ys);
                g = gcd(abs(x - ys), n);
            } while (g == 1);
        }
        if (g != n && g != 1)
            return g;
    }
    return std::nullopt;
}

inline void split_cofactor(Int const & n, std::vector<Int> & primes)
{
    if (n == 1)
        return;
    if (is_probable_prime(n)) {
        primes.push_back(n);
        return;
    }
    if (bit_length(n) > kRhoBitLimit)
        throw capacity_error("cannot factor cofactor " + n.get_str());
    auto const d = pollard_brent(n);
    if (!d)
        throw capacity_error("cannot factor cofactor " + n.get_str());
    split_cofactor(*d, primes);
    split_cofactor(n / *d, primes);
}

} // namespace detail

/* Trial division below 10^7, then primality testing and a bounded Pollard
 * rho on a cofactor of at most 128 bits; capacity_error beyond that. */
inline Factorization factorize(Int const & n)
{
    if (sgn(n) <= 0)
        throw domain_error("factorize requires a positive integer");
    std::vector<PrimePower> out;
    Int rest = n;
    for (std::uint32_t p : small_primes()) {
        if (rest == 1)
            break;
        if (Int(p) * p > rest)
            break;
        if (!mpz_divisible_ui_p(rest.get_mpz_t(), p))
            continue;
        unsigned long e = 0;
        while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
            mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
            ++e;
        }
        out.push_back({Int(p), e});
    }
    std::vector<Int> big;
    detail::split_cofactor(rest, big);
    std::sort(big.begin(), big.end());
    for (auto const & p : big) {
        if (!out.empty() && out.back().prime == p)
            ++out.back().exponent;
        else
            out.push_back({p, 1});
    }
    return Factorization(std::move(out));
}

/* (p, e) with n = p^e, or nothing. */
inline std::optional<PrimePower> is_prime_power(Int const & n)
{
    if (n < 2)
        throw domain_error("is_prime_power requires n >= 2");
    Factorization f = factorize(n);
    if (f.omega() != 1)
        return std::nullopt;
    return f.factors().front();
}

// Below this prime, square roots are found by scanning.
inline constexpr unsigned long kScanSqrtBound = 10'000;

/* Some r with r^2 = a (mod p), returned as min(r, p - r); nothing when a
 * is a non-residue. p must be an odd prime. */
inline std::optional<Int> sqrt_mod_prime(Int const & a, Int const & p)
{
    if (p < 3 || mpz_even_p(p.get_mpz_t()))
        throw domain_error("sqrt_mod_prime requires an odd prime modulus");
    Int const x = mod(a, p);
    if (sgn(x) == 0)
        return Int(0);
    if (p < kScanSqrtBound) {
        unsigned long const pu = p.get_ui(), xu = x.get_ui();
        for (unsigned long r = 1; r <= pu / 2; ++r)
            if (r * r % pu == xu)
                return Int(r);
        return std::nullopt;
    }
    if (mpz_legendre(x.get_mpz_t(), p.get_mpz_t()) != 1)
        return std::nullopt;

    // Tonelli-Shanks: p - 1 = q 2^s with q odd
    Int q = p - 1;
    unsigned long s = 0;
    while (mpz_even_p(q.get_mpz_t())) {
        q >>= 1;
        ++s;
    }
    Int z = 2;
    while (mpz_legendre(z.get_mpz_t(), p.get_mpz_t()) != -1)
        ++z;
    Int c = powm(z, q, p);
    Int r = powm(x, (q + 1) / 2, p);
    Int t = powm(x, q, p);
    unsigned long m = s;
    while (t != 1) {
        unsigned long i = 0;
        Int t2 = t;
        while (t2 != 1) {
            t2 = mod(t2 * t2, p);
            ++i;
        }
        Int b = powm(c, Int(1) << (m - i - 1), p);
        r = mod(r * b, p);
        c = mod(b * b, p);
        t = mod(t * c, p);
        m = i;
    }
    Int other = p - r;
    return std::min(r, other);
}

/* The root of x^2 = a (mod p^e) congruent to r (mod p). */
inline Int hensel_lift(Int const & r, Int const & a, Int const & p, unsigned long e)
{
    if (e == 0)
        throw domain_error("hensel_lift requires e >= 1");
    if (divides(p, 2 * r))
        throw singular_lift("cannot lift a root divisible by p (or p = 2)");
    if (!divides(p, r * r - a))
        throw domain_error("hensel_lift: r is not a square root of a mod p");
    Int const target = pow(p, e);
    Int modulus = p;
    Int root = mod(r, p);
    while (modulus < target) {
        modulus = std::min(Int(modulus * modulus), target);
        Int step = mod((root * root - a) * invert(2 * root, modulus), modulus);
        root = mod(root - step, modulus);
    }
    return root;
}

/* All x in [0, 2^j) with x^2 = a (mod 2^j), a odd. Sorted. */
inline std::vector<Int> sqrts_mod_2pow(Int const & a, unsigned long j)
{
    if (mpz_even_p(a.get_mpz_t()))
        throw domain_error("sqrts_mod_2pow requires odd a");
    if (j == 0)
        throw domain_error("sqrts_mod_2pow requires j >= 1");
    if (j == 1)
        return {Int(1)};
    if (j == 2)
        return mod(a, 4) == 1 ? std::vector<Int>{1, 3} : std::vector<Int>{};
    if (mod(a, 8) != 1)
        return {};
    Int const modulus = Int(1) << j;
    // x^2 = a mod 2^(i+1) from a root mod 2^i, for i >= 3
    Int x = 1;
    for (unsigned long i = 3; i < j; ++i) {
        Int next = Int(1) << (i + 1);
        if (mod(x * x - a, next) != 0)
            x += Int(1) << (i - 1);
    }
    Int const half = modulus >> 1;
    std::vector<Int> roots{mod(x, modulus), mod(-x, modulus), mod(x + half, modulus),
                           mod(-x + half, modulus)};
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

/* All roots of x^2 = a modulo one prime power. */
inline std::vector<Int> sqrts_mod_prime_power(Int const & a, PrimePower const & pp)
{
    if (pp.prime == 2)
        return sqrts_mod_2pow(a, pp.exponent);
    auto r = sqrt_mod_prime(a, pp.prime);
    if (!r)
        return {};
    Int const modulus = pow(pp.prime, pp.exponent);
    Int lifted = hensel_lift(*r, a, pp.prime, pp.exponent);
    std::vector<Int> roots{lifted, mod(-lifted, modulus)};
    std::sort(roots.begin(), roots.end());
    return roots;
}

/* Combines residues (x mod m1) and (y mod m2), gcd(m1, m2) = 1. */
inline Int crt_pair(Int const & x, Int const & m1, Int const & y, Int const & m2)
{
    Int t = mod((y - x) * invert(m1, m2), m2);
    return x + m1 * t;
}

/* All x in [0, m) with x^2 = a (mod m), gcd(a, m) = 1. Sorted. */
inline std::vector<Int> sqrts_mod(Int const & a, Factorization const & m)
{
    if (gcd(a, m.value()) != 1)
        throw domain_error("sqrts_mod requires gcd(a, m) = 1");
    std::vector<Int> acc{Int(0)};
    Int acc_mod = 1;
    for (auto const & pp : m.factors()) {
        std::vector<Int> local = sqrts_mod_prime_power(a, pp);
        if (local.empty())
            return {};
        Int const local_mod = pow(pp.prime, pp.exponent);
        std::vector<Int> next;
        next.reserve(acc.size() * local.size());
        for (auto const & x : acc)
            for (auto const & y : local)
                next.push_back(crt_pair(x, acc_mod, y, local_mod));
        acc = std::move(next);
        acc_mod *= local_mod;
    }
    std::sort(acc.begin(), acc.end());
    acc.erase(std::unique(acc.begin(), acc.end()), acc.end());
    return acc;
}

inline std::vector<Int> sqrts_mod(Int const & a, Int const & m)
{
    return sqrts_mod(a, factorize(m));
}

/*
 * Solutions l of
 *
 *   l^2 = -D (mod 4k),  0 < l < 2k,  gcd(4k, 2l, (l^2 + D)/(4k)) = 1
 *
 * and the forms (4k, 2l, (l^2 + D)/(4k)) of discriminant -4D.
 * raw_roots holds every root in (0, 2k) before the gcd filter.
 */
struct CongruenceSolutionSet
{
    Int k;
    Int D;
    std::vector<Int> raw_roots;
    std::vector<Int> solutions;
    std::vector<Form> forms;
};

/* Each pair {l, 2k - l} of raw roots keeps exactly one member. */
inline bool pairing_holds(CongruenceSolutionSet const & s)
{
    Int const two_k = 2 * s.k;
    for (auto const & l : s.raw_roots) {
        bool const mine = std::binary_search(s.solutions.begin(), s.solutions.end(), l);
        bool const partner = std::binary_search(s.solutions.begin(), s.solutions.end(), two_k - l);
        if (mine == partner)
            return false;
    }
    return 2 * s.solutions.size() == s.raw_roots.size();
}

inline CongruenceSolutionSet solve_terai_congruence(Int const & k, Int const & D)
{
    if (sgn(k) <= 0 || !divides(4, k))
        throw domain_error("congruence solver requires 4 | k");
    if (sgn(D) <= 0 || mpz_even_p(D.get_mpz_t()))
        throw domain_error("congruence solver requires odd positive D");
    if (gcd(D, k) != 1)
        throw domain_error("congruence solver requires gcd(D, k) = 1");

    Int const four_k = 4 * k;
    Int const two_k = 2 * k;
    CongruenceSolutionSet out{k, D, {}, {}, {}};
    for (auto const & l : sqrts_mod(-D, factorize(four_k))) {
        if (sgn(l) <= 0 || l >= two_k)
            continue;
        out.raw_roots.push_back(l);
        Int const c = exact_div(l * l + D, four_k);
        if (gcd(gcd(four_k, 2 * l), c) == 1) {
            out.solutions.push_back(l);
            out.forms.push_back(Form{four_k, 2 * l, c});
        }
    }
    if (!pairing_holds(out))
        throw std::logic_error("root pairing {l, 2k - l} violated for k = " + k.get_str());
    return out;
}

} // namespace terai

#endif
