#ifndef TERAI_BIGINT_HPP
#define TERAI_BIGINT_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "terai/errors.hpp"

namespace terai {

using Int = mpz_class;

inline Int to_int(std::string const & s)
{
    Int r;
    if (s.empty() || r.set_str(s, 10) != 0)
        throw domain_error("not a decimal integer: '" + s + "'");
    return r;
}

inline Int to_int(std::uint64_t v)
{
    Int r;
    mpz_import(r.get_mpz_t(), 1, 1, sizeof v, 0, 0, &v);
    return r;
}

inline std::string to_string(Int const & v)
{
    return v.get_str();
}

inline bool fits_u64(Int const & v)
{
    return sgn(v) >= 0 && mpz_sizeinbase(v.get_mpz_t(), 2) <= 64;
}

inline std::uint64_t to_u64(Int const & v)
{
    if (!fits_u64(v))
        throw capacity_error("integer does not fit in 64 bits: " + v.get_str());
    std::uint64_t r = 0;
    mpz_export(&r, nullptr, 1, sizeof r, 0, 0, v.get_mpz_t());
    return r;
}

inline std::size_t bit_length(Int const & v)
{
    return sgn(v) == 0 ? 0 : mpz_sizeinbase(v.get_mpz_t(), 2);
}

/* Residue in [0, |m|). */
inline Int mod(Int const & a, Int const & m)
{
    Int r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline Int floor_div(Int const & a, Int const & b)
{
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

/* Throws if b does not divide a. */
inline Int exact_div(Int const & a, Int const & b)
{
    if (!mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t()))
        throw domain_error("inexact division " + a.get_str() + " / "
                           + b.get_str());
    Int q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline bool divides(Int const & d, Int const & n)
{
    return mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0;
}

inline Int pow(Int const & base, unsigned long e)
{
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Int powm(Int const & base, Int const & e, Int const & m)
{
    Int r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    return r;
}

/* Inverse of a modulo m; throws when gcd(a, m) != 1. */
inline Int invert(Int const & a, Int const & m)
{
    Int r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw domain_error("no inverse of " + a.get_str() + " mod "
                           + m.get_str());
    return r;
}

struct ExtendedGcd
{
    Int g, s, t; // g = s*a + t*b, g >= 0
};

inline ExtendedGcd ext_gcd(Int const & a, Int const & b)
{
    ExtendedGcd r;
    mpz_gcdext(r.g.get_mpz_t(), r.s.get_mpz_t(), r.t.get_mpz_t(), a.get_mpz_t(),
               b.get_mpz_t());
    return r;
}

/* Floor of the square root; exact squares are confirmed by the caller
 * through is_square. */
inline Int isqrt(Int const & n)
{
    if (sgn(n) < 0)
        throw domain_error("square root of negative integer");
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline bool is_square(Int const & n)
{
    return sgn(n) >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

inline unsigned long valuation(Int const & n, unsigned long p)
{
    if (sgn(n) == 0)
        throw domain_error("valuation of zero");
    Int q = n;
    unsigned long v = 0;
    while (mpz_divisible_ui_p(q.get_mpz_t(), p)) {
        mpz_divexact_ui(q.get_mpz_t(), q.get_mpz_t(), p);
        ++v;
    }
    return v;
}

/* Hash over the low limbs; equality is always checked in full. */
struct IntHash
{
    std::size_t operator()(Int const & v) const noexcept
    {
        mpz_srcptr z = v.get_mpz_t();
        std::size_t h = static_cast<std::size_t>(z->_mp_size);
        if (z->_mp_size != 0)
            h ^= static_cast<std::size_t>(mpz_getlimbn(z, 0)) * 0x9e3779b97f4a7c15ULL;
        return h;
    }
};

} // namespace terai

#endif
