#ifndef TERAI_TESTS_SUPPORT_HPP
#define TERAI_TESTS_SUPPORT_HPP

#include <random>

#include "oracles.hpp"
#include "terai/terai.hpp"

namespace support {

inline terai::Form to_form(oracle::Triple const & t)
{
    return {terai::Int(static_cast<long>(t.a)), terai::Int(static_cast<long>(t.b)),
            terai::Int(static_cast<long>(t.c))};
}

inline oracle::Triple to_triple(terai::Form const & f)
{
    return {f.a.get_si(), f.b.get_si(), f.c.get_si()};
}

inline terai::Int I(long v) { return terai::Int(v); }

inline std::mt19937_64 & rng()
{
    static std::mt19937_64 gen(0x7e7a1);
    return gen;
}

inline long uniform(long lo, long hi)
{
    return std::uniform_int_distribution<long>(lo, hi)(rng());
}

/* Random primitive positive definite form with |disc| <= max_abs_disc. */
inline oracle::Triple random_form(long max_abs_disc)
{
    for (;;) {
        long const d = -uniform(3, max_abs_disc);
        if (d % 4 != 0 && (d % 4 + 4) % 4 != 1)
            continue;
        auto const forms = oracle::reduced_forms(d);
        if (forms.empty())
            continue;
        return forms[std::size_t(uniform(0, long(forms.size()) - 1))];
    }
}

/* Random unimodular matrix with entries of moderate size. */
inline terai::TransformMatrix random_unimodular(int steps)
{
    terai::TransformMatrix m;
    for (int i = 0; i < steps; ++i) {
        long const t = uniform(-3, 3);
        terai::TransformMatrix const step = uniform(0, 1) ? terai::TransformMatrix{1, t, 0, 1}
                                                          : terai::TransformMatrix{1, 0, t, 1};
        m = m * step;
    }
    return m;
}

} // namespace support

#endif
