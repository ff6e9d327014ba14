#ifndef TERAI_FORM_HPP
#define TERAI_FORM_HPP

/*
 * Positive definite integral binary quadratic forms a x^2 + b x y + c y^2
 * with negative discriminant b^2 - 4ac: proper equivalence under SL2(Z),
 * reduction, composition, powers, element orders and class numbers.
 *
 * All functions are pure; forms are plain values.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <ostream>
#include <unordered_map>
#include <utility>
#include <vector>

#include "terai/bigint.hpp"
#include "terai/errors.hpp"
#include "terai/primes.hpp"

namespace terai {

struct Form
{
    Int a, b, c;

    friend bool operator==(Form const &, Form const &) = default;

    friend std::ostream & operator<<(std::ostream & o, Form const & f)
    {
        return o << "(" << f.a << "," << f.b << "," << f.c << ")";
    }
};

/* Integer matrix (alpha beta; gamma delta) acting by
 * F'(x, y) = F(alpha x + beta y, gamma x + delta y). */
struct TransformMatrix
{
    Int alpha{1}, beta{0}, gamma{0}, delta{1};

    static TransformMatrix identity() { return {}; }

    Int determinant() const { return alpha * delta - beta * gamma; }

    /* Acting by this then by o equals acting by this * o. */
    TransformMatrix operator*(TransformMatrix const & o) const
    {
        return {alpha * o.alpha + beta * o.gamma, alpha * o.beta + beta * o.delta,
                gamma * o.alpha + delta * o.gamma, gamma * o.beta + delta * o.delta};
    }

    friend bool operator==(TransformMatrix const &, TransformMatrix const &) = default;
};

inline Int discriminant(Form const & f)
{
    return f.b * f.b - 4 * f.a * f.c;
}

inline Int evaluate(Form const & f, Int const & x, Int const & y)
{
    return f.a * x * x + f.b * x * y + f.c * y * y;
}

inline bool is_primitive(Form const & f)
{
    Int g = gcd(gcd(f.a, f.b), f.c);
    return g == 1;
}

inline bool is_positive_definite(Form const & f)
{
    return sgn(f.a) > 0 && sgn(discriminant(f)) < 0;
}

inline void require_definite_primitive(Form const & f)
{
    if (!is_positive_definite(f))
        throw domain_error("form is not positive definite");
    if (!is_primitive(f))
        throw domain_error("form is not primitive");
}

/* Builds (a, b, c), rejecting non-definite or imprimitive triples. */
inline Form make_form(Int a, Int b, Int c)
{
    Form f{std::move(a), std::move(b), std::move(c)};
    require_definite_primitive(f);
    return f;
}

inline bool is_valid_discriminant(Int const & disc)
{
    if (sgn(disc) >= 0)
        return false;
    unsigned long r = mpz_fdiv_ui(disc.get_mpz_t(), 4);
    return r == 0 || r == 1;
}

inline void require_valid_discriminant(Int const & disc)
{
    if (!is_valid_discriminant(disc))
        throw invalid_discriminant("invalid negative discriminant " + disc.get_str());
}

/* Form with c derived from the discriminant; throws if 4a does not divide
 * b^2 - disc. */
inline Form form_from_ab(Int a, Int b, Int const & disc)
{
    Int c = exact_div(b * b - disc, 4 * a);
    return Form{std::move(a), std::move(b), std::move(c)};
}

inline Form identity_form(Int const & disc)
{
    require_valid_discriminant(disc);
    if (mpz_even_p(disc.get_mpz_t()))
        return Form{1, 0, -disc / 4};
    return Form{1, 1, (1 - disc) / 4};
}

inline Form inverse(Form const & f)
{
    return Form{f.a, -f.b, f.c};
}

inline Form transform(Form const & f, TransformMatrix const & m)
{
    if (m.determinant() != 1)
        throw invalid_matrix("transformation matrix must have determinant 1");
    return Form{
        evaluate(f, m.alpha, m.gamma),
        2 * (f.a * m.alpha * m.beta + f.c * m.gamma * m.delta)
                + f.b * (m.alpha * m.delta + m.beta * m.gamma),
        evaluate(f, m.beta, m.delta),
    };
}

inline bool is_reduced(Form const & f)
{
    if (sgn(f.a) <= 0)
        return false;
    if (!(-f.a < f.b && f.b <= f.a && f.a <= f.c))
        return false;
    return !(f.a == f.c && sgn(f.b) < 0);
}

struct Reduction
{
    Form form;
    TransformMatrix matrix;
};

/* Reduced representative (-a < b <= a <= c, b >= 0 when a = c) together
 * with a matrix carrying the input onto it. */
inline Reduction reduce_with_matrix(Form const & f)
{
    if (!is_positive_definite(f))
        throw domain_error("reduction requires a positive definite form");
    Form g = f;
    TransformMatrix total;
    Int delta, two_a;
    for (;;) {
        // b into (-a, a]
        two_a = 2 * g.a;
        delta = floor_div(g.a - g.b, two_a);
        if (sgn(delta) != 0) {
            g.c += delta * (g.a * delta + g.b);
            g.b += two_a * delta;
            total = total * TransformMatrix{1, delta, 0, 1};
        }
        if (g.a > g.c || (g.a == g.c && sgn(g.b) < 0)) {
            std::swap(g.a, g.c);
            g.b = -g.b;
            total = total * TransformMatrix{0, -1, 1, 0};
            continue;
        }
        return {std::move(g), std::move(total)};
    }
}

/* Same as reduce_with_matrix without tracking the transformation. */
inline Form reduce(Form f)
{
    if (!is_positive_definite(f))
        throw domain_error("reduction requires a positive definite form");
    Int delta, two_a;
    for (;;) {
        two_a = 2 * f.a;
        delta = floor_div(f.a - f.b, two_a);
        if (sgn(delta) != 0) {
            f.c += delta * (f.a * delta + f.b);
            f.b += two_a * delta;
        }
        if (f.a > f.c || (f.a == f.c && sgn(f.b) < 0)) {
            std::swap(f.a, f.c);
            f.b = -f.b;
            continue;
        }
        return f;
    }
}

inline void require_same_discriminant(Form const & f, Form const & g)
{
    if (discriminant(f) != discriminant(g))
        throw domain_error("forms have different discriminants");
}

inline bool equivalent(Form const & f, Form const & g)
{
    require_same_discriminant(f, g);
    return reduce(f) == reduce(g);
}

/*
 * Composition of two primitive forms of the same discriminant.
 *
 *   l  = gcd(a1, a2, (b1 + b2)/2) = v1 a1 + v2 a2 + w (b1 + b2)/2
 *   a3 = a1 a2 / l^2
 *   b3 = b2 + 2 (a2/l) ((b1 - b2)/2 v2 - c2 w)
 *
 * and c3 from the discriminant. The result is not reduced; its middle
 * coefficient depends on the Bezout coefficients chosen, its class does
 * not.
 */
inline Form compose(Form const & f1, Form const & f2)
{
    Int disc = discriminant(f1);
    if (disc != discriminant(f2))
        throw domain_error("composition of forms with different discriminants");

    Int s = (f1.b + f2.b) / 2;
    Int half_diff = (f1.b - f2.b) / 2;

    // v1 a1 + v2 a2 = g1, then x g1 + w s = l
    ExtendedGcd e1 = ext_gcd(f1.a, f2.a);
    ExtendedGcd e2 = ext_gcd(e1.g, s);
    Int const & l = e2.g;
    Int v2 = e2.s * e1.t;
    Int const & w = e2.t;

    Int a2_over_l = exact_div(f2.a, l);
    Int a3 = exact_div(f1.a * a2_over_l, l);
    Int b3 = f2.b + 2 * a2_over_l * (half_diff * v2 - f2.c * w);
    return form_from_ab(std::move(a3), std::move(b3), disc);
}

inline Form compose_reduced(Form const & f1, Form const & f2)
{
    return reduce(compose(f1, f2));
}

inline bool is_identity(Form const & f)
{
    return reduce(f) == identity_form(discriminant(f));
}

/* Reduced representative of f^n by square-and-multiply. */
inline Form power(Form const & f, Int n)
{
    if (sgn(n) < 0)
        return power(inverse(f), -n);
    Form result = identity_form(discriminant(f));
    Form base = reduce(f);
    while (sgn(n) > 0) {
        if (mpz_odd_p(n.get_mpz_t()))
            result = compose_reduced(result, base);
        n >>= 1;
        if (sgn(n) > 0)
            base = compose_reduced(base, base);
    }
    return result;
}

inline Form power(Form const & f, std::uint64_t n)
{
    return power(f, to_int(n));
}

/* Hash of a reduced form within one discriminant; (a, b) determines c. */
struct FormHash
{
    std::size_t operator()(Form const & f) const noexcept
    {
        IntHash h;
        return h(f.a) * 31 + h(f.b);
    }
};

// Upper limit on |disc| for class number enumeration.
inline constexpr std::uint64_t kClassNumberEnumerationLimit = 20'000'000'000ULL;

/*
 * Calls fn(a, b, c) for every primitive reduced form of the discriminant,
 * enumerating b >= 0 of the right parity, splitting (b^2 - disc)/4 = a c
 * with b <= a <= c and emitting the sign variant (a, -b, c) when it is
 * reduced too.
 */
template <typename Fn>
void for_each_reduced_form(Int const & disc, Fn && fn)
{
    require_valid_discriminant(disc);
    Int abs_disc = -disc;
    if (abs_disc > to_int(kClassNumberEnumerationLimit))
        throw capacity_error("discriminant " + disc.get_str()
                             + " exceeds the class number enumeration limit");
    auto const d = static_cast<std::int64_t>(to_u64(abs_disc));
    auto const b_max = static_cast<std::int64_t>(std::sqrt(double(d) / 3.0)) + 1;
    std::vector<std::uint64_t> divisors;
    for (std::int64_t b = d % 2; b <= b_max; b += 2) {
        auto const n = static_cast<std::uint64_t>((b * b + d) / 4);
        divisors.assign(1, 1);
        for (auto [p, e] : trial_factor(n)) {
            std::size_t count = divisors.size();
            std::uint64_t pk = 1;
            for (unsigned i = 0; i < e; ++i) {
                pk *= p;
                for (std::size_t j = 0; j < count; ++j)
                    divisors.push_back(divisors[j] * pk);
            }
        }
        for (std::uint64_t a : divisors) {
            std::uint64_t c = n / a;
            if (a < std::uint64_t(b) || a > c || a == 0)
                continue;
            if (std::gcd(std::gcd(a, std::uint64_t(b)), c) != 1)
                continue;
            auto const ia = static_cast<std::int64_t>(a);
            auto const ic = static_cast<std::int64_t>(c);
            fn(ia, b, ic);
            if (b != 0 && b != ia && ia != ic)
                fn(ia, -b, ic);
        }
    }
}

inline std::vector<Form> reduced_forms(Int const & disc)
{
    std::vector<Form> out;
    for_each_reduced_form(disc, [&](std::int64_t a, std::int64_t b, std::int64_t c) {
        out.push_back(Form{Int(static_cast<long>(a)), Int(static_cast<long>(b)),
                           Int(static_cast<long>(c))});
    });
    return out;
}

inline Int class_number(Int const & disc)
{
    std::uint64_t h = 0;
    for_each_reduced_form(disc, [&](std::int64_t, std::int64_t, std::int64_t) { ++h; });
    return to_int(h);
}

struct OrderOptions
{
    // order_overflow above this
    std::uint64_t max_order = 1'000'000'000'000ULL;
    // precomputed class number of the discriminant, if known
    std::optional<Int> class_number;
    // iterate compositions up to this order to confirm the result
    std::uint64_t cross_check_limit = 10'000;
};

namespace detail {

inline void cross_check_order(Form const & f, std::uint64_t n)
{
    Form const id = identity_form(discriminant(f));
    Form const base = reduce(f);
    Form acc = base;
    for (std::uint64_t i = 1; i < n; ++i) {
        if (acc == id)
            throw std::logic_error("order cross-check failed: identity reached early");
        acc = compose_reduced(acc, base);
    }
    if (acc != id)
        throw std::logic_error("order cross-check failed: f^n is not the identity");
}

} // namespace detail

/* Order of the class of f dividing the class number h. */
inline std::uint64_t order_dividing(Form const & f, Int const & h)
{
    if (!is_identity(power(f, h)))
        throw std::logic_error("class number is not a multiple of the form order");
    std::uint64_t n = to_u64(h);
    for (auto [p, e] : trial_factor(n)) {
        for (unsigned i = 0; i < e; ++i) {
            if (!is_identity(power(f, n / p)))
                break;
            n /= p;
        }
    }
    return n;
}

/* Order of the class of f by baby-step giant-step, without the class
 * number. Throws order_overflow past max_order. */
inline std::uint64_t order_baby_giant(Form const & f, std::uint64_t max_order)
{
    Int const disc = discriminant(f);
    Form const id = identity_form(disc);
    Form const base = reduce(f);
    if (base == id)
        return 1;

    // step size ~ sqrt of a heuristic class number bound
    double const ad = mpz_get_d(Int(-disc).get_mpz_t());
    double const bound = std::sqrt(ad) * (std::log(ad) + 2.0) / 3.14159;
    auto step = static_cast<std::uint64_t>(std::ceil(std::sqrt(std::max(bound, 1.0))));
    step = std::clamp<std::uint64_t>(step, 1, std::max<std::uint64_t>(max_order, 1));

    std::unordered_map<Form, std::uint64_t, FormHash> baby;
    baby.reserve(step);
    Form acc = id;
    for (std::uint64_t j = 0; j < step; ++j) {
        if (j > 0 && acc == id)
            return j;
        baby.emplace(acc, j);
        acc = compose_reduced(acc, base);
    }
    // acc = f^step
    Form const giant = acc;
    Form g = giant;
    for (std::uint64_t i = 1;; ++i) {
        if (auto it = baby.find(g); it != baby.end()) {
            std::uint64_t n = i * step - it->second;
            if (n > max_order)
                break;
            return n;
        }
        if ((i - 1) * step > max_order)
            break;
        g = compose_reduced(g, giant);
    }
    throw order_overflow("form order exceeds " + std::to_string(max_order));
}

/*
 * Least n >= 1 with f^n in the identity class. Uses the class number
 * (given or enumerated) when the discriminant allows enumeration, and
 * baby-step giant-step otherwise. Small orders are confirmed by direct
 * iteration.
 */
inline std::uint64_t order(Form const & f, OrderOptions const & opts = {})
{
    require_definite_primitive(f);
    Int const disc = discriminant(f);
    std::uint64_t n;
    if (opts.class_number)
        n = order_dividing(f, *opts.class_number);
    else if (-disc <= to_int(kClassNumberEnumerationLimit))
        n = order_dividing(f, class_number(disc));
    else
        n = order_baby_giant(f, opts.max_order);
    if (n > opts.max_order)
        throw order_overflow("form order " + std::to_string(n) + " exceeds "
                             + std::to_string(opts.max_order));
    if (n <= opts.cross_check_limit)
        detail::cross_check_order(f, n);
    return n;
}

} // namespace terai

#endif
