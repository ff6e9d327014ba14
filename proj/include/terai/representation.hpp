#ifndef TERAI_REPRESENTATION_HPP
#define TERAI_REPRESENTATION_HPP

/*
 * Primitive representations N = F(x, y), gcd(x, y) = 1, by forms of
 * discriminant -4D with D odd.
 *
 * F represents N primitively iff F ~ (N, 2L, (L^2 + D)/N) for some root
 * L of L^2 = -D (mod N) making that form primitive. Two routes decide it:
 *
 *  - direct: enumerate the roots modulo N and reduce each form;
 *  - class product: for N = prod q_i with q_i prime powers, the class of
 *    (N, 2L, .) is the product of the classes of (q_i, 2L, .). For an odd
 *    prime p not dividing D those are P^e or P^-e with P = (p, 2r, .); for
 *    2^t with t >= 3 they are g^(t-2) or its inverse with g = (8, 2L3, .).
 *    Nothing of size N is ever reduced.
 *
 * The second route makes exponent scans over N = k^m cheap, and turns them
 * into discrete logarithms when the range of m is large.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "terai/bigint.hpp"
#include "terai/errors.hpp"
#include "terai/form.hpp"
#include "terai/modular.hpp"

namespace terai {

struct RepresentationWitness
{
    Int N;
    Int root;          // L in [0, N), middle coefficient 2L
    Form matched_form; // reduced class representative
};

enum class RepresentationRoute { automatic, direct, class_product };

// Automatic route switches to class products above this many bits of N.
inline constexpr std::size_t kDirectRouteBits = 512;

/* D with disc(f) = -4D, D odd; throws otherwise. */
inline Int odd_half_discriminant(Form const & f)
{
    Int const disc = discriminant(f);
    if (sgn(disc) >= 0 || !divides(4, disc))
        throw domain_error("discriminant must be -4D");
    Int D = -disc / 4;
    if (mpz_even_p(D.get_mpz_t()))
        throw domain_error("discriminant must be -4D with D odd");
    return D;
}

namespace detail {

struct LocalOption
{
    Form cls; // reduced
    Int root; // modulo the local modulus
};

struct LocalPart
{
    Int modulus;
    std::vector<LocalOption> options; // empty: no primitive root
};

/* (p, 2r, .) for the smaller root r of -D mod the odd prime p. */
inline std::optional<std::pair<Form, Int>> prime_form(Int const & D, Int const & p)
{
    auto r = sqrt_mod_prime(-D, p);
    if (!r)
        return std::nullopt;
    Form f{p, 2 * *r, exact_div(*r * *r + D, p)};
    return std::make_pair(reduce(f), *r);
}

/* (8, 2 L3, .) primitive, L3 the least such root; requires D = 7 mod 8. */
inline std::optional<std::pair<Form, Int>> two_adic_generator(Int const & D)
{
    if (mod(-D, 8) != 1)
        return std::nullopt;
    for (unsigned long l = 1; l < 8; l += 2) {
        Int const c = exact_div(Int(l * l) + D, 8);
        if (mpz_odd_p(c.get_mpz_t()))
            return std::make_pair(reduce(Form{8, Int(2 * l), c}), Int(l));
    }
    throw std::logic_error("no primitive form (8, 2L, C)");
}

inline LocalOption inverse_option(LocalOption const & o, Int const & modulus)
{
    return {reduce(inverse(o.cls)), mod(-o.root, modulus)};
}

/* Primitive local forms (2^t, 2L, C) for small t, found directly. */
inline std::vector<LocalOption> small_two_options(Int const & D, unsigned long t)
{
    std::vector<LocalOption> out;
    Int const modulus = Int(1) << t;
    for (auto const & l : sqrts_mod_2pow(-D, t)) {
        Int const c = exact_div(l * l + D, modulus);
        Form const f{modulus, 2 * l, c};
        if (is_primitive(f))
            out.push_back({reduce(f), l});
    }
    return out;
}

inline LocalPart local_part(Int const & D, PrimePower const & pp)
{
    LocalPart part{pow(pp.prime, pp.exponent), {}};
    if (pp.prime == 2) {
        if (pp.exponent <= 2) {
            part.options = small_two_options(D, pp.exponent);
            return part;
        }
        auto gen = two_adic_generator(D);
        if (!gen)
            return part;
        Form const cls = power(gen->first, pp.exponent - 2);
        Int const four = 4;
        Int const l3 = mod(gen->second, four);
        for (auto const & l : sqrts_mod_2pow(-D, pp.exponent)) {
            Int const c = exact_div(l * l + D, part.modulus);
            if (mpz_odd_p(c.get_mpz_t()) && mod(l, four) == l3) {
                LocalOption plus{cls, l};
                part.options = {plus, inverse_option(plus, part.modulus)};
                return part;
            }
        }
        throw std::logic_error("2-adic root matching the generator not found");
    }
    auto pf = prime_form(D, pp.prime);
    if (!pf)
        return part;
    LocalOption plus{power(pf->first, pp.exponent),
                     hensel_lift(pf->second, -D, pp.prime, pp.exponent)};
    part.options = {plus, inverse_option(plus, part.modulus)};
    return part;
}

inline void require_representation_inputs(Form const & f, Int const & D, Int const & n)
{
    require_definite_primitive(f);
    if (sgn(n) <= 0)
        throw domain_error("represented integer must be positive");
    if (gcd(n, D) != 1)
        throw domain_error("represented integer must be coprime to D");
}

inline std::optional<RepresentationWitness>
represents_direct(Form const & f, Int const & D, Factorization const & n)
{
    Form const target = reduce(f);
    Int const & N = n.value();
    for (auto const & l : sqrts_mod(-D, n)) {
        Form const g{N, 2 * l, exact_div(l * l + D, N)};
        if (!is_primitive(g))
            continue;
        if (reduce(g) == target)
            return RepresentationWitness{N, l, target};
    }
    return std::nullopt;
}

inline std::optional<RepresentationWitness>
represents_by_class_product(Form const & f, Int const & D, Factorization const & n)
{
    Form const target = reduce(f);
    Form const id = identity_form(discriminant(f));
    std::vector<LocalPart> parts;
    for (auto const & pp : n.factors()) {
        parts.push_back(local_part(D, pp));
        if (parts.back().options.empty())
            return std::nullopt;
    }
    std::vector<std::size_t> choice(parts.size(), 0);
    auto search = [&](auto & self, std::size_t depth, Form const & acc) -> bool {
        if (depth == parts.size())
            return acc == target;
        for (std::size_t i = 0; i < parts[depth].options.size(); ++i) {
            choice[depth] = i;
            if (self(self, depth + 1, compose_reduced(acc, parts[depth].options[i].cls)))
                return true;
        }
        return false;
    };
    if (!search(search, 0, id))
        return std::nullopt;
    Int root = 0, modulus = 1;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        root = crt_pair(root, modulus, parts[i].options[choice[i]].root, parts[i].modulus);
        modulus *= parts[i].modulus;
    }
    return RepresentationWitness{n.value(), mod(root, modulus), target};
}

} // namespace detail

/* A primitive representation witness of n by f, or nothing. */
inline std::optional<RepresentationWitness>
primitively_represents(Form const & f, Factorization const & n,
                       RepresentationRoute route = RepresentationRoute::automatic)
{
    Int const D = odd_half_discriminant(f);
    detail::require_representation_inputs(f, D, n.value());
    if (route == RepresentationRoute::automatic)
        route = bit_length(n.value()) <= kDirectRouteBits ? RepresentationRoute::direct
                                                          : RepresentationRoute::class_product;
    if (route == RepresentationRoute::direct)
        return detail::represents_direct(f, D, n);
    return detail::represents_by_class_product(f, D, n);
}

struct BruteForceRepresentation
{
    Int x, y;
    bool primitive;

    friend bool operator==(BruteForceRepresentation const &, BruteForceRepresentation const &) = default;
};

inline constexpr unsigned long kBruteForceBound = 100'000'000;

/* Every (x, y), y >= 0, with f(x, y) = n, by exhaustive search over the
 * ellipse 4 a f(x, y) = (2ax + by)^2 + |disc| y^2. Sorted by (y, x). */
inline std::vector<BruteForceRepresentation> brute_force_representations(Form const & f,
                                                                         Int const & n)
{
    require_definite_primitive(f);
    if (sgn(n) <= 0)
        throw domain_error("represented integer must be positive");
    if (n > kBruteForceBound)
        throw capacity_error("brute-force representation bound is 10^8");
    Int const abs_disc = -discriminant(f);
    Int const y_max = isqrt(4 * f.a * n / abs_disc);
    std::vector<BruteForceRepresentation> out;
    for (Int y = 0; y <= y_max; ++y) {
        // a x^2 + (b y) x + (c y^2 - n) = 0
        Int const by = f.b * y;
        Int const q = by * by - 4 * f.a * (f.c * y * y - n);
        if (sgn(q) < 0 || !is_square(q))
            continue;
        Int const s = isqrt(q);
        std::vector<Int> xs;
        for (Int const & num : {Int(-by + s), Int(-by - s)}) {
            if (divides(2 * f.a, num))
                xs.push_back(num / (2 * f.a));
        }
        std::sort(xs.begin(), xs.end());
        xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
        for (auto const & x : xs)
            out.push_back({x, y, gcd(x, y) == 1});
    }
    return out;
}

enum class ExponentRoute { automatic, scan, progression };

// Automatic exponent route scans one m at a time up to this cap.
inline constexpr std::uint64_t kScanExponentCap = 100'000;

/*
 * Which powers k^m a fixed form represents primitively.
 *
 * For k = 2^s prod p_i^e_i the representing classes of k^m are
 * (g^(sm-2))^(+-1) prod (P_i^(e_i m))^(+-1), or the directly enumerated
 * local classes when sm <= 2.
 */
class PowerRepresentations
{
  public:
    PowerRepresentations(Form const & f, Factorization const & k)
        : target_(reduce(f)),
          disc_(discriminant(f)),
          D_(odd_half_discriminant(f))
    {
        detail::require_representation_inputs(f, D_, k.value());
        for (auto const & pp : k.factors()) {
            if (pp.prime == 2) {
                two_exponent_ = pp.exponent;
                if (auto gen = detail::two_adic_generator(D_)) {
                    generator_ = gen->first;
                    generator_step_ = power(gen->first, pp.exponent);
                }
                continue;
            }
            auto pf = detail::prime_form(D_, pp.prime);
            if (!pf) {
                solvable_ = false;
                continue;
            }
            odd_steps_.push_back(power(pf->first, pp.exponent));
        }
    }

    /* Whether f represents k^m primitively, for a single m. */
    bool represents(std::uint64_t m) const
    {
        if (m == 0)
            throw domain_error("exponent must be positive");
        if (!solvable_)
            return false;
        std::vector<std::vector<Form>> options;
        if (auto two = two_options(m, std::nullopt))
            options.push_back(std::move(*two));
        for (auto const & step : odd_steps_)
            options.push_back(plus_minus(power(step, m)));
        return matches(options);
    }

    /* Sorted m in [1, cap] with k^m primitively represented. */
    std::vector<std::uint64_t> exponents(std::uint64_t cap,
                                         ExponentRoute route = ExponentRoute::automatic,
                                         OrderOptions const & order_opts = {}) const
    {
        if (cap == 0)
            throw domain_error("exponent cap must be positive");
        if (route == ExponentRoute::automatic)
            route = cap <= kScanExponentCap ? ExponentRoute::scan : ExponentRoute::progression;
        if (!solvable_)
            return {};
        return route == ExponentRoute::scan ? scan(cap) : progression(cap, order_opts);
    }

  private:
    std::vector<Form> plus_minus(Form const & c) const
    {
        Form inv = reduce(inverse(c));
        if (inv == c)
            return {c};
        return {c, std::move(inv)};
    }

    /* Local classes at 2 for k^m; nothing if k is odd. previous is
     * g^(s(m-1)-2) when already known. Empty vector: no primitive root. */
    std::optional<std::vector<Form>> two_options(std::uint64_t m,
                                                 std::optional<Form> const & previous,
                                                 Form * current = nullptr) const
    {
        if (two_exponent_ == 0)
            return std::nullopt;
        std::uint64_t const t = two_exponent_ * m;
        if (t <= 2) {
            std::vector<Form> out;
            for (auto const & o : detail::small_two_options(D_, t))
                out.push_back(o.cls);
            return out;
        }
        if (!generator_)
            return std::vector<Form>{};
        Form c = previous ? compose_reduced(*previous, *generator_step_)
                          : power(*generator_, t - 2);
        if (current)
            *current = c;
        return plus_minus(c);
    }

    bool matches(std::vector<std::vector<Form>> const & options) const
    {
        std::vector<Form> products{identity_form(disc_)};
        for (auto const & opts : options) {
            if (opts.empty())
                return false;
            std::vector<Form> next;
            next.reserve(products.size() * opts.size());
            for (auto const & p : products)
                for (auto const & o : opts)
                    next.push_back(compose_reduced(p, o));
            products = std::move(next);
        }
        return std::find(products.begin(), products.end(), target_) != products.end();
    }

    std::vector<std::uint64_t> scan(std::uint64_t cap) const
    {
        std::vector<std::uint64_t> out;
        std::vector<Form> odd(odd_steps_.size(), identity_form(disc_));
        std::optional<Form> two_prev;
        for (std::uint64_t m = 1; m <= cap; ++m) {
            std::vector<std::vector<Form>> options;
            Form two_cur;
            bool two_ok = true;
            if (auto two = two_options(m, two_prev, &two_cur)) {
                two_ok = !two->empty();
                options.push_back(std::move(*two));
                if (two_exponent_ * m > 2 && generator_)
                    two_prev = two_cur;
            }
            for (std::size_t i = 0; i < odd.size(); ++i) {
                odd[i] = compose_reduced(odd[i], odd_steps_[i]);
                options.push_back(plus_minus(odd[i]));
            }
            // once 2^(sm) has no primitive root, no larger m has one
            if (!two_ok && two_exponent_ * m > 2)
                break;
            if (two_ok && matches(options))
                out.push_back(m);
        }
        return out;
    }

    /* All x in [0, n) with h^x = t, where h has order n (0 or 1 values). */
    static std::optional<std::uint64_t> discrete_log(Form const & h, Form const & t,
                                                     std::uint64_t n)
    {
        auto step = static_cast<std::uint64_t>(std::ceil(std::sqrt(double(n))));
        step = std::max<std::uint64_t>(step, 1);
        std::unordered_map<Form, std::uint64_t, FormHash> baby;
        baby.reserve(step);
        Form acc = identity_form(discriminant(h));
        for (std::uint64_t j = 0; j < step; ++j) {
            baby.emplace(acc, j);
            acc = compose_reduced(acc, h);
        }
        // acc = h^step; walk t * h^(-i step)
        Form const giant = reduce(inverse(acc));
        Form g = t;
        for (std::uint64_t i = 0; i <= step; ++i) {
            if (auto it = baby.find(g); it != baby.end()) {
                std::uint64_t x = (i * step + it->second) % n;
                return x;
            }
            g = compose_reduced(g, giant);
        }
        return std::nullopt;
    }

    std::vector<std::uint64_t> progression(std::uint64_t cap, OrderOptions const & order_opts) const
    {
        std::vector<std::uint64_t> out;
        // exponents whose local 2-part is enumerated directly
        std::uint64_t first = 1;
        if (two_exponent_ > 0) {
            while (first <= cap && two_exponent_ * first <= 2) {
                if (represents(first))
                    out.push_back(first);
                ++first;
            }
            if (!generator_)
                return out;
        }
        if (first > cap)
            return out;

        // H_eps = g^(+-s) prod step_i^(+-1), target T g^(+-2): H^m = T'
        std::size_t const parts = odd_steps_.size() + (two_exponent_ > 0 ? 1 : 0);
        for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << parts); ++mask) {
            Form h = identity_form(disc_);
            Form t = target_;
            std::size_t bit = 0;
            if (two_exponent_ > 0) {
                bool const neg = (mask >> bit++) & 1;
                Form const step = neg ? reduce(inverse(*generator_step_)) : *generator_step_;
                Form const g2 = power(*generator_, 2);
                h = compose_reduced(h, step);
                t = compose_reduced(t, neg ? reduce(inverse(g2)) : g2);
            }
            for (auto const & s : odd_steps_) {
                bool const neg = (mask >> bit++) & 1;
                h = compose_reduced(h, neg ? reduce(inverse(s)) : s);
            }
            std::uint64_t const n = order(h, order_opts);
            auto x = discrete_log(h, t, n);
            if (!x)
                continue;
            std::uint64_t m = *x;
            if (m < first)
                m += ((first - m + n - 1) / n) * n;
            for (; m <= cap; m += n)
                out.push_back(m);
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    Form target_;
    Int disc_;
    Int D_;
    unsigned long two_exponent_ = 0;
    std::optional<Form> generator_;
    std::optional<Form> generator_step_;
    std::vector<Form> odd_steps_;
    bool solvable_ = true;
};

/* Sorted m in [1, cap] such that f primitively represents k^m. */
inline std::vector<std::uint64_t>
represented_exponents(Form const & f, Factorization const & k, std::uint64_t cap,
                      ExponentRoute route = ExponentRoute::automatic,
                      OrderOptions const & order_opts = {})
{
    return PowerRepresentations(f, k).exponents(cap, route, order_opts);
}

inline std::vector<std::uint64_t>
represented_exponents(Form const & f, Int const & k, std::uint64_t cap,
                      ExponentRoute route = ExponentRoute::automatic)
{
    return represented_exponents(f, factorize(k), cap, route);
}

} // namespace terai

#endif
