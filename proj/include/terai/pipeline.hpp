#ifndef TERAI_PIPELINE_HPP
#define TERAI_PIPELINE_HPP

/*
 * Per-k certification for x^2 + (2k-1)^y = k^z.
 *
 * With k - 1 = a b^2 (a squarefree), 4 | k and 2k - 1 a prime power, any
 * solution has ab | x and y, z odd once z > 2, so x = d u with d | ab gives
 * a representation of k^z by F = (d^2, 0, 2k - 1). A certificate for (k, d)
 * records the forms f_i = (4k, 2 l_i, .) attached to l^2 = -D (mod 4k),
 * D = d^2 (2k - 1), their orders n_i, M = max n_i, and the exponents
 * m <= M + 1 with k^m primitively represented by F. When every n_i and
 * every such m is even, F represents no odd power of k and the equation
 * has only (k - 1, 1, 2).
 */

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "terai/bigint.hpp"
#include "terai/errors.hpp"
#include "terai/form.hpp"
#include "terai/modular.hpp"
#include "terai/representation.hpp"

namespace terai {

struct SquarefreeDecomposition
{
    Int a; // squarefree
    Int b;

    friend bool operator==(SquarefreeDecomposition const &, SquarefreeDecomposition const &) = default;
};

/* n = a b^2 with a squarefree. */
inline SquarefreeDecomposition decompose_squarefree(Int const & n)
{
    SquarefreeDecomposition out{1, 1};
    Factorization const f = factorize(n);
    for (auto const & pp : f.factors()) {
        if (pp.exponent % 2 == 1)
            out.a *= pp.prime;
        out.b *= pow(pp.prime, pp.exponent / 2);
    }
    return out;
}

struct Eligibility
{
    Int k;
    bool strict = true;
    bool divisible_by_4 = false;
    bool exactly_divisible_by_4 = false; // k = 4 (mod 8)
    std::optional<PrimePower> prime_power; // of 2k - 1
    bool eligible = false;
    std::string reason;
};

/* Strict: 4 || k and 2k - 1 a prime power. Relaxed: 4 | k suffices. */
inline Eligibility eligibility(Int const & k, bool strict = true)
{
    if (k < 2)
        throw domain_error("k must be at least 2");
    Eligibility e;
    e.k = k;
    e.strict = strict;
    e.divisible_by_4 = divides(4, k);
    e.exactly_divisible_by_4 = mod(k, 8) == 4;
    e.prime_power = is_prime_power(2 * k - 1);
    if (!e.divisible_by_4)
        e.reason = "4 does not divide k";
    else if (strict && !e.exactly_divisible_by_4)
        e.reason = "8 divides k";
    else if (!e.prime_power)
        e.reason = "2k-1 is not a prime power";
    else
        e.eligible = true;
    return e;
}

inline std::vector<Int> divisors(Factorization const & n)
{
    std::vector<Int> out{Int(1)};
    for (auto const & pp : n.factors()) {
        std::size_t const count = out.size();
        Int pk = 1;
        for (unsigned long i = 0; i < pp.exponent; ++i) {
            pk *= pp.prime;
            for (std::size_t j = 0; j < count; ++j)
                out.push_back(out[j] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

struct KContext
{
    Int k;
    PrimePower prime_power; // 2k - 1 = p^e
    Int a, b;               // k - 1 = a b^2
    std::vector<Int> ab_divisors; // divisors of ab exceeding 1, ascending
    bool strictly_eligible = false;

    Int ab() const { return a * b; }
};

/* Requires relaxed eligibility. */
inline KContext make_context(Int const & k)
{
    Eligibility const e = eligibility(k, false);
    if (!e.eligible)
        throw domain_error("k = " + k.get_str() + " is ineligible: " + e.reason);
    KContext ctx;
    ctx.k = k;
    ctx.prime_power = *e.prime_power;
    auto const [a, b] = decompose_squarefree(k - 1);
    ctx.a = a;
    ctx.b = b;
    ctx.strictly_eligible = e.exactly_divisible_by_4;
    for (auto const & d : divisors(factorize(a * b)))
        if (d > 1)
            ctx.ab_divisors.push_back(d);
    if (gcd(ctx.ab(), 2 * k - 1) != 1 || gcd(ctx.ab(), k) != 1)
        throw std::logic_error("ab shares a factor with k or 2k - 1");
    return ctx;
}

struct CandidateForms
{
    Int D;
    CongruenceSolutionSet congruence;
    Form form; // (d^2, 0, 2k - 1)
};

inline CandidateForms build_candidate_forms(KContext const & ctx, Int const & d)
{
    if (d <= 1 || !divides(d, ctx.ab()))
        throw domain_error("d = " + d.get_str() + " must exceed 1 and divide ab = "
                           + ctx.ab().get_str());
    Int const q = 2 * ctx.k - 1;
    CandidateForms out{d * d * q, solve_terai_congruence(ctx.k, d * d * q),
                       make_form(d * d, 0, q)};
    if (discriminant(out.form) != -4 * out.D)
        throw std::logic_error("candidate form has the wrong discriminant");
    return out;
}

enum class Verdict { even_only, failed };

inline std::string to_string(Verdict v)
{
    return v == Verdict::even_only ? "even-only" : "failed";
}

namespace failure {
inline std::string odd_order(std::size_t i) { return "odd-order(" + std::to_string(i) + ")"; }
inline std::string odd_exponent(std::uint64_t m) { return "odd-exponent(" + std::to_string(m) + ")"; }
inline std::string const no_congruence_solutions = "no-congruence-solutions";
inline std::string const order_overflow = "order-overflow";
} // namespace failure

struct Certificate
{
    Int k, d, D, discriminant;
    std::vector<Int> congruence_solutions;
    std::vector<Form> forms;
    std::vector<std::uint64_t> orders;
    std::optional<Int> class_number; // absent beyond the enumeration limit
    std::uint64_t M = 0;
    std::vector<std::uint64_t> represented_exponents; // m in [1, M + 1]
    Verdict verdict = Verdict::failed;
    std::optional<std::string> failure_reason;

    friend bool operator==(Certificate const &, Certificate const &) = default;
};

struct CertifyOptions
{
    std::uint64_t max_order = 1'000'000'000'000ULL;
    ExponentRoute exponent_route = ExponentRoute::automatic;
};

namespace detail {

inline void settle_verdict(Certificate & cert)
{
    cert.verdict = Verdict::failed;
    cert.failure_reason.reset();
    for (std::size_t i = 0; i < cert.orders.size(); ++i) {
        if (cert.orders[i] % 2 != 0) {
            cert.failure_reason = failure::odd_order(i);
            return;
        }
    }
    for (auto m : cert.represented_exponents) {
        if (m % 2 != 0) {
            cert.failure_reason = failure::odd_exponent(m);
            return;
        }
    }
    cert.verdict = Verdict::even_only;
}

inline std::optional<Int> class_number_if_enumerable(Int const & disc)
{
    if (-disc <= to_int(kClassNumberEnumerationLimit))
        return class_number(disc);
    return std::nullopt;
}

} // namespace detail

inline Certificate certify_d(KContext const & ctx, Int const & d, CertifyOptions const & opts = {})
{
    CandidateForms const cand = build_candidate_forms(ctx, d);
    Certificate cert;
    cert.k = ctx.k;
    cert.d = d;
    cert.D = cand.D;
    cert.discriminant = -4 * cand.D;
    cert.congruence_solutions = cand.congruence.solutions;
    cert.forms = cand.congruence.forms;
    if (cert.forms.empty()) {
        cert.failure_reason = failure::no_congruence_solutions;
        return cert;
    }
    cert.class_number = detail::class_number_if_enumerable(cert.discriminant);

    OrderOptions order_opts;
    order_opts.max_order = opts.max_order;
    order_opts.class_number = cert.class_number;
    try {
        for (auto const & f : cert.forms)
            cert.orders.push_back(order(f, order_opts));
    } catch (terai::order_overflow const &) {
        cert.orders.clear();
        cert.failure_reason = failure::order_overflow;
        return cert;
    }
    for (auto n : cert.orders)
        if (n <= 1)
            throw std::logic_error("form f_i lies in the identity class");
    cert.M = *std::max_element(cert.orders.begin(), cert.orders.end());
    cert.represented_exponents = represented_exponents(cand.form, factorize(ctx.k), cert.M + 1,
                                                       opts.exponent_route, order_opts);
    detail::settle_verdict(cert);
    return cert;
}

inline Certificate certify_d(Int const & k, Int const & d, CertifyOptions const & opts = {})
{
    return certify_d(make_context(k), d, opts);
}

enum class DivisorStrategy { ab_first, ascending };

inline std::vector<Int> candidate_divisors(KContext const & ctx, DivisorStrategy strategy)
{
    std::vector<Int> out;
    if (strategy == DivisorStrategy::ab_first)
        out.push_back(ctx.ab());
    for (auto const & d : ctx.ab_divisors)
        if (strategy == DivisorStrategy::ascending || d != ctx.ab())
            out.push_back(d);
    return out;
}

struct CandidateError
{
    Int d;
    std::string message;
};

struct VerifyOutcome
{
    KContext context;
    std::optional<Certificate> certificate; // first even-only certificate
    std::vector<Certificate> failed;        // every failed candidate, in order tried
    std::vector<CandidateError> errors;

    bool verified() const { return certificate.has_value(); }
};

/* First d (per strategy) with an even-only certificate, or the exhaustion
 * report. Capacity errors are recorded per candidate. */
inline VerifyOutcome verify_k(KContext const & ctx,
                              DivisorStrategy strategy = DivisorStrategy::ab_first,
                              CertifyOptions const & opts = {})
{
    VerifyOutcome out{ctx, std::nullopt, {}, {}};
    for (auto const & d : candidate_divisors(ctx, strategy)) {
        try {
            Certificate cert = certify_d(ctx, d, opts);
            if (cert.verdict == Verdict::even_only) {
                out.certificate = std::move(cert);
                return out;
            }
            out.failed.push_back(std::move(cert));
        } catch (capacity_error const & e) {
            out.errors.push_back({d, e.what()});
        }
    }
    return out;
}

inline VerifyOutcome verify_k(Int const & k, DivisorStrategy strategy = DivisorStrategy::ab_first,
                              CertifyOptions const & opts = {})
{
    return verify_k(make_context(k), strategy, opts);
}

/* Certificate for d = ab exactly; requires strict eligibility. */
inline Certificate check_ab_divisor(Int const & k, CertifyOptions const & opts = {})
{
    Eligibility const e = eligibility(k, true);
    if (!e.eligible)
        throw domain_error("k = " + k.get_str() + " is not strictly eligible: " + e.reason);
    KContext const ctx = make_context(k);
    return certify_d(ctx, ctx.ab(), opts);
}

struct SolutionTriple
{
    Int x;
    std::uint64_t y, z;

    friend bool operator==(SolutionTriple const &, SolutionTriple const &) = default;
};

// Largest k^z_max (in bits) the brute-force search accepts.
inline constexpr std::size_t kBruteForceBitBudget = 1u << 20;

/* All (x, y, z), 1 <= z <= z_max, x, y >= 1, with x^2 + (2k-1)^y = k^z. */
inline std::vector<SolutionTriple> brute_force_solutions(Int const & k, std::uint64_t z_max)
{
    if (k < 2)
        throw domain_error("k must be at least 2");
    if (double(z_max) * double(bit_length(k)) > double(kBruteForceBitBudget))
        throw capacity_error("k^z_max exceeds the brute-force budget");
    Int const q = 2 * k - 1;
    std::vector<SolutionTriple> out;
    Int kz = 1;
    for (std::uint64_t z = 1; z <= z_max; ++z) {
        kz *= k;
        Int qy = q;
        for (std::uint64_t y = 1; qy < kz; ++y, qy *= q) {
            Int const rest = kz - qy;
            Int const x = isqrt(rest);
            if (x * x == rest)
                out.push_back({x, y, z});
        }
    }
    return out;
}

struct ReverifyReport
{
    bool ok = true;
    std::vector<std::string> mismatches;
};

namespace detail {

/* Recomputes a certificate for (k, d) along routes other than certify_d
 * where one exists: orders by baby-step giant-step instead of class
 * number divisors, exponents by the opposite exponent route. */
inline Certificate audit_certificate(Int const & k, Int const & d, std::uint64_t max_order)
{
    KContext const ctx = make_context(k);
    CandidateForms const cand = build_candidate_forms(ctx, d);
    Certificate cert;
    cert.k = k;
    cert.d = d;
    cert.D = cand.D;
    cert.discriminant = discriminant(cand.form);
    cert.congruence_solutions = cand.congruence.solutions;
    cert.forms = cand.congruence.forms;
    if (cert.forms.empty()) {
        cert.failure_reason = failure::no_congruence_solutions;
        return cert;
    }
    cert.class_number = class_number_if_enumerable(cert.discriminant);
    try {
        for (auto const & f : cert.forms) {
            std::uint64_t const n = order_baby_giant(f, max_order);
            if (!is_identity(power(f, n)))
                throw std::logic_error("audited order is not an annihilator");
            if (cert.class_number && !divides(to_int(n), *cert.class_number))
                throw std::logic_error("audited order does not divide the class number");
            cert.orders.push_back(n);
        }
    } catch (terai::order_overflow const &) {
        cert.orders.clear();
        cert.failure_reason = failure::order_overflow;
        return cert;
    }
    cert.M = *std::max_element(cert.orders.begin(), cert.orders.end());
    std::uint64_t const cap = cert.M + 1;
    ExponentRoute const route = cap <= kScanExponentCap ? ExponentRoute::progression
                                                        : ExponentRoute::scan;
    OrderOptions order_opts;
    order_opts.max_order = max_order;
    order_opts.class_number = cert.class_number;
    cert.represented_exponents = represented_exponents(cand.form, factorize(k), cap, route, order_opts);
    settle_verdict(cert);
    return cert;
}

template <typename T>
std::string join(std::vector<T> const & v)
{
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            s += ",";
        if constexpr (std::is_same_v<T, Int>)
            s += v[i].get_str();
        else if constexpr (std::is_same_v<T, Form>)
            s += "(" + v[i].a.get_str() + "," + v[i].b.get_str() + "," + v[i].c.get_str() + ")";
        else
            s += std::to_string(v[i]);
    }
    return s + "]";
}

} // namespace detail

/* Recomputes every field from (k, d) and compares. */
inline ReverifyReport reverify_certificate(Certificate const & cert,
                                           std::uint64_t max_order = 1'000'000'000'000ULL)
{
    ReverifyReport r;
    auto check = [&](bool same, std::string const & field, std::string const & got,
                     std::string const & want) {
        if (!same) {
            r.ok = false;
            r.mismatches.push_back(field + ": certificate has " + got + ", recomputed " + want);
        }
    };
    Certificate fresh;
    try {
        fresh = detail::audit_certificate(cert.k, cert.d, max_order);
    } catch (std::exception const & e) {
        r.ok = false;
        r.mismatches.push_back(std::string("recomputation failed: ") + e.what());
        return r;
    }
    using detail::join;
    check(cert.D == fresh.D, "D", cert.D.get_str(), fresh.D.get_str());
    check(cert.discriminant == fresh.discriminant, "discriminant", cert.discriminant.get_str(),
          fresh.discriminant.get_str());
    check(cert.congruence_solutions == fresh.congruence_solutions, "congruence_solutions",
          join(cert.congruence_solutions), join(fresh.congruence_solutions));
    check(cert.forms == fresh.forms, "forms", join(cert.forms), join(fresh.forms));
    check(cert.orders == fresh.orders, "orders", join(cert.orders), join(fresh.orders));
    check(cert.class_number == fresh.class_number, "class_number",
          cert.class_number ? cert.class_number->get_str() : "null",
          fresh.class_number ? fresh.class_number->get_str() : "null");
    check(cert.M == fresh.M, "M", std::to_string(cert.M), std::to_string(fresh.M));
    check(cert.represented_exponents == fresh.represented_exponents, "represented_exponents",
          join(cert.represented_exponents), join(fresh.represented_exponents));
    check(cert.verdict == fresh.verdict, "verdict", to_string(cert.verdict),
          to_string(fresh.verdict));
    check(cert.failure_reason == fresh.failure_reason, "failure_reason",
          cert.failure_reason.value_or("null"), fresh.failure_reason.value_or("null"));
    return r;
}

/* Applies fn to every item on up to jobs threads; results keep input order.
 * The first exception (by index) is rethrown after all workers finish. */
template <typename Item, typename Fn>
auto parallel_map(std::vector<Item> const & items, unsigned jobs, Fn fn)
        -> std::vector<decltype(fn(items.front()))>
{
    using Result = decltype(fn(items.front()));
    std::vector<std::optional<Result>> slots(items.size());
    std::vector<std::exception_ptr> errors(items.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < items.size();) {
            try {
                slots[i].emplace(fn(items[i]));
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(items.size())));
    std::vector<std::thread> pool;
    for (unsigned j = 1; j < jobs; ++j)
        pool.emplace_back(worker);
    worker();
    for (auto & t : pool)
        t.join();
    std::vector<Result> out;
    out.reserve(items.size());
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (errors[i])
            std::rethrow_exception(errors[i]);
        out.push_back(std::move(*slots[i]));
    }
    return out;
}

} // namespace terai

#endif
