// terai: certificates for x^2 + (2k-1)^y = k^z and binary quadratic form tools.
//
// Exit codes: 0 success, 1 verification failure, 2 invalid or ineligible
// input.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "terai/terai.hpp"

namespace {

using namespace terai;

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitInvalid = 2;

// Longest exponent list printed in full.
constexpr std::size_t kPrintLimit = 24;

class usage_error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

Int parse_int(std::string const & s, char const * what)
{
    try {
        return to_int(s);
    } catch (domain_error const &) {
        throw usage_error(std::string(what) + ": not an integer: " + s);
    }
}

template <typename T>
std::string list(std::vector<T> const & v, std::size_t limit = kPrintLimit)
{
    std::string s;
    for (std::size_t i = 0; i < v.size() && i < limit; ++i) {
        if (i)
            s += ", ";
        if constexpr (std::is_same_v<T, Int>)
            s += v[i].get_str();
        else
            s += std::to_string(v[i]);
    }
    if (v.size() > limit)
        s += ", ... (" + std::to_string(v.size()) + " total)";
    return s.empty() ? "-" : s;
}

void print_certificate(std::ostream & os, Certificate const & c)
{
    os << "d = " << c.d << "   D = " << c.D << "   discriminant = " << c.discriminant
       << "   class number = " << (c.class_number ? c.class_number->get_str() : "n/a") << "\n";
    if (c.forms.empty())
        os << "  no solutions of l^2 = -D (mod 4k)\n";
    for (std::size_t i = 0; i < c.forms.size(); ++i) {
        os << "  l = " << c.congruence_solutions[i] << "   f = " << c.forms[i];
        if (i < c.orders.size())
            os << "   order " << c.orders[i];
        os << "\n";
    }
    if (!c.orders.empty()) {
        os << "  M = " << c.M << "\n";
        os << "  exponents m <= M+1 represented: " << list(c.represented_exponents) << "\n";
    }
    os << "  verdict: " << to_string(c.verdict);
    if (c.failure_reason)
        os << " (" << *c.failure_reason << ")";
    os << "\n";
}

void print_context(std::ostream & os, KContext const & ctx)
{
    os << "k = " << ctx.k << "   2k-1 = " << ctx.prime_power.prime;
    if (ctx.prime_power.exponent > 1)
        os << "^" << ctx.prime_power.exponent;
    os << "   k-1 = " << ctx.a << " * " << ctx.b << "^2"
       << (ctx.strictly_eligible ? "" : "   (8 | k: relaxed mode)") << "\n";
}

void write_json(std::string const & path, nlohmann::json const & j)
{
    std::ofstream out(path);
    if (!out)
        throw usage_error("cannot write " + path);
    out << j.dump(2) << "\n";
}

struct VerifyArgs
{
    std::string k;
    std::string d;
    std::string strategy = "ab-first";
    bool relaxed = false;
    std::uint64_t max_order = 1'000'000'000'000ULL;
    std::string json;
};

int cmd_verify(VerifyArgs const & args)
{
    Int const k = parse_int(args.k, "--k");
    if (k < 2)
        throw usage_error("--k must be at least 2");
    Eligibility const e = eligibility(k, !args.relaxed);
    if (!e.eligible) {
        std::cout << "k = " << k << " is ineligible: " << e.reason << "\n";
        return kExitInvalid;
    }
    KContext const ctx = make_context(k);
    print_context(std::cout, ctx);
    CertifyOptions opts;
    opts.max_order = args.max_order;

    if (!args.d.empty()) {
        Int const d = parse_int(args.d, "--d");
        if (d <= 1 || !divides(d, ctx.ab()))
            throw usage_error("--d must exceed 1 and divide ab = " + ctx.ab().get_str());
        Certificate const c = certify_d(ctx, d, opts);
        print_certificate(std::cout, c);
        if (!args.json.empty())
            write_json(args.json, certificate_to_json(c));
        return c.verdict == Verdict::even_only ? kExitOk : kExitFailed;
    }

    DivisorStrategy strategy;
    if (args.strategy == "ab-first")
        strategy = DivisorStrategy::ab_first;
    else if (args.strategy == "ascending")
        strategy = DivisorStrategy::ascending;
    else
        throw usage_error("--d-strategy must be ab-first or ascending");

    VerifyOutcome const out = verify_k(ctx, strategy, opts);
    for (auto const & c : out.failed)
        print_certificate(std::cout, c);
    for (auto const & err : out.errors)
        std::cout << "d = " << err.d << ": " << err.message << "\n";
    if (out.certificate) {
        print_certificate(std::cout, *out.certificate);
        std::cout << "certified: only (x, y, z) = (k-1, 1, 2)\n";
        if (!args.json.empty())
            write_json(args.json, certificate_to_json(*out.certificate));
        return kExitOk;
    }
    std::cout << "exhausted: no divisor d of ab = " << ctx.ab() << " certifies k = " << k
              << " (" << out.failed.size() << " failed, " << out.errors.size()
              << " errors)\n";
    if (!args.json.empty()) {
        nlohmann::json arr = nlohmann::json::array();
        for (auto const & c : out.failed)
            arr.push_back(certificate_to_json(c));
        write_json(args.json, arr);
    }
    return kExitFailed;
}

struct RangeArgs
{
    std::uint64_t from = 0, to = 0;
    unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
    std::string csv;
    bool reverify = false;
};

int run_sweep(RangeArgs const & args, RunMode mode)
{
    if (args.from > args.to)
        throw usage_error("--from exceeds --to");
    if (args.from < 2)
        throw usage_error("--from must be at least 2");
    RangeOptions opts;
    opts.jobs = args.jobs;
    opts.mode = mode;
    opts.reverify = args.reverify;
    RunReport const report = run_range(args.from, args.to, opts);

    std::cout << "k\td\torders\tM\texponents\tverdict\tseconds\n";
    for (auto const & o : report.outcomes) {
        Certificate const * c = o.outcome.certificate ? &*o.outcome.certificate
                              : !o.outcome.failed.empty() ? &o.outcome.failed.front()
                                                          : nullptr;
        std::cout << o.context.k << "\t";
        if (c) {
            std::cout << c->d << "\t" << list(c->orders, 8) << "\t" << c->M << "\t"
                      << list(c->represented_exponents, 8) << "\t"
                      << (o.error ? "error" : to_string(c->verdict));
        } else {
            std::cout << "-\t-\t-\t-\terror";
        }
        std::cout << "\t" << o.seconds << "\n";
        if (!o.verified()) {
            std::cout << "  ** " << (mode == RunMode::conjecture ? "counterexample candidate: "
                                                                  : "not certified: ")
                      << "k = " << o.context.k;
            if (c && c->failure_reason)
                std::cout << " (" << *c->failure_reason << ")";
            if (o.error)
                std::cout << " " << *o.error;
            std::cout << "\n";
        }
    }
    std::cout << "scanned " << report.scanned() << ": verified " << report.verified
              << ", failed " << report.failed << ", skipped (ineligible) "
              << report.skipped_ineligible << "\n";
    if (!args.csv.empty()) {
        std::ofstream out(args.csv);
        if (!out)
            throw usage_error("cannot write " + args.csv);
        write_csv(out, report);
    }
    return report.failed == 0 ? kExitOk : kExitFailed;
}

int cmd_search(std::string const & k_str, std::uint64_t max_z)
{
    Int const k = parse_int(k_str, "--k");
    if (k < 2)
        throw usage_error("--k must be at least 2");
    for (auto const & t : brute_force_solutions(k, max_z))
        std::cout << "(" << t.x << "," << t.y << "," << t.z << ")\n";
    return kExitOk;
}

Form parse_form(std::vector<std::string> const & v, std::size_t at)
{
    Form f{parse_int(v.at(at), "a"), parse_int(v.at(at + 1), "b"), parse_int(v.at(at + 2), "c")};
    try {
        require_definite_primitive(f);
    } catch (domain_error const & e) {
        throw usage_error(std::string("invalid form: ") + e.what());
    }
    return f;
}

int cmd_form(std::string const & op, std::vector<std::string> const & v)
{
    auto need = [&](std::size_t n) {
        if (v.size() != n)
            throw usage_error("form " + op + " expects " + std::to_string(n) + " integers");
    };
    auto print = [](Form const & f) { std::cout << f.a << " " << f.b << " " << f.c << "\n"; };
    if (op == "reduce") {
        need(3);
        print(reduce(parse_form(v, 0)));
    } else if (op == "compose") {
        need(6);
        Form const f = parse_form(v, 0), g = parse_form(v, 3);
        if (discriminant(f) != discriminant(g))
            throw usage_error("forms have different discriminants");
        print(compose(f, g));
    } else if (op == "power") {
        need(4);
        print(power(parse_form(v, 0), parse_int(v[3], "n")));
    } else if (op == "order") {
        need(3);
        std::cout << order(parse_form(v, 0)) << "\n";
    } else if (op == "classnum") {
        need(1);
        Int const disc = parse_int(v[0], "discriminant");
        if (!is_valid_discriminant(disc))
            throw usage_error("invalid negative discriminant " + disc.get_str());
        std::cout << class_number(disc) << "\n";
    } else {
        throw usage_error("unknown form operation " + op);
    }
    return kExitOk;
}

} // namespace

int main(int argc, char ** argv)
{
    CLI::App app{"Certificates for x^2 + (2k-1)^y = k^z via binary quadratic forms"};
    app.require_subcommand(1);

    VerifyArgs verify_args;
    auto * verify = app.add_subcommand("verify", "certify a single k");
    verify->add_option("--k", verify_args.k, "k (multiple of 4)")->required();
    auto * d_opt = verify->add_option("--d", verify_args.d, "certify this divisor d of ab only");
    verify->add_option("--d-strategy", verify_args.strategy, "ab-first or ascending")
            ->excludes(d_opt);
    verify->add_flag("--relaxed", verify_args.relaxed, "accept 8 | k");
    verify->add_option("--max-order", verify_args.max_order, "order overflow threshold");
    verify->add_option("--json", verify_args.json, "write the certificate as JSON");

    RangeArgs range_args;
    auto * range = app.add_subcommand("range", "certify every 4 || k in a range");
    range->add_option("--from", range_args.from)->required();
    range->add_option("--to", range_args.to)->required();
    range->add_option("--jobs", range_args.jobs, "worker threads");
    range->add_option("--csv", range_args.csv, "write results as CSV");
    range->add_flag("--reverify", range_args.reverify, "audit every certificate");

    RangeArgs conj_args;
    auto * conj = app.add_subcommand("conjecture", "check d = ab for every 4 || k in a range");
    conj->add_option("--from", conj_args.from)->required();
    conj->add_option("--to", conj_args.to)->required();
    conj->add_option("--jobs", conj_args.jobs, "worker threads");
    conj->add_option("--csv", conj_args.csv, "write results as CSV");
    conj->add_flag("--reverify", conj_args.reverify, "audit every certificate");

    std::string search_k;
    std::uint64_t max_z = 12;
    auto * search = app.add_subcommand("search", "brute-force solutions with z <= max-z");
    search->add_option("--k", search_k)->required();
    search->add_option("--max-z", max_z)->required();

    std::string form_op;
    std::vector<std::string> form_values;
    auto * form = app.add_subcommand("form", "reduce | compose | power | order | classnum");
    form->add_option("op", form_op)->required();
    form->add_option("values", form_values)->allow_extra_args();
    form->positionals_at_end();

    try {
        app.parse(argc, argv);
    } catch (CLI::CallForHelp const & e) {
        return app.exit(e);
    } catch (CLI::CallForAllHelp const & e) {
        return app.exit(e);
    } catch (CLI::ParseError const & e) {
        app.exit(e);
        std::cerr << app.help();
        return kExitInvalid;
    }

    try {
        if (*verify)
            return cmd_verify(verify_args);
        if (*range)
            return run_sweep(range_args, RunMode::search);
        if (*conj)
            return run_sweep(conj_args, RunMode::conjecture);
        if (*search)
            return cmd_search(search_k, max_z);
        if (*form)
            return cmd_form(form_op, form_values);
    } catch (usage_error const & e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (domain_error const & e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (capacity_error const & e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    return kExitInvalid;
}
