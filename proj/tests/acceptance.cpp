// Acceptance run: one PASS/FAIL line per criterion. Exit status is nonzero
// iff a blocking criterion fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <thread>

#include "support.hpp"

using namespace terai;
using support::I;

namespace {

struct Check
{
    std::ostringstream detail;
    bool ok = true;

    void require(bool cond, std::string const & what)
    {
        if (!cond && ok)
            detail << what;
        ok = ok && cond;
    }
};

int run_cli(std::string const & args, std::string const & log)
{
    std::string const cmd = std::string(TERAI_CLI_PATH) + " " + args + " > " + log + " 2>&1";
    int const status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::filesystem::path scratch()
{
    auto const dir = std::filesystem::temp_directory_path() / "terai-acceptance";
    std::filesystem::create_directories(dir);
    return dir;
}

unsigned jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

std::vector<long> strictly_eligible_up_to(long n)
{
    std::vector<long> out;
    for (long k = 4; k <= n; ++k)
        if (oracle::strictly_eligible(k))
            out.push_back(k);
    return out;
}

void range_reproduction(Check & c)
{
    RangeOptions opts;
    opts.jobs = jobs();
    opts.reverify = true;
    RunReport const r = run_range(4, 1000, opts);
    auto const expected = strictly_eligible_up_to(1000);
    c.require(r.outcomes.size() == expected.size(), "eligible k set differs from oracle scan");
    for (std::size_t i = 0; i < r.outcomes.size() && i < expected.size(); ++i) {
        auto const & o = r.outcomes[i];
        c.require(o.context.k == expected[i], "eligible k mismatch at " + std::to_string(expected[i]));
        c.require(o.verified(), "k = " + o.context.k.get_str() + " not certified");
    }
    auto const csv = scratch() / "range.csv";
    int const code = run_cli("range --from 4 --to 1000 --jobs " + std::to_string(jobs()) + " --csv "
                                     + csv.string(),
                             (scratch() / "range.log").string());
    c.require(code == 0, "range exit code " + std::to_string(code));
    std::ifstream in(csv);
    std::size_t rows = 0;
    for (std::string line; std::getline(in, line);)
        rows += line.find("even-only") != std::string::npos;
    c.require(rows == expected.size(), "CSV even-only rows " + std::to_string(rows));
    c.detail << r.verified << " of " << expected.size() << " eligible k certified and reverified";
}

void golden_k4(Check & c)
{
    Certificate const cert = certify_d(I(4), I(3));
    c.require(cert.d == 3, "d");
    c.require(oracle::congruence_scan(4, 63) == std::vector<long>{7}, "oracle congruence scan");
    c.require(cert.congruence_solutions == std::vector<Int>{I(7)}, "congruence solutions");
    c.require(cert.forms == std::vector<Form>{Form{I(16), I(14), I(7)}}, "forms");
    c.require(oracle::iterated_order({16, 14, 7}) == 2, "oracle order");
    c.require(cert.orders == std::vector<std::uint64_t>{2}, "orders");
    c.require(cert.M == 2, "M");
    std::vector<std::uint64_t> scan;
    long km = 1;
    for (std::uint64_t m = 1; m <= cert.M + 1; ++m) {
        km *= 4;
        if (!oracle::primitive_reps({9, 0, 7}, km).empty())
            scan.push_back(m);
    }
    c.require(scan == std::vector<std::uint64_t>{2}, "oracle representation scan");
    c.require(cert.represented_exponents == scan, "represented exponents");
    c.require(cert.verdict == Verdict::even_only, "verdict");
    c.detail << "d=3, l={7}, f=(16,14,7), order 2, M=2, m={2}, even-only";
}

void negative_control(Check & c)
{
    auto const out = verify_k(I(24));
    c.require(!out.certificate && out.failed.size() == 1, "library verify_k(24) did not exhaust");
    int const code = run_cli("verify --k 24 --relaxed", (scratch() / "k24.log").string());
    c.require(code == 1, "exit code " + std::to_string(code));
    if (!out.failed.empty())
        c.detail << "d=23 " << out.failed[0].failure_reason.value_or("?") << ", exit " << code;
}

void soundness(Check & c)
{
    std::size_t n = 0;
    for (long k : strictly_eligible_up_to(200)) {
        KContext const ctx = make_context(I(k));
        auto const sols = brute_force_solutions(I(k), 12);
        c.require(sols == std::vector<SolutionTriple>{{I(k - 1), 1, 2}},
                  "unexpected solutions for k = " + std::to_string(k));
        for (auto const & s : sols) {
            c.require(divides(ctx.ab(), s.x), "ab does not divide x for k = " + std::to_string(k));
            if (s.z > 2)
                c.require(s.y % 2 == 1 && s.z % 2 == 1, "parity for k = " + std::to_string(k));
        }
        ++n;
    }
    c.detail << n << " k values, z <= 12, only (k-1, 1, 2)";
}

void count_law(Check & c)
{
    std::size_t pairs = 0;
    for (long k : strictly_eligible_up_to(1000)) {
        KContext const ctx = make_context(I(k));
        std::size_t const expected = std::size_t(1) << (oracle::omega(k) - 1);
        for (auto const & d : ctx.ab_divisors) {
            auto const s = build_candidate_forms(ctx, d).congruence;
            std::string const where = "k = " + std::to_string(k) + ", d = " + d.get_str();
            c.require(s.solutions.size() == expected, "count at " + where);
            c.require(pairing_holds(s), "pairing at " + where);
            if (s.D.fits_slong_p()) {
                std::vector<long> got;
                for (auto const & l : s.solutions)
                    got.push_back(l.get_si());
                c.require(got == oracle::congruence_scan(k, s.D.get_si()), "oracle scan at " + where);
            }
            ++pairs;
        }
    }
    c.detail << pairs << " (k, d) pairs";
}

void power_law(Check & c)
{
    std::size_t n = 0;
    for (long k = 4; k <= 100; k += 4) {
        if (!eligibility(I(k), false).eligible)
            continue;
        KContext const ctx = make_context(I(k));
        for (auto const & d : ctx.ab_divisors) {
            auto const cand = build_candidate_forms(ctx, d);
            for (std::size_t i = 0; i < cand.congruence.forms.size(); ++i) {
                Form const f = cand.congruence.forms[i];
                Int const l = cand.congruence.solutions[i];
                Form acc = f;
                for (unsigned long j = 2; j <= 6; ++j) {
                    acc = compose(acc, f);
                    std::string const where = "k = " + std::to_string(k) + ", j = " + std::to_string(j);
                    c.require(acc.a == 4 * pow(I(k), j), "leading coefficient at " + where);
                    c.require(mod(acc.b - 2 * (2 * I(k) + l), 8 * I(k)) == 0,
                              "middle coefficient at " + where);
                    ++n;
                }
            }
        }
    }
    c.detail << n << " compositions";
}

void oracle_equivalence(Check & c)
{
    int n = 0;
    while (n < 200) {
        long const D = 2 * support::uniform(0, 12499) + 1; // |disc| = 4D <= 10^5
        auto const forms = oracle::reduced_forms(-4 * D);
        auto const t = forms[std::size_t(support::uniform(0, long(forms.size()) - 1))];
        long const N = support::uniform(1, 100000);
        if (std::gcd(N, D) != 1)
            continue;
        Form const f = support::to_form(t);
        bool brute = false;
        for (auto const & r : brute_force_representations(f, I(N)))
            brute = brute || r.primitive;
        bool const scan = !oracle::primitive_reps(t, N).empty();
        auto const w = primitively_represents(f, factorize(I(N)));
        std::string const where = "(" + std::to_string(t.a) + "," + std::to_string(t.b) + ","
                                + std::to_string(t.c) + "), N = " + std::to_string(N);
        c.require(w.has_value() == brute && brute == scan, "disagreement at " + where);
        ++n;
    }
    c.detail << n << " random instances";
}

void group_law(Check & c)
{
    int n = 0;
    for (int i = 0; i < 1000; ++i) {
        auto const t = support::random_form(100000);
        auto const forms = oracle::reduced_forms(oracle::disc(t));
        auto pick = [&] {
            return support::to_form(forms[std::size_t(support::uniform(0, long(forms.size()) - 1))]);
        };
        Form const f = support::to_form(t), g = pick(), h = pick();
        Int const disc = discriminant(f);
        auto const A = support::random_unimodular(8), B = support::random_unimodular(8);
        Form const fa = transform(f, A), gb = transform(g, B);
        Form const id = identity_form(disc);
        std::string const where = "iteration " + std::to_string(i);
        c.require(discriminant(fa) == disc && discriminant(compose(f, g)) == disc
                          && discriminant(power(f, I(support::uniform(0, 30)))) == disc
                          && discriminant(inverse(f)) == disc,
                  "discriminant preservation, " + where);
        c.require(reduce(fa) == reduce(f) && reduce(reduce(f)) == reduce(f), "canonicity, " + where);
        c.require(reduce(compose(fa, gb)) == reduce(compose(f, g)), "well-definedness, " + where);
        c.require(equivalent(compose(compose(f, g), h), compose(f, compose(g, h))),
                  "associativity, " + where);
        c.require(is_identity(compose(f, inverse(f))) && equivalent(compose(f, id), f),
                  "inverse/identity, " + where);
        if (i % 10 == 0)
            c.require(divides(I(long(order(f))), class_number(disc)), "order | h, " + where);
        ++n;
    }
    c.detail << n << " randomized checks";
}

void extension_probe(Check & c)
{
    auto const log = scratch() / "k60040.log";
    int const code = run_cli("verify --k 60040 --relaxed", log.string());
    auto const out = verify_k(I(60040));
    c.require(code == 0 && out.certificate, "no certifying divisor");
    if (!c.ok) {
        c.detail << " (exit " << code << "; ";
        for (auto const & f : out.failed)
            c.detail << "d=" << f.d << " " << f.failure_reason.value_or("?") << " ";
        c.detail << ")";
    } else {
        c.detail << "certified with d = " << out.certificate->d;
    }
}

} // namespace

int main()
{
    struct Criterion
    {
        int id;
        char const * name;
        std::function<void(Check &)> run;
        bool blocking;
    };
    std::vector<Criterion> const criteria{
            {1, "range 4..1000 certifies every 4 || k with 2k-1 a prime power", range_reproduction, true},
            {2, "k = 4 golden certificate against oracles", golden_k4, true},
            {3, "negative control verify --k 24 --relaxed exits 1", negative_control, true},
            {4, "brute-force soundness for eligible k <= 200", soundness, true},
            {5, "congruence count 2^(w(k)-1) and root pairing, k <= 1000", count_law, true},
            {6, "power law of stepwise composition, k <= 100, j = 2..6", power_law, true},
            {7, "primitively_represents agrees with brute force", oracle_equivalence, true},
            {8, "randomized group-law properties", group_law, true},
            {9, "extension probe verify --k 60040 --relaxed (non-blocking)", extension_probe, false},
    };
    bool all_ok = true;
    for (auto const & cr : criteria) {
        Check c;
        auto const start = std::chrono::steady_clock::now();
        try {
            cr.run(c);
        } catch (std::exception const & e) {
            c.require(false, std::string("exception: ") + e.what());
        }
        double const secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s criterion %d: %s [%s] (%.1fs)\n", c.ok ? "PASS" : "FAIL", cr.id, cr.name,
                    c.detail.str().c_str(), secs);
        std::fflush(stdout);
        if (cr.blocking)
            all_ok = all_ok && c.ok;
    }
    return all_ok ? 0 : 1;
}
