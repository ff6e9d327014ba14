#ifndef TERAI_REPORT_HPP
#define TERAI_REPORT_HPP

// Range sweeps over k and their CSV rendering.

#include <chrono>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "terai/pipeline.hpp"

namespace terai {

enum class RunMode {
    search,     // divisor search per strategy
    conjecture, // d = ab only
};

struct RangeOptions
{
    unsigned jobs = 1;
    DivisorStrategy strategy = DivisorStrategy::ab_first;
    RunMode mode = RunMode::search;
    CertifyOptions certify;
    bool reverify = false; // audit every even-only certificate
};

struct KOutcome
{
    KContext context;
    VerifyOutcome outcome;
    std::optional<std::string> error; // reverification mismatch
    double seconds = 0;

    bool verified() const { return outcome.verified() && !error; }
};

struct RunReport
{
    std::uint64_t from = 0, to = 0;
    RangeOptions options;
    std::vector<KOutcome> outcomes; // strictly eligible k, ascending
    std::size_t verified = 0, failed = 0, skipped_ineligible = 0;

    std::size_t scanned() const { return verified + failed + skipped_ineligible; }
};

inline KOutcome run_one(Int const & k, RangeOptions const & opts)
{
    auto const start = std::chrono::steady_clock::now();
    KContext const ctx = make_context(k);
    KOutcome out{ctx, VerifyOutcome{ctx, std::nullopt, {}, {}}, std::nullopt, 0};
    if (opts.mode == RunMode::conjecture) {
        Certificate cert = certify_d(ctx, ctx.ab(), opts.certify);
        if (cert.verdict == Verdict::even_only)
            out.outcome.certificate = std::move(cert);
        else
            out.outcome.failed.push_back(std::move(cert));
    } else {
        out.outcome = verify_k(ctx, opts.strategy, opts.certify);
    }
    if (opts.reverify && out.outcome.certificate) {
        ReverifyReport const r = reverify_certificate(*out.outcome.certificate,
                                                      opts.certify.max_order);
        if (!r.ok)
            out.error = "reverification failed: " + r.mismatches.front();
    }
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

/* Every strictly eligible k in [from, to]. */
inline RunReport run_range(std::uint64_t from, std::uint64_t to, RangeOptions const & opts = {})
{
    if (from > to)
        throw domain_error("range start exceeds range end");
    if (from < 2)
        throw domain_error("range must start at k >= 2");
    RunReport report;
    report.from = from;
    report.to = to;
    report.options = opts;
    std::vector<Int> ks;
    for (std::uint64_t k = from; k <= to; ++k) {
        Int const kk = to_int(k);
        if (eligibility(kk, true).eligible)
            ks.push_back(kk);
        else
            ++report.skipped_ineligible;
    }
    report.outcomes = parallel_map(ks, opts.jobs, [&](Int const & k) { return run_one(k, opts); });
    for (auto const & o : report.outcomes)
        ++(o.verified() ? report.verified : report.failed);
    return report;
}

inline std::string const kCsvHeader = "k,a,b,d,orders,M,exponents,verdict";

namespace detail {

template <typename T>
std::string semicolon_list(std::vector<T> const & v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            s += ";";
        if constexpr (std::is_same_v<T, Int>)
            s += v[i].get_str();
        else
            s += std::to_string(v[i]);
    }
    return s;
}

} // namespace detail

/* One row per k: the accepted certificate, else the first failed one. */
inline void write_csv(std::ostream & os, RunReport const & report)
{
    os << kCsvHeader << "\n";
    for (auto const & o : report.outcomes) {
        KContext const & ctx = o.context;
        os << ctx.k << "," << ctx.a << "," << ctx.b << ",";
        Certificate const * c = o.outcome.certificate ? &*o.outcome.certificate
                              : !o.outcome.failed.empty() ? &o.outcome.failed.front()
                                                          : nullptr;
        if (!c) {
            os << ",,,,error\n";
            continue;
        }
        os << c->d << "," << detail::semicolon_list(c->orders) << "," << c->M << ","
           << detail::semicolon_list(c->represented_exponents) << ","
           << (o.error ? "error" : to_string(c->verdict)) << "\n";
    }
}

} // namespace terai

#endif
