#ifndef TERAI_CERTIFICATE_IO_HPP
#define TERAI_CERTIFICATE_IO_HPP

// JSON form of a Certificate. Every integer is a decimal string.

#include <cstdint>
#include <string>

#include <json.hpp>

#include "terai/pipeline.hpp"

namespace terai {

inline nlohmann::json certificate_to_json(Certificate const & c)
{
    using nlohmann::json;
    auto strings = [](auto const & v) {
        json arr = json::array();
        for (auto const & x : v) {
            if constexpr (std::is_same_v<std::decay_t<decltype(x)>, Int>)
                arr.push_back(x.get_str());
            else
                arr.push_back(std::to_string(x));
        }
        return arr;
    };
    json forms = json::array();
    for (auto const & f : c.forms)
        forms.push_back({f.a.get_str(), f.b.get_str(), f.c.get_str()});
    return json{
        {"k", c.k.get_str()},
        {"d", c.d.get_str()},
        {"D", c.D.get_str()},
        {"discriminant", c.discriminant.get_str()},
        {"congruence_solutions", strings(c.congruence_solutions)},
        {"forms", forms},
        {"orders", strings(c.orders)},
        {"class_number", c.class_number ? json(c.class_number->get_str()) : json(nullptr)},
        {"M", std::to_string(c.M)},
        {"represented_exponents", strings(c.represented_exponents)},
        {"verdict", to_string(c.verdict)},
        {"failure_reason", c.failure_reason ? json(*c.failure_reason) : json(nullptr)},
    };
}

namespace detail {

inline Int json_int(nlohmann::json const & j, char const * field)
{
    if (!j.is_string())
        throw domain_error(std::string("certificate field ") + field
                           + " must be a decimal string");
    return to_int(j.get<std::string>());
}

inline std::uint64_t json_u64(nlohmann::json const & j, char const * field)
{
    return to_u64(json_int(j, field));
}

} // namespace detail

/* Throws domain_error on a malformed document. */
inline Certificate certificate_from_json(nlohmann::json const & j)
{
    using detail::json_int;
    using detail::json_u64;
    try {
        Certificate c;
        c.k = json_int(j.at("k"), "k");
        c.d = json_int(j.at("d"), "d");
        c.D = json_int(j.at("D"), "D");
        c.discriminant = json_int(j.at("discriminant"), "discriminant");
        for (auto const & x : j.at("congruence_solutions"))
            c.congruence_solutions.push_back(json_int(x, "congruence_solutions"));
        for (auto const & f : j.at("forms")) {
            if (!f.is_array() || f.size() != 3)
                throw domain_error("certificate forms must be [a,b,c] triples");
            c.forms.push_back({json_int(f[0], "forms"), json_int(f[1], "forms"),
                               json_int(f[2], "forms")});
        }
        for (auto const & x : j.at("orders"))
            c.orders.push_back(json_u64(x, "orders"));
        if (!j.at("class_number").is_null())
            c.class_number = json_int(j.at("class_number"), "class_number");
        c.M = json_u64(j.at("M"), "M");
        for (auto const & x : j.at("represented_exponents"))
            c.represented_exponents.push_back(json_u64(x, "represented_exponents"));
        std::string const verdict = j.at("verdict").get<std::string>();
        if (verdict == "even-only")
            c.verdict = Verdict::even_only;
        else if (verdict == "failed")
            c.verdict = Verdict::failed;
        else
            throw domain_error("unknown verdict " + verdict);
        if (!j.at("failure_reason").is_null())
            c.failure_reason = j.at("failure_reason").get<std::string>();
        return c;
    } catch (nlohmann::json::exception const & e) {
        throw domain_error(std::string("malformed certificate: ") + e.what());
    }
}

} // namespace terai

#endif
