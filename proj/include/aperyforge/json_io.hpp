/**
 * @file json_io.hpp
 * @brief JSON wire formats. Rationals travel as decimal strings, reals as
 *        fixed-width decimal strings, so reports are byte-reproducible.
 */
#ifndef APERYFORGE_JSON_IO_HPP
#define APERYFORGE_JSON_IO_HPP

#include <json.hpp>

#include "aperyforge/laurent.hpp"

namespace aperyforge {

using Json = nlohmann::ordered_json;

inline Json laurent_to_json(const LaurentPoly& f) {
    Json terms = Json::array();
    for (const auto& [e, c] : f.terms()) {
        Json t;
        t["exp"] = e;
        t["coef"] = rat_to_string(c);
        terms.push_back(std::move(t));
    }
    Json j;
    j["n"] = f.dim();
    j["terms"] = std::move(terms);
    return j;
}

inline LaurentPoly laurent_from_json(const Json& j) {
    LaurentPoly f(j.at("n").get<int>());
    for (const auto& t : j.at("terms")) {
        ExponentVector e = t.at("exp").get<ExponentVector>();
        f.add_term(e, rat_from_string(t.at("coef").get<std::string>()));
    }
    return f;
}

inline Json sequence_to_json(const RationalSequence& s) {
    Json j;
    j["start"] = s.start;
    Json vals = Json::array();
    for (const auto& v : s.values) vals.push_back(rat_to_string(v));
    j["values"] = std::move(vals);
    return j;
}

inline RationalSequence sequence_from_json(const Json& j) {
    RationalSequence s;
    s.start = j.at("start").get<long>();
    for (const auto& v : j.at("values"))
        s.values.push_back(rat_from_string(v.get<std::string>()));
    return s;
}

} // namespace aperyforge

#endif
