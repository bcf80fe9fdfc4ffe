#pragma once

#include <limits>
#include <string>

#include "json.hpp"
#include "modlab/poly/sparse_poly.hpp"

namespace modlab {

using Json = nlohmann::json;

// Integers that fit in 64 bits are written as JSON numbers, larger ones as decimal strings.
inline Json bigint_to_json(const BigInt& v) {
    if (v >= 0 && v <= std::numeric_limits<std::uint64_t>::max()) return Json(static_cast<std::uint64_t>(v));
    if (v < 0 && v >= std::numeric_limits<std::int64_t>::min()) return Json(static_cast<std::int64_t>(v));
    return Json(v.str());
}

inline BigInt bigint_from_json(const Json& j, const std::string& pointer) {
    if (j.is_number_unsigned()) return BigInt(j.get<std::uint64_t>());
    if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        const std::size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
        if (s.size() == start || s.find_first_not_of("0123456789", start) != std::string::npos)
            throw SchemaError("expected an integer string", pointer);
        return BigInt(s);
    }
    throw SchemaError("expected an integer", pointer);
}

inline Json rational_to_json(const Rational& q) {
    return Json{{"num", boost::multiprecision::numerator(q).str()},
                {"den", boost::multiprecision::denominator(q).str()}};
}

inline Rational rational_from_json(const Json& j, const std::string& pointer) {
    if (!j.is_object()) throw SchemaError("expected {\"num\", \"den\"} object", pointer);
    for (const char* key : {"num", "den"})
        if (!j.contains(key)) throw SchemaError(std::string("missing key '") + key + "'", pointer);
    const BigInt num = bigint_from_json(j["num"], pointer + "/num");
    const BigInt den = bigint_from_json(j["den"], pointer + "/den");
    if (den == 0) throw SchemaError("zero denominator", pointer + "/den");
    return Rational(num, den);
}

// {"vars": [...], "terms": [{"exp": [...], "num": "...", "den": "..."}]}, terms in
// descending graded-lex order.
inline Json poly_to_json(const SparsePoly& p) {
    Json terms = Json::array();
    for (const auto& [e, c] : p.terms()) {
        Json exp = Json::array();
        for (const auto& v : e.values()) exp.push_back(bigint_to_json(v));
        terms.push_back(Json{{"exp", exp},
                             {"num", boost::multiprecision::numerator(c).str()},
                             {"den", boost::multiprecision::denominator(c).str()}});
    }
    return Json{{"vars", p.vars()}, {"terms", terms}};
}

inline SparsePoly poly_from_json(const Json& j, const std::string& base = "") {
    if (!j.is_object()) throw SchemaError("expected a polynomial object", base);
    if (!j.contains("vars") || !j["vars"].is_array()) throw SchemaError("missing array 'vars'", base + "/vars");
    if (!j.contains("terms") || !j["terms"].is_array()) throw SchemaError("missing array 'terms'", base + "/terms");
    std::vector<std::string> vars;
    for (std::size_t k = 0; k < j["vars"].size(); ++k) {
        if (!j["vars"][k].is_string())
            throw SchemaError("variable name must be a string", base + "/vars/" + std::to_string(k));
        vars.push_back(j["vars"][k].get<std::string>());
    }
    SparsePoly p(vars);
    const Json& terms = j["terms"];
    for (std::size_t t = 0; t < terms.size(); ++t) {
        const std::string ptr = base + "/terms/" + std::to_string(t);
        const Json& term = terms[t];
        if (!term.is_object()) throw SchemaError("term must be an object", ptr);
        if (!term.contains("exp") || !term["exp"].is_array()) throw SchemaError("missing array 'exp'", ptr + "/exp");
        if (term["exp"].size() != vars.size())
            throw SchemaError("exponent length differs from variable count", ptr + "/exp");
        std::vector<BigInt> e;
        for (std::size_t k = 0; k < term["exp"].size(); ++k) {
            BigInt v = bigint_from_json(term["exp"][k], ptr + "/exp/" + std::to_string(k));
            if (v < 0) throw SchemaError("negative exponent", ptr + "/exp/" + std::to_string(k));
            e.push_back(std::move(v));
        }
        const Rational c = rational_from_json(term, ptr);
        if (c == 0) throw SchemaError("zero coefficient", ptr);
        Exponent ex(std::move(e));
        if (p.coeff(ex) != 0) throw SchemaError("duplicate exponent", ptr + "/exp");
        p.add_term(std::move(ex), c);
    }
    return p;
}

}  // namespace modlab
