#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "modlab/geometry/iteration.hpp"
#include "modlab/lelong/monte_carlo.hpp"
#include "modlab/poly/parser.hpp"

namespace modlab::cli {

// Malformed command line, unreadable input or unwritable output.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names{"spectral-cert", "compose-charts", "substitute", "iterate",
                                                "staircase",     "lelong",         "graph-volume"};
    return names;
}

inline Json matrix_to_json(const IntMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.size(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.size(); ++j) row.push_back(bigint_to_json(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

inline Json exponent_to_json(const Exponent& e) {
    Json out = Json::array();
    for (const auto& v : e.values()) out.push_back(bigint_to_json(v));
    return out;
}

inline Json field_vector_to_json(const FieldVector& v) {
    Json exact = Json::array(), approx = Json::array();
    for (const auto& c : v) {
        exact.push_back(to_string(c));
        approx.push_back(to_double(c));
    }
    return Json{{"exact", exact}, {"approx", approx}};
}

inline Json to_json(const ActionCertificate& a) {
    return Json{{"action", a.action},
                {"dominant_eigenvector", field_vector_to_json(a.dominant)},
                {"plane_normal", field_vector_to_json(a.plane_normal)},
                {"dominant_positive", a.dominant_positive},
                {"plane_avoids_octant", a.plane_avoids_octant},
                {"plane_has_no_lattice_points", a.plane_has_no_lattice_points},
                {"independence_det", to_string(a.independence_det)}};
}

inline Json to_json(const SpectralCertificate& c) {
    Json charpoly = Json::array();
    for (const auto& k : c.charpoly) charpoly.push_back(bigint_to_json(k));
    const auto flags = c.flags();
    return Json{{"matrix", matrix_to_json(c.matrix)},
                {"det", bigint_to_json(c.det)},
                {"charpoly", to_string(UPoly::from_cubic(c.charpoly))},
                {"charpoly_coefficients", charpoly},
                {"discriminant", bigint_to_json(c.discriminant)},
                {"mu_interval", Json{{"lo", to_string(c.mu_interval.lo)}, {"hi", to_string(c.mu_interval.hi)}}},
                {"mu", to_double(CubicFieldElement::generator(c.field))},
                {"minimal_polynomial", to_string(c.minimal_poly)},
                {"irreducible", c.irreducible},
                {"right_eigenvector", field_vector_to_json(c.eig.right)},
                {"left_eigenvector", field_vector_to_json(c.eig.left)},
                {"residual_zero", c.residual_zero},
                {"lambda", c.lambda_statement},
                {"properties",
                 Json{{"1_mu_greater_than_3", flags[0]},
                      {"2_lambda_modulus_squared_is_reciprocal_mu", flags[1]},
                      {"3_eigenvector_positive", flags[2]},
                      {"4_plane_avoids_octant", flags[3]},
                      {"5_plane_has_no_lattice_points", flags[4]}}},
                {"direct", to_json(c.direct)},
                {"transposed", to_json(c.transposed)},
                {"all_pass", c.all_pass()}};
}

// Everything a single invocation was asked to do. Unset optionals are omitted from
// the echoed config.
struct RunConfig {
    std::string command;
    std::vector<std::string> inputs;  // chart names, inline polynomials or component lists
    std::optional<std::string> poly_file;
    std::vector<std::string> vars = default_vars();
    std::optional<std::string> map;
    std::optional<std::string> matrix;
    std::optional<long long> cap;
    std::optional<long long> steps;
    bool strict = false;
    std::optional<int> p;
    std::optional<std::string> center;
    std::vector<double> radii;
    std::optional<double> radius;
    std::uint64_t samples = MonteCarloConfig{}.samples;
    std::uint64_t seed = MonteCarloConfig{}.seed;
    unsigned workers = 1;
    std::optional<std::string> out;
    std::string format = "json";
};

inline Json to_json(const RunConfig& c) {
    Json j{{"command", c.command}, {"vars", c.vars}, {"format", c.format}};
    if (!c.inputs.empty()) j["inputs"] = c.inputs;
    if (c.poly_file) j["poly_file"] = *c.poly_file;
    if (c.map) j["map"] = *c.map;
    if (c.matrix) j["matrix"] = *c.matrix;
    if (c.cap) j["cap"] = *c.cap;
    if (c.steps) j["steps"] = *c.steps;
    if (c.command == "iterate") j["strict"] = c.strict;
    if (c.p) j["p"] = *c.p;
    if (c.center) j["center"] = *c.center;
    if (!c.radii.empty()) j["radii"] = c.radii;
    if (c.radius) j["radius"] = *c.radius;
    if (c.command == "lelong" || c.command == "graph-volume") {
        j["samples"] = c.samples;
        j["seed"] = c.seed;
        j["workers"] = c.workers;
    }
    if (c.out) j["out"] = *c.out;
    return j;
}

struct Report {
    std::string schema = kSchema;
    std::string version = kVersion;
    std::string command;
    Json config = Json::object();
    Json result = Json::object();
    double duration_ms = 0;

    friend bool operator==(const Report&, const Report&) = default;
};

inline Json to_json(const Report& r) {
    return Json{{"schema", r.schema},     {"version", r.version}, {"command", r.command},
                {"config", r.config},     {"result", r.result},   {"duration_ms", r.duration_ms}};
}

inline Report report_from_json(const Json& j) {
    if (!j.is_object()) throw SchemaError("report must be an object", "");
    for (const char* key : {"schema", "version", "command", "config", "result", "duration_ms"})
        if (!j.contains(key)) throw SchemaError(std::string("missing key '") + key + "'", "");
    Report r;
    if (!j["schema"].is_string() || j["schema"] != kSchema)
        throw SchemaError(std::string("schema must be \"") + kSchema + "\"", "/schema");
    if (!j["version"].is_string()) throw SchemaError("version must be a string", "/version");
    if (!j["command"].is_string()) throw SchemaError("command must be a string", "/command");
    if (!j["config"].is_object()) throw SchemaError("config must be an object", "/config");
    if (!j["duration_ms"].is_number()) throw SchemaError("duration_ms must be a number", "/duration_ms");
    r.schema = j["schema"].get<std::string>();
    r.version = j["version"].get<std::string>();
    r.command = j["command"].get<std::string>();
    bool known = false;
    for (const auto& name : command_names()) known = known || name == r.command;
    if (!known) throw SchemaError("unknown command '" + r.command + "'", "/command");
    r.config = j["config"];
    r.result = j["result"];
    r.duration_ms = j["duration_ms"].get<double>();
    return r;
}

// Canonical serialization: keys sorted (nlohmann objects are ordered maps), two-space indent.
inline std::string serialize(const Report& r) { return to_json(r).dump(2) + "\n"; }

// The report without its wall-clock field: identical for identical inputs.
inline std::string payload(const Report& r) {
    Json j = to_json(r);
    j.erase("duration_ms");
    return j.dump();
}

inline void write_report(const Report& r, const std::string& path) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw UsageError("cannot open '" + path + "' for writing");
    f << serialize(r);
    f.close();
    if (!f) throw UsageError("failed to write '" + path + "'");
}

inline std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    if (f.bad()) throw UsageError("failed to read '" + path + "'");
    return ss.str();
}

// A polynomial file is either a JSON document in the polynomial schema or text in
// the polynomial grammar; vars applies to text files only.
inline SparsePoly load_poly_file(const std::string& path, const std::vector<std::string>& vars = default_vars()) {
    const std::string text = read_file(path);
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        Json j;
        try {
            j = Json::parse(text);
        } catch (const Json::parse_error& e) {
            std::size_t line = 1, col = 1;
            for (std::size_t k = 0; k + 1 < e.byte && k < text.size(); ++k) {
                if (text[k] == '\n') {
                    ++line;
                    col = 1;
                } else {
                    ++col;
                }
            }
            throw ParseError("malformed JSON in '" + path + "'", line, col);
        }
        return poly_from_json(j);
    }
    return parse_poly(text, vars);
}

inline void save_poly_file(const SparsePoly& p, const std::string& path) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw UsageError("cannot open '" + path + "' for writing");
    f << poly_to_json(p).dump(2) << "\n";
    if (!f) throw UsageError("failed to write '" + path + "'");
}

}  // namespace modlab::cli
