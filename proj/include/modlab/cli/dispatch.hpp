#pragma once

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "modlab/cli/report.hpp"

namespace modlab::cli {

enum ExitCode : int { kSuccess = 0, kUsage = 2, kDomain = 3 };

struct Outcome {
    int exit_code = kSuccess;
    std::optional<Report> report;
};

inline constexpr const char* kSeedEnv = "MODLAB_SEED";

// ---- argument parsing helpers ----

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline BigInt parse_integer(const std::string& text, const std::string& what) {
    const std::string t = trim(text);
    const std::size_t start = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (t.size() == start || t.find_first_not_of("0123456789", start) != std::string::npos)
        throw UsageError(what + ": '" + t + "' is not an integer");
    return BigInt(t[0] == '+' ? t.substr(1) : t);
}

// Row-major, rows separated by ';', entries by ','.
inline IntMatrix parse_matrix(const std::string& text) {
    std::vector<std::vector<BigInt>> rows;
    for (const auto& row : split(text, ';')) {
        std::vector<BigInt> r;
        for (const auto& entry : split(row, ',')) r.push_back(parse_integer(entry, "--matrix"));
        rows.push_back(std::move(r));
    }
    for (const auto& r : rows)
        if (r.size() != rows.size())
            throw UsageError("--matrix: expected a square matrix, got " + std::to_string(rows.size()) +
                             " rows and a row of length " + std::to_string(r.size()));
    return IntMatrix::from_rows(rows);
}

inline double parse_real(const std::string& text, const std::string& what) {
    const std::string t = trim(text);
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(t, &used);
    } catch (const std::exception&) {
        throw UsageError(what + ": '" + t + "' is not a number");
    }
    if (used != t.size()) throw UsageError(what + ": '" + t + "' is not a number");
    return v;
}

// "a", "bi", "a+bi" or "a-bi".
inline Complex parse_complex(const std::string& text, const std::string& what) {
    std::string t;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (t.empty()) throw UsageError(what + ": empty coordinate");
    if (t.back() != 'i') return {parse_real(t, what), 0.0};
    t.pop_back();
    std::size_t cut = std::string::npos;
    for (std::size_t k = t.size(); k-- > 1;)
        if ((t[k] == '+' || t[k] == '-') && t[k - 1] != 'e' && t[k - 1] != 'E') {
            cut = k;
            break;
        }
    auto imag = [&](const std::string& s) {
        if (s.empty() || s == "+") return 1.0;
        if (s == "-") return -1.0;
        return parse_real(s, what);
    };
    if (cut == std::string::npos) return {0.0, imag(t)};
    return {parse_real(t.substr(0, cut), what), imag(t.substr(cut))};
}

inline CVec3 parse_center(const std::string& text) {
    const auto parts = split(text, ',');
    if (parts.size() != 3) throw UsageError("--center: expected three comma-separated coordinates");
    return {parse_complex(parts[0], "--center"), parse_complex(parts[1], "--center"),
            parse_complex(parts[2], "--center")};
}

inline MonomialMap named_chart(const std::string& name) {
    const auto& names = chart_names();
    if (std::find(names.begin(), names.end(), name) == names.end())
        throw UsageError("unknown chart '" + name + "' (known: pi0, pi1, pi2, pi, phi)");
    return chart(name);
}

inline MonomialMap resolve_map(const RunConfig& cfg, const std::string& fallback) {
    if (cfg.matrix) return MonomialMap(parse_matrix(*cfg.matrix));
    return named_chart(cfg.map.value_or(fallback));
}

inline SparsePoly resolve_poly(const RunConfig& cfg) {
    if (cfg.poly_file) return load_poly_file(*cfg.poly_file, cfg.vars);
    if (cfg.inputs.empty()) throw UsageError(cfg.command + ": one of --poly or --poly-file is required");
    return parse_poly(cfg.inputs.front(), cfg.vars);
}

// "F0 : F1 : ... : Fm" with monomial components in three variables.
inline ProjectiveMonomialMap resolve_projective(const RunConfig& cfg) {
    if (cfg.inputs.empty()) throw UsageError(cfg.command + ": --f is required");
    if (cfg.vars.size() != 3) throw UsageError(cfg.command + ": maps are defined on three variables");
    std::vector<SparsePoly> comps;
    for (const auto& part : split(cfg.inputs.front(), ':')) comps.push_back(parse_poly(part, cfg.vars));
    return ProjectiveMonomialMap::from_polys(comps);
}

inline MonteCarloConfig mc_config(const RunConfig& cfg) {
    MonteCarloConfig mc;
    mc.samples = cfg.samples;
    mc.seed = cfg.seed;
    mc.workers = cfg.workers;
    return mc;
}

// ---- commands ----

struct CommandResult {
    Json result;
    int exit_code = kSuccess;
};

inline CommandResult run_spectral_cert(const RunConfig& cfg) {
    const auto m = resolve_map(cfg, "pi");
    const auto cert = certify_spectral(m.matrix());
    return {to_json(cert), cert.all_pass() ? kSuccess : kDomain};
}

inline CommandResult run_compose_charts(const RunConfig& cfg) {
    std::vector<MonomialMap> maps;
    for (const auto& name : cfg.inputs) maps.push_back(named_chart(name));
    const auto composed = compose_maps(maps);
    Json equals = Json::array();
    for (const auto& name : chart_names())
        if (chart(name) == composed) equals.push_back(name);
    return {Json{{"charts", cfg.inputs},
                 {"matrix", matrix_to_json(composed.matrix())},
                 {"det", bigint_to_json(determinant(composed.matrix()))},
                 {"unimodular", composed.unimodular()},
                 {"equals", equals}}};
}

inline CommandResult run_substitute(const RunConfig& cfg) {
    const auto p = resolve_poly(cfg);
    const auto m = resolve_map(cfg, "pi");
    const auto q = substitute_monomial(p, m);
    return {Json{{"input", poly_to_json(p)},
                 {"input_text", to_string(p)},
                 {"map", matrix_to_json(m.matrix())},
                 {"output", poly_to_json(q)},
                 {"output_text", to_string(q)}}};
}

inline CommandResult run_iterate(const RunConfig& cfg) {
    const auto p = resolve_poly(cfg);
    const auto m = resolve_map(cfg, "pi");
    const auto rep = iterate_to_principal(p, m, cfg.cap.value_or(64));
    Json j = to_json(rep);
    j["input_text"] = to_string(p);
    if (rep.remainder) j["F"] = to_string(*rep.remainder);
    return {j, rep.capped && cfg.strict ? kDomain : kSuccess};
}

inline CommandResult run_staircase(const RunConfig& cfg) {
    SparsePoly p = resolve_poly(cfg);
    const long long steps = cfg.steps.value_or(0);
    if (steps < 0) throw UsageError("staircase: --steps must be non-negative");
    if (steps > 0) p = substitute_monomial(p, map_power(resolve_map(cfg, "pi"), static_cast<unsigned long long>(steps)));
    const auto st = NewtonStaircase::of(p);
    std::vector<Exponent> pts(st.support.begin(), st.support.end());
    std::sort(pts.begin(), pts.end(), GrlexDescending{});
    Json support = Json::array(), minimals = Json::array(), hull = Json::array();
    for (const auto& e : pts) support.push_back(exponent_to_json(e));
    for (const auto& e : st.minimals) minimals.push_back(exponent_to_json(e));
    for (auto i : hull_vertex_indices(pts)) hull.push_back(exponent_to_json(pts[i]));
    Json j{{"steps", steps},
           {"support", support},
           {"minimals", minimals},
           {"hull_vertices", hull},
           {"principal", st.principal()}};
    j["vertex"] = st.principal() ? exponent_to_json(st.minimals.front()) : Json(nullptr);
    return {j};
}

inline CommandResult run_lelong(const RunConfig& cfg) {
    const auto f = resolve_projective(cfg);
    const CVec3 center = cfg.center ? parse_center(*cfg.center) : CVec3{};
    const std::vector<double> radii = cfg.radii.empty() ? std::vector<double>{0.4, 0.2, 0.1} : cfg.radii;
    const auto rep = lelong_profile(f, cfg.p.value_or(1), center, radii, mc_config(cfg));
    return {to_json(rep)};
}

inline CommandResult run_graph_volume(const RunConfig& cfg) {
    const auto f = resolve_projective(cfg);
    const auto est = graph_volume(f, cfg.radius.value_or(0.5), mc_config(cfg));
    return {to_json(est)};
}

inline CommandResult run_command(const RunConfig& cfg) {
    if (cfg.command == "spectral-cert") return run_spectral_cert(cfg);
    if (cfg.command == "compose-charts") return run_compose_charts(cfg);
    if (cfg.command == "substitute") return run_substitute(cfg);
    if (cfg.command == "iterate") return run_iterate(cfg);
    if (cfg.command == "staircase") return run_staircase(cfg);
    if (cfg.command == "lelong") return run_lelong(cfg);
    if (cfg.command == "graph-volume") return run_graph_volume(cfg);
    throw UsageError("unknown command '" + cfg.command + "'");
}

// ---- human-readable rendering ----

inline std::string render_table(const Report& r) {
    std::ostringstream os;
    const Json& res = r.result;
    os << "modlab " << r.version << "  " << r.command << "\n";
    if (r.command == "spectral-cert") {
        os << "  charpoly      " << res["charpoly"].get<std::string>() << "\n";
        os << "  mu in         (" << res["mu_interval"]["lo"].get<std::string>() << ", "
           << res["mu_interval"]["hi"].get<std::string>() << ")  ~ " << std::setprecision(12)
           << res["mu"].get<double>() << "\n";
        for (const auto& [k, v] : res["properties"].items()) os << "  " << std::left << std::setw(46) << k << (v.get<bool>() ? "pass" : "FAIL") << "\n";
        os << "  all_pass      " << (res["all_pass"].get<bool>() ? "yes" : "no") << "\n";
    } else if (r.command == "lelong") {
        os << "  " << std::left << std::setw(10) << "r" << std::setw(16) << "theta" << "stderr\n";
        for (const auto& row : res["rows"])
            os << "  " << std::setw(10) << row["r"].get<double>() << std::setw(16) << std::setprecision(8)
               << row["theta"].get<double>() << row["stderr"].get<double>() << "\n";
        os << "  intercept " << res["intercept"].get<double>() << " +- " << res["intercept_stderr"].get<double>() << "\n";
    } else if (r.command == "iterate") {
        os << "  " << std::left << std::setw(6) << "step" << std::setw(10) << "support" << std::setw(10) << "minimals"
           << "min_angle\n";
        for (const auto& s : res["trajectory"])
            os << "  " << std::setw(6) << s["step"].get<unsigned long long>() << std::setw(10)
               << s["support"].get<std::size_t>() << std::setw(10) << s["minimals"].get<std::size_t>()
               << (s["min_angle"].is_null() ? std::string("-") : std::to_string(s["min_angle"].get<double>())) << "\n";
        os << "  N = " << res["N"].get<unsigned long long>() << (res["capped"].get<bool>() ? " (capped)" : "") << "\n";
        if (!res["capped"].get<bool>()) os << "  vertex = " << res["vertex"].dump() << ", F = " << res["F"].get<std::string>() << "\n";
    } else {
        for (const auto& [k, v] : res.items()) os << "  " << std::left << std::setw(16) << k << v.dump() << "\n";
    }
    return os.str();
}

// ---- command line ----

inline std::unique_ptr<CLI::App> build_app(RunConfig& cfg) {
    auto app = std::make_unique<CLI::App>("Exact monomial-map and Lelong-number toolkit", "modlab");
    app->require_subcommand(1);
    app->fallthrough();
    app->set_version_flag("--version", kVersion);
    app->add_option("--out", cfg.out, "Write the JSON report to this file");
    app->add_option("--vars", cfg.vars, "Comma-separated variable names (default z1,z2,z3)")->delimiter(',');
    app->add_option("--format", cfg.format, "Standard output format: json or table")
        ->check(CLI::IsMember({"json", "table"}));

    auto add_poly = [&](CLI::App* sub) {
        auto* inline_opt = sub->add_option("--poly", cfg.inputs, "Polynomial in the text grammar")->expected(1);
        auto* file_opt = sub->add_option("--poly-file", cfg.poly_file, "Polynomial file (JSON schema or text)");
        inline_opt->excludes(file_opt);
    };
    auto add_map = [&](CLI::App* sub, const std::string& fallback) {
        auto* map_opt = sub->add_option("--map", cfg.map, "Chart name: pi0, pi1, pi2, pi, phi (default " + fallback + ")");
        auto* mat_opt = sub->add_option("--matrix", cfg.matrix, "Exponent matrix, rows ';'-separated, entries ','-separated");
        map_opt->excludes(mat_opt);
    };
    auto add_sampling = [&](CLI::App* sub) {
        sub->add_option("--f", cfg.inputs, "Projective map 'F0 : F1 : ...' with monomial components")->expected(1)->required();
        sub->add_option("--samples", cfg.samples, "Monte Carlo samples per ball")->check(CLI::PositiveNumber);
        sub->add_option("--seed", cfg.seed, std::string("Random seed (default $") + kSeedEnv + " or 1)");
        sub->add_option("--workers", cfg.workers, "Worker threads")->check(CLI::PositiveNumber);
    };

    auto* cert = app->add_subcommand("spectral-cert", "Exact spectral certificate of a unimodular 3x3 matrix");
    add_map(cert, "pi");

    auto* compose = app->add_subcommand("compose-charts", "Compose named charts left to right");
    compose->add_option("charts", cfg.inputs, "Chart names")->required();

    auto* subst = app->add_subcommand("substitute", "Monomial substitution P -> P o M");
    add_poly(subst);
    add_map(subst, "pi");

    auto* iter = app->add_subcommand("iterate", "Iterate P -> P o M until P is a monomial times a unit");
    add_poly(iter);
    add_map(iter, "pi");
    iter->add_option("--cap", cfg.cap, "Maximum number of iterations (default 64)");
    iter->add_flag("--strict", cfg.strict, "Treat reaching the cap as an error");

    auto* stair = app->add_subcommand("staircase", "Staircase and hull of the Newton polyhedron");
    add_poly(stair);
    add_map(stair, "pi");
    stair->add_option("--steps", cfg.steps, "Apply the map this many times first (default 0)");

    auto* lel = app->add_subcommand("lelong", "Monte Carlo Lelong profile theta(r) of f*omega");
    add_sampling(lel);
    lel->add_option("--p", cfg.p, "Bidegree p of (f*omega)^p (default 1)")->check(CLI::Range(0, 3));
    lel->add_option("--center", cfg.center, "Ball center, three comma-separated complex numbers (default 0,0,0)");
    lel->add_option("--radii", cfg.radii, "Strictly decreasing radii (default 0.4,0.2,0.1)")->delimiter(',');

    auto* gv = app->add_subcommand("graph-volume", "Monte Carlo graph volume over the ball B(0, r)");
    add_sampling(gv);
    gv->add_option("--radius", cfg.radius, "Ball radius (default 0.5)");

    for (auto* sub : app->get_subcommands({})) sub->fallthrough();
    return app;
}

// Parses args (without the program name), runs the command and writes the report
// to `out` (and --out). Diagnostics go to `err`.
inline Outcome dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    if (const char* env = std::getenv(kSeedEnv); env && *env) {
        try {
            const BigInt s = parse_integer(env, kSeedEnv);
            if (s < 0 || s > std::numeric_limits<std::uint64_t>::max()) throw UsageError(std::string(kSeedEnv) + ": out of range");
            cfg.seed = static_cast<std::uint64_t>(s);
        } catch (const UsageError& e) {
            err << "modlab: " << e.what() << "\n";
            return {kUsage, std::nullopt};
        }
    }
    auto app = build_app(cfg);
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app->parse(reversed);
    } catch (const CLI::Success& e) {
        app->exit(e, out, err);
        return {kSuccess, std::nullopt};
    } catch (const CLI::ParseError& e) {
        err << "modlab: " << e.what() << "\n";
        return {kUsage, std::nullopt};
    }
    for (auto* sub : app->get_subcommands())
        if (sub->parsed()) cfg.command = sub->get_name();

    const auto start = std::chrono::steady_clock::now();
    Report report;
    report.command = cfg.command;
    report.config = to_json(cfg);
    int code = kSuccess;
    try {
        auto res = run_command(cfg);
        report.result = std::move(res.result);
        code = res.exit_code;
    } catch (const ParseError& e) {
        err << "modlab: parse error: " << e.what() << "\n";
        return {kUsage, std::nullopt};
    } catch (const SchemaError& e) {
        err << "modlab: schema error: " << e.what() << "\n";
        return {kUsage, std::nullopt};
    } catch (const UsageError& e) {
        err << "modlab: " << e.what() << "\n";
        return {kUsage, std::nullopt};
    } catch (const DimensionError& e) {
        err << "modlab: " << e.what() << "\n";
        return {kUsage, std::nullopt};
    } catch (const std::exception& e) {
        err << "modlab: " << e.what() << "\n";
        return {kDomain, std::nullopt};
    }
    report.duration_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

    if (cfg.out) {
        try {
            write_report(report, *cfg.out);
        } catch (const UsageError& e) {
            err << "modlab: " << e.what() << "\n";
            return {kUsage, report};
        }
    }
    out << (cfg.format == "table" ? render_table(report) : serialize(report));
    if (code == kDomain) {
        if (report.command == "iterate") err << "modlab: iteration reached the cap without a principal form\n";
        else err << "modlab: spectral certificate fails\n";
    }
    return {code, report};
}

}  // namespace modlab::cli
