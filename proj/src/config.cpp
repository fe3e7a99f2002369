#include "emptysimplex/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "emptysimplex/errors.hpp"
#include "json.hpp"

namespace emptysimplex {

namespace {

using nlohmann::json;

void check_keys(const json& obj, const std::set<std::string>& allowed, std::string_view where) {
    if (!obj.is_object()) throw ConfigError(std::string(where) + " must be a JSON object");
    for (const auto& [key, _] : obj.items())
        if (!allowed.count(key)) throw ConfigError("unknown key '" + key + "' in " + std::string(where));
}

template <class T>
T get(const json& obj, const char* key, std::string_view where) {
    if (!obj.contains(key)) throw ConfigError(std::string(where) + " is missing '" + key + "'");
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError("bad value for '" + std::string(key) + "' in " + std::string(where) + ": " + e.what());
    }
}

template <class T>
T get_or(const json& obj, const char* key, T fallback, std::string_view where) {
    return obj.contains(key) ? get<T>(obj, key, where) : fallback;
}

ConvexBody body_from_json(const json& j) {
    const auto kind = get<std::string>(j, "kind", "body");
    try {
        if (kind == "box") {
            check_keys(j, {"kind", "lo", "hi"}, "box body");
            return ConvexBody::box(get<Point>(j, "lo", "box body"), get<Point>(j, "hi", "box body"));
        }
        if (kind == "unit_cube") {
            check_keys(j, {"kind", "dim"}, "unit_cube body");
            return ConvexBody::unit_cube(get<int>(j, "dim", "unit_cube body"));
        }
        if (kind == "ball") {
            check_keys(j, {"kind", "dim", "radius", "center"}, "ball body");
            const auto center = get_or<Point>(j, "center", {}, "ball body");
            const int dim = j.contains("dim") ? get<int>(j, "dim", "ball body") : static_cast<int>(center.size());
            return ConvexBody::ball(dim, get_or<double>(j, "radius", 1.0, "ball body"), center);
        }
        if (kind == "ellipsoid") {
            check_keys(j, {"kind", "semi_axes", "center"}, "ellipsoid body");
            return ConvexBody::ellipsoid(get<Point>(j, "semi_axes", "ellipsoid body"),
                                         get_or<Point>(j, "center", {}, "ellipsoid body"));
        }
        if (kind == "h_polytope") {
            check_keys(j, {"kind", "normals", "offsets"}, "h_polytope body");
            return ConvexBody::h_polytope(get<std::vector<Point>>(j, "normals", "h_polytope body"),
                                          get<std::vector<double>>(j, "offsets", "h_polytope body"));
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError("invalid " + kind + " body: " + e.what());
    }
    throw ConfigError("unknown body kind '" + kind + "' (expected box, unit_cube, ball, ellipsoid, h_polytope)");
}

json parse_json(std::string_view text) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("malformed JSON: ") + e.what());
    }
}

}  // namespace

ConvexBody parse_body(std::string_view json_text) { return body_from_json(parse_json(json_text)); }

ExperimentConfig parse_config(std::string_view json_text) {
    const auto j = parse_json(json_text);
    constexpr std::string_view where = "config";
    check_keys(j,
               {"body", "dim", "n_grid", "trials", "k_list", "t_rule", "rho", "k_rule", "degree_mode", "seed",
                "output", "threads", "threshold", "mecke_function", "integral_samples", "density"},
               where);
    ExperimentConfig cfg;
    if (j.contains("body")) cfg.body = body_from_json(j.at("body"));
    cfg.dim = get_or<int>(j, "dim", cfg.body.dim(), where);
    cfg.n_grid = get_or(j, "n_grid", cfg.n_grid, where);
    cfg.trials = get_or(j, "trials", cfg.trials, where);
    cfg.k_list = get_or(j, "k_list", cfg.k_list, where);
    if (j.contains("t_rule")) {
        const auto& t = j.at("t_rule");
        if (t.is_string() && t.get<std::string>() == "inverse_root") {
            cfg.t_rule = {};
        } else if (t.is_number()) {
            cfg.t_rule = {TRule::Kind::fixed, t.get<double>()};
        } else if (t.is_object()) {
            check_keys(t, {"inverse_root"}, "t_rule");
            cfg.t_rule = {TRule::Kind::inverse_root, get<double>(t, "inverse_root", "t_rule")};
        } else {
            throw ConfigError("t_rule must be \"inverse_root\", {\"inverse_root\": scale} or a positive number");
        }
    }
    if (j.contains("rho") && !j.at("rho").is_null()) cfg.rho = get<double>(j, "rho", where);
    if (j.contains("k_rule")) {
        const auto& k = j.at("k_rule");
        if (k.is_string() && k.get<std::string>() == "paper") cfg.k_rule = {};
        else if (k.is_number()) cfg.k_rule = {k.get<double>()};
        else throw ConfigError("k_rule must be \"paper\" or a positive factor of ln n");
    }
    if (j.contains("degree_mode")) {
        const auto mode = get<std::string>(j, "degree_mode", where);
        if (mode == "exact") cfg.degree_mode = DegreeMode::exact;
        else if (mode == "local") cfg.degree_mode = DegreeMode::local_lower_bound;
        else throw ConfigError("degree_mode must be \"exact\" or \"local\"");
    }
    cfg.seed = get_or(j, "seed", cfg.seed, where);
    cfg.output = get_or(j, "output", cfg.output, where);
    cfg.threads = get_or(j, "threads", cfg.threads, where);
    cfg.threshold = get_or(j, "threshold", cfg.threshold, where);
    if (j.contains("mecke_function"))
        cfg.mecke_function = parse_mecke_function(get<std::string>(j, "mecke_function", where));
    cfg.integral_samples = get_or(j, "integral_samples", cfg.integral_samples, where);
    cfg.density = get_or(j, "density", cfg.density, where);
    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

}  // namespace emptysimplex
