#include "llg1d/config.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace llg1d {

using nlohmann::json;

namespace {

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it)
        if (allowed.find(it.key()) == allowed.end())
            throw ConfigError("unknown key '" + it.key() + "' in " + where);
}

Vec3 parse_vec3(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 3)
        throw ConfigError(where + ": expected an array of 3 numbers");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

json vec3_to_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

template <typename T>
T require(const json& j, const std::string& key, const std::string& where) {
    if (!j.contains(key))
        throw ConfigError("missing key '" + key + "' in " + where);
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError("bad value for '" + key + "' in " + where);
    }
}

} // namespace

Field InitialState::realize(const Grid1D& g) const {
    if (uniform)
        return uniform_field(g, uniform_value);
    if (node_values.size() != static_cast<std::size_t>(g.n_points))
        throw ConfigError("initial: node values do not conform to grid");
    Field f(node_values.size());
    f.v = node_values;
    return f;
}

void RunConfig::validate() const {
    params.validate();
    noise.validate(grid);
    schedule.validate();
    control.validate(noise.n_channels());
    if (!(dt > 0.0))
        throw ConfigError("dt must be positive");
    if (n_paths < 1)
        throw ConfigError("n_paths must be >= 1");
    if (record_every < 1)
        throw ConfigError("record_every must be >= 1");
    Field m0 = initial.realize(grid);
    if (!is_saturated(m0, 1e-8))
        throw ConfigError("initial state is not saturated");
}

SdeRunConfig RunConfig::to_sde_config() const {
    SdeRunConfig c;
    c.scheme = scheme;
    c.params = params;
    c.noise = noise;
    c.control = control;
    c.applied_field = schedule;
    c.dt = dt;
    c.seed = seed;
    c.record_every = record_every;
    c.grid = grid;
    return c;
}

RunConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    reject_unknown(j, {"grid", "params", "noise", "schedule", "control", "scheme", "dt", "seed",
                       "n_paths", "record_every", "initial", "dump_states"},
                   "config");

    RunConfig cfg;

    const json& jg = j.contains("grid") ? j.at("grid") : throw ConfigError("missing key 'grid'");
    reject_unknown(jg, {"length", "n_points"}, "grid");
    cfg.grid = make_grid(require<double>(jg, "length", "grid"),
                         require<int>(jg, "n_points", "grid"));

    const json& jp = j.contains("params") ? j.at("params")
                                          : throw ConfigError("missing key 'params'");
    reject_unknown(jp, {"alpha", "beta", "eps", "horizon_T"}, "params");
    cfg.params.alpha = require<double>(jp, "alpha", "params");
    cfg.params.beta = require<double>(jp, "beta", "params");
    cfg.params.eps = jp.value("eps", 0.0);
    cfg.params.horizon_T = require<double>(jp, "horizon_T", "params");

    const json& jn = j.contains("noise") ? j.at("noise") : throw ConfigError("missing key 'noise'");
    reject_unknown(jn, {"mode", "directions", "profile"}, "noise");
    std::string mode = require<std::string>(jn, "mode", "noise");
    if (mode == "three_directions") {
        cfg.noise.mode = NoiseMode::three_directions;
        const json& jd = jn.contains("directions")
                             ? jn.at("directions")
                             : throw ConfigError("noise: missing 'directions'");
        if (!jd.is_array() || jd.size() != 3)
            throw ConfigError("noise: 'directions' must hold three vectors");
        for (int i = 0; i < 3; ++i)
            cfg.noise.directions[i] = parse_vec3(jd[i], "noise.directions");
    } else if (mode == "scalar_profile") {
        cfg.noise.mode = NoiseMode::scalar_profile;
        const json& jh = jn.contains("profile") ? jn.at("profile")
                                                : throw ConfigError("noise: missing 'profile'");
        for (const auto& row : jh)
            cfg.noise.profile_h.v.push_back(parse_vec3(row, "noise.profile"));
    } else {
        throw ConfigError("noise: mode must be 'three_directions' or 'scalar_profile'");
    }

    auto parse_breaks = [&](const json& js, const std::string& where, std::vector<double>& out) {
        for (const auto& b : require<json>(js, "breakpoints", where))
            out.push_back(b.get<double>());
    };
    if (j.contains("schedule")) {
        const json& js = j.at("schedule");
        reject_unknown(js, {"breakpoints", "values"}, "schedule");
        parse_breaks(js, "schedule", cfg.schedule.breakpoints);
        for (const auto& v : require<json>(js, "values", "schedule"))
            cfg.schedule.segment_values.push_back(parse_vec3(v, "schedule.values"));
    }
    if (j.contains("control")) {
        const json& jc = j.at("control");
        reject_unknown(jc, {"breakpoints", "values"}, "control");
        parse_breaks(jc, "control", cfg.control.breakpoints);
        for (const auto& v : require<json>(jc, "values", "control")) {
            std::vector<double> seg;
            for (const auto& x : v)
                seg.push_back(x.get<double>());
            cfg.control.segment_values.push_back(std::move(seg));
        }
    }

    std::string scheme = j.value("scheme", std::string("heun_stratonovich"));
    if (scheme == "heun_stratonovich")
        cfg.scheme = SdeScheme::heun_stratonovich;
    else if (scheme == "euler_ito_corrected")
        cfg.scheme = SdeScheme::euler_ito_corrected;
    else
        throw ConfigError("scheme must be 'heun_stratonovich' or 'euler_ito_corrected'");

    cfg.dt = require<double>(j, "dt", "config");
    cfg.seed = j.value("seed", 0ULL);
    cfg.n_paths = j.value("n_paths", 1);
    cfg.record_every = j.value("record_every", 1);
    cfg.dump_states = j.value("dump_states", false);

    if (j.contains("initial")) {
        const json& ji = j.at("initial");
        reject_unknown(ji, {"type", "value", "values"}, "initial");
        std::string type = require<std::string>(ji, "type", "initial");
        if (type == "uniform") {
            cfg.initial.uniform = true;
            cfg.initial.uniform_value = parse_vec3(require<json>(ji, "value", "initial"),
                                                   "initial.value");
        } else if (type == "nodes") {
            cfg.initial.uniform = false;
            for (const auto& row : require<json>(ji, "values", "initial"))
                cfg.initial.node_values.push_back(parse_vec3(row, "initial.values"));
        } else {
            throw ConfigError("initial: type must be 'uniform' or 'nodes'");
        }
    }

    cfg.validate();
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(const RunConfig& cfg) {
    json j;
    j["grid"] = {{"length", cfg.grid.length}, {"n_points", cfg.grid.n_points}};
    j["params"] = {{"alpha", cfg.params.alpha},
                   {"beta", cfg.params.beta},
                   {"eps", cfg.params.eps},
                   {"horizon_T", cfg.params.horizon_T}};
    if (cfg.noise.mode == NoiseMode::three_directions) {
        j["noise"] = {{"mode", "three_directions"},
                      {"directions", json::array({vec3_to_json(cfg.noise.directions[0]),
                                                  vec3_to_json(cfg.noise.directions[1]),
                                                  vec3_to_json(cfg.noise.directions[2])})}};
    } else {
        json prof = json::array();
        for (const auto& v : cfg.noise.profile_h.v)
            prof.push_back(vec3_to_json(v));
        j["noise"] = {{"mode", "scalar_profile"}, {"profile", prof}};
    }
    if (!cfg.schedule.empty()) {
        json vals = json::array();
        for (const auto& v : cfg.schedule.segment_values)
            vals.push_back(vec3_to_json(v));
        j["schedule"] = {{"breakpoints", cfg.schedule.breakpoints}, {"values", vals}};
    }
    if (!cfg.control.empty())
        j["control"] = {{"breakpoints", cfg.control.breakpoints},
                        {"values", cfg.control.segment_values}};
    j["scheme"] = cfg.scheme == SdeScheme::heun_stratonovich ? "heun_stratonovich"
                                                             : "euler_ito_corrected";
    j["dt"] = cfg.dt;
    j["seed"] = cfg.seed;
    j["n_paths"] = cfg.n_paths;
    j["record_every"] = cfg.record_every;
    j["dump_states"] = cfg.dump_states;
    if (cfg.initial.uniform) {
        j["initial"] = {{"type", "uniform"}, {"value", vec3_to_json(cfg.initial.uniform_value)}};
    } else {
        json vals = json::array();
        for (const auto& v : cfg.initial.node_values)
            vals.push_back(vec3_to_json(v));
        j["initial"] = {{"type", "nodes"}, {"values", vals}};
    }
    return j.dump(2);
}

std::string serialize_plan(const ReversalPlan& plan) {
    json j;
    json pts = json::array();
    for (const auto& u : plan.waypoints.points)
        pts.push_back(vec3_to_json(u));
    j["waypoints"] = {{"points", pts}, {"eta", plan.waypoints.eta}};
    j["R"] = plan.R;
    json kvals = json::array();
    for (const auto& v : plan.schedule.segment_values)
        kvals.push_back(vec3_to_json(v));
    j["schedule"] = {{"breakpoints", plan.schedule.breakpoints}, {"values", kvals}};
    j["control"] = {{"breakpoints", plan.control.breakpoints},
                    {"values", plan.control.segment_values}};
    j["cost"] = plan.cost;
    return j.dump(2);
}

ReversalPlan parse_plan(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("plan is not valid JSON: ") + e.what());
    }
    reject_unknown(j, {"waypoints", "R", "schedule", "control", "cost"}, "plan");
    ReversalPlan plan;
    const json& jw = j.at("waypoints");
    reject_unknown(jw, {"points", "eta"}, "plan.waypoints");
    for (const auto& row : jw.at("points"))
        plan.waypoints.points.push_back(parse_vec3(row, "plan.waypoints.points"));
    plan.waypoints.eta = jw.at("eta").get<double>();
    plan.R = j.at("R").get<double>();
    const json& js = j.at("schedule");
    for (const auto& b : js.at("breakpoints"))
        plan.schedule.breakpoints.push_back(b.get<double>());
    for (const auto& v : js.at("values"))
        plan.schedule.segment_values.push_back(parse_vec3(v, "plan.schedule.values"));
    const json& jc = j.at("control");
    for (const auto& b : jc.at("breakpoints"))
        plan.control.breakpoints.push_back(b.get<double>());
    for (const auto& v : jc.at("values")) {
        std::vector<double> seg;
        for (const auto& x : v)
            seg.push_back(x.get<double>());
        plan.control.segment_values.push_back(std::move(seg));
    }
    plan.cost = j.at("cost").get<double>();
    return plan;
}

} // namespace llg1d
