#include "passcov/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "passcov/errors.hpp"
#include "passcov/rng.hpp"

#include "../vendor/json.hpp"

namespace passcov {

namespace {

using ordered_json = nlohmann::ordered_json;

enum ScenarioStream : std::uint32_t { kWardenX = 200, kWardenY = 201 };

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ValidationError("config field '" + path + "': " + what);
}

void check_keys(const ordered_json& obj, const std::string& path,
                std::initializer_list<const char*> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* k : allowed)
            if (it.key() == k) { known = true; break; }
        if (!known) fail(path.empty() ? it.key() : path + "." + it.key(),
                         "unknown field");
    }
}

double get_num(const ordered_json& obj, const std::string& path, const char* key,
               double fallback) {
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_number()) fail(path + key, "expected a number");
    return v.get<double>();
}

std::int64_t get_int(const ordered_json& obj, const std::string& path,
                     const char* key, std::int64_t fallback) {
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_number_integer()) fail(path + key, "expected an integer");
    return v.get<std::int64_t>();
}

RadiationModel parse_model(const std::string& s, const std::string& path) {
    if (s == "equal") return RadiationModel::Equal;
    if (s == "proportional") return RadiationModel::Proportional;
    if (s == "general") return RadiationModel::General;
    fail(path, "expected one of \"equal\", \"proportional\", \"general\"");
}

Vec3 parse_vec3(const ordered_json& v, const std::string& path) {
    if (!v.is_array() || v.size() != 3) fail(path, "expected [x, y, z]");
    for (const auto& e : v)
        if (!e.is_number()) fail(path, "expected [x, y, z] of numbers");
    return Vec3{v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
}

void validate(const ScenarioConfig& c) {
    if (!(c.geom.length > 0.0)) fail("geometry.length", "must be > 0");
    if (!(c.geom.height > 0.0)) fail("geometry.height", "must be > 0");
    if (!(c.geom.lateral_offset >= 0.0)) fail("geometry.lateral_offset", "must be >= 0");
    if (!(c.geom.carrier_hz > 0.0)) fail("geometry.carrier_hz", "must be > 0");
    if (!(c.geom.effective_index >= 1.0)) fail("geometry.effective_index", "must be >= 1");
    if (c.n_c < 1) fail("n_c", "must be >= 1");
    if (c.n_j < 1) fail("n_j", "must be >= 1");
    if (!(c.p_c >= 0.0)) fail("p_c", "must be >= 0");
    if (!(c.p_j_max >= 0.0)) fail("p_j_max", "must be >= 0");
    if (!(c.p_max > 0.0)) fail("p_max", "must be > 0");
    if (c.p_c + c.p_j_max > c.p_max + 1e-12)
        fail("p_c", "p_c + p_j_max exceeds p_max");
    if (!(c.epsilon > 0.0 && c.epsilon < 1.0)) fail("epsilon", "must lie in (0, 1)");
    if (c.warden_positions.empty()) {
        if (c.n_wardens < 1) fail("wardens.count", "must be >= 1");
        if (!(c.warden_x_max > c.warden_x_min)) fail("wardens.x_max", "must exceed x_min");
        if (!(c.warden_y_max > c.warden_y_min)) fail("wardens.y_max", "must exceed y_min");
    }
    if (c.tau_points < 2) fail("experiment.tau_points", "must be >= 2");
    if (!(c.tau_span > 0.0)) fail("experiment.tau_span", "must be > 0");
    if (c.sweep_points < 2) fail("experiment.sweep_points", "must be >= 2");
    if (!(c.sweep_p_j_min > 0.0)) fail("experiment.sweep_p_j_min", "must be > 0");
    if (!(c.sweep_p_j_max > c.sweep_p_j_min))
        fail("experiment.sweep_p_j_max", "must exceed sweep_p_j_min");
    if (c.pc_points < 2) fail("experiment.pc_points", "must be >= 2");
    for (double e : c.study_epsilons)
        if (!(e > 0.0 && e < 1.0))
            fail("experiment.study_epsilons", "entries must lie in (0, 1)");
    if (c.study_multistart < 1) fail("experiment.study_multistart", "must be >= 1");
    if (c.study_random_trials < 1) fail("experiment.study_random_trials", "must be >= 1");
    if (c.opt.outer_max < 1) fail("optimizer.outer_max", "must be >= 1");
    if (c.opt.inner_max < 1) fail("optimizer.inner_max", "must be >= 1");
    if (c.opt.steps_per_block < 1) fail("optimizer.steps_per_block", "must be >= 1");
    if (c.opt.multistart < 1) fail("optimizer.multistart", "must be >= 1");
    if (c.opt.grid_density < 1) fail("optimizer.grid_density", "must be >= 1");
    if (c.opt.quad_nodes < 1) fail("optimizer.quad_nodes", "must be >= 1");
    if (c.opt.init_probes < 0) fail("optimizer.init_probes", "must be >= 0");
    if (!(c.opt.proximal_weight >= 0.0)) fail("optimizer.proximal_weight", "must be >= 0");
}

} // namespace

double dbm_to_watt(double dbm) { return 1e-3 * std::pow(10.0, dbm / 10.0); }

const char* model_name(RadiationModel m) {
    switch (m) {
    case RadiationModel::Equal: return "equal";
    case RadiationModel::Proportional: return "proportional";
    default: return "general";
    }
}

WardenSet make_wardens(const ScenarioConfig& cfg) {
    WardenSet w;
    w.sigma_w_sq = dbm_to_watt(cfg.sigma_w_dbm);
    if (!cfg.warden_positions.empty()) {
        w.positions = cfg.warden_positions;
        return w;
    }
    w.positions.reserve(static_cast<std::size_t>(cfg.n_wardens));
    for (int i = 0; i < cfg.n_wardens; ++i) {
        const auto trial = static_cast<std::uint64_t>(i);
        const double ux = philox_u01(cfg.warden_seed, trial, kWardenX, 0);
        const double uy = philox_u01(cfg.warden_seed, trial, kWardenY, 0);
        w.positions.push_back(Vec3{
            cfg.warden_x_min + (cfg.warden_x_max - cfg.warden_x_min) * ux,
            cfg.warden_y_min + (cfg.warden_y_max - cfg.warden_y_min) * uy, 0.0});
    }
    return w;
}

OptimizerProblem make_problem(const ScenarioConfig& cfg) {
    OptimizerProblem p;
    p.geom = cfg.geom.finalized() ? cfg.geom : [&] {
        SystemGeometry g = cfg.geom;
        g.finalize();
        return g;
    }();
    p.wardens = make_wardens(cfg);
    p.bob = cfg.bob;
    p.sigma_b_sq = dbm_to_watt(cfg.sigma_b_dbm);
    p.n_c = cfg.n_c;
    p.n_j = cfg.n_j;
    p.model = cfg.model;
    return p;
}

DesignPoint design_from_config(const ScenarioConfig& cfg) {
    SystemGeometry g = cfg.geom;
    if (!g.finalized()) g.finalize();
    auto spaced = [&](int n) {
        std::vector<double> x(static_cast<std::size_t>(n));
        if (n == 1) {
            x[0] = g.length / 2.0;
        } else {
            for (int i = 0; i < n; ++i)
                x[static_cast<std::size_t>(i)] = g.length * double(i) / double(n - 1);
        }
        return x;
    };
    DesignPoint d;
    d.p_c = cfg.p_c;
    d.p_j_max = cfg.p_j_max;
    d.x_c = spaced(cfg.n_c);
    d.x_j = spaced(cfg.n_j);
    d.rad_c.model = d.rad_j.model = cfg.model;
    if (cfg.model == RadiationModel::General) {
        d.rad_c.delta.assign(static_cast<std::size_t>(cfg.n_c), std::sqrt(0.5));
        d.rad_j.delta.assign(static_cast<std::size_t>(cfg.n_j), std::sqrt(0.5));
    } else if (cfg.model == RadiationModel::Proportional) {
        d.rad_c.delta_sq = d.rad_j.delta_sq = 0.5;
    } else {
        d.rad_c.rho = 1.0 / cfg.n_c;
        d.rad_j.rho = 1.0 / cfg.n_j;
    }
    return d;
}

ScenarioConfig parse_scenario(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("config root must be a JSON object");

    ScenarioConfig c;
    check_keys(j, "", {"geometry", "n_c", "n_j", "model", "p_c", "p_j_max", "p_max",
                       "sigma_w_dbm", "sigma_b_dbm", "bob", "wardens", "epsilon",
                       "optimizer", "experiment"});

    if (j.contains("geometry")) {
        const auto& g = j.at("geometry");
        if (!g.is_object()) fail("geometry", "expected an object");
        check_keys(g, "geometry", {"length", "height", "lateral_offset",
                                   "carrier_hz", "effective_index"});
        c.geom.length = get_num(g, "geometry.", "length", c.geom.length);
        c.geom.height = get_num(g, "geometry.", "height", c.geom.height);
        c.geom.lateral_offset =
            get_num(g, "geometry.", "lateral_offset", c.geom.lateral_offset);
        c.geom.carrier_hz = get_num(g, "geometry.", "carrier_hz", c.geom.carrier_hz);
        c.geom.effective_index =
            get_num(g, "geometry.", "effective_index", c.geom.effective_index);
    }
    c.n_c = static_cast<int>(get_int(j, "", "n_c", c.n_c));
    c.n_j = static_cast<int>(get_int(j, "", "n_j", c.n_j));
    if (j.contains("model")) {
        if (!j.at("model").is_string()) fail("model", "expected a string");
        c.model = parse_model(j.at("model").get<std::string>(), "model");
    }
    c.p_c = get_num(j, "", "p_c", c.p_c);
    c.p_j_max = get_num(j, "", "p_j_max", c.p_j_max);
    c.p_max = get_num(j, "", "p_max", c.p_max);
    c.sigma_w_dbm = get_num(j, "", "sigma_w_dbm", c.sigma_w_dbm);
    c.sigma_b_dbm = get_num(j, "", "sigma_b_dbm", c.sigma_b_dbm);
    if (j.contains("bob")) c.bob = parse_vec3(j.at("bob"), "bob");
    if (j.contains("wardens")) {
        const auto& w = j.at("wardens");
        if (!w.is_object()) fail("wardens", "expected an object");
        check_keys(w, "wardens",
                   {"count", "seed", "x_min", "x_max", "y_min", "y_max", "positions"});
        c.n_wardens = static_cast<int>(get_int(w, "wardens.", "count", c.n_wardens));
        c.warden_seed = static_cast<std::uint64_t>(
            get_int(w, "wardens.", "seed", static_cast<std::int64_t>(c.warden_seed)));
        c.warden_x_min = get_num(w, "wardens.", "x_min", c.warden_x_min);
        c.warden_x_max = get_num(w, "wardens.", "x_max", c.warden_x_max);
        c.warden_y_min = get_num(w, "wardens.", "y_min", c.warden_y_min);
        c.warden_y_max = get_num(w, "wardens.", "y_max", c.warden_y_max);
        if (w.contains("positions")) {
            const auto& ps = w.at("positions");
            if (!ps.is_array()) fail("wardens.positions", "expected an array");
            for (std::size_t i = 0; i < ps.size(); ++i)
                c.warden_positions.push_back(parse_vec3(
                    ps[i], "wardens.positions[" + std::to_string(i) + "]"));
        }
    }
    c.epsilon = get_num(j, "", "epsilon", c.epsilon);
    if (j.contains("optimizer")) {
        const auto& o = j.at("optimizer");
        if (!o.is_object()) fail("optimizer", "expected an object");
        check_keys(o, "optimizer",
                   {"outer_max", "inner_max", "steps_per_block", "tol_outer",
                    "tol_inner", "proximal_weight", "fd_step_rel", "max_backtracks",
                    "feasibility_shrinks", "multistart", "seed", "grid_density",
                    "quad_nodes", "dx_min", "init_probes"});
        auto& o2 = c.opt;
        o2.outer_max = static_cast<int>(get_int(o, "optimizer.", "outer_max", o2.outer_max));
        o2.inner_max = static_cast<int>(get_int(o, "optimizer.", "inner_max", o2.inner_max));
        o2.steps_per_block =
            static_cast<int>(get_int(o, "optimizer.", "steps_per_block", o2.steps_per_block));
        o2.tol_outer = get_num(o, "optimizer.", "tol_outer", o2.tol_outer);
        o2.tol_inner = get_num(o, "optimizer.", "tol_inner", o2.tol_inner);
        o2.proximal_weight = get_num(o, "optimizer.", "proximal_weight", o2.proximal_weight);
        o2.fd_step_rel = get_num(o, "optimizer.", "fd_step_rel", o2.fd_step_rel);
        o2.max_backtracks =
            static_cast<int>(get_int(o, "optimizer.", "max_backtracks", o2.max_backtracks));
        o2.feasibility_shrinks = static_cast<int>(
            get_int(o, "optimizer.", "feasibility_shrinks", o2.feasibility_shrinks));
        o2.multistart = static_cast<int>(get_int(o, "optimizer.", "multistart", o2.multistart));
        o2.seed = static_cast<std::uint64_t>(
            get_int(o, "optimizer.", "seed", static_cast<std::int64_t>(o2.seed)));
        o2.grid_density =
            static_cast<int>(get_int(o, "optimizer.", "grid_density", o2.grid_density));
        o2.quad_nodes = static_cast<int>(get_int(o, "optimizer.", "quad_nodes", o2.quad_nodes));
        o2.init_probes =
            static_cast<int>(get_int(o, "optimizer.", "init_probes", o2.init_probes));
        o2.dx_min = get_num(o, "optimizer.", "dx_min", o2.dx_min);
    }
    if (j.contains("experiment")) {
        const auto& e = j.at("experiment");
        if (!e.is_object()) fail("experiment", "expected an object");
        check_keys(e, "experiment",
                   {"tau_points", "tau_span", "sweep_points", "sweep_p_j_min",
                    "sweep_p_j_max", "pc_points", "mc_seed", "mc_trials",
                    "study_epsilons", "study_multistart", "study_random_trials"});
        c.tau_points = static_cast<int>(get_int(e, "experiment.", "tau_points", c.tau_points));
        c.tau_span = get_num(e, "experiment.", "tau_span", c.tau_span);
        c.sweep_points =
            static_cast<int>(get_int(e, "experiment.", "sweep_points", c.sweep_points));
        c.sweep_p_j_min = get_num(e, "experiment.", "sweep_p_j_min", c.sweep_p_j_min);
        c.sweep_p_j_max = get_num(e, "experiment.", "sweep_p_j_max", c.sweep_p_j_max);
        c.pc_points = static_cast<int>(get_int(e, "experiment.", "pc_points", c.pc_points));
        c.mc_seed = static_cast<std::uint64_t>(
            get_int(e, "experiment.", "mc_seed", static_cast<std::int64_t>(c.mc_seed)));
        c.mc_trials = static_cast<std::uint64_t>(
            get_int(e, "experiment.", "mc_trials", static_cast<std::int64_t>(c.mc_trials)));
        if (e.contains("study_epsilons")) {
            const auto& v = e.at("study_epsilons");
            if (!v.is_array()) fail("experiment.study_epsilons", "expected an array");
            c.study_epsilons.clear();
            for (const auto& item : v) {
                if (!item.is_number())
                    fail("experiment.study_epsilons", "expected numbers");
                c.study_epsilons.push_back(item.get<double>());
            }
        }
        c.study_multistart = static_cast<int>(
            get_int(e, "experiment.", "study_multistart", c.study_multistart));
        c.study_random_trials = static_cast<int>(
            get_int(e, "experiment.", "study_random_trials", c.study_random_trials));
    }

    // Scenario-level power and covertness settings drive the optimizer too.
    c.opt.epsilon = c.epsilon;
    c.opt.p_max = c.p_max;
    c.opt.init_p_c = c.p_c;
    c.opt.init_p_j = c.p_j_max;

    validate(c);
    c.geom.finalize();
    return c;
}

ScenarioConfig load_scenario(const std::string& path) {
    if (path.empty()) {
        ScenarioConfig c;
        c.geom.finalize();
        return c;
    }
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str());
}

std::string scenario_to_json(const ScenarioConfig& c) {
    ordered_json j;
    j["geometry"] = {{"length", c.geom.length},
                     {"height", c.geom.height},
                     {"lateral_offset", c.geom.lateral_offset},
                     {"carrier_hz", c.geom.carrier_hz},
                     {"effective_index", c.geom.effective_index}};
    j["n_c"] = c.n_c;
    j["n_j"] = c.n_j;
    j["model"] = model_name(c.model);
    j["p_c"] = c.p_c;
    j["p_j_max"] = c.p_j_max;
    j["p_max"] = c.p_max;
    j["sigma_w_dbm"] = c.sigma_w_dbm;
    j["sigma_b_dbm"] = c.sigma_b_dbm;
    j["bob"] = {c.bob[0], c.bob[1], c.bob[2]};
    ordered_json w;
    w["count"] = c.n_wardens;
    w["seed"] = c.warden_seed;
    w["x_min"] = c.warden_x_min;
    w["x_max"] = c.warden_x_max;
    w["y_min"] = c.warden_y_min;
    w["y_max"] = c.warden_y_max;
    if (!c.warden_positions.empty()) {
        ordered_json ps = ordered_json::array();
        for (const Vec3& v : c.warden_positions) ps.push_back({v[0], v[1], v[2]});
        w["positions"] = ps;
    }
    j["wardens"] = w;
    j["epsilon"] = c.epsilon;
    j["optimizer"] = {{"outer_max", c.opt.outer_max},
                      {"inner_max", c.opt.inner_max},
                      {"steps_per_block", c.opt.steps_per_block},
                      {"tol_outer", c.opt.tol_outer},
                      {"tol_inner", c.opt.tol_inner},
                      {"proximal_weight", c.opt.proximal_weight},
                      {"fd_step_rel", c.opt.fd_step_rel},
                      {"max_backtracks", c.opt.max_backtracks},
                      {"feasibility_shrinks", c.opt.feasibility_shrinks},
                      {"multistart", c.opt.multistart},
                      {"seed", c.opt.seed},
                      {"grid_density", c.opt.grid_density},
                      {"quad_nodes", c.opt.quad_nodes},
                      {"init_probes", c.opt.init_probes},
                      {"dx_min", c.opt.dx_min}};
    j["experiment"] = {{"tau_points", c.tau_points},
                       {"tau_span", c.tau_span},
                       {"sweep_points", c.sweep_points},
                       {"sweep_p_j_min", c.sweep_p_j_min},
                       {"sweep_p_j_max", c.sweep_p_j_max},
                       {"pc_points", c.pc_points},
                       {"mc_seed", c.mc_seed},
                       {"mc_trials", c.mc_trials},
                       {"study_epsilons", c.study_epsilons},
                       {"study_multistart", c.study_multistart},
                       {"study_random_trials", c.study_random_trials}};
    return j.dump(2) + "\n";
}

} // namespace passcov
