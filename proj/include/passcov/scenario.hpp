#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "passcov/geometry.hpp"
#include "passcov/optimizer.hpp"
#include "passcov/radiation.hpp"
#include "passcov/system_model.hpp"

namespace passcov {

// Everything a run needs, with defaults matching the reference downlink:
// 4 m waveguides at 4 m height, 5 GHz carrier, 0.4 m lateral offset,
// -114 dBm noise everywhere, 100 mW total power split 60/40, four PAs per
// guide, five wardens drawn uniformly from a rectangle in front of the
// array.
struct ScenarioConfig {
    SystemGeometry geom;

    int n_c = 4;
    int n_j = 4;
    RadiationModel model = RadiationModel::Equal;

    double p_c = 0.06;
    double p_j_max = 0.04;
    double p_max = 0.1;

    double sigma_w_dbm = -114.0;
    double sigma_b_dbm = -114.0;

    Vec3 bob{2.1, -0.3, 0.0};

    int n_wardens = 5;
    std::uint64_t warden_seed = 7;
    // Sampling rectangle for warden positions, ground plane.
    double warden_x_min = 0.0;
    double warden_x_max = 4.0;
    double warden_y_min = -2.0;
    double warden_y_max = 2.0;
    // Explicit positions override the sampler when non-empty.
    std::vector<Vec3> warden_positions;

    double epsilon = 0.1;

    OptimizerConfig opt;

    // Experiment knobs.
    int tau_points = 400;
    double tau_span = 3.0;        // sweep up to tau_span * alpha3_max
    int sweep_points = 40;
    double sweep_p_j_min = 1e-4;  // W
    double sweep_p_j_max = 0.1;   // W
    int pc_points = 40;
    std::uint64_t mc_seed = 1;
    std::uint64_t mc_trials = 0;  // 0 disables MC columns

    // Optimizer-study knobs: covertness levels to compare (empty means
    // "just epsilon"), the multistart budget of the strong optimizer arm,
    // and the number of feasible random draws averaged by the baseline.
    std::vector<double> study_epsilons;
    int study_multistart = 5;
    int study_random_trials = 100;
};

double dbm_to_watt(double dbm);

// "equal", "proportional", or "general".
const char* model_name(RadiationModel m);

// Wardens for a config: explicit list if given, otherwise seeded uniform
// draws from the rectangle.
WardenSet make_wardens(const ScenarioConfig& cfg);

// The same scenario viewed as an optimization problem.
OptimizerProblem make_problem(const ScenarioConfig& cfg);
DesignPoint design_from_config(const ScenarioConfig& cfg);

// JSON I/O. Missing fields keep their defaults; unknown fields are
// rejected with the offending path. An empty path loads pure defaults.
ScenarioConfig load_scenario(const std::string& path);
ScenarioConfig parse_scenario(const std::string& text);
std::string scenario_to_json(const ScenarioConfig& cfg);

} // namespace passcov
