#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "passcov/design.hpp"
#include "passcov/piecewise_dep.hpp"
#include "passcov/rate.hpp"
#include "passcov/system_model.hpp"

namespace passcov {

// Covert-rate maximization under a detectability floor:
//   maximize   avg_covert_rate(design)
//   subject to min-over-tau DEP >= 1 - epsilon,
//              p_c, p_j_max >= 0, p_c + p_j_max <= p_max,
//              PA positions in [0, length] with pairwise spacing >= dx_min.
struct OptimizerConfig {
    double epsilon = 0.1;
    double p_max = 0.1;   // [W]
    double dx_min = -1.0; // [m]; negative resolves to 0.15 * guide wavelength
    double init_p_j = 0.04;
    double init_p_c = 0.06;

    int outer_max = 30;  // surrogate/constraint refreshes
    int inner_max = 10;  // block sweeps per refresh
    int steps_per_block = 8;
    double tol_outer = 1e-6; // stop when the true rate gain falls below this
    double tol_inner = 1e-7; // stop when block steps fall below this

    double proximal_weight = 1.0; // position-step damping
    double fd_step_rel = 1e-6;
    int max_backtracks = 40;
    int feasibility_shrinks = 60;

    int multistart = 1;
    std::uint64_t seed = 0;
    int grid_density = 64; // threshold-search density
    int quad_nodes = 32;
    // Random feasible candidates scored per start before the ascent; the
    // best of them and the constructed start wins. 0 disables probing.
    int init_probes = 32;
};

struct TraceRow {
    int start = 0;
    int outer = 0;
    int inner = 0;
    std::string phase; // "init" | "refresh" | "power" | "position" | "final"
    double surrogate = 0.0;
    double acr = 0.0;
    double g = 0.0;
    double tau_star = 0.0;
    double slack = 0.0; // g - (1 - epsilon)
    double step_norm = 0.0;
    bool accepted = false;
    bool stalled = false;
};

struct OptimizerTrace {
    std::vector<TraceRow> rows;
};

struct OptimizeResult {
    DesignPoint design;
    double acr = 0.0;
    double g = 0.0;
    double tau_star = 0.0;
    int start_index = 0;
    bool feasible = false;
    OptimizerTrace trace;
};

// Fixed context for one optimization run.
struct OptimizerProblem {
    SystemGeometry geom;
    WardenSet wardens;
    Vec3 bob{};
    double sigma_b_sq = 0.0;
    int n_c = 4;
    int n_j = 4;
    RadiationModel model = RadiationModel::Equal;
};

// Spacing floor in meters after resolving the default.
double resolve_dx_min(const OptimizerConfig& cfg, const SystemGeometry& geom);

// Euclidean projection of one waveguide's coordinates onto
//   { 0 <= x_1, x_{n+1} - x_n >= dx_min, x_N <= length }.
// Pool-adjacent-violators on the shifted coordinates plus a box clamp.
// Throws InfeasibleGeometry when (N-1) * dx_min > length.
std::vector<double> project_spacing(std::vector<double> x, double dx_min,
                                    double length);

// True objective/constraint values for a design.
struct DesignEval {
    double acr = 0.0;
    double g = 1.0;
    double tau_star = 0.0;
};
DesignEval evaluate_design(const OptimizerProblem& p, const OptimizerConfig& cfg,
                           const DesignPoint& d);

// Deterministic feasible start: equally spaced PAs (seeded jitter for
// multistart indices beyond the first), model-default radiation, and a
// covert power found by bisecting the scale of p_c against the true
// covertness constraint (p_c = 0 always satisfies it). A seeded batch of
// cfg.init_probes random feasible candidates is then scored and the best
// of them and the constructed point is returned. Throws
// InfeasibleGeometry when the PAs cannot fit.
DesignPoint feasible_init(const OptimizerProblem& p, const OptimizerConfig& cfg,
                          std::uint64_t seed, int start_index);

// Surrogate ascent with refresh-linearize-block-step structure; see
// optimize() in the implementation for the loop layout. Every reported
// design satisfies the true constraint within 1e-9.
OptimizeResult optimize(const OptimizerProblem& p, const OptimizerConfig& cfg);

// Exhaustive baseline over symmetric equispaced placement families
// (center x pitch per waveguide) and a simplex scan of (p_c, p_j_max) with
// `power_steps` increments of p_max. Radiation parameters stay at model
// defaults. Returns the feasible maximizer of the true rate; throws
// NoFeasibleGridPoint if the grid holds no feasible design.
struct PlacementGrid {
    std::vector<double> centers; // [m]
    std::vector<double> pitches; // [m]
};
PlacementGrid make_placement_grid(const SystemGeometry& geom, int n_pa,
                                  double dx_min, double step);
OptimizeResult grid_search_baseline(const OptimizerProblem& p,
                                    const OptimizerConfig& cfg,
                                    const PlacementGrid& grid_c,
                                    const PlacementGrid& grid_j, int power_steps);

// Rejection sampler: uniform designs (sorted uniform positions pushed
// through project_spacing, uniform power split, uniform radiation
// parameters) kept when truly feasible. Collects `n_feasible` designs or
// throws RejectionBudgetExceeded after `budget_cap` draws.
struct RandomSearchResult {
    double mean_acr = 0.0;
    double best_acr = 0.0;
    DesignPoint best;
    int draws_used = 0;
};
RandomSearchResult random_search_baseline(const OptimizerProblem& p,
                                          const OptimizerConfig& cfg,
                                          int n_feasible, std::uint64_t seed,
                                          int budget_cap = 2000000);

} // namespace passcov
