#pragma once

#include <vector>

#include "passcov/record_io.hpp"
#include "passcov/scenario.hpp"

namespace passcov {

// Each runner produces a main table plus a small summary table.
struct ExperimentOutput {
    std::vector<Record> rows;
    std::vector<Record> summary;
};

// Detection-error-probability of the fused wardens versus the common
// threshold, at the scenario's nominal design. The closed piecewise form
// is included when all wardens share the jamming slope; Monte-Carlo
// columns are included when mc_trials > 0.
ExperimentOutput run_dep_vs_tau(const ScenarioConfig& cfg);

// Worst-case (threshold-minimized) DEP versus the jamming power budget.
ExperimentOutput run_dep_vs_jamming(const ScenarioConfig& cfg);

// Average covert rate and worst-case DEP versus covert power.
ExperimentOutput run_acr_vs_pc(const ScenarioConfig& cfg);

// Full design optimization; rows carry the iteration trace, the summary
// carries the chosen design.
ExperimentOutput run_optimize(const ScenarioConfig& cfg);

// Method comparison per covertness level: the surrogate-ascent optimizer
// with the study's multistart budget, the same optimizer restricted to a
// single start, and the mean over feasible random draws. One row per
// (epsilon, method); `traces`, when given, collects the optimizer
// iteration rows tagged by epsilon and method.
ExperimentOutput run_optimizer_study(const ScenarioConfig& cfg,
                                     std::vector<Record>* traces = nullptr);

// Internal cross-checks on the scenario. Returns one row per check with
// status pass/fail/skipped; `all_passed` reports the conjunction.
ExperimentOutput run_validate(const ScenarioConfig& cfg, bool* all_passed);

} // namespace passcov
