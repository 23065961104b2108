// Scenario evaluation and file output: grids and loss curves as CSV or JSON,
// plus the analytic-vs-simulator differential check.

#pragma once

#include <string>
#include <vector>

#include "discorr/analysis.hpp"
#include "discorr/scenarios.hpp"

namespace discorr {

struct RunOptions {
    std::string format = "csv";  // csv | json
    std::string out_path;        // empty: "<scenario id>.<format>"
    double tail_bound = 1e-8;
    int dim_cap = 64;  // overridden by DISCORR_DIM_CAP
    int max_workers = 0;  // 0: pick from hardware
};

// Scalar results for one evaluated state.
struct PointResult {
    bool heralded = false;
    double herald_probability = 1.0;
    double log_negativity = 0.0;
    double same_count_probability = 0.0;
    double d_value = 0.0;
    double d_reference_same_prob = 0.0;
    double reference_mean1 = 0.0;
    double reference_mean2 = 0.0;
    double discarded_input_a = 0.0;
    double discarded_input_b = 0.0;
    JointDistribution jd;
};

struct CurveRow {
    std::string label;  // curve member or loss-point name
    double param = 0.0;
    double log_negativity = 0.0;
    double d_value = 0.0;
    double herald_probability = 1.0;
};

struct RunResult {
    ScenarioSpec spec;
    bool is_curve = false;
    PointResult point;           // grid scenarios
    std::vector<CurveRow> curve; // sweep scenarios
    std::string out_file;
    std::string summary_json;    // machine-readable summary (one object)
};

RunResult run_scenario(const ScenarioSpec& spec, const RunOptions& opt);

struct DiffReport {
    std::string scenario;
    double max_grid_discrepancy = 0.0;
    double herald_prob_discrepancy = 0.0;
    double tol_grid = 1e-9;
    double tol_prob = 1e-8;
    bool pass = false;
    std::string to_json() const;
};

DiffReport run_diff(const ScenarioSpec& spec, const RunOptions& opt, double tol_grid = 1e-9,
                    double tol_prob = 1e-8);

struct SweepRequest {
    std::string param = "loss";  // loss | t | beta-phase
    double from = 0.0;
    double to = 0.9;
    int steps = 10;
};

RunResult run_sweep(const ScenarioSpec& spec, const SweepRequest& req, const RunOptions& opt);

// Shared comparison core (also exercised directly by tests): normalized,
// phase-aligned elementwise discrepancy between two coefficient grids.
DiffReport compare_grids(const std::string& label, const PureTwoModeState& analytic_grid,
                         const PureTwoModeState& oracle_grid, double prob_analytic,
                         double prob_oracle, double tol_grid, double tol_prob);

} // namespace discorr
