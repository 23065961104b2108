// discorrelate: scenario runner for two-mode discorrelated photonic states.
//
//   discorrelate run <scenario>   [overrides]  -- grid or curve + JSON summary
//   discorrelate diff <scenario>  [overrides]  -- analytic vs simulator check
//   discorrelate sweep <scenario> --param loss --from 0 --to 1 --steps 21
//
// Exit codes: 0 ok, 2 bad spec, 3 numerical failure, 4 diff tolerance failure.

#include <iostream>
#include <numbers>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "discorr/expr.hpp"
#include "discorr/runner.hpp"
#include "json.hpp"

namespace {

using discorr::ScenarioSpec;

struct Overrides {
    std::optional<std::string> alpha, alpha_phase, beta, beta_phase;
    std::optional<std::string> lambda1, lambda1_phase, lambda2, lambda2_phase;
    std::optional<std::string> t, loss;
    std::optional<int> dim;
    bool edge = false;
    std::optional<std::string> loss_point;
    std::vector<std::string> states;
};

void add_override_flags(CLI::App* cmd, Overrides& ov) {
    cmd->add_option("--alpha", ov.alpha, "coherent amplitude A (expression, e.g. sqrt8)");
    cmd->add_option("--alpha-phase", ov.alpha_phase, "phase of alpha in radians (e.g. pi/2)");
    cmd->add_option("--beta", ov.beta, "coherent amplitude B");
    cmd->add_option("--beta-phase", ov.beta_phase, "phase of beta in radians");
    cmd->add_option("--lambda", ov.lambda1, "squeezing parameter (input A / two-mode input)");
    cmd->add_option("--lambda-phase", ov.lambda1_phase, "phase of lambda in radians");
    cmd->add_option("--lambda2", ov.lambda2, "squeezing parameter of input B");
    cmd->add_option("--lambda2-phase", ov.lambda2_phase, "phase of lambda2 in radians");
    cmd->add_option("--t", ov.t, "heralding splitter transmissivity (e.g. sqrt(2/15))");
    cmd->add_option("--dim", ov.dim, "Fock levels per input mode");
    cmd->add_flag("--edge", ov.edge, "permit |lambda| = 1 (truncate and renormalize)");
    cmd->add_option("--loss", ov.loss, "loss fraction 1 - eta for a single-point run");
    cmd->add_option("--loss-point", ov.loss_point, "loss insertion: ancilla|detector|output");
    cmd->add_option("--state", ov.states, "curve member(s) for the loss-sweep scenarios");
}

// Signed magnitude expressions fold their sign into the phase.
void assign_polar(discorr::PolarValue& target, const std::optional<std::string>& mag,
                  const std::optional<std::string>& phase) {
    if (mag) {
        double v = discorr::expr::evaluate(*mag);
        target.magnitude = std::abs(v);
        target.phase = v < 0.0 ? std::numbers::pi : 0.0;
    }
    if (phase) target.phase = discorr::expr::evaluate(*phase);
}

ScenarioSpec apply_overrides(ScenarioSpec spec, const Overrides& ov) {
    assign_polar(spec.alpha, ov.alpha, ov.alpha_phase);
    assign_polar(spec.beta, ov.beta, ov.beta_phase);
    assign_polar(spec.lambda1, ov.lambda1, ov.lambda1_phase);
    assign_polar(spec.lambda2, ov.lambda2, ov.lambda2_phase);
    if (ov.t) spec.t = discorr::expr::evaluate(*ov.t);
    if (ov.dim) spec.dim = *ov.dim;
    if (ov.edge) spec.edge = true;
    if (ov.loss) spec.loss_grid = {discorr::expr::evaluate(*ov.loss)};
    if (ov.loss_point) spec.loss_point = discorr::parse_loss_point(*ov.loss_point);
    if (!ov.states.empty()) spec.curve_states = ov.states;
    return spec;
}

void print_error(const std::string& code, const std::string& message) {
    nlohmann::json j{{"error", {{"code", code}, {"message", message}}}};
    std::cout << j.dump(2) << std::endl;
}

bool is_spec_error(const discorr::Error& e) { return e.code() == "SpecError"; }

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"discorrelated two-mode photonic state simulator"};
    app.require_subcommand(1);

    Overrides run_ov, diff_ov, sweep_ov;
    std::string run_id, diff_id, sweep_id;
    discorr::RunOptions run_opt;

    auto* run_cmd = app.add_subcommand("run", "evaluate a scenario and write its data");
    run_cmd->add_option("scenario", run_id, "scenario id (fig1, fig3a..fig6c)")->required();
    add_override_flags(run_cmd, run_ov);
    run_cmd->add_option("--format", run_opt.format, "csv or json");
    run_cmd->add_option("--out", run_opt.out_path, "output file path");

    double tol_grid = 1e-9, tol_prob = 1e-8;
    auto* diff_cmd =
        app.add_subcommand("diff", "compare the closed forms against the circuit simulator");
    diff_cmd->add_option("scenario", diff_id, "scenario id")->required();
    add_override_flags(diff_cmd, diff_ov);
    diff_cmd->add_option("--tol-grid", tol_grid, "elementwise tolerance (default 1e-9)");
    diff_cmd->add_option("--tol-prob", tol_prob, "herald probability tolerance (default 1e-8)");

    discorr::SweepRequest sweep_req;
    discorr::RunOptions sweep_opt;
    auto* sweep_cmd = app.add_subcommand("sweep", "sweep a parameter and write a curve");
    sweep_cmd->add_option("scenario", sweep_id, "scenario id")->required();
    add_override_flags(sweep_cmd, sweep_ov);
    sweep_cmd->add_option("--param", sweep_req.param, "loss | t | beta-phase");
    sweep_cmd->add_option("--from", sweep_req.from, "first grid value");
    sweep_cmd->add_option("--to", sweep_req.to, "last grid value");
    sweep_cmd->add_option("--steps", sweep_req.steps, "number of grid points");
    sweep_cmd->add_option("--format", sweep_opt.format, "csv or json");
    sweep_cmd->add_option("--out", sweep_opt.out_path, "output file path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) {
            const ScenarioSpec spec =
                apply_overrides(discorr::resolve_scenario(run_id), run_ov);
            const discorr::RunResult result = discorr::run_scenario(spec, run_opt);
            std::cout << result.summary_json << std::endl;
            return 0;
        }
        if (diff_cmd->parsed()) {
            const ScenarioSpec spec =
                apply_overrides(discorr::resolve_scenario(diff_id), diff_ov);
            const discorr::DiffReport report =
                discorr::run_diff(spec, discorr::RunOptions{}, tol_grid, tol_prob);
            std::cout << report.to_json() << std::endl;
            return report.pass ? 0 : 4;
        }
        if (sweep_cmd->parsed()) {
            const ScenarioSpec spec =
                apply_overrides(discorr::resolve_scenario(sweep_id), sweep_ov);
            const discorr::RunResult result = discorr::run_sweep(spec, sweep_req, sweep_opt);
            std::cout << result.summary_json << std::endl;
            return 0;
        }
    } catch (const discorr::Error& e) {
        print_error(e.code(), e.what());
        return is_spec_error(e) ? 2 : 3;
    } catch (const std::exception& e) {
        print_error("Internal", e.what());
        return 3;
    }
    return 2;
}
