#include "discorr/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <thread>

#include "discorr/analytic.hpp"
#include "discorr/oracle.hpp"
#include "json.hpp"

namespace discorr {

namespace {

using nlohmann::json;

// ---------------------------------------------------------------------------
// validation

int effective_dim_cap(int fallback) {
    if (const char* env = std::getenv("DISCORR_DIM_CAP")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || v < 2)
            throw SpecError("DISCORR_DIM_CAP must be an integer >= 2");
        return static_cast<int>(v);
    }
    return fallback;
}

void validate_spec(const ScenarioSpec& spec, const RunOptions& opt) {
    const int cap = effective_dim_cap(opt.dim_cap);
    if (spec.dim < 2) throw SpecError("dim must be at least 2");
    if (spec.dim > cap)
        throw SpecError("dim " + std::to_string(spec.dim) + " exceeds cap " +
                        std::to_string(cap) + " (DISCORR_DIM_CAP)");
    if (!(spec.t >= 0.0 && spec.t <= 1.0)) throw SpecError("t must be in [0,1]");
    if (spec.loss_grid.size() > 10000) throw SpecError("loss grid exceeds 10^4 points");
    for (double l : spec.loss_grid)
        if (!(l >= 0.0 && l <= 1.0)) throw SpecError("loss values must be in [0,1]");
}

// ---------------------------------------------------------------------------
// input construction

struct BuiltInputs {
    CircuitConfig cfg;
    std::vector<cplx> c_a, c_b;                // separable truncated inputs
    std::optional<PureTwoModeState> c_in;      // entangled truncated input
    double discarded_a = 0.0, discarded_b = 0.0;
};

BuiltInputs build_circuit_inputs(const ScenarioSpec& spec, double tail_bound) {
    BuiltInputs built;
    built.cfg.bs_herald = BeamSplitterParams(spec.t);
    switch (spec.kind) {
        case ScenarioKind::CircuitCoherent: {
            auto a = coherent(CoherentAmplitude(spec.alpha.magnitude, spec.alpha.phase),
                              spec.dim, tail_bound);
            auto b = coherent(CoherentAmplitude(spec.beta.magnitude, spec.beta.phase), spec.dim,
                              tail_bound);
            built.c_a.assign(a.state.amps().begin(), a.state.amps().end());
            built.c_b.assign(b.state.amps().begin(), b.state.amps().end());
            built.discarded_a = a.discarded_weight;
            built.discarded_b = b.discarded_weight;
            built.cfg.input_a = std::move(a.state);
            built.cfg.input_b = std::move(b.state);
            break;
        }
        case ScenarioKind::CircuitSmsv: {
            auto a = smsv(SqueezingParameter(spec.lambda1.value(), spec.edge), spec.dim);
            auto b = smsv(SqueezingParameter(spec.lambda2.value(), spec.edge), spec.dim);
            built.c_a.assign(a.state.amps().begin(), a.state.amps().end());
            built.c_b.assign(b.state.amps().begin(), b.state.amps().end());
            built.discarded_a = a.discarded_weight;
            built.discarded_b = b.discarded_weight;
            built.cfg.input_a = std::move(a.state);
            built.cfg.input_b = std::move(b.state);
            break;
        }
        case ScenarioKind::CircuitTmsv: {
            auto in = tmsv(SqueezingParameter(spec.lambda1.value(), spec.edge), spec.dim);
            built.discarded_a = in.discarded_weight;
            built.c_in = in.state;
            built.cfg.entangled_input = std::move(in.state);
            break;
        }
        default:
            throw SpecError("scenario kind has no heralded circuit");
    }
    return built;
}

struct Subject {
    PureTwoModeState state;
    bool heralded = false;
    double herald_probability = 1.0;
    double discarded_a = 0.0, discarded_b = 0.0;
    std::optional<BuiltInputs> inputs;  // kept for lossy re-simulation
};

bool is_circuit_kind(ScenarioKind k) {
    return k == ScenarioKind::CircuitCoherent || k == ScenarioKind::CircuitSmsv ||
           k == ScenarioKind::CircuitTmsv;
}

Subject build_subject(const ScenarioSpec& spec, double tail_bound) {
    switch (spec.kind) {
        case ScenarioKind::DisplacedPhoton: {
            const CoherentAmplitude alpha(spec.alpha.magnitude, spec.alpha.phase);
            auto coh = coherent(alpha, spec.dim, tail_bound);
            return {simulate_displaced_photon(alpha, spec.dim, tail_bound), false, 1.0,
                    coh.discarded_weight, 0.0, std::nullopt};
        }
        case ScenarioKind::InputProductCoherent: {
            auto a = coherent(CoherentAmplitude(spec.alpha.magnitude, spec.alpha.phase),
                              spec.dim, tail_bound);
            auto b = coherent(CoherentAmplitude(spec.beta.magnitude, spec.beta.phase), spec.dim,
                              tail_bound);
            return {tensor_product(a.state, b.state), false, 1.0,
                    a.discarded_weight, b.discarded_weight, std::nullopt};
        }
        case ScenarioKind::InputProductSmsv: {
            auto a = smsv(SqueezingParameter(spec.lambda1.value(), spec.edge), spec.dim);
            auto b = smsv(SqueezingParameter(spec.lambda2.value(), spec.edge), spec.dim);
            return {tensor_product(a.state, b.state), false, 1.0,
                    a.discarded_weight, b.discarded_weight, std::nullopt};
        }
        case ScenarioKind::InputTmsv: {
            auto in = tmsv(SqueezingParameter(spec.lambda1.value(), spec.edge), spec.dim);
            return {std::move(in.state), false, 1.0, in.discarded_weight, 0.0, std::nullopt};
        }
        case ScenarioKind::CircuitCoherent:
        case ScenarioKind::CircuitSmsv:
        case ScenarioKind::CircuitTmsv: {
            BuiltInputs built = build_circuit_inputs(spec, tail_bound);
            auto outcome = simulate_discorrelation_circuit(built.cfg);
            const double da = built.discarded_a, db = built.discarded_b;
            return {std::move(outcome.state), true, outcome.herald_probability,
                    da, db, std::move(built)};
        }
        default:
            throw SpecError("scenario kind is a loss sweep; it has no single grid");
    }
}

// ---------------------------------------------------------------------------
// point evaluation

PointResult evaluate_point(const ScenarioSpec& spec, const RunOptions& opt) {
    if (spec.loss_grid.size() > 1)
        throw SpecError("grid scenarios take at most one loss value; use sweep for grids");
    const double loss = spec.loss_grid.empty() ? 0.0 : spec.loss_grid.front();

    Subject subject = build_subject(spec, opt.tail_bound);
    const JointDistribution lossless_jd = joint_distribution(subject.state);
    const JointDistribution reference = coherent_reference(
        lossless_jd.mean1(), lossless_jd.mean2(), lossless_jd.dim1, lossless_jd.dim2);

    PointResult out;
    out.heralded = subject.heralded;
    out.herald_probability = subject.herald_probability;
    out.discarded_input_a = subject.discarded_a;
    out.discarded_input_b = subject.discarded_b;
    out.reference_mean1 = lossless_jd.mean1();
    out.reference_mean2 = lossless_jd.mean2();

    if (loss == 0.0) {
        out.jd = lossless_jd;
        out.log_negativity = logarithmic_negativity(subject.state);
    } else {
        const double eta = 1.0 - loss;
        if (is_circuit_kind(spec.kind) && spec.loss_point != LossPoint::AfterDiscorrelation) {
            CircuitConfig cfg = subject.inputs->cfg;
            cfg.loss_spec = {{spec.loss_point, eta}};
            auto mixed = simulate_with_loss(cfg);
            out.herald_probability = mixed.herald_probability;
            out.jd = joint_distribution(mixed.state);
            out.log_negativity = logarithmic_negativity(mixed.state);
        } else {
            if (spec.loss_point != LossPoint::AfterDiscorrelation)
                throw SpecError("this scenario only supports loss after the output");
            DensityOperator rho = to_density(subject.state);
            rho = loss_channel(rho, 0, eta);
            rho = loss_channel(rho, 1, eta);
            out.jd = joint_distribution(rho);
            out.log_negativity = logarithmic_negativity(rho);
        }
    }

    const DiscorrelationScore score = discorrelation_metric(out.jd, reference);
    out.d_value = score.value;
    out.d_reference_same_prob = score.reference_same_prob;
    out.same_count_probability = out.jd.same_count_prob;
    return out;
}

// ---------------------------------------------------------------------------
// loss curves

struct CurveMember {
    std::string label;
    PureTwoModeState lossless;
    bool heralded = false;
    double herald_probability = 1.0;
    JointDistribution reference;
};

PolarValue member_lambda(const ScenarioSpec& spec) {
    if (spec.lambda1.magnitude > 0.0) return spec.lambda1;
    return {1.0 / 3.0, 0.0};
}

ScenarioSpec member_circuit_spec(const ScenarioSpec& spec, ScenarioKind kind) {
    ScenarioSpec s = spec;
    s.kind = kind;
    s.loss_grid.clear();
    return s;
}

CurveMember build_member(const ScenarioSpec& spec, const std::string& id, double tail_bound) {
    auto finish = [&](PureTwoModeState state, bool heralded, double prob) {
        const JointDistribution jd = joint_distribution(state);
        return CurveMember{id, std::move(state), heralded, prob,
                           coherent_reference(jd.mean1(), jd.mean2(), jd.dim1, jd.dim2)};
    };

    if (id == "hom") return finish(hom_state(4), false, 1.0);
    if (id == "displaced") {
        const CoherentAmplitude alpha(spec.alpha.magnitude, spec.alpha.phase);
        return finish(simulate_displaced_photon(alpha, spec.dim, tail_bound), false, 1.0);
    }
    if (id == "fig3c") {
        ScenarioSpec s = member_circuit_spec(spec, ScenarioKind::CircuitCoherent);
        s.beta = s.alpha;
        s.t = std::sqrt(2.0 / 30.0);
        auto outcome = simulate_discorrelation_circuit(build_circuit_inputs(s, tail_bound).cfg);
        return finish(std::move(outcome.state), true, outcome.herald_probability);
    }
    if (id == "not-discorrelated") {
        ScenarioSpec s = member_circuit_spec(spec, ScenarioKind::CircuitCoherent);
        s.beta = {s.alpha.magnitude, s.alpha.phase + std::numbers::pi / 2.0};
        auto outcome = simulate_discorrelation_circuit(build_circuit_inputs(s, tail_bound).cfg);
        return finish(std::move(outcome.state), true, outcome.herald_probability);
    }
    if (id == "tmsv") {
        const PolarValue lam = member_lambda(spec);
        return finish(tmsv(SqueezingParameter(lam.value(), spec.edge), 16).state, false, 1.0);
    }
    if (id == "tmsv-discorr") {
        ScenarioSpec s = member_circuit_spec(spec, ScenarioKind::CircuitTmsv);
        s.lambda1 = member_lambda(spec);
        s.t = 1.0 / std::numbers::sqrt2;
        s.dim = 16;
        auto outcome = simulate_discorrelation_circuit(build_circuit_inputs(s, tail_bound).cfg);
        return finish(std::move(outcome.state), true, outcome.herald_probability);
    }
    throw SpecError("unknown loss-curve state '" + id + "'");
}

CurveRow evaluate_member_at_loss(const CurveMember& member, double loss) {
    CurveRow row{member.label, loss, 0.0, 0.0, member.herald_probability};
    if (loss == 0.0) {
        row.log_negativity = logarithmic_negativity(member.lossless);
        row.d_value = discorrelation_metric(joint_distribution(member.lossless),
                                            member.reference).value;
        return row;
    }
    const double eta = 1.0 - loss;
    DensityOperator rho = to_density(member.lossless);
    rho = loss_channel(rho, 0, eta);
    rho = loss_channel(rho, 1, eta);
    row.log_negativity = logarithmic_negativity(rho);
    row.d_value = discorrelation_metric(joint_distribution(rho), member.reference).value;
    return row;
}

// Runs tasks 0..count-1 on a bounded pool; results land by index so output
// order never depends on scheduling.
template <typename Task>
void run_indexed(int count, int max_workers, const Task& task) {
    int workers = max_workers > 0 ? max_workers
                                  : static_cast<int>(std::thread::hardware_concurrency());
    workers = std::clamp(workers, 1, 8);
    workers = std::min(workers, count);
    if (workers <= 1) {
        for (int i = 0; i < count; ++i) task(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::exception_ptr> errors(static_cast<size_t>(count));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (;;) {
                const int i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    task(i);
                } catch (...) {
                    errors[static_cast<size_t>(i)] = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    for (const auto& err : errors)
        if (err) std::rethrow_exception(err);
}

std::vector<CurveRow> evaluate_state_curves(const ScenarioSpec& spec, const RunOptions& opt) {
    std::vector<std::string> ids =
        spec.curve_states.empty() ? loss_curve_state_ids(spec.kind) : spec.curve_states;
    const auto allowed = loss_curve_state_ids(spec.kind);
    for (const auto& id : ids)
        if (std::find(allowed.begin(), allowed.end(), id) == allowed.end())
            throw SpecError("state '" + id + "' is not a member of scenario " + spec.id);
    if (spec.loss_grid.empty()) throw SpecError("loss grid is empty");

    std::vector<CurveMember> members;
    members.reserve(ids.size());
    for (const auto& id : ids) members.push_back(build_member(spec, id, opt.tail_bound));

    const int per = static_cast<int>(spec.loss_grid.size());
    std::vector<CurveRow> rows(members.size() * static_cast<size_t>(per));
    run_indexed(static_cast<int>(rows.size()), opt.max_workers, [&](int i) {
        const auto& member = members[static_cast<size_t>(i / per)];
        rows[static_cast<size_t>(i)] =
            evaluate_member_at_loss(member, spec.loss_grid[static_cast<size_t>(i % per)]);
    });
    return rows;
}

std::vector<CurveRow> evaluate_loss_point_curves(const ScenarioSpec& spec,
                                                 const RunOptions& opt) {
    if (spec.loss_grid.empty()) throw SpecError("loss grid is empty");
    ScenarioSpec circuit = spec;
    circuit.kind = ScenarioKind::CircuitCoherent;
    circuit.beta = spec.beta.magnitude > 0.0 ? spec.beta : spec.alpha;
    BuiltInputs built = build_circuit_inputs(circuit, opt.tail_bound);

    auto lossless = simulate_discorrelation_circuit(built.cfg);
    const JointDistribution jd0 = joint_distribution(lossless.state);
    const JointDistribution reference =
        coherent_reference(jd0.mean1(), jd0.mean2(), jd0.dim1, jd0.dim2);

    const LossPoint points[] = {LossPoint::AncillaPreparation, LossPoint::BeforeHeraldDetectors,
                                LossPoint::AfterDiscorrelation};
    const int per = static_cast<int>(spec.loss_grid.size());
    std::vector<CurveRow> rows(3 * static_cast<size_t>(per));
    run_indexed(static_cast<int>(rows.size()), opt.max_workers, [&](int i) {
        const LossPoint point = points[i / per];
        const double loss = spec.loss_grid[static_cast<size_t>(i % per)];
        CircuitConfig cfg = built.cfg;
        cfg.loss_spec = {{point, 1.0 - loss}};
        auto mixed = simulate_with_loss(cfg);
        CurveRow row{loss_point_name(point), loss, logarithmic_negativity(mixed.state),
                     discorrelation_metric(joint_distribution(mixed.state), reference).value,
                     mixed.herald_probability};
        rows[static_cast<size_t>(i)] = std::move(row);
    });
    return rows;
}

// ---------------------------------------------------------------------------
// output

std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void check_emitted_distribution(const JointDistribution& jd) {
    if (std::abs(jd.total - 1.0) > 1e-8)
        throw Error("NumericalInvariant", "emitted distribution total deviates from 1");
    for (double p : jd.probs)
        if (p < -1e-12)
            throw Error("NumericalInvariant", "emitted distribution has a negative entry");
}

void write_grid_csv(const std::string& path, const JointDistribution& jd) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw SpecError("cannot open output file '" + path + "'");
    out << "n,m,p\n";
    for (int n = 0; n < jd.dim1; ++n)
        for (int m = 0; m < jd.dim2; ++m)
            out << n << ',' << m << ',' << fmt_double(jd.p(n, m)) << '\n';
}

void write_curve_csv(const std::string& path, const std::string& label_column,
                     const std::string& param_column, const std::vector<CurveRow>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw SpecError("cannot open output file '" + path + "'");
    if (!label_column.empty()) out << label_column << ',';
    out << param_column << ",log_negativity,discorrelation,herald_probability\n";
    for (const auto& row : rows) {
        if (!label_column.empty()) out << row.label << ',';
        out << fmt_double(row.param) << ',' << fmt_double(row.log_negativity) << ','
            << fmt_double(row.d_value) << ',' << fmt_double(row.herald_probability) << '\n';
    }
}

json spec_to_json(const ScenarioSpec& spec) {
    auto polar = [](const PolarValue& v) {
        return json{{"magnitude", v.magnitude}, {"phase", v.phase}};
    };
    json j{{"id", spec.id},
           {"alpha", polar(spec.alpha)},
           {"beta", polar(spec.beta)},
           {"lambda1", polar(spec.lambda1)},
           {"lambda2", polar(spec.lambda2)},
           {"t", spec.t},
           {"r", std::sqrt(std::max(0.0, 1.0 - spec.t * spec.t))},
           {"dim", spec.dim},
           {"edge", spec.edge},
           {"loss_point", loss_point_name(spec.loss_point)}};
    if (!spec.loss_grid.empty()) j["loss"] = spec.loss_grid;
    if (!spec.curve_states.empty()) j["states"] = spec.curve_states;
    return j;
}

json point_to_json(const PointResult& p) {
    json j{{"herald_probability", p.heralded ? json(p.herald_probability) : json()},
           {"same_count_probability", p.same_count_probability},
           {"discorrelation",
            {{"value", p.d_value},
             {"reference_same_count_probability", p.d_reference_same_prob},
             {"reference_means", {p.reference_mean1, p.reference_mean2}}}},
           {"log_negativity", p.log_negativity},
           {"discarded_weight", {{"input_a", p.discarded_input_a}, {"input_b", p.discarded_input_b}}}};
    return j;
}

json curve_to_json(const std::vector<CurveRow>& rows, const std::string& label_key,
                   const std::string& param_key = "loss") {
    json arr = json::array();
    for (const auto& row : rows) {
        json r{{param_key, row.param},
               {"log_negativity", row.log_negativity},
               {"discorrelation", row.d_value},
               {"herald_probability", row.herald_probability}};
        if (!label_key.empty()) r[label_key] = row.label;
        arr.push_back(std::move(r));
    }
    return arr;
}

std::string default_out_path(const ScenarioSpec& spec, const RunOptions& opt) {
    return spec.id + (opt.format == "json" ? ".json" : ".csv");
}

std::string curve_label_column(ScenarioKind kind) {
    if (kind == ScenarioKind::LossPointSweep) return "loss_point";
    if (kind == ScenarioKind::LossCurveNegativity || kind == ScenarioKind::LossCurveMetric)
        return "state";
    return "";
}

} // namespace

RunResult run_scenario(const ScenarioSpec& spec, const RunOptions& opt) {
    validate_spec(spec, opt);
    if (opt.format != "csv" && opt.format != "json")
        throw SpecError("format must be csv or json");

    RunResult result;
    result.spec = spec;
    result.out_file = opt.out_path.empty() ? default_out_path(spec, opt) : opt.out_path;

    json summary{{"scenario", spec.id},
                 {"parameters", spec_to_json(spec)},
                 {"output", {{"file", result.out_file}, {"format", opt.format}}}};

    if (spec.kind == ScenarioKind::LossCurveNegativity ||
        spec.kind == ScenarioKind::LossCurveMetric || spec.kind == ScenarioKind::LossPointSweep) {
        result.is_curve = true;
        result.curve = spec.kind == ScenarioKind::LossPointSweep
                           ? evaluate_loss_point_curves(spec, opt)
                           : evaluate_state_curves(spec, opt);
        const std::string label = curve_label_column(spec.kind);
        summary["results"] = {{"curve", curve_to_json(result.curve, label)}};
        if (opt.format == "json") {
            std::ofstream out(result.out_file, std::ios::binary);
            if (!out) throw SpecError("cannot open output file '" + result.out_file + "'");
            out << summary.dump(2) << '\n';
        } else {
            write_curve_csv(result.out_file, label, "loss", result.curve);
        }
    } else {
        result.point = evaluate_point(spec, opt);
        check_emitted_distribution(result.point.jd);
        summary["results"] = point_to_json(result.point);
        if (opt.format == "json") {
            json grid = json::array();
            const auto& jd = result.point.jd;
            for (int n = 0; n < jd.dim1; ++n)
                for (int m = 0; m < jd.dim2; ++m)
                    grid.push_back({{"n", n}, {"m", m}, {"p", jd.p(n, m)}});
            summary["grid"] = std::move(grid);
            std::ofstream out(result.out_file, std::ios::binary);
            if (!out) throw SpecError("cannot open output file '" + result.out_file + "'");
            out << summary.dump(2) << '\n';
        } else {
            write_grid_csv(result.out_file, result.point.jd);
        }
    }

    result.summary_json = summary.dump(2);
    return result;
}

DiffReport compare_grids(const std::string& label, const PureTwoModeState& analytic_grid,
                         const PureTwoModeState& oracle_grid, double prob_analytic,
                         double prob_oracle, double tol_grid, double tol_prob) {
    DiffReport report;
    report.scenario = label;
    report.tol_grid = tol_grid;
    report.tol_prob = tol_prob;
    const PureTwoModeState a = normalize(analytic_grid).state;
    const PureTwoModeState o = normalize(oracle_grid).state;
    report.max_grid_discrepancy = phase_aligned_max_diff(a, o);
    report.herald_prob_discrepancy = std::abs(prob_analytic - prob_oracle);
    report.pass = report.max_grid_discrepancy <= tol_grid &&
                  report.herald_prob_discrepancy <= tol_prob;
    return report;
}

std::string DiffReport::to_json() const {
    json j{{"scenario", scenario},
           {"max_grid_discrepancy", max_grid_discrepancy},
           {"herald_probability_discrepancy", herald_prob_discrepancy},
           {"tolerance_grid", tol_grid},
           {"tolerance_probability", tol_prob},
           {"pass", pass}};
    return j.dump(2);
}

DiffReport run_diff(const ScenarioSpec& spec, const RunOptions& opt, double tol_grid,
                    double tol_prob) {
    validate_spec(spec, opt);
    switch (spec.kind) {
        case ScenarioKind::DisplacedPhoton: {
            const CoherentAmplitude alpha(spec.alpha.magnitude, spec.alpha.phase);
            const PureTwoModeState oracle_grid =
                simulate_displaced_photon(alpha, spec.dim, opt.tail_bound);
            // Truncation-consistent comparison: the simulator's input holds at
            // most dim-1 coherent photons plus the single photon, so the
            // closed form is only meaningful on shells n+m <= dim.
            PureTwoModeState analytic_grid =
                displaced_photon_grid(alpha.value(), oracle_grid.dim1(), oracle_grid.dim2());
            std::vector<cplx> masked(analytic_grid.coeffs().begin(),
                                     analytic_grid.coeffs().end());
            for (int n = 0; n < analytic_grid.dim1(); ++n)
                for (int m = 0; m < analytic_grid.dim2(); ++m)
                    if (n + m > spec.dim)
                        masked[static_cast<size_t>(n) * analytic_grid.dim2() + m] = 0.0;
            analytic_grid =
                PureTwoModeState(analytic_grid.dim1(), analytic_grid.dim2(), std::move(masked));
            return compare_grids(spec.id, analytic_grid, oracle_grid, 1.0, 1.0, tol_grid,
                                 tol_prob);
        }
        case ScenarioKind::CircuitCoherent:
        case ScenarioKind::CircuitSmsv: {
            BuiltInputs built = build_circuit_inputs(spec, opt.tail_bound);
            auto outcome = simulate_discorrelation_circuit(built.cfg);
            const PureTwoModeState analytic_grid =
                heralded_grid(built.c_a, built.c_b, built.cfg.bs_herald, outcome.state.dim1(),
                              outcome.state.dim2());
            return compare_grids(spec.id, analytic_grid, outcome.state,
                                 analytic_grid.norm_sq(), outcome.herald_probability, tol_grid,
                                 tol_prob);
        }
        case ScenarioKind::CircuitTmsv: {
            BuiltInputs built = build_circuit_inputs(spec, opt.tail_bound);
            auto outcome = simulate_discorrelation_circuit(built.cfg);
            const PureTwoModeState analytic_grid =
                entangled_output_grid(*built.c_in, built.cfg.bs_herald, outcome.state.dim1(),
                                      outcome.state.dim2());
            return compare_grids(spec.id, analytic_grid, outcome.state,
                                 analytic_grid.norm_sq(), outcome.herald_probability, tol_grid,
                                 tol_prob);
        }
        default:
            throw SpecError("scenario '" + spec.id +
                            "' has no analytic/simulator pair to compare");
    }
}

RunResult run_sweep(const ScenarioSpec& spec, const SweepRequest& req, const RunOptions& opt) {
    validate_spec(spec, opt);
    if (req.steps < 1 || req.steps > 10000) throw SpecError("sweep needs 1..10^4 steps");

    std::vector<double> grid;
    grid.reserve(static_cast<size_t>(req.steps));
    for (int i = 0; i < req.steps; ++i) {
        const double x = req.steps == 1
                             ? req.from
                             : req.from + (req.to - req.from) * i / (req.steps - 1);
        grid.push_back(x);
    }

    if (req.param == "loss") {
        ScenarioSpec swept = spec;
        swept.loss_grid = grid;
        if (spec.kind == ScenarioKind::LossCurveNegativity ||
            spec.kind == ScenarioKind::LossCurveMetric ||
            spec.kind == ScenarioKind::LossPointSweep)
            return run_scenario(swept, opt);

        // Single-subject loss sweep: the subject's lossless reference is fixed.
        Subject subject = build_subject(swept, opt.tail_bound);
        const JointDistribution jd0 = joint_distribution(subject.state);
        CurveMember member{spec.id, subject.state, subject.heralded, subject.herald_probability,
                           coherent_reference(jd0.mean1(), jd0.mean2(), jd0.dim1, jd0.dim2)};
        std::vector<CurveRow> rows(grid.size());
        run_indexed(static_cast<int>(grid.size()), opt.max_workers, [&](int i) {
            rows[static_cast<size_t>(i)] =
                evaluate_member_at_loss(member, grid[static_cast<size_t>(i)]);
        });

        RunResult result;
        result.spec = swept;
        result.is_curve = true;
        result.curve = std::move(rows);
        result.out_file = opt.out_path.empty() ? default_out_path(swept, opt) : opt.out_path;
        json summary{{"scenario", swept.id},
                     {"parameters", spec_to_json(swept)},
                     {"results", {{"curve", curve_to_json(result.curve, "")}}},
                     {"output", {{"file", result.out_file}, {"format", opt.format}}}};
        if (opt.format == "json") {
            std::ofstream out(result.out_file, std::ios::binary);
            if (!out) throw SpecError("cannot open output file '" + result.out_file + "'");
            out << summary.dump(2) << '\n';
        } else {
            write_curve_csv(result.out_file, "", "loss", result.curve);
        }
        result.summary_json = summary.dump(2);
        return result;
    }

    if (req.param == "t" || req.param == "beta-phase") {
        if (!is_circuit_kind(spec.kind))
            throw SpecError("param '" + req.param + "' is only sweepable on circuit scenarios");
        std::vector<CurveRow> rows(grid.size());
        run_indexed(static_cast<int>(grid.size()), opt.max_workers, [&](int i) {
            ScenarioSpec varied = spec;
            varied.loss_grid.clear();
            if (req.param == "t") varied.t = grid[static_cast<size_t>(i)];
            else varied.beta.phase = grid[static_cast<size_t>(i)];
            const PointResult p = evaluate_point(varied, opt);
            rows[static_cast<size_t>(i)] = {spec.id, grid[static_cast<size_t>(i)],
                                            p.log_negativity, p.d_value, p.herald_probability};
        });
        RunResult result;
        result.spec = spec;
        result.is_curve = true;
        result.curve = std::move(rows);
        result.out_file = opt.out_path.empty() ? default_out_path(spec, opt) : opt.out_path;
        json summary{{"scenario", spec.id},
                     {"parameters", spec_to_json(spec)},
                     {"results", {{"curve", curve_to_json(result.curve, "", req.param)}}},
                     {"output", {{"file", result.out_file}, {"format", opt.format}}}};
        if (opt.format == "json") {
            std::ofstream out(result.out_file, std::ios::binary);
            if (!out) throw SpecError("cannot open output file '" + result.out_file + "'");
            out << summary.dump(2) << '\n';
        } else {
            write_curve_csv(result.out_file, "", req.param, result.curve);
        }
        result.summary_json = summary.dump(2);
        return result;
    }

    throw SpecError("unknown sweep parameter '" + req.param + "' (expected loss|t|beta-phase)");
}

} // namespace discorr
