#include "discorr/scenarios.hpp"

#include <cmath>
#include <numbers>

#include "discorr/errors.hpp"

namespace discorr {

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt8 = std::sqrt(8.0);

std::vector<double> default_loss_grid() {
    std::vector<double> g;
    for (int i = 0; i <= 9; ++i) g.push_back(0.1 * i);
    return g;
}

ScenarioSpec base(const std::string& id, ScenarioKind kind) {
    ScenarioSpec s;
    s.id = id;
    s.kind = kind;
    return s;
}

} // namespace

std::vector<std::string> scenario_ids() {
    return {"fig1",  "fig3a", "fig3b", "fig3c", "fig3d", "fig4a", "fig4b", "fig4c",
            "fig4d", "fig5a", "fig5b", "fig5c", "fig6a", "fig6b", "fig6c"};
}

ScenarioSpec resolve_scenario(const std::string& id) {
    // Displaced single photon, alpha = sqrt(8), balanced splitter.
    if (id == "fig1") {
        ScenarioSpec s = base(id, ScenarioKind::DisplacedPhoton);
        s.alpha = {kSqrt8, 0.0};
        s.dim = 40;
        return s;
    }
    // Two equal coherent inputs, alpha = beta = sqrt(8).
    if (id == "fig3a") {
        ScenarioSpec s = base(id, ScenarioKind::InputProductCoherent);
        s.alpha = {kSqrt8, 0.0};
        s.beta = {kSqrt8, 0.0};
        s.dim = 30;
        return s;
    }
    // Heralded circuit over coherent inputs; b/c/d differ in relative phase
    // and splitter transmissivity.
    if (id == "fig3b" || id == "fig3c" || id == "fig3d") {
        ScenarioSpec s = base(id, ScenarioKind::CircuitCoherent);
        s.alpha = {kSqrt8, 0.0};
        s.beta = {kSqrt8, id == "fig3b" ? kPi / 2.0 : 0.0};
        s.t = id == "fig3d" ? std::sqrt(2.0 / 15.0) : std::sqrt(2.0 / 30.0);
        s.dim = 30;
        return s;
    }
    // Squeezed-vacuum inputs at the |lambda| = 1 edge.
    if (id == "fig4a") {
        ScenarioSpec s = base(id, ScenarioKind::InputProductSmsv);
        s.lambda1 = {1.0, 0.0};
        s.lambda2 = {1.0, 0.0};
        s.dim = 26;
        s.edge = true;
        return s;
    }
    if (id == "fig4b" || id == "fig4c" || id == "fig4d") {
        ScenarioSpec s = base(id, ScenarioKind::CircuitSmsv);
        s.lambda1 = {1.0, 0.0};
        s.lambda2 = {1.0, id == "fig4b" ? kPi : 0.0};  // fig4b: lambda2 = -1
        s.t = id == "fig4d" ? std::sqrt(2.0 / 5.0) : std::sqrt(2.0 / 9.0);
        s.dim = 26;
        s.edge = true;
        return s;
    }
    // Two-mode squeezed input at the edge.
    if (id == "fig5a") {
        ScenarioSpec s = base(id, ScenarioKind::InputTmsv);
        s.lambda1 = {1.0, 0.0};
        s.dim = 26;
        s.edge = true;
        return s;
    }
    if (id == "fig5b" || id == "fig5c") {
        ScenarioSpec s = base(id, ScenarioKind::CircuitTmsv);
        s.lambda1 = {1.0, 0.0};
        s.t = id == "fig5b" ? std::sqrt(2.0 / 15.0) : 1.0 / std::numbers::sqrt2;
        s.dim = 26;
        s.edge = true;
        return s;
    }
    // Loss sweeps.
    if (id == "fig6a" || id == "fig6b") {
        ScenarioSpec s = base(id, id == "fig6a" ? ScenarioKind::LossCurveNegativity
                                                : ScenarioKind::LossCurveMetric);
        s.alpha = {kSqrt8, 0.0};
        s.beta = {kSqrt8, 0.0};
        s.t = 0.5;  // transmissivity of the not-discorrelated curve member
        s.dim = 30;
        s.loss_grid = default_loss_grid();
        s.curve_states = loss_curve_state_ids(s.kind);
        return s;
    }
    // Loss inserted at the three circuit points. The parameters are chosen so
    // the heralding detectors see almost no multiphoton events, which is the
    // regime where the three insertion points separate cleanly: ancilla loss
    // hurts most, detector loss least.
    if (id == "fig6c") {
        ScenarioSpec s = base(id, ScenarioKind::LossPointSweep);
        s.alpha = {0.6, 0.0};
        s.beta = {0.6, 0.0};
        s.t = 0.7;
        s.dim = 14;
        s.loss_grid = default_loss_grid();
        return s;
    }
    throw SpecError("unknown scenario '" + id + "'");
}

std::vector<std::string> loss_curve_state_ids(ScenarioKind kind) {
    if (kind == ScenarioKind::LossCurveNegativity)
        return {"hom", "displaced", "fig3c", "tmsv", "not-discorrelated"};
    if (kind == ScenarioKind::LossCurveMetric)
        return {"hom", "displaced", "fig3c", "tmsv-discorr"};
    return {};
}

const char* loss_point_name(LossPoint p) {
    switch (p) {
        case LossPoint::AncillaPreparation: return "ancilla";
        case LossPoint::BeforeHeraldDetectors: return "detector";
        case LossPoint::AfterDiscorrelation: return "output";
    }
    return "output";
}

LossPoint parse_loss_point(const std::string& name) {
    if (name == "ancilla") return LossPoint::AncillaPreparation;
    if (name == "detector") return LossPoint::BeforeHeraldDetectors;
    if (name == "output") return LossPoint::AfterDiscorrelation;
    throw SpecError("unknown loss point '" + name + "' (expected ancilla|detector|output)");
}

} // namespace discorr
