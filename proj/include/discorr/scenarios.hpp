// Named scenario presets: each id resolves to the full parameter set needed to
// reproduce one of the library's reference configurations, so runs are
// reproducible without remembering magnitudes, phases, or splitter settings.

#pragma once

#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "discorr/optics.hpp"

namespace discorr {

enum class ScenarioKind {
    DisplacedPhoton,       // single photon + coherent state on a balanced splitter
    InputProductCoherent,  // joint statistics of the two coherent inputs
    CircuitCoherent,       // heralded circuit with two coherent inputs
    InputProductSmsv,      // joint statistics of the two squeezed-vacuum inputs
    CircuitSmsv,           // heralded circuit with two squeezed-vacuum inputs
    InputTmsv,             // joint statistics of the two-mode squeezed input
    CircuitTmsv,           // heralded circuit, entangled two-mode squeezed input
    LossCurveNegativity,   // log-negativity vs loss for a family of states
    LossCurveMetric,       // discorrelation metric vs loss for a family of states
    LossPointSweep,        // metric vs loss at the three circuit insertion points
};

struct PolarValue {
    double magnitude = 0.0;
    double phase = 0.0;

    cplx value() const { return std::polar(magnitude, phase); }
};

struct ScenarioSpec {
    std::string id;
    ScenarioKind kind = ScenarioKind::DisplacedPhoton;

    PolarValue alpha;    // coherent input A
    PolarValue beta;     // coherent input B
    PolarValue lambda1;  // squeezing, input A / two-mode input
    PolarValue lambda2;  // squeezing, input B
    double t = 1.0 / std::numbers::sqrt2;
    int dim = 30;
    bool edge = false;  // permit |lambda| = 1 (truncate-and-renormalize)

    std::vector<double> loss_grid;  // loss = 1 - eta; one entry for point runs
    LossPoint loss_point = LossPoint::AfterDiscorrelation;
    // Curve members for the loss-sweep kinds; empty means the kind's default.
    std::vector<std::string> curve_states;
};

// All preset ids in presentation order.
std::vector<std::string> scenario_ids();

// Throws SpecError for unknown ids.
ScenarioSpec resolve_scenario(const std::string& id);

// Curve-member ids valid for the loss-sweep kinds.
std::vector<std::string> loss_curve_state_ids(ScenarioKind kind);

const char* loss_point_name(LossPoint p);
LossPoint parse_loss_point(const std::string& name);

} // namespace discorr
