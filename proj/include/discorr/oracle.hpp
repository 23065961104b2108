// Brute-force simulation of the generation circuits, built only on fock_core
// and optics primitives (never on the closed forms in analytic), so the two
// paths can be differential-tested against each other.
//
// Frozen circuit wiring, fixed by the conformance tests:
//   modes [0] herald-carrier A, [1] herald-carrier B, [2] input A, [3] input B
//   1. two single photons on modes (0,1) meet a balanced splitter
//   2. splitter of parameters bs on the ordered pair (2,0)   (input first)
//   3. splitter of parameters bs on the ordered pair (1,3)   (carrier first)
//   4. exactly one photon heralded on mode 2, then on mode 3
//   5. the remaining modes (0,1) are the output pair (A, B)

#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "discorr/optics.hpp"
#include "discorr/states.hpp"

namespace discorr {

struct CircuitConfig {
    // Separable wiring: both inputs set. Entangled wiring: entangled_input set.
    std::optional<PureSingleModeState> input_a;
    std::optional<PureSingleModeState> input_b;
    std::optional<PureTwoModeState> entangled_input;

    BeamSplitterParams bs_herald = BeamSplitterParams::balanced();

    // Transmitted fraction eta per insertion point; entries for the same point
    // compose multiplicatively.
    std::vector<std::pair<LossPoint, double>> loss_spec;

    bool entangled() const { return entangled_input.has_value(); }
};

struct HeraldedPureOutcome {
    PureTwoModeState state;
    double herald_probability;
};

struct HeraldedMixedOutcome {
    DensityOperator state;
    double herald_probability;
};

// A single photon and a coherent state meeting a balanced splitter. The modes
// are sized dim+1 so no populated sector can overflow; the grid therefore has
// side dim+1.
PureTwoModeState simulate_displaced_photon(const CoherentAmplitude& alpha, int dim,
                                           double tail_bound = 1e-8);

// Lossless path; config.loss_spec must be empty.
HeraldedPureOutcome simulate_discorrelation_circuit(const CircuitConfig& cfg);

// Density-operator path with loss inserted at the configured points.
HeraldedMixedOutcome simulate_with_loss(const CircuitConfig& cfg);

} // namespace discorr
