// Physical circuit elements: beam splitters on photon-number states, the
// bosonic pure-loss channel, and single-photon heralding.
//
// Beam splitter convention (frozen by conformance tests): for an ordered mode
// pair (a, b) with real amplitudes t, r,
//     a+ -> t a+ + r b+,     b+ -> t b+ - r a+ .
// The caller's pair order decides which mode carries the minus sign.

#pragma once

#include "discorr/fock_core.hpp"

namespace discorr {

class BeamSplitterParams {
public:
    // r = +sqrt(1 - t^2).
    explicit BeamSplitterParams(double t);

    // Explicit pair; r may be negative (inverse splitter). t^2 + r^2 must be 1.
    static BeamSplitterParams from_tr(double t, double r);
    // t and r share the same double so amplitudes that cancel at t = r cancel
    // exactly.
    static BeamSplitterParams balanced() {
        const double s = 1.0 / std::sqrt(2.0);
        return from_tr(s, s);
    }

    double t() const { return t_; }
    double r() const { return r_; }
    BeamSplitterParams inverse() const { return from_tr(t_, -r_); }

private:
    BeamSplitterParams(double t, double r) : t_(t), r_(r) {}
    double t_, r_;
};

enum class LossPoint {
    AncillaPreparation,
    BeforeHeraldDetectors,
    AfterDiscorrelation,
};

// Matrix element <m1,m2| U_BS |n1,n2> for the ordered pair (mode1, mode2).
// Exactly 0 unless n1+n2 == m1+m2; real because t, r are real.
double bs_fock_amplitude(int n1, int n2, int m1, int m2, const BeamSplitterParams& bs);

// Applies the splitter to modes (mode_a, mode_b) of a multimode state, exactly
// per photon-number sector. Throws TruncationOverflow if any populated sector
// would scatter above either mode's cutoff.
MultiModePureState beam_splitter(const MultiModePureState& state, int mode_a, int mode_b,
                                 const BeamSplitterParams& bs);
PureTwoModeState beam_splitter(const PureTwoModeState& state, const BeamSplitterParams& bs);

// Bosonic pure-loss channel on one mode; eta is the transmitted fraction.
DensityOperator loss_channel(const DensityOperator& rho, int mode, double eta);

template <typename StateT>
struct Heralded {
    StateT state;
    double probability;
};

// Projects the given mode onto exactly one photon, removes it, and returns the
// renormalized remainder plus the outcome probability.
Heralded<MultiModePureState> herald_single_photon(const MultiModePureState& state, int mode);
Heralded<DensityOperator> herald_single_photon_mixed(const DensityOperator& rho, int mode);

} // namespace discorr
