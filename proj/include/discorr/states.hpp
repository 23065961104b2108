// Constructors for the input states the simulator works with: Fock states,
// coherent states, single- and two-mode squeezed vacuum, and the two-photon
// interference (HOM) state.

#pragma once

#include "discorr/fock_core.hpp"

namespace discorr {

// alpha = magnitude * e^{i phase}, phase stored reduced to [0, 2pi).
class CoherentAmplitude {
public:
    CoherentAmplitude(double magnitude, double phase = 0.0);

    double magnitude() const { return magnitude_; }
    double phase() const { return phase_; }
    cplx value() const;

private:
    double magnitude_, phase_;
};

// Squeezing parameter lambda with |lambda| <= 1. |lambda| == 1 is only
// meaningful as a truncated-and-renormalized state and must be requested
// explicitly via the edge flag.
class SqueezingParameter {
public:
    explicit SqueezingParameter(cplx value, bool edge = false);

    cplx value() const { return value_; }
    double magnitude() const { return std::abs(value_); }
    bool edge() const { return edge_; }
    bool at_unit_magnitude() const;

private:
    cplx value_;
    bool edge_;
};

// Constructors that truncate an infinite expansion also report the weight the
// truncation discarded (before renormalization).
template <typename T>
struct Truncated {
    T state;
    double discarded_weight;
};

// |n> with n < dim.
PureSingleModeState fock(int n, int dim);

// Coherent state, amps[n] = e^{-|a|^2/2} a^n / sqrt(n!), renormalized over the
// truncated space. Throws TailTooLarge when the discarded weight exceeds
// tail_bound.
Truncated<PureSingleModeState> coherent(const CoherentAmplitude& alpha, int dim,
                                        double tail_bound = 1e-8);

// Single-mode squeezed vacuum: even occupations only, with
// amps[2k] proportional to lambda^k sqrt((2k)!) / (2^k k!), i.e. the photon
// statistics of the squeeze-operator exponential with lambda = e^{i theta} tanh(r).
Truncated<PureSingleModeState> smsv(const SqueezingParameter& lambda, int dim);

// Two-mode squeezed vacuum: coeffs[n][n] proportional to lambda^n.
Truncated<PureTwoModeState> tmsv(const SqueezingParameter& lambda, int dim);

// Two-photon interference state produced by |1,1> on a balanced splitter
// under this library's convention: (|0,2> - |2,0>)/sqrt(2).
PureTwoModeState hom_state(int dim);

} // namespace discorr
