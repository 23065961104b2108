// Closed-form output coefficients of the discorrelation circuits, implemented
// directly from the number-basis formulas and kept independent of the
// brute-force circuit simulator so the two can be differential-tested.
//
// Index convention: out-of-range coefficient reads (n-1 at n=0, or anything
// beyond a vector's length) are zero, matching sums that start at photon
// number 0.

#pragma once

#include <span>

#include "discorr/fock_core.hpp"
#include "discorr/optics.hpp"

namespace discorr {

// Largest |c_A[n+1] c_B[n-1] - c_A[n-1] c_B[n+1]| over n in [1, n_max]. A zero
// value is the cross-multiplied separable-input criterion for a discorrelated
// output (the ratio form would divide by legitimately-zero coefficients).
struct CoefficientRatioCriterion {
    double max_violation;
    int n_min;
    int n_max;

    bool satisfied(double tol = 1e-12) const { return max_violation <= tol; }
};

// Normalized output coefficient of a single photon displaced by a coherent
// state on a balanced splitter:
//   e^{-|a|^2/2} (a/sqrt(2))^(n+m-1) / sqrt(2 n! m!) * (n - m).
cplx displaced_photon_coeff(int n, int m, cplx alpha);

// Unnormalized heralded output coefficient for separable inputs c_A, c_B
// through the nonlocal circuit with heralding splitters of parameters bs:
//   (-1)^m t^2 r^(n+m-2) { c_A[n+1] c_B[m-1] sqrt(m(n+1)) [1-(m+1)t^2/2]
//                        - c_A[n-1] c_B[m+1] sqrt(n(m+1)) [1-(n+1)t^2/2] }.
cplx heralded_coeff(std::span<const cplx> c_a, std::span<const cplx> c_b,
                    const BeamSplitterParams& bs, int n, int m);

// Joint probability that both heralds fire: sum over n,m < dim of the
// squared unnormalized coefficients.
double herald_probability(std::span<const cplx> c_a, std::span<const cplx> c_b,
                          const BeamSplitterParams& bs, int dim);

// The heralded coefficient at n = m, in its factored form
//   (-1)^n t^2 r^(2(n-1)) sqrt(n(n+1)) [1-(n+1)t^2/2]
//       * (c_A[n+1] c_B[n-1] - c_A[n-1] c_B[n+1]);
// algebraically identical to heralded_coeff(n, n).
cplx diagonal_coeff(std::span<const cplx> c_a, std::span<const cplx> c_b,
                    const BeamSplitterParams& bs, int n);

CoefficientRatioCriterion check_discorrelation_condition(std::span<const cplx> c_a,
                                                         std::span<const cplx> c_b, int n_max);

// Specialization of heralded_coeff to two equal coherent inputs (alpha = beta):
//   e^{-|a|^2} a^(n+m) / sqrt(n! m!) (-1)^m t^2 r^(n+m-2)
//       [1 - t^2 (n+m+1)/2] (m - n).
// Equals heralded_coeff exactly, including the overall sign.
cplx coherent_output_coeff(int n, int m, cplx alpha, const BeamSplitterParams& bs);

// Unnormalized output coefficient for an entangled two-mode input grid c:
//   t^2 r^(n+m) (-1)^m { c[n-1][m+1] sqrt(n(m+1)) [1 - t^2 (n-1)/(2 r^2)]
//                      - c[n+1][m-1] sqrt(m(n+1)) [1 - t^2 (m-1)/(2 r^2)] }.
// Requires r > 0 (r appears in a denominator).
cplx entangled_output_coeff(const PureTwoModeState& c_in, const BeamSplitterParams& bs, int n,
                            int m);

// Largest |c[n-1][n+1] - c[n+1][n-1]| over n in [1, n_max]: the entangled-input
// discorrelation criterion.
CoefficientRatioCriterion check_entangled_condition(const PureTwoModeState& c_in, int n_max);

// Grid builders over n,m < dim1 x dim2 (unnormalized where the coefficient is).
PureTwoModeState displaced_photon_grid(cplx alpha, int dim1, int dim2);
PureTwoModeState heralded_grid(std::span<const cplx> c_a, std::span<const cplx> c_b,
                               const BeamSplitterParams& bs, int dim1, int dim2);
PureTwoModeState coherent_output_grid(cplx alpha, const BeamSplitterParams& bs, int dim1,
                                      int dim2);
PureTwoModeState entangled_output_grid(const PureTwoModeState& c_in,
                                       const BeamSplitterParams& bs, int dim1, int dim2);

// Max elementwise |a - e^{i phi} b| after aligning the global phase phi on the
// largest-magnitude coefficient of a. Grids must have equal dims.
double phase_aligned_max_diff(const PureTwoModeState& a, const PureTwoModeState& b);

} // namespace discorr
