// Observables: joint photon-number distributions, logarithmic negativity via
// the partial transpose, and the discorrelation metric D.

#pragma once

#include "discorr/fock_core.hpp"

namespace discorr {

struct JointDistribution {
    int dim1 = 0;
    int dim2 = 0;
    std::vector<double> probs;      // row-major dim1 x dim2
    std::vector<double> marginal1;  // row sums
    std::vector<double> marginal2;  // column sums
    double same_count_prob = 0.0;   // sum of probs[n][n]
    double total = 0.0;

    double p(int n, int m) const { return probs[static_cast<size_t>(n) * dim2 + m]; }
    double mean1() const;
    double mean2() const;
};

// D = 1 - state_same_prob / reference_same_prob.
struct DiscorrelationScore {
    double value;
    double reference_same_prob;
    double state_same_prob;
};

JointDistribution joint_distribution(const PureTwoModeState& state);
// Number-basis measurement statistics: the diagonal of rho (two-mode only).
JointDistribution joint_distribution(const DensityOperator& rho);

double same_count_probability(const JointDistribution& jd);

// Transposes the second mode's indices: ((n,m),(n',m')) -> ((n,m'),(n',m)).
DensityOperator partial_transpose(const DensityOperator& rho);

// log2 of the trace norm of the partial transpose; clamped at 0. Eigenvalues
// below 1e-12 in magnitude are treated as truncation noise.
double logarithmic_negativity(const DensityOperator& rho);
double logarithmic_negativity(const PureTwoModeState& psi);

// Joint distribution of a product of two coherent states with the given mean
// photon numbers, truncated to dim1 x dim2 and renormalized. The standard
// uncorrelated reference for D.
JointDistribution coherent_reference(double mean1, double mean2, int dim1, int dim2);

DiscorrelationScore discorrelation_metric(const JointDistribution& state,
                                          const JointDistribution& reference);

} // namespace discorr
