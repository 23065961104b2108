#include "discorr/analysis.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace discorr {

namespace {

constexpr double kEigNoiseFloor = 1e-12;

double mean_of(const std::vector<double>& marginal) {
    double s = 0.0;
    for (size_t n = 0; n < marginal.size(); ++n) s += static_cast<double>(n) * marginal[n];
    return s;
}

JointDistribution finish(JointDistribution jd) {
    jd.marginal1.assign(static_cast<size_t>(jd.dim1), 0.0);
    jd.marginal2.assign(static_cast<size_t>(jd.dim2), 0.0);
    jd.total = 0.0;
    jd.same_count_prob = 0.0;
    for (int n = 0; n < jd.dim1; ++n) {
        for (int m = 0; m < jd.dim2; ++m) {
            const double p = jd.p(n, m);
            jd.marginal1[static_cast<size_t>(n)] += p;
            jd.marginal2[static_cast<size_t>(m)] += p;
            jd.total += p;
            if (n == m) jd.same_count_prob += p;
        }
    }
    return jd;
}

} // namespace

double JointDistribution::mean1() const { return mean_of(marginal1); }
double JointDistribution::mean2() const { return mean_of(marginal2); }

JointDistribution joint_distribution(const PureTwoModeState& state) {
    JointDistribution jd;
    jd.dim1 = state.dim1();
    jd.dim2 = state.dim2();
    jd.probs.resize(static_cast<size_t>(jd.dim1) * jd.dim2);
    for (size_t i = 0; i < jd.probs.size(); ++i) jd.probs[i] = std::norm(state.coeffs()[i]);
    return finish(std::move(jd));
}

JointDistribution joint_distribution(const DensityOperator& rho) {
    if (!rho.is_two_mode())
        throw BadModeSetError("joint_distribution: density operator is not two-mode");
    JointDistribution jd;
    jd.dim1 = rho.dim1();
    jd.dim2 = rho.dim2();
    jd.probs.resize(static_cast<size_t>(jd.dim1) * jd.dim2);
    for (long i = 0; i < rho.side(); ++i) jd.probs[static_cast<size_t>(i)] = rho.matrix()(i, i).real();
    return finish(std::move(jd));
}

double same_count_probability(const JointDistribution& jd) { return jd.same_count_prob; }

DensityOperator partial_transpose(const DensityOperator& rho) {
    if (!rho.is_two_mode())
        throw BadModeSetError("partial_transpose: density operator is not two-mode");
    const int d1 = rho.dim1(), d2 = rho.dim2();
    Eigen::MatrixXcd out(rho.side(), rho.side());
    for (int n = 0; n < d1; ++n)
        for (int m = 0; m < d2; ++m)
            for (int np = 0; np < d1; ++np)
                for (int mp = 0; mp < d2; ++mp)
                    out(n * d2 + m, np * d2 + mp) = rho.matrix()(n * d2 + mp, np * d2 + m);
    return {rho.dims(), std::move(out)};
}

double logarithmic_negativity(const DensityOperator& rho) {
    const DensityOperator pt = partial_transpose(rho);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(pt.matrix(),
                                                           Eigen::EigenvaluesOnly);
    double trace_norm = 0.0;
    for (long i = 0; i < solver.eigenvalues().size(); ++i) {
        const double ev = solver.eigenvalues()(i);
        if (std::abs(ev) < kEigNoiseFloor) continue;
        trace_norm += std::abs(ev);
    }
    return std::max(0.0, std::log2(trace_norm));
}

double logarithmic_negativity(const PureTwoModeState& psi) {
    return logarithmic_negativity(to_density(psi));
}

JointDistribution coherent_reference(double mean1, double mean2, int dim1, int dim2) {
    if (mean1 < 0.0 || mean2 < 0.0)
        throw OutOfRangeError("coherent_reference: mean photon numbers must be >= 0");
    JointDistribution jd;
    jd.dim1 = dim1;
    jd.dim2 = dim2;
    jd.probs.resize(static_cast<size_t>(dim1) * dim2);
    double total = 0.0;
    for (int n = 0; n < dim1; ++n)
        for (int m = 0; m < dim2; ++m) {
            const double p = poisson_pmf(mean1, n) * poisson_pmf(mean2, m);
            jd.probs[static_cast<size_t>(n) * dim2 + m] = p;
            total += p;
        }
    for (double& p : jd.probs) p /= total;
    return finish(std::move(jd));
}

DiscorrelationScore discorrelation_metric(const JointDistribution& state,
                                          const JointDistribution& reference) {
    const double ref_same = reference.same_count_prob;
    if (ref_same < 1e-300)
        throw DegenerateReferenceError(
            "discorrelation_metric: reference same-count probability vanishes");
    const double state_same = state.same_count_prob;
    return {1.0 - state_same / ref_same, ref_same, state_same};
}

} // namespace discorr
