#include "discorr/analytic.hpp"

#include <cmath>
#include <numbers>

namespace discorr {

namespace {

cplx at(std::span<const cplx> v, int i) {
    if (i < 0 || i >= static_cast<int>(v.size())) return 0.0;
    return v[static_cast<size_t>(i)];
}

cplx grid_at(const PureTwoModeState& g, int n, int m) {
    if (n < 0 || n >= g.dim1() || m < 0 || m >= g.dim2()) return 0.0;
    return g.coeff(n, m);
}

double parity_sign(int k) { return (k % 2 == 0) ? 1.0 : -1.0; }

} // namespace

cplx displaced_photon_coeff(int n, int m, cplx alpha) {
    if (n < 0 || m < 0) throw OutOfRangeError("displaced_photon_coeff: negative occupation");
    if (n == m) return 0.0;
    const double mag = std::abs(alpha);
    if (mag == 0.0) {
        // Vacuum displacement: the photon just splits, (a/sqrt(2))^0 = 1.
        if (n + m != 1) return 0.0;
        return (n - m) / std::sqrt(2.0);
    }
    const int p = n + m - 1;
    const double logmag = -0.5 * mag * mag + p * (std::log(mag) - 0.5 * std::numbers::ln2) -
                          0.5 * (std::numbers::ln2 + log_factorial(n) + log_factorial(m));
    return std::polar(std::exp(logmag), p * std::arg(alpha)) * static_cast<double>(n - m);
}

cplx heralded_coeff(std::span<const cplx> c_a, std::span<const cplx> c_b,
                    const BeamSplitterParams& bs, int n, int m) {
    if (n < 0 || m < 0) throw OutOfRangeError("heralded_coeff: negative occupation");
    const double t = bs.t(), r = bs.r();
    const double t2 = t * t;
    const cplx braces =
        at(c_a, n + 1) * at(c_b, m - 1) * std::sqrt(static_cast<double>(m) * (n + 1)) *
            (1.0 - 0.5 * (m + 1) * t2) -
        at(c_a, n - 1) * at(c_b, m + 1) * std::sqrt(static_cast<double>(n) * (m + 1)) *
            (1.0 - 0.5 * (n + 1) * t2);
    if (braces == cplx(0.0, 0.0)) return 0.0;  // avoids r^(n+m-2) at n+m < 2 for r = 0
    return parity_sign(m) * t2 * std::pow(r, n + m - 2) * braces;
}

double herald_probability(std::span<const cplx> c_a, std::span<const cplx> c_b,
                          const BeamSplitterParams& bs, int dim) {
    double sum = 0.0;
    for (int n = 0; n < dim; ++n)
        for (int m = 0; m < dim; ++m) sum += std::norm(heralded_coeff(c_a, c_b, bs, n, m));
    return sum;
}

cplx diagonal_coeff(std::span<const cplx> c_a, std::span<const cplx> c_b,
                    const BeamSplitterParams& bs, int n) {
    if (n < 0) throw OutOfRangeError("diagonal_coeff: negative occupation");
    if (n == 0) return 0.0;
    const double t = bs.t(), r = bs.r();
    const double t2 = t * t;
    const cplx difference = at(c_a, n + 1) * at(c_b, n - 1) - at(c_a, n - 1) * at(c_b, n + 1);
    if (difference == cplx(0.0, 0.0)) return 0.0;
    return parity_sign(n) * t2 * std::pow(r, 2 * (n - 1)) *
           std::sqrt(static_cast<double>(n) * (n + 1)) * (1.0 - 0.5 * (n + 1) * t2) * difference;
}

CoefficientRatioCriterion check_discorrelation_condition(std::span<const cplx> c_a,
                                                         std::span<const cplx> c_b, int n_max) {
    if (n_max < 1) throw OutOfRangeError("check_discorrelation_condition: need n_max >= 1");
    double worst = 0.0;
    for (int n = 1; n <= n_max; ++n) {
        const double v =
            std::abs(at(c_a, n + 1) * at(c_b, n - 1) - at(c_a, n - 1) * at(c_b, n + 1));
        worst = std::max(worst, v);
    }
    return {worst, 1, n_max};
}

cplx coherent_output_coeff(int n, int m, cplx alpha, const BeamSplitterParams& bs) {
    if (n < 0 || m < 0) throw OutOfRangeError("coherent_output_coeff: negative occupation");
    if (n == m) return 0.0;
    const double t2 = bs.t() * bs.t();
    const double bracket = 1.0 - 0.5 * t2 * (n + m + 1);
    if (bracket == 0.0) return 0.0;
    const double mag = std::abs(alpha);
    cplx base;
    if (mag == 0.0) {
        if (n + m != 0) return 0.0;
        base = 1.0;
    } else {
        const double logmag =
            -mag * mag + (n + m) * std::log(mag) - 0.5 * (log_factorial(n) + log_factorial(m));
        base = std::polar(std::exp(logmag), (n + m) * std::arg(alpha));
    }
    return base * parity_sign(m) * t2 * std::pow(bs.r(), n + m - 2) * bracket *
           static_cast<double>(m - n);
}

cplx entangled_output_coeff(const PureTwoModeState& c_in, const BeamSplitterParams& bs, int n,
                            int m) {
    if (n < 0 || m < 0) throw OutOfRangeError("entangled_output_coeff: negative occupation");
    const double t = bs.t(), r = bs.r();
    if (r < 1e-9)
        throw DegenerateBeamSplitterError("entangled_output_coeff: r appears in a denominator");
    const double half_ratio = 0.5 * t * t / (r * r);
    const cplx braces =
        grid_at(c_in, n - 1, m + 1) * std::sqrt(static_cast<double>(n) * (m + 1)) *
            (1.0 - half_ratio * (n - 1)) -
        grid_at(c_in, n + 1, m - 1) * std::sqrt(static_cast<double>(m) * (n + 1)) *
            (1.0 - half_ratio * (m - 1));
    return parity_sign(m) * t * t * std::pow(r, n + m) * braces;
}

CoefficientRatioCriterion check_entangled_condition(const PureTwoModeState& c_in, int n_max) {
    if (n_max < 1) throw OutOfRangeError("check_entangled_condition: need n_max >= 1");
    double worst = 0.0;
    for (int n = 1; n <= n_max; ++n)
        worst = std::max(worst, std::abs(grid_at(c_in, n - 1, n + 1) - grid_at(c_in, n + 1, n - 1)));
    return {worst, 1, n_max};
}

namespace {

template <typename F>
PureTwoModeState build_grid(int dim1, int dim2, const F& f) {
    std::vector<cplx> coeffs(static_cast<size_t>(dim1) * dim2);
    for (int n = 0; n < dim1; ++n)
        for (int m = 0; m < dim2; ++m) coeffs[static_cast<size_t>(n) * dim2 + m] = f(n, m);
    return {dim1, dim2, std::move(coeffs)};
}

} // namespace

PureTwoModeState displaced_photon_grid(cplx alpha, int dim1, int dim2) {
    return build_grid(dim1, dim2,
                      [&](int n, int m) { return displaced_photon_coeff(n, m, alpha); });
}

PureTwoModeState heralded_grid(std::span<const cplx> c_a, std::span<const cplx> c_b,
                               const BeamSplitterParams& bs, int dim1, int dim2) {
    return build_grid(dim1, dim2,
                      [&](int n, int m) { return heralded_coeff(c_a, c_b, bs, n, m); });
}

PureTwoModeState coherent_output_grid(cplx alpha, const BeamSplitterParams& bs, int dim1,
                                      int dim2) {
    return build_grid(dim1, dim2,
                      [&](int n, int m) { return coherent_output_coeff(n, m, alpha, bs); });
}

PureTwoModeState entangled_output_grid(const PureTwoModeState& c_in,
                                       const BeamSplitterParams& bs, int dim1, int dim2) {
    return build_grid(dim1, dim2,
                      [&](int n, int m) { return entangled_output_coeff(c_in, bs, n, m); });
}

double phase_aligned_max_diff(const PureTwoModeState& a, const PureTwoModeState& b) {
    if (a.dim1() != b.dim1() || a.dim2() != b.dim2())
        throw BadModeSetError("phase_aligned_max_diff: grid dims differ");
    const auto va = a.coeffs();
    const auto vb = b.coeffs();
    size_t pivot = 0;
    double best = -1.0;
    for (size_t i = 0; i < va.size(); ++i) {
        const double m = std::abs(va[i]);
        if (m > best) { best = m; pivot = i; }
    }
    cplx phase = 1.0;
    if (best > 0.0 && std::abs(vb[pivot]) > 0.0) {
        phase = (vb[pivot] / va[pivot]);
        phase /= std::abs(phase);
    }
    double worst = 0.0;
    for (size_t i = 0; i < va.size(); ++i)
        worst = std::max(worst, std::abs(phase * va[i] - vb[i]));
    return worst;
}

} // namespace discorr
