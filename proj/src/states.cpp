#include "discorr/states.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

namespace discorr {

namespace {
constexpr double kUnitMagnitudeTol = 1e-12;
}

CoherentAmplitude::CoherentAmplitude(double magnitude, double phase)
    : magnitude_(magnitude), phase_(phase) {
    if (!(magnitude >= 0.0) || !std::isfinite(magnitude))
        throw OutOfRangeError("CoherentAmplitude: magnitude must be finite and >= 0");
    if (!std::isfinite(phase)) throw OutOfRangeError("CoherentAmplitude: phase must be finite");
    const double two_pi = 2.0 * std::numbers::pi;
    phase_ = std::fmod(phase_, two_pi);
    if (phase_ < 0.0) phase_ += two_pi;
}

cplx CoherentAmplitude::value() const { return std::polar(magnitude_, phase_); }

SqueezingParameter::SqueezingParameter(cplx value, bool edge) : value_(value), edge_(edge) {
    const double mag = std::abs(value);
    if (!std::isfinite(mag) || mag > 1.0 + kUnitMagnitudeTol)
        throw OutOfRangeError("SqueezingParameter: |lambda| must be <= 1");
    if (mag >= 1.0 - kUnitMagnitudeTol && !edge)
        throw OutOfRangeError(
            "SqueezingParameter: |lambda| = 1 requires the edge flag (truncate-and-renormalize)");
}

bool SqueezingParameter::at_unit_magnitude() const {
    return magnitude() >= 1.0 - kUnitMagnitudeTol;
}

PureSingleModeState fock(int n, int dim) {
    TruncationDim td(dim);
    if (n < 0 || n >= dim) throw OutOfRangeError("fock: occupation must satisfy 0 <= n < dim");
    std::vector<cplx> amps(static_cast<size_t>(dim), 0.0);
    amps[static_cast<size_t>(n)] = 1.0;
    return PureSingleModeState(std::move(amps));
}

Truncated<PureSingleModeState> coherent(const CoherentAmplitude& alpha, int dim,
                                        double tail_bound) {
    TruncationDim td(dim);
    const cplx a = alpha.value();
    const double mag = alpha.magnitude();
    std::vector<cplx> amps(static_cast<size_t>(dim));
    // Assembled in log space so large |alpha| stays finite all the way out.
    for (int n = 0; n < dim; ++n)
        amps[static_cast<size_t>(n)] =
            std::exp(-0.5 * mag * mag) * power_over_sqrt_factorial(a, n, n);
    auto [state, discarded] = normalize(PureSingleModeState(std::move(amps)));
    if (discarded > tail_bound) {
        char msg[128];
        std::snprintf(msg, sizeof(msg),
                      "coherent: truncation discards %.3g > bound %.3g; increase dim", discarded,
                      tail_bound);
        throw TailTooLargeError(msg);
    }
    return {std::move(state), discarded};
}

Truncated<PureSingleModeState> smsv(const SqueezingParameter& lambda, int dim) {
    TruncationDim td(dim);
    if (dim < 4) throw OutOfRangeError("smsv: need dim >= 4");
    const cplx lam = lambda.value();
    if (std::abs(lam) == 0.0) return {fock(0, dim), 0.0};

    // amps[2k] = prefactor * lambda^k * sqrt((2k)!) / (2^k k!); odd entries
    // exactly zero. The prefactor (1-|lambda|^2)^(1/4) normalizes the
    // untruncated expansion, so the reported discarded weight is the true
    // tail; at |lambda| = 1 (edge) truncation alone defines the state.
    const double prefactor =
        lambda.at_unit_magnitude() ? 1.0 : std::pow(1.0 - std::norm(lam), 0.25);
    std::vector<cplx> amps(static_cast<size_t>(dim), 0.0);
    for (int k = 0; 2 * k < dim; ++k) {
        const double logmag = 0.5 * log_factorial(2 * k) - k * std::numbers::ln2 -
                              log_factorial(k) + k * std::log(std::abs(lam));
        amps[static_cast<size_t>(2 * k)] =
            prefactor * std::polar(std::exp(logmag), k * std::arg(lam));
    }
    auto [state, discarded] = normalize(PureSingleModeState(std::move(amps)));
    return {std::move(state), lambda.at_unit_magnitude() ? 0.0 : discarded};
}

Truncated<PureTwoModeState> tmsv(const SqueezingParameter& lambda, int dim) {
    TruncationDim td(dim);
    const cplx lam = lambda.value();
    const double prefactor =
        lambda.at_unit_magnitude() ? 1.0 : std::sqrt(1.0 - std::norm(lam));
    std::vector<cplx> coeffs(static_cast<size_t>(dim) * dim, 0.0);
    cplx power = 1.0;
    for (int n = 0; n < dim; ++n) {
        coeffs[static_cast<size_t>(n) * dim + n] = prefactor * power;
        power *= lam;
        if (std::abs(lam) == 0.0) break;
    }
    auto [state, discarded] = normalize(PureTwoModeState(dim, dim, std::move(coeffs)));
    return {std::move(state), lambda.at_unit_magnitude() ? 0.0 : discarded};
}

PureTwoModeState hom_state(int dim) {
    TruncationDim td(dim);
    if (dim < 3) throw OutOfRangeError("hom_state: need dim >= 3 to hold two photons");
    std::vector<cplx> coeffs(static_cast<size_t>(dim) * dim, 0.0);
    const double s = 1.0 / std::sqrt(2.0);
    coeffs[static_cast<size_t>(0) * dim + 2] = s;   // |0,2>
    coeffs[static_cast<size_t>(2) * dim + 0] = -s;  // |2,0>
    return {dim, dim, std::move(coeffs)};
}

} // namespace discorr
