#include "discorr/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace discorr {

namespace {

constexpr double kZeroProbFloor = 1e-300;

PureSingleModeState embed(const PureSingleModeState& s, int dim) {
    std::vector<cplx> amps(static_cast<size_t>(dim), 0.0);
    std::copy(s.amps().begin(), s.amps().end(), amps.begin());
    return PureSingleModeState(std::move(amps));
}

PureTwoModeState embed(const PureTwoModeState& s, int dim1, int dim2) {
    std::vector<cplx> coeffs(static_cast<size_t>(dim1) * dim2, 0.0);
    for (int n = 0; n < s.dim1(); ++n)
        for (int m = 0; m < s.dim2(); ++m)
            coeffs[static_cast<size_t>(n) * dim2 + m] = s.coeff(n, m);
    return {dim1, dim2, std::move(coeffs)};
}

struct ResolvedLoss {
    double ancilla = 1.0;
    double detector = 1.0;
    double output = 1.0;
};

ResolvedLoss resolve_loss(const std::vector<std::pair<LossPoint, double>>& spec) {
    ResolvedLoss eta;
    for (const auto& [point, value] : spec) {
        if (!(value >= 0.0 && value <= 1.0))
            throw OutOfRangeError("loss_spec: transmitted fraction must be in [0,1]");
        switch (point) {
            case LossPoint::AncillaPreparation: eta.ancilla *= value; break;
            case LossPoint::BeforeHeraldDetectors: eta.detector *= value; break;
            case LossPoint::AfterDiscorrelation: eta.output *= value; break;
        }
    }
    return eta;
}

// Builds the four-mode state |1,1> (x) input, with every mode given two levels
// of headroom over the richest input so no splitter sector can overflow.
MultiModePureState build_circuit_state(const CircuitConfig& cfg, int& dim_a, int& dim_b) {
    if (cfg.entangled() == (cfg.input_a.has_value() || cfg.input_b.has_value()))
        throw SpecError("CircuitConfig: set either both single-mode inputs or one entangled input");
    if (!cfg.entangled() && (!cfg.input_a || !cfg.input_b))
        throw SpecError("CircuitConfig: separable wiring needs both inputs");

    const int in_a = cfg.entangled() ? cfg.entangled_input->dim1() : cfg.input_a->dim();
    const int in_b = cfg.entangled() ? cfg.entangled_input->dim2() : cfg.input_b->dim();
    dim_a = in_a + 2;
    dim_b = in_b + 2;

    const MultiModePureState carriers =
        tensor_product(as_multi_mode(fock(1, dim_a)), as_multi_mode(fock(1, dim_b)));
    if (cfg.entangled())
        return tensor_product(carriers,
                              as_multi_mode(embed(*cfg.entangled_input, dim_a, dim_b)));
    return tensor_product(
        carriers, tensor_product(as_multi_mode(embed(*cfg.input_a, dim_a)),
                                 as_multi_mode(embed(*cfg.input_b, dim_b))));
}

MultiModePureState apply_circuit_splitters(const MultiModePureState& psi,
                                           const BeamSplitterParams& bs) {
    MultiModePureState state = beam_splitter(psi, 0, 1, BeamSplitterParams::balanced());
    state = beam_splitter(state, 2, 0, bs);  // input A first: photon sent toward detector A
    state = beam_splitter(state, 1, 3, bs);  // carrier B first: matches the closed forms' phases
    return state;
}

// Splits a state into unnormalized branches, one per number of photons lost
// from the given mode under transmission eta.
std::vector<MultiModePureState> loss_branches(const MultiModePureState& state, int mode,
                                              double eta) {
    const int d = state.dim(mode);
    const size_t stride = state.stride(mode);
    const auto in = state.coeffs();

    int max_occ = 0;
    for (size_t flat = 0; flat < in.size(); ++flat)
        if (in[flat] != cplx(0.0, 0.0))
            max_occ = std::max(max_occ, static_cast<int>((flat / stride) % static_cast<size_t>(d)));

    std::vector<MultiModePureState> branches;
    for (int j = 0; j <= max_occ; ++j) {
        std::vector<cplx> out(in.size(), cplx(0.0, 0.0));
        double norm = 0.0;
        for (size_t flat = 0; flat < in.size(); ++flat) {
            const int n = static_cast<int>((flat / stride) % static_cast<size_t>(d));
            if (n < j || in[flat] == cplx(0.0, 0.0)) continue;
            const double w =
                std::sqrt(binomial(n, j) * std::pow(eta, n - j) * std::pow(1.0 - eta, j));
            const cplx v = w * in[flat];
            out[flat - stride * static_cast<size_t>(j)] = v;
            norm += std::norm(v);
        }
        if (norm > 0.0) branches.emplace_back(state.dims(), std::move(out));
    }
    return branches;
}

// Probability that a detector behind transmission eta sees exactly one photon
// out of occ.
double click_weight(int occ, double eta) {
    if (occ < 1) return 0.0;
    return occ * eta * std::pow(1.0 - eta, occ - 1);
}

} // namespace

PureTwoModeState simulate_displaced_photon(const CoherentAmplitude& alpha, int dim,
                                           double tail_bound) {
    auto [coh, discarded] = coherent(alpha, dim, tail_bound);
    const int d = dim + 1;  // headroom: the pair holds at most dim photons
    const MultiModePureState input =
        tensor_product(as_multi_mode(fock(1, d)), as_multi_mode(embed(coh, d)));
    // Ordered pair (coherent, photon): this orientation reproduces the closed
    // form's (n - m) phase pattern exactly.
    const MultiModePureState out =
        beam_splitter(input, 1, 0, BeamSplitterParams::balanced());
    return normalize(as_two_mode(out)).state;
}

HeraldedPureOutcome simulate_discorrelation_circuit(const CircuitConfig& cfg) {
    if (!cfg.loss_spec.empty())
        throw SpecError("simulate_discorrelation_circuit: use simulate_with_loss for lossy runs");
    int dim_a = 0, dim_b = 0;
    const MultiModePureState evolved =
        apply_circuit_splitters(build_circuit_state(cfg, dim_a, dim_b), cfg.bs_herald);

    auto first = herald_single_photon(evolved, 2);
    auto second = herald_single_photon(first.state, 2);  // former mode 3
    return {normalize(as_two_mode(second.state)).state,
            first.probability * second.probability};
}

HeraldedMixedOutcome simulate_with_loss(const CircuitConfig& cfg) {
    if (cfg.loss_spec.empty())
        throw SpecError("simulate_with_loss: loss_spec is empty; use the pure path");
    const ResolvedLoss eta = resolve_loss(cfg.loss_spec);

    int dim_a = 0, dim_b = 0;
    const MultiModePureState initial = build_circuit_state(cfg, dim_a, dim_b);

    // Loss branches stay pure through the linear circuit; mixing only enters
    // when they are summed into the output density operator.
    std::vector<MultiModePureState> branches;
    if (eta.ancilla < 1.0) {
        for (const auto& b0 : loss_branches(initial, 0, eta.ancilla)) {
            auto split = loss_branches(b0, 1, eta.ancilla);
            std::move(split.begin(), split.end(), std::back_inserter(branches));
        }
    } else {
        branches.push_back(initial);
    }

    const long out_side = static_cast<long>(dim_a) * dim_b;
    Eigen::MatrixXcd rho_raw = Eigen::MatrixXcd::Zero(out_side, out_side);

    for (const MultiModePureState& branch : branches) {
        const MultiModePureState evolved = apply_circuit_splitters(branch, cfg.bs_herald);

        // Contract the detector modes (2,3) against the one-click POVM. The
        // tensor layout puts the kept modes (0,1) slowest, so it maps directly
        // onto a (kept x detected) matrix.
        std::vector<double> w_a(static_cast<size_t>(dim_a)), w_b(static_cast<size_t>(dim_b));
        for (int k = 0; k < dim_a; ++k) w_a[static_cast<size_t>(k)] = click_weight(k, eta.detector);
        for (int k = 0; k < dim_b; ++k) w_b[static_cast<size_t>(k)] = click_weight(k, eta.detector);

        using RowMajorMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
        Eigen::Map<const RowMajorMat> reshaped(evolved.coeffs().data(), out_side, out_side);

        std::vector<long> cols;
        for (int i2 = 0; i2 < dim_a; ++i2)
            for (int i3 = 0; i3 < dim_b; ++i3)
                if (w_a[static_cast<size_t>(i2)] * w_b[static_cast<size_t>(i3)] > 0.0)
                    cols.push_back(static_cast<long>(i2) * dim_b + i3);

        Eigen::MatrixXcd scaled(out_side, static_cast<long>(cols.size()));
        for (size_t c = 0; c < cols.size(); ++c) {
            const long col = cols[c];
            const double w = std::sqrt(w_a[static_cast<size_t>(col / dim_b)] *
                                       w_b[static_cast<size_t>(col % dim_b)]);
            scaled.col(static_cast<long>(c)) = w * reshaped.col(col);
        }
        rho_raw.noalias() += scaled * scaled.adjoint();
    }

    const double herald_prob = rho_raw.trace().real();
    if (herald_prob < kZeroProbFloor)
        throw ZeroNormError("simulate_with_loss: herald outcome has vanishing probability");
    rho_raw /= herald_prob;

    DensityOperator rho({dim_a, dim_b}, std::move(rho_raw));
    if (eta.output < 1.0) {
        rho = loss_channel(rho, 0, eta.output);
        rho = loss_channel(rho, 1, eta.output);
    }
    return {std::move(rho), herald_prob};
}

} // namespace discorr
