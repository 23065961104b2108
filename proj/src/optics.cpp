#include "discorr/optics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace discorr {

namespace {
constexpr double kZeroProbFloor = 1e-300;
}

BeamSplitterParams::BeamSplitterParams(double t) : t_(t), r_(0.0) {
    if (!(t >= 0.0 && t <= 1.0)) throw OutOfRangeError("BeamSplitterParams: need 0 <= t <= 1");
    r_ = std::sqrt(std::max(0.0, 1.0 - t * t));
}

BeamSplitterParams BeamSplitterParams::from_tr(double t, double r) {
    if (!(t >= 0.0 && t <= 1.0)) throw OutOfRangeError("BeamSplitterParams: need 0 <= t <= 1");
    if (std::abs(t * t + r * r - 1.0) > 1e-12)
        throw OutOfRangeError("BeamSplitterParams: t^2 + r^2 must equal 1");
    return {t, r};
}

double bs_fock_amplitude(int n1, int n2, int m1, int m2, const BeamSplitterParams& bs) {
    if (n1 < 0 || n2 < 0 || m1 < 0 || m2 < 0) return 0.0;
    if (n1 + n2 != m1 + m2) return 0.0;

    // Expand (t a+ + r b+)^n1 (t b+ - r a+)^n2 |0,0>. The j-th term sends j
    // quanta of the first factor to mode a; k is then fixed by m1.
    const double t = bs.t(), r = bs.r();
    double sum = 0.0;
    const int j_lo = std::max(0, m1 - n2);
    const int j_hi = std::min(n1, m1);
    for (int j = j_lo; j <= j_hi; ++j) {
        const int k = j + n2 - m1;  // quanta of the second factor staying in mode b
        double term = binomial(n1, j) * binomial(n2, k) * std::pow(t, j + k) *
                      std::pow(r, (n1 - j) + (n2 - k));
        if ((n2 - k) % 2 != 0) term = -term;
        sum += term;
    }
    return sum * std::sqrt((factorial(m1) / factorial(n1)) * (factorial(m2) / factorial(n2)));
}

namespace {

// Dense transfer matrix of one total-photon-number sector: row = output
// occupation of mode a, column = input occupation of mode a.
std::vector<double> sector_matrix(int total, const BeamSplitterParams& bs) {
    const int side = total + 1;
    std::vector<double> mat(static_cast<size_t>(side) * side);
    for (int ma = 0; ma <= total; ++ma)
        for (int na = 0; na <= total; ++na)
            mat[static_cast<size_t>(ma) * side + na] =
                bs_fock_amplitude(na, total - na, ma, total - ma, bs);
    return mat;
}

} // namespace

MultiModePureState beam_splitter(const MultiModePureState& state, int mode_a, int mode_b,
                                 const BeamSplitterParams& bs) {
    const int rank = state.rank();
    if (mode_a < 0 || mode_a >= rank || mode_b < 0 || mode_b >= rank || mode_a == mode_b)
        throw BadModeSetError("beam_splitter: invalid mode pair");

    const int da = state.dim(mode_a);
    const int db = state.dim(mode_b);
    const size_t sa = state.stride(mode_a);
    const size_t sb = state.stride(mode_b);
    const auto in = state.coeffs();

    // A populated pair sector with total N scatters onto every (ma, N-ma), so
    // it must fit below both cutoffs.
    int max_populated = -1;
    for (size_t flat = 0; flat < in.size(); ++flat) {
        if (in[flat] == cplx(0.0, 0.0)) continue;
        const int ia = static_cast<int>((flat / sa) % static_cast<size_t>(da));
        const int ib = static_cast<int>((flat / sb) % static_cast<size_t>(db));
        max_populated = std::max(max_populated, ia + ib);
    }
    if (max_populated > std::min(da, db) - 1)
        throw TruncationOverflowError(
            "beam_splitter: a populated sector with total " + std::to_string(max_populated) +
            " photons would scatter above the cutoff");

    std::vector<std::vector<double>> sectors;
    sectors.reserve(static_cast<size_t>(max_populated) + 1);
    for (int total = 0; total <= max_populated; ++total) sectors.push_back(sector_matrix(total, bs));

    std::vector<cplx> out(in.size(), cplx(0.0, 0.0));

    // Enumerate spectator blocks: every flat index with the pair modes at zero.
    std::vector<size_t> spectator_bases;
    for (size_t flat = 0; flat < in.size(); ++flat) {
        const int ia = static_cast<int>((flat / sa) % static_cast<size_t>(da));
        const int ib = static_cast<int>((flat / sb) % static_cast<size_t>(db));
        if (ia == 0 && ib == 0) spectator_bases.push_back(flat);
    }

    std::vector<cplx> x;
    for (const size_t base : spectator_bases) {
        for (int total = 0; total <= max_populated; ++total) {
            const int side = total + 1;
            x.assign(static_cast<size_t>(side), cplx(0.0, 0.0));
            bool populated = false;
            for (int na = 0; na <= total; ++na) {
                const cplx v = in[base + sa * static_cast<size_t>(na) +
                                  sb * static_cast<size_t>(total - na)];
                x[static_cast<size_t>(na)] = v;
                populated = populated || v != cplx(0.0, 0.0);
            }
            if (!populated) continue;
            const auto& mat = sectors[static_cast<size_t>(total)];
            for (int ma = 0; ma <= total; ++ma) {
                cplx acc = 0.0;
                const double* row = &mat[static_cast<size_t>(ma) * side];
                for (int na = 0; na <= total; ++na) acc += row[na] * x[static_cast<size_t>(na)];
                out[base + sa * static_cast<size_t>(ma) + sb * static_cast<size_t>(total - ma)] =
                    acc;
            }
        }
    }
    return {state.dims(), std::move(out)};
}

PureTwoModeState beam_splitter(const PureTwoModeState& state, const BeamSplitterParams& bs) {
    return as_two_mode(beam_splitter(as_multi_mode(state), 0, 1, bs));
}

DensityOperator loss_channel(const DensityOperator& rho, int mode, double eta) {
    if (mode < 0 || mode >= rho.rank()) throw BadModeSetError("loss_channel: bad mode index");
    if (!(eta >= 0.0 && eta <= 1.0))
        throw OutOfRangeError("loss_channel: transmitted fraction must be in [0,1]");

    const std::vector<int>& dims = rho.dims();
    const int d = dims[static_cast<size_t>(mode)];
    long stride = 1;
    for (size_t i = static_cast<size_t>(mode) + 1; i < dims.size(); ++i) stride *= dims[i];
    const long side = rho.side();

    // Kraus weight for dropping from n to n-j: sqrt(C(n,j) eta^(n-j) (1-eta)^j).
    auto weight = [&](int n, int j) {
        return std::sqrt(binomial(n, j) * std::pow(eta, n - j) * std::pow(1.0 - eta, j));
    };
    auto occupation = [&](long flat) { return static_cast<int>((flat / stride) % d); };

    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(side, side);
    for (int j = 0; j < d; ++j) {
        const long shift = stride * j;
        for (long row = 0; row < side; ++row) {
            const int nr = occupation(row);
            if (nr < j) continue;
            const double wr = weight(nr, j);
            for (long col = 0; col < side; ++col) {
                const int nc = occupation(col);
                if (nc < j) continue;
                out(row - shift, col - shift) += wr * weight(nc, j) * rho.matrix()(row, col);
            }
        }
    }
    return {dims, std::move(out)};
}

Heralded<MultiModePureState> herald_single_photon(const MultiModePureState& state, int mode) {
    const int rank = state.rank();
    if (mode < 0 || mode >= rank) throw BadModeSetError("herald_single_photon: bad mode index");
    if (rank < 2)
        throw BadModeSetError("herald_single_photon: heralding needs at least two modes");

    const size_t s = state.stride(mode);
    const int d = state.dim(mode);
    const auto in = state.coeffs();

    std::vector<int> out_dims;
    for (int m = 0; m < rank; ++m)
        if (m != mode) out_dims.push_back(state.dim(m));

    std::vector<cplx> slice;
    slice.reserve(in.size() / static_cast<size_t>(d));
    double prob = 0.0;
    for (size_t flat = 0; flat < in.size(); ++flat) {
        if ((flat / s) % static_cast<size_t>(d) != 1) continue;
        slice.push_back(in[flat]);
        prob += std::norm(in[flat]);
    }
    if (prob < kZeroProbFloor)
        throw ZeroNormError("herald_single_photon: outcome has vanishing probability");

    const double scale = 1.0 / std::sqrt(prob);
    for (cplx& c : slice) c *= scale;
    return {MultiModePureState(std::move(out_dims), std::move(slice)), prob};
}

Heralded<DensityOperator> herald_single_photon_mixed(const DensityOperator& rho, int mode) {
    const int rank = rho.rank();
    if (mode < 0 || mode >= rank) throw BadModeSetError("herald_single_photon_mixed: bad mode");
    if (rank < 2)
        throw BadModeSetError("herald_single_photon_mixed: heralding needs at least two modes");

    const std::vector<int>& dims = rho.dims();
    const int d = dims[static_cast<size_t>(mode)];
    long stride = 1;
    for (size_t i = static_cast<size_t>(mode) + 1; i < dims.size(); ++i) stride *= dims[i];

    std::vector<int> out_dims;
    long out_side = 1;
    for (int m = 0; m < rank; ++m)
        if (m != mode) { out_dims.push_back(dims[static_cast<size_t>(m)]); out_side *= out_dims.back(); }

    std::vector<long> kept_rows;
    kept_rows.reserve(static_cast<size_t>(out_side));
    for (long flat = 0; flat < rho.side(); ++flat)
        if ((flat / stride) % d == 1) kept_rows.push_back(flat);

    Eigen::MatrixXcd out(out_side, out_side);
    for (long i = 0; i < out_side; ++i)
        for (long j = 0; j < out_side; ++j)
            out(i, j) = rho.matrix()(kept_rows[static_cast<size_t>(i)],
                                     kept_rows[static_cast<size_t>(j)]);

    const double prob = out.trace().real();
    if (prob < kZeroProbFloor)
        throw ZeroNormError("herald_single_photon_mixed: outcome has vanishing probability");
    out /= prob;
    return {DensityOperator(std::move(out_dims), std::move(out)), prob};
}

} // namespace discorr
