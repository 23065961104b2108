#include "discorr/fock_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace discorr {

namespace {

constexpr double kZeroNormFloor = 1e-300;
// States whose norm is already this close to 1 are returned untouched, which
// makes normalize exactly idempotent.
constexpr double kAlreadyNormalizedTol = 1e-13;

double norm_sq_of(std::span<const cplx> v) {
    double s = 0.0;
    for (const cplx& c : v) s += std::norm(c);
    return s;
}

void check_dims(const std::vector<int>& dims, int max_rank) {
    if (dims.empty()) throw BadModeSetError("state needs at least one mode");
    if (static_cast<int>(dims.size()) > max_rank)
        throw RankOverflowError("at most 4 modes are supported");
    for (int d : dims) TruncationDim check(d);
}

std::vector<cplx> rescaled(std::span<const cplx> v, double factor) {
    std::vector<cplx> out(v.begin(), v.end());
    for (cplx& c : out) c *= factor;
    return out;
}

} // namespace

PureSingleModeState::PureSingleModeState(std::vector<cplx> amps) : amps_(std::move(amps)) {
    check_dims({static_cast<int>(amps_.size())}, 1);
}

double PureSingleModeState::norm_sq() const { return norm_sq_of(amps_); }

double PureSingleModeState::mean_photon_number() const {
    double s = 0.0;
    for (int n = 0; n < dim(); ++n) s += n * std::norm(amps_[static_cast<size_t>(n)]);
    return s;
}

PureTwoModeState::PureTwoModeState(int dim1, int dim2, std::vector<cplx> coeffs)
    : dim1_(dim1), dim2_(dim2), coeffs_(std::move(coeffs)) {
    check_dims({dim1, dim2}, 2);
    if (coeffs_.size() != static_cast<size_t>(dim1) * dim2)
        throw OutOfRangeError("PureTwoModeState: coefficient grid size mismatch");
}

double PureTwoModeState::norm_sq() const { return norm_sq_of(coeffs_); }

Eigen::Map<const Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
PureTwoModeState::as_matrix() const {
    return {coeffs_.data(), dim1_, dim2_};
}

MultiModePureState::MultiModePureState(std::vector<int> dims, std::vector<cplx> coeffs)
    : dims_(std::move(dims)), coeffs_(std::move(coeffs)) {
    check_dims(dims_, 4);
    size_t total = 1;
    for (int d : dims_) total *= static_cast<size_t>(d);
    if (coeffs_.size() != total)
        throw OutOfRangeError("MultiModePureState: coefficient tensor size mismatch");
    strides_.assign(dims_.size(), 1);
    for (int i = static_cast<int>(dims_.size()) - 2; i >= 0; --i)
        strides_[i] = strides_[i + 1] * static_cast<size_t>(dims_[i + 1]);
}

double MultiModePureState::norm_sq() const { return norm_sq_of(coeffs_); }

const cplx& MultiModePureState::at(std::span<const int> occupations) const {
    size_t idx = 0;
    for (size_t i = 0; i < dims_.size(); ++i)
        idx += strides_[i] * static_cast<size_t>(occupations[i]);
    return coeffs_[idx];
}

DensityOperator::DensityOperator(std::vector<int> dims, Eigen::MatrixXcd matrix)
    : dims_(std::move(dims)), matrix_(std::move(matrix)) {
    check_dims(dims_, 4);
    long total = 1;
    for (int d : dims_) total *= d;
    if (matrix_.rows() != total || matrix_.cols() != total)
        throw OutOfRangeError("DensityOperator: matrix side does not match mode dims");
}

namespace {

template <typename Rebuild>
auto normalize_vector(std::span<const cplx> v, const Rebuild& rebuild) {
    const double ns = norm_sq_of(v);
    if (ns < kZeroNormFloor)
        throw ZeroNormError("cannot normalize a state with vanishing norm");
    const double discarded = std::max(0.0, 1.0 - ns);
    if (std::abs(ns - 1.0) < kAlreadyNormalizedTol)
        return Normalized{rebuild(std::vector<cplx>(v.begin(), v.end())), discarded};
    return Normalized{rebuild(rescaled(v, 1.0 / std::sqrt(ns))), discarded};
}

} // namespace

Normalized<PureSingleModeState> normalize(const PureSingleModeState& s) {
    return normalize_vector(s.amps(),
                            [](std::vector<cplx> v) { return PureSingleModeState(std::move(v)); });
}

Normalized<PureTwoModeState> normalize(const PureTwoModeState& s) {
    return normalize_vector(s.coeffs(), [&](std::vector<cplx> v) {
        return PureTwoModeState(s.dim1(), s.dim2(), std::move(v));
    });
}

Normalized<MultiModePureState> normalize(const MultiModePureState& s) {
    return normalize_vector(s.coeffs(), [&](std::vector<cplx> v) {
        return MultiModePureState(s.dims(), std::move(v));
    });
}

Normalized<DensityOperator> normalize(const DensityOperator& rho) {
    const double tr = rho.trace_real();
    if (tr < kZeroNormFloor)
        throw ZeroNormError("cannot normalize a density operator with vanishing trace");
    const double discarded = std::max(0.0, 1.0 - tr);
    if (std::abs(tr - 1.0) < kAlreadyNormalizedTol)
        return {DensityOperator(rho.dims(), rho.matrix()), discarded};
    return {DensityOperator(rho.dims(), rho.matrix() / tr), discarded};
}

PureTwoModeState tensor_product(const PureSingleModeState& a, const PureSingleModeState& b) {
    std::vector<cplx> out(static_cast<size_t>(a.dim()) * b.dim());
    for (int n = 0; n < a.dim(); ++n)
        for (int m = 0; m < b.dim(); ++m)
            out[static_cast<size_t>(n) * b.dim() + m] = a.amp(n) * b.amp(m);
    return {a.dim(), b.dim(), std::move(out)};
}

MultiModePureState tensor_product(const MultiModePureState& a, const MultiModePureState& b) {
    if (a.rank() + b.rank() > 4)
        throw RankOverflowError("tensor_product: combined rank exceeds 4 modes");
    std::vector<int> dims = a.dims();
    dims.insert(dims.end(), b.dims().begin(), b.dims().end());
    std::vector<cplx> out;
    out.reserve(a.size() * b.size());
    for (const cplx& ca : a.coeffs())
        for (const cplx& cb : b.coeffs()) out.push_back(ca * cb);
    return {std::move(dims), std::move(out)};
}

MultiModePureState as_multi_mode(const PureSingleModeState& s) {
    return {{s.dim()}, std::vector<cplx>(s.amps().begin(), s.amps().end())};
}

MultiModePureState as_multi_mode(const PureTwoModeState& s) {
    return {{s.dim1(), s.dim2()}, std::vector<cplx>(s.coeffs().begin(), s.coeffs().end())};
}

PureTwoModeState as_two_mode(const MultiModePureState& s) {
    if (s.rank() != 2) throw BadModeSetError("as_two_mode: state is not two-mode");
    return {s.dim(0), s.dim(1), std::vector<cplx>(s.coeffs().begin(), s.coeffs().end())};
}

PureSingleModeState as_single_mode(const MultiModePureState& s) {
    if (s.rank() != 1) throw BadModeSetError("as_single_mode: state is not single-mode");
    return PureSingleModeState(std::vector<cplx>(s.coeffs().begin(), s.coeffs().end()));
}

namespace {

DensityOperator density_from_vector(const std::vector<int>& dims, std::span<const cplx> v) {
    const long side = static_cast<long>(v.size());
    Eigen::Map<const Eigen::VectorXcd> vec(v.data(), side);
    Eigen::MatrixXcd rho = vec * vec.adjoint();
    return {dims, std::move(rho)};
}

} // namespace

DensityOperator to_density(const PureSingleModeState& psi) {
    return density_from_vector({psi.dim()}, psi.amps());
}

DensityOperator to_density(const PureTwoModeState& psi) {
    return density_from_vector({psi.dim1(), psi.dim2()}, psi.coeffs());
}

DensityOperator to_density(const MultiModePureState& psi) {
    return density_from_vector(psi.dims(), psi.coeffs());
}

namespace {

void validate_mode_set(int rank, std::span<const int> keep) {
    if (keep.empty()) throw BadModeSetError("partial_trace: empty mode set");
    std::vector<bool> seen(static_cast<size_t>(rank), false);
    for (int m : keep) {
        if (m < 0 || m >= rank) throw BadModeSetError("partial_trace: mode index out of range");
        if (seen[static_cast<size_t>(m)]) throw BadModeSetError("partial_trace: duplicate mode");
        seen[static_cast<size_t>(m)] = true;
    }
}

} // namespace

DensityOperator partial_trace(const MultiModePureState& psi, std::span<const int> modes_to_keep) {
    validate_mode_set(psi.rank(), modes_to_keep);

    std::vector<int> keep(modes_to_keep.begin(), modes_to_keep.end());
    std::vector<int> traced;
    for (int m = 0; m < psi.rank(); ++m)
        if (std::find(keep.begin(), keep.end(), m) == keep.end()) traced.push_back(m);

    std::vector<int> keep_dims, traced_dims;
    long keep_side = 1, traced_side = 1;
    for (int m : keep) { keep_dims.push_back(psi.dim(m)); keep_side *= psi.dim(m); }
    for (int m : traced) { traced_dims.push_back(psi.dim(m)); traced_side *= psi.dim(m); }

    // Reshape psi into M[kept, traced] and contract: rho = M M^dagger.
    Eigen::MatrixXcd reshaped(keep_side, traced_side);
    std::vector<int> occ(static_cast<size_t>(psi.rank()), 0);
    const auto coeffs = psi.coeffs();
    for (size_t flat = 0; flat < psi.size(); ++flat) {
        size_t rem = flat;
        for (int m = 0; m < psi.rank(); ++m) {
            occ[static_cast<size_t>(m)] = static_cast<int>(rem / psi.stride(m));
            rem %= psi.stride(m);
        }
        long ki = 0, ti = 0;
        for (size_t i = 0; i < keep.size(); ++i)
            ki = ki * keep_dims[i] + occ[static_cast<size_t>(keep[i])];
        for (size_t i = 0; i < traced.size(); ++i)
            ti = ti * traced_dims[i] + occ[static_cast<size_t>(traced[i])];
        reshaped(ki, ti) = coeffs[flat];
    }
    Eigen::MatrixXcd rho = reshaped * reshaped.adjoint();
    return {keep_dims, std::move(rho)};
}

DensityOperator partial_trace(const DensityOperator& rho, std::span<const int> modes_to_keep) {
    validate_mode_set(rho.rank(), modes_to_keep);

    std::vector<int> keep(modes_to_keep.begin(), modes_to_keep.end());
    std::vector<int> traced;
    for (int m = 0; m < rho.rank(); ++m)
        if (std::find(keep.begin(), keep.end(), m) == keep.end()) traced.push_back(m);

    const std::vector<int>& dims = rho.dims();
    std::vector<long> strides(dims.size(), 1);
    for (int i = static_cast<int>(dims.size()) - 2; i >= 0; --i)
        strides[i] = strides[i + 1] * dims[i + 1];

    std::vector<int> keep_dims;
    long keep_side = 1;
    for (int m : keep) { keep_dims.push_back(dims[static_cast<size_t>(m)]); keep_side *= keep_dims.back(); }
    long traced_side = 1;
    for (int m : traced) traced_side *= dims[static_cast<size_t>(m)];

    std::vector<int> traced_dims;
    for (int m : traced) traced_dims.push_back(dims[static_cast<size_t>(m)]);

    // Offset of a kept flat index (row-major over keep_dims) inside the full
    // flat index, and likewise for traced indices.
    auto keep_offset = [&](long kept_flat) {
        long off = 0;
        for (int i = static_cast<int>(keep.size()) - 1; i >= 0; --i) {
            const int d = keep_dims[static_cast<size_t>(i)];
            off += strides[static_cast<size_t>(keep[static_cast<size_t>(i)])] * (kept_flat % d);
            kept_flat /= d;
        }
        return off;
    };
    auto traced_offset = [&](long traced_flat) {
        long off = 0;
        for (int i = static_cast<int>(traced.size()) - 1; i >= 0; --i) {
            const int d = traced_dims[static_cast<size_t>(i)];
            off += strides[static_cast<size_t>(traced[static_cast<size_t>(i)])] * (traced_flat % d);
            traced_flat /= d;
        }
        return off;
    };

    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(keep_side, keep_side);
    for (long row = 0; row < keep_side; ++row) {
        const long row_off = keep_offset(row);
        for (long col = 0; col < keep_side; ++col) {
            const long col_off = keep_offset(col);
            cplx sum = 0.0;
            for (long t = 0; t < traced_side; ++t) {
                const long t_off = traced_offset(t);
                sum += rho.matrix()(row_off + t_off, col_off + t_off);
            }
            out(row, col) = sum;
        }
    }
    return {keep_dims, std::move(out)};
}

} // namespace discorr
