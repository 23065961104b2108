// Truncated Fock-space states and operators plus the algebra everything else
// builds on: normalization, tensor products, partial traces, density
// promotion.
//
// Conventions used throughout:
//   - occupation number == index; a mode with TruncationDim d holds 0..d-1
//   - two-mode grids are row-major: coeff(n, m) = coeffs[n * dim2 + m], with
//     n the first-mode occupation (row) and m the second-mode occupation
//   - multimode tensors are row-major with the last mode varying fastest
//
// All types are immutable after construction; operations are pure functions
// returning new values.

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <span>
#include <vector>

#include "discorr/errors.hpp"
#include "discorr/math_util.hpp"

namespace discorr {

// Number of Fock levels per mode. Validated so downstream code can assume
// dim >= 2 everywhere.
struct TruncationDim {
    int dim;
    explicit TruncationDim(int d) : dim(d) {
        if (d < 2) throw OutOfRangeError("TruncationDim: need at least 2 Fock levels");
    }
};

class PureSingleModeState {
public:
    explicit PureSingleModeState(std::vector<cplx> amps);

    int dim() const { return static_cast<int>(amps_.size()); }
    const cplx& amp(int n) const { return amps_[static_cast<size_t>(n)]; }
    std::span<const cplx> amps() const { return amps_; }
    double norm_sq() const;
    double mean_photon_number() const;

private:
    std::vector<cplx> amps_;
};

class PureTwoModeState {
public:
    PureTwoModeState(int dim1, int dim2, std::vector<cplx> coeffs);

    int dim1() const { return dim1_; }
    int dim2() const { return dim2_; }
    const cplx& coeff(int n, int m) const {
        return coeffs_[static_cast<size_t>(n) * dim2_ + m];
    }
    std::span<const cplx> coeffs() const { return coeffs_; }
    double norm_sq() const;

    // View of the grid as a dim1 x dim2 complex matrix (no copy).
    Eigen::Map<const Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
    as_matrix() const;

private:
    int dim1_, dim2_;
    std::vector<cplx> coeffs_;
};

// k-mode pure state, k <= 4 (the largest circuit we simulate has four modes).
class MultiModePureState {
public:
    MultiModePureState(std::vector<int> dims, std::vector<cplx> coeffs);

    int rank() const { return static_cast<int>(dims_.size()); }
    const std::vector<int>& dims() const { return dims_; }
    int dim(int mode) const { return dims_[static_cast<size_t>(mode)]; }
    std::span<const cplx> coeffs() const { return coeffs_; }
    size_t size() const { return coeffs_.size(); }
    double norm_sq() const;

    // Row-major stride of a mode (last mode has stride 1).
    size_t stride(int mode) const { return strides_[static_cast<size_t>(mode)]; }

    const cplx& at(std::span<const int> occupations) const;

private:
    std::vector<int> dims_;
    std::vector<size_t> strides_;
    std::vector<cplx> coeffs_;
};

// Density operator on a truncated k-mode space (k <= 2 in practice). The
// matrix is indexed by flattened occupation tuples, row-major over modes.
class DensityOperator {
public:
    DensityOperator(std::vector<int> dims, Eigen::MatrixXcd matrix);

    const std::vector<int>& dims() const { return dims_; }
    int rank() const { return static_cast<int>(dims_.size()); }
    int side() const { return static_cast<int>(matrix_.rows()); }
    const Eigen::MatrixXcd& matrix() const { return matrix_; }
    double trace_real() const { return matrix_.trace().real(); }

    bool is_two_mode() const { return dims_.size() == 2; }
    int dim1() const { return dims_[0]; }
    int dim2() const { return dims_.size() > 1 ? dims_[1] : 1; }

private:
    std::vector<int> dims_;
    Eigen::MatrixXcd matrix_;
};

using TwoModeDensityOperator = DensityOperator;

// normalize() rescales to unit norm/trace and reports how much probability
// weight the truncation cut off (0 for states whose support already fits).
template <typename T>
struct Normalized {
    T state;
    double discarded_weight;
};

Normalized<PureSingleModeState> normalize(const PureSingleModeState& s);
Normalized<PureTwoModeState> normalize(const PureTwoModeState& s);
Normalized<MultiModePureState> normalize(const MultiModePureState& s);
Normalized<DensityOperator> normalize(const DensityOperator& rho);

// Outer products. Combined rank must stay <= 4.
PureTwoModeState tensor_product(const PureSingleModeState& a, const PureSingleModeState& b);
MultiModePureState tensor_product(const MultiModePureState& a, const MultiModePureState& b);

MultiModePureState as_multi_mode(const PureSingleModeState& s);
MultiModePureState as_multi_mode(const PureTwoModeState& s);
PureTwoModeState as_two_mode(const MultiModePureState& s);
PureSingleModeState as_single_mode(const MultiModePureState& s);

DensityOperator to_density(const PureSingleModeState& psi);
DensityOperator to_density(const PureTwoModeState& psi);
DensityOperator to_density(const MultiModePureState& psi);

// Reduced state on modes_to_keep (order preserved); input trace preserved.
DensityOperator partial_trace(const DensityOperator& rho, std::span<const int> modes_to_keep);
DensityOperator partial_trace(const MultiModePureState& psi, std::span<const int> modes_to_keep);

} // namespace discorr
