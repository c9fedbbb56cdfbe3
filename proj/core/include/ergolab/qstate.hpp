#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <optional>
#include <utility>

#include "ergolab/errors.hpp"

namespace ergolab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Default validation tolerance for state invariants.
inline constexpr double kValidationTol = 1e-9;

/// Default cap on tensor-power dimensions. Overridable per call; the CLI also
/// honors the ERGOLAB_DIM_CAP environment variable.
inline constexpr std::int64_t kDefaultDimCap = 4096;

/// Optional bipartition annotation (d_A, d_B) with d_A * d_B = dim. Index
/// convention is row-major with subsystem A slowest: index = i_A * d_B + i_B.
struct Bipartition {
    int dim_a = 0;
    int dim_b = 0;
};

enum class Subsystem { A, B };

/// Validated d x d complex density matrix (Hermitian, PSD, unit trace).
struct DensityMatrix {
    Matrix mat;
    std::optional<Bipartition> dims;

    int dim() const { return static_cast<int>(mat.rows()); }

    /// Wrap a matrix known-valid by construction (partial traces, dephasings,
    /// thermal states). Skips revalidation.
    static DensityMatrix unchecked(Matrix m, std::optional<Bipartition> dims = std::nullopt) {
        return DensityMatrix{std::move(m), dims};
    }

    const Bipartition& bipartition(const char* op) const {
        if (!dims) {
            throw MissingDims(std::string(op) + ": state carries no bipartition annotation");
        }
        return *dims;
    }
};

/// Normalized pure-state vector, optionally bipartite.
struct PureState {
    Vector amplitudes;
    std::optional<Bipartition> dims;

    int dim() const { return static_cast<int>(amplitudes.size()); }

    DensityMatrix projector() const {
        return DensityMatrix::unchecked(amplitudes * amplitudes.adjoint(), dims);
    }

    const Bipartition& bipartition(const char* op) const {
        if (!dims) {
            throw MissingDims(std::string(op) + ": state carries no bipartition annotation");
        }
        return *dims;
    }
};

/// Eigendecomposition of a Hermitian matrix, eigenvalues ascending.
struct SpectralDecomposition {
    RealVector values;   // ascending
    Matrix vectors;      // orthonormal columns, paired with values
};

/// Validate a pure-state vector (normalization).
PureState validate_pure(const Vector& amplitudes,
                        std::optional<Bipartition> dims = std::nullopt,
                        double tol = kValidationTol);

/// Validate a density matrix (Hermitian, unit trace, PSD). Throws
/// ValidationError with code NotHermitian, TraceNotOne or NotPositive.
DensityMatrix validate_density(const Matrix& entries,
                               std::optional<Bipartition> dims = std::nullopt,
                               double tol = kValidationTol);

/// Partial trace over the complement of `keep`.
DensityMatrix partial_trace(const DensityMatrix& state, Subsystem keep);

/// Kronecker product with bipartition annotation (a slow, b fast).
DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b);

/// n-fold Kronecker power; throws DimensionCap if dim^n exceeds `dim_cap`.
DensityMatrix tensor_power(const DensityMatrix& a, int n,
                           std::int64_t dim_cap = kDefaultDimCap);

/// Eigendecomposition of a Hermitian matrix, ascending eigenvalues.
/// Throws ValidationError (NotHermitian) if the input is not Hermitian.
SpectralDecomposition spectral(const Matrix& matrix, double tol = kValidationTol);

/// Clamp tiny negative eigenvalues (>= -tol) to zero before entropy sums.
RealVector clamp_eigenvalues(const RealVector& values, double tol = kValidationTol);

// Kronecker product of raw matrices (A slow, B fast).
Matrix kron(const Matrix& a, const Matrix& b);

}  // namespace ergolab
