#include "ergolab/qstate.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>

namespace ergolab {

namespace {

double hermiticity_defect(const Matrix& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace

PureState validate_pure(const Vector& amplitudes, std::optional<Bipartition> dims,
                        double tol) {
    const double norm2 = amplitudes.squaredNorm();
    if (std::abs(norm2 - 1.0) > tol) {
        std::ostringstream msg;
        msg << "NotNormalized: sum |amplitude|^2 = " << norm2 << " deviates from 1 by "
            << std::abs(norm2 - 1.0) << " (tol " << tol << ")";
        throw ValidationError("NotNormalized", msg.str());
    }
    if (dims && static_cast<long>(dims->dim_a) * dims->dim_b != amplitudes.size()) {
        throw DimensionMismatch("bipartition does not factor the state dimension");
    }
    return PureState{amplitudes, dims};
}

DensityMatrix validate_density(const Matrix& entries, std::optional<Bipartition> dims,
                               double tol) {
    if (entries.rows() != entries.cols()) {
        throw DimensionMismatch("density matrix must be square");
    }
    if (tol <= 0.0) {
        throw ValidationError("BadTolerance", "validation tolerance must be positive");
    }
    const double herm = hermiticity_defect(entries);
    if (herm > tol) {
        std::ostringstream msg;
        msg << "NotHermitian: max |M_ij - conj(M_ji)| = " << herm << " (tol " << tol << ")";
        throw ValidationError("NotHermitian", msg.str());
    }
    const double trace_defect = std::abs(entries.trace() - Complex(1.0, 0.0));
    if (trace_defect > tol) {
        std::ostringstream msg;
        msg << "TraceNotOne: |tr - 1| = " << trace_defect << " (tol " << tol << ")";
        throw ValidationError("TraceNotOne", msg.str());
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(entries, Eigen::EigenvaluesOnly);
    const double min_eig = solver.eigenvalues().minCoeff();
    if (min_eig < -tol) {
        std::ostringstream msg;
        msg << "NotPositive: min eigenvalue = " << min_eig << " (tol " << tol << ")";
        throw ValidationError("NotPositive", msg.str());
    }
    if (dims && static_cast<long>(dims->dim_a) * dims->dim_b != entries.rows()) {
        throw DimensionMismatch("bipartition does not factor the state dimension");
    }
    return DensityMatrix{entries, dims};
}

DensityMatrix partial_trace(const DensityMatrix& state, Subsystem keep) {
    const Bipartition& bp = state.bipartition("partial_trace");
    const int da = bp.dim_a;
    const int db = bp.dim_b;
    if (keep == Subsystem::A) {
        Matrix out = Matrix::Zero(da, da);
        for (int i = 0; i < da; ++i) {
            for (int j = 0; j < da; ++j) {
                Complex sum = 0.0;
                for (int k = 0; k < db; ++k) {
                    sum += state.mat(i * db + k, j * db + k);
                }
                out(i, j) = sum;
            }
        }
        return DensityMatrix::unchecked(std::move(out));
    }
    Matrix out = Matrix::Zero(db, db);
    for (int i = 0; i < db; ++i) {
        for (int j = 0; j < db; ++j) {
            Complex sum = 0.0;
            for (int k = 0; k < da; ++k) {
                sum += state.mat(k * db + i, k * db + j);
            }
            out(i, j) = sum;
        }
    }
    return DensityMatrix::unchecked(std::move(out));
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b) {
    return DensityMatrix::unchecked(kron(a.mat, b.mat), Bipartition{a.dim(), b.dim()});
}

DensityMatrix tensor_power(const DensityMatrix& a, int n, std::int64_t dim_cap) {
    if (n < 1) {
        throw DimensionMismatch("tensor_power requires n >= 1");
    }
    const int d = a.dim();
    std::int64_t total = 1;
    for (int k = 0; k < n; ++k) {
        total *= d;
        if (total > dim_cap) {
            std::ostringstream msg;
            msg << "tensor_power: dim " << d << "^" << n << " exceeds cap " << dim_cap;
            throw DimensionCap(msg.str());
        }
    }
    if (n == 1) {
        return a;
    }
    Matrix out = a.mat;
    for (int k = 1; k < n; ++k) {
        out = kron(out, a.mat);
    }
    return DensityMatrix::unchecked(std::move(out),
                                    Bipartition{d, static_cast<int>(total / d)});
}

SpectralDecomposition spectral(const Matrix& matrix, double tol) {
    if (matrix.rows() != matrix.cols()) {
        throw DimensionMismatch("spectral: matrix must be square");
    }
    const double herm = hermiticity_defect(matrix);
    if (herm > tol) {
        std::ostringstream msg;
        msg << "NotHermitian: max |M_ij - conj(M_ji)| = " << herm << " (tol " << tol << ")";
        throw ValidationError("NotHermitian", msg.str());
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(matrix);
    return SpectralDecomposition{solver.eigenvalues(), solver.eigenvectors()};
}

RealVector clamp_eigenvalues(const RealVector& values, double tol) {
    RealVector out = values;
    for (Eigen::Index i = 0; i < out.size(); ++i) {
        if (out(i) < 0.0 && out(i) >= -tol) {
            out(i) = 0.0;
        }
    }
    return out;
}

}  // namespace ergolab
