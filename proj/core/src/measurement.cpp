#include "ergolab/measurement.hpp"

#include <cmath>
#include <sstream>

namespace ergolab {

bool Measurement::rank_one() const {
    for (int v : volumes) {
        if (v != 1) return false;
    }
    return outcomes() == dim;
}

Measurement Measurement::from_basis(const Matrix& unitary, double tol) {
    if (unitary.rows() != unitary.cols()) {
        throw DimensionMismatch("measurement basis must be a square unitary");
    }
    const double defect = (unitary.adjoint() * unitary -
                           Matrix::Identity(unitary.rows(), unitary.cols()))
                              .cwiseAbs()
                              .maxCoeff();
    if (defect > tol) {
        std::ostringstream msg;
        msg << "NotUnitary: ||U'U - I||_max = " << defect << " (tol " << tol << ")";
        throw ValidationError("NotUnitary", msg.str());
    }
    Measurement m;
    m.dim = static_cast<int>(unitary.rows());
    m.projectors.reserve(m.dim);
    m.volumes.assign(m.dim, 1);
    for (int i = 0; i < m.dim; ++i) {
        m.projectors.push_back(unitary.col(i) * unitary.col(i).adjoint());
    }
    return m;
}

Measurement Measurement::from_projectors(std::vector<Matrix> projectors, double tol) {
    if (projectors.empty()) {
        throw ValidationError("EmptyMeasurement", "a PVM needs at least one projector");
    }
    const Eigen::Index d = projectors.front().rows();
    Matrix sum = Matrix::Zero(d, d);
    Measurement m;
    m.dim = static_cast<int>(d);
    for (size_t i = 0; i < projectors.size(); ++i) {
        const Matrix& p = projectors[i];
        if (p.rows() != d || p.cols() != d) {
            throw DimensionMismatch("projectors must share one dimension");
        }
        const double herm = (p - p.adjoint()).cwiseAbs().maxCoeff();
        const double idem = (p * p - p).cwiseAbs().maxCoeff();
        if (herm > tol || idem > tol) {
            std::ostringstream msg;
            msg << "NotProjector: projector " << i << " hermiticity defect " << herm
                << ", idempotency defect " << idem << " (tol " << tol << ")";
            throw ValidationError("NotProjector", msg.str());
        }
        for (size_t j = 0; j < i; ++j) {
            const double cross = (projectors[j] * p).cwiseAbs().maxCoeff();
            if (cross > tol) {
                std::ostringstream msg;
                msg << "NotOrthogonal: ||P_" << j << " P_" << i << "||_max = " << cross;
                throw ValidationError("NotOrthogonal", msg.str());
            }
        }
        sum += p;
        const double tr = p.trace().real();
        const int volume = static_cast<int>(std::lround(tr));
        if (std::abs(tr - volume) > tol || volume < 1) {
            std::ostringstream msg;
            msg << "BadVolume: projector " << i << " has non-integer rank " << tr;
            throw ValidationError("BadVolume", msg.str());
        }
        m.volumes.push_back(volume);
    }
    const double complete = (sum - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
    if (complete > tol) {
        std::ostringstream msg;
        msg << "NotComplete: ||sum P_i - I||_max = " << complete << " (tol " << tol << ")";
        throw ValidationError("NotComplete", msg.str());
    }
    m.projectors = std::move(projectors);
    return m;
}

Measurement Measurement::computational(int dim) {
    return from_basis(Matrix::Identity(dim, dim));
}

Matrix Measurement::basis_unitary() const {
    if (!rank_one()) {
        throw ValidationError("NotRankOne", "NotRankOne: measurement has a projector of rank > 1");
    }
    Matrix u(dim, dim);
    for (int i = 0; i < dim; ++i) {
        // A rank-1 projector's range is spanned by its largest column.
        Eigen::Index best = 0;
        projectors[i].diagonal().real().maxCoeff(&best);
        Vector col = projectors[i].col(best);
        col /= col.norm();
        // Fix the global phase: make the largest component real positive.
        Eigen::Index big = 0;
        col.cwiseAbs().maxCoeff(&big);
        col *= std::conj(col(big)) / std::abs(col(big));
        u.col(i) = col;
    }
    return u;
}

ProductMeasurement ProductMeasurement::from_bases(const Matrix& basis_a,
                                                  const Matrix& basis_b, double tol) {
    for (const Matrix* u : {&basis_a, &basis_b}) {
        const double defect =
            (u->adjoint() * *u - Matrix::Identity(u->rows(), u->cols())).cwiseAbs().maxCoeff();
        if (defect > tol) {
            std::ostringstream msg;
            msg << "NotUnitary: local basis defect " << defect << " (tol " << tol << ")";
            throw ValidationError("NotUnitary", msg.str());
        }
    }
    return ProductMeasurement{basis_a, basis_b};
}

Measurement ProductMeasurement::to_measurement() const {
    return Measurement::from_basis(kron(basis_a, basis_b));
}

DensityMatrix dephase(const DensityMatrix& state, const Measurement& measurement) {
    if (measurement.dim != state.dim()) {
        throw DimensionMismatch("dephase: measurement dimension does not match state");
    }
    Matrix out = Matrix::Zero(state.dim(), state.dim());
    for (const Matrix& p : measurement.projectors) {
        out += p * state.mat * p;
    }
    return DensityMatrix::unchecked(std::move(out), state.dims);
}

}  // namespace ergolab
