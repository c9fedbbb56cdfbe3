#pragma once

#include <string>
#include <vector>

#include "ergolab/qstate.hpp"

namespace ergolab {

/// Projection-valued measure: mutually orthogonal Hermitian projectors
/// summing to identity, each with an integer volume V_i = rank(P_i).
struct Measurement {
    int dim = 0;
    std::vector<Matrix> projectors;
    std::vector<int> volumes;
    std::vector<std::string> labels;  // optional, empty when unnamed

    int outcomes() const { return static_cast<int>(projectors.size()); }
    bool rank_one() const;

    /// Rank-1 basis measurement from the columns of a unitary.
    static Measurement from_basis(const Matrix& unitary, double tol = 1e-10);

    /// General PVM from explicit projectors; volumes inferred from traces.
    static Measurement from_projectors(std::vector<Matrix> projectors,
                                       double tol = 1e-10);

    /// Computational rank-1 basis of dimension d.
    static Measurement computational(int dim);

    /// For rank-1 measurements, the basis unitary whose column i spans P_i.
    Matrix basis_unitary() const;
};

/// Local rank-1 bases on the two subsystems; induces the product measurement
/// {|i> (x) |j>} on dimension d_A * d_B.
struct ProductMeasurement {
    Matrix basis_a;
    Matrix basis_b;

    int dim() const { return static_cast<int>(basis_a.rows() * basis_b.rows()); }
    Measurement to_measurement() const;

    static ProductMeasurement from_bases(const Matrix& basis_a, const Matrix& basis_b,
                                         double tol = 1e-10);
};

/// Sum_i P_i rho P_i: the state dephased in the measurement. Idempotent.
DensityMatrix dephase(const DensityMatrix& state, const Measurement& measurement);

}  // namespace ergolab
