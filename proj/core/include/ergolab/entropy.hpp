#pragma once

#include "ergolab/measurement.hpp"
#include "ergolab/qstate.hpp"

namespace ergolab {

/// Probabilities below this are treated as exactly zero in entropy sums.
inline constexpr double kProbFloor = 1e-15;

/// Outcome probabilities of a PVM on a state.
struct OutcomeDistribution {
    RealVector probabilities;
    Measurement measurement;

    int outcomes() const { return static_cast<int>(probabilities.size()); }
};

/// Schmidt data of a bipartite pure state: populations lambda_i (descending,
/// summing to 1) with the paired local orthonormal bases.
struct SchmidtDecomposition {
    RealVector coefficients;  // lambda_i, descending
    Matrix basis_a;
    Matrix basis_b;

    ProductMeasurement product_basis() const { return ProductMeasurement{basis_a, basis_b}; }
};

/// Shannon entropy of a probability vector in nats (0 ln 0 = 0).
double shannon_entropy(const RealVector& probabilities);

/// S(rho) = -sum lambda ln lambda in nats, eigenvalues clamped at zero.
double von_neumann_entropy(const DensityMatrix& state);

/// p_i = tr[P_i rho].
OutcomeDistribution outcome_distribution(const DensityMatrix& state,
                                         const Measurement& measurement);

/// S_C = -sum_i p_i ln(p_i / V_i) in nats.
double observational_entropy(const DensityMatrix& state, const Measurement& measurement);
double observational_entropy(const OutcomeDistribution& distribution);

/// Schmidt decomposition of a bipartite pure state.
SchmidtDecomposition schmidt(const PureState& state);

/// Von Neumann entropy of either reduced state of a bipartite pure state.
double entanglement_entropy(const PureState& state);

}  // namespace ergolab
