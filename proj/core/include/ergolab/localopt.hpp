#pragma once

#include <cstdint>
#include <vector>

#include "ergolab/entropy.hpp"
#include "ergolab/rng.hpp"

namespace ergolab {

enum class OptStrategy { givens_sweeps, exp_map_gradient };

struct OptimizerConfig {
    int restarts = 16;
    int max_sweeps = 200;
    double tol = 1e-10;  // absolute entropy change per sweep
    std::uint64_t seed = 0;
    OptStrategy strategy = OptStrategy::givens_sweeps;
};

struct LocalMinResult {
    double s_min = 0.0;
    ProductMeasurement basis;
    int restarts_agreeing = 0;  // restarts within 1e-8 of the best
    bool converged = false;
    std::vector<double> history;  // per-restart final values
};

struct QuantumCorrelationResult {
    double s_qc = 0.0;
    double s_min = 0.0;
    ProductMeasurement basis;
    LocalMinResult detail;
};

/// Haar-random unitary via QR of a complex Gaussian matrix with phase-fixed
/// diagonal of R.
Matrix haar_random_unitary(int dim, Rng& rng);

/// Minimize observational entropy over rank-1 product bases. Restart 0
/// starts from the product of reduced-state eigenbases; the rest from
/// Haar-random pairs. Deterministic given config.seed.
LocalMinResult minimize_obs_entropy_product(const DensityMatrix& state,
                                            const OptimizerConfig& config = {});

/// s_qc = s_min - S(rho), clamped to 0 within tolerance.
QuantumCorrelationResult quantum_correlation_entropy(const DensityMatrix& state,
                                                     const OptimizerConfig& config = {});

/// Shannon entropy of outcome probabilities of the product basis (U_A, U_B)
/// on `state`; the optimizer's objective, exposed for tests.
double product_basis_entropy(const DensityMatrix& state, const Matrix& basis_a,
                             const Matrix& basis_b);

}  // namespace ergolab
