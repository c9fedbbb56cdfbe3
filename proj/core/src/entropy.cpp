#include "ergolab/entropy.hpp"

#include <Eigen/SVD>
#include <cmath>

namespace ergolab {

double shannon_entropy(const RealVector& probabilities) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < probabilities.size(); ++i) {
        const double p = probabilities(i);
        if (p > kProbFloor) {
            s -= p * std::log(p);
        }
    }
    return s;
}

double von_neumann_entropy(const DensityMatrix& state) {
    const SpectralDecomposition sd = spectral(state.mat);
    return shannon_entropy(clamp_eigenvalues(sd.values));
}

OutcomeDistribution outcome_distribution(const DensityMatrix& state,
                                         const Measurement& measurement) {
    if (measurement.dim != state.dim()) {
        throw DimensionMismatch("outcome_distribution: measurement dimension mismatch");
    }
    RealVector p(measurement.outcomes());
    for (int i = 0; i < measurement.outcomes(); ++i) {
        p(i) = (measurement.projectors[i] * state.mat).trace().real();
        if (p(i) < 0.0) p(i) = 0.0;  // clamp rounding noise
    }
    return OutcomeDistribution{std::move(p), measurement};
}

double observational_entropy(const OutcomeDistribution& distribution) {
    double s = 0.0;
    for (int i = 0; i < distribution.outcomes(); ++i) {
        const double p = distribution.probabilities(i);
        if (p > kProbFloor) {
            s -= p * std::log(p / distribution.measurement.volumes[i]);
        }
    }
    return s;
}

double observational_entropy(const DensityMatrix& state, const Measurement& measurement) {
    return observational_entropy(outcome_distribution(state, measurement));
}

SchmidtDecomposition schmidt(const PureState& state) {
    const Bipartition& bp = state.bipartition("schmidt");
    const int da = bp.dim_a;
    const int db = bp.dim_b;
    Matrix m(da, db);
    for (int a = 0; a < da; ++a) {
        for (int b = 0; b < db; ++b) {
            m(a, b) = state.amplitudes(a * db + b);
        }
    }
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const int r = std::min(da, db);
    RealVector lambdas(r);
    for (int k = 0; k < r; ++k) {
        const double s = svd.singularValues()(k);
        lambdas(k) = s * s;
    }
    // |psi> = sum_k sqrt(lambda_k) |u_k> (x) |conj(v_k)>
    return SchmidtDecomposition{std::move(lambdas), svd.matrixU(), svd.matrixV().conjugate()};
}

double entanglement_entropy(const PureState& state) {
    const SchmidtDecomposition sd = schmidt(state);
    return shannon_entropy(clamp_eigenvalues(sd.coefficients));
}

}  // namespace ergolab
