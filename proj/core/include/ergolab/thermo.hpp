#pragma once

#include <limits>

#include "ergolab/entropy.hpp"
#include "ergolab/qstate.hpp"

namespace ergolab {

/// Sentinel for beta = +infinity (ground-state limit).
inline constexpr double kBetaInf = std::numeric_limits<double>::infinity();

/// Hermitian observable with a cached spectral decomposition (ascending).
struct Hamiltonian {
    Matrix mat;
    SpectralDecomposition spec;

    explicit Hamiltonian(const Matrix& entries, double tol = 1e-10);

    int dim() const { return static_cast<int>(mat.rows()); }
    const RealVector& energies() const { return spec.values; }
    const Matrix& eigenvectors() const { return spec.vectors; }

    /// Ground-eigenspace dimension (energies within a spread-relative
    /// tolerance of E_0 count as ground).
    int ground_degeneracy() const;

    double expectation(const DensityMatrix& state) const {
        return (mat * state.mat).trace().real();
    }
};

/// e^{-beta H}/Z, diagonal in the Hamiltonian eigenbasis.
struct ThermalState {
    double beta = 0.0;
    DensityMatrix state;
    RealVector populations;     // on ascending energies
    double partition_function = 0.0;  // of shifted energies e^{-beta(E_k - E_0)}
};

/// Result of sorting a state passive with respect to a Hamiltonian.
struct PassiveTransform {
    DensityMatrix passive_state;
    Matrix unitary;     // maps k-th descending rho-eigenvector to k-th ascending H-eigenvector
    double extracted = 0.0;
};

/// Scalar outputs of an observational-ergotropy evaluation.
struct ErgotropyRecord {
    double work = 0.0;
    double beta = 0.0;
    double s_obs = 0.0;
    double e_initial = 0.0;
    double e_final = 0.0;
    bool mismatched = false;  // work < 0: measurement poorly matched (flag, not error)
};

ThermalState thermal_state(const Hamiltonian& h, double beta);

/// Von Neumann entropy of the thermal state at beta, in nats.
double thermal_entropy(const Hamiltonian& h, double beta);

/// Invert thermal_entropy on beta in [0, +inf]: bracketing plus bisection.
/// Throws EntropyOutOfRange / DegenerateSpectrum when no solution exists.
double solve_beta(const Hamiltonian& h, double s_target);

PassiveTransform passive_transform(const DensityMatrix& state, const Hamiltonian& h);

/// Maximal unitarily extractable energy; energy gap to the passive state.
double ergotropy(const DensityMatrix& state, const Hamiltonian& h);

/// tr[H rho] - tr[H rho_beta] with S(rho_beta) = S_C(rho, measurement).
ErgotropyRecord observational_ergotropy(const DensityMatrix& state, const Hamiltonian& h,
                                        const Measurement& measurement);

/// Observational ergotropy evaluated at the Schmidt product basis; s_obs
/// equals the entanglement entropy.
ErgotropyRecord entanglement_ergotropy(const PureState& state, const Hamiltonian& h);

}  // namespace ergolab
