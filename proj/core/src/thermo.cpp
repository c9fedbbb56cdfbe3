#include "ergolab/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace ergolab {

namespace {

constexpr double kBetaCap = 1e6;
constexpr double kCapResidual = 1e-8;

/// Thermal populations on ascending energies, shifted by E_0 for overflow
/// safety. Returns Z of the shifted energies.
double thermal_populations(const RealVector& energies, double beta, RealVector& out) {
    const int d = static_cast<int>(energies.size());
    out.resize(d);
    const double e0 = energies(0);
    double z = 0.0;
    for (int k = 0; k < d; ++k) {
        out(k) = std::exp(-beta * (energies(k) - e0));
        z += out(k);
    }
    out /= z;
    return z;
}

}  // namespace

Hamiltonian::Hamiltonian(const Matrix& entries, double tol)
    : mat(entries), spec(spectral(entries, tol)) {}

int Hamiltonian::ground_degeneracy() const {
    const RealVector& e = energies();
    const double spread = e(e.size() - 1) - e(0);
    const double tol = 1e-9 * std::max(1.0, spread);
    int g = 0;
    while (g < e.size() && e(g) - e(0) <= tol) {
        ++g;
    }
    return g;
}

ThermalState thermal_state(const Hamiltonian& h, double beta) {
    if (!(beta >= 0.0)) {
        throw ValidationError("BadBeta", "BadBeta: beta must be >= 0 or +inf");
    }
    const int d = h.dim();
    RealVector q(d);
    double z;
    if (std::isinf(beta)) {
        const int g = h.ground_degeneracy();
        q.setZero();
        for (int k = 0; k < g; ++k) q(k) = 1.0 / g;
        z = g;
    } else {
        z = thermal_populations(h.energies(), beta, q);
    }
    Matrix state = h.eigenvectors() * q.asDiagonal() * h.eigenvectors().adjoint();
    return ThermalState{beta, DensityMatrix::unchecked(std::move(state)), q, z};
}

double thermal_entropy(const Hamiltonian& h, double beta) {
    if (std::isinf(beta)) {
        return std::log(static_cast<double>(h.ground_degeneracy()));
    }
    RealVector q;
    thermal_populations(h.energies(), beta, q);
    return shannon_entropy(q);
}

double solve_beta(const Hamiltonian& h, double s_target) {
    const int d = h.dim();
    const int g0 = h.ground_degeneracy();
    const double s_max = std::log(static_cast<double>(d));
    const double s_min = std::log(static_cast<double>(g0));

    if (g0 == d && s_target < s_max - 1e-12) {
        std::ostringstream msg;
        msg << "DegenerateSpectrum: H is fully degenerate; thermal entropy is "
            << s_max << " for every beta";
        throw DegenerateSpectrum(msg.str());
    }
    if (s_target > s_max + 1e-12 || s_target < s_min - 1e-12) {
        std::ostringstream msg;
        msg << "EntropyOutOfRange: target " << s_target << " outside attainable ["
            << s_min << ", " << s_max << "]";
        throw EntropyOutOfRange(msg.str());
    }
    if (s_target >= s_max) return 0.0;
    if (s_target <= s_min) return kBetaInf;

    // Thermal entropy is monotone non-increasing in beta >= 0: bracket by
    // doubling, then bisect.
    double lo = 0.0;
    double hi = 1.0;
    while (thermal_entropy(h, hi) > s_target) {
        lo = hi;
        hi *= 2.0;
        if (hi > kBetaCap) {
            if (thermal_entropy(h, kBetaCap) - s_target < kCapResidual) {
                return kBetaInf;
            }
            std::ostringstream msg;
            msg << "EntropyOutOfRange: target " << s_target
                << " not bracketed below beta = " << kBetaCap;
            throw EntropyOutOfRange(msg.str());
        }
    }
    for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, lo); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (thermal_entropy(h, mid) > s_target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

PassiveTransform passive_transform(const DensityMatrix& state, const Hamiltonian& h) {
    if (state.dim() != h.dim()) {
        throw DimensionMismatch("passive_transform: state and Hamiltonian dimensions differ");
    }
    const int d = h.dim();
    const SpectralDecomposition rho = spectral(state.mat);

    // k-th descending rho-eigenvector goes to the k-th ascending H-eigenvector.
    Matrix rho_desc(d, d);
    RealVector pops(d);
    for (int k = 0; k < d; ++k) {
        rho_desc.col(k) = rho.vectors.col(d - 1 - k);
        pops(k) = rho.values(d - 1 - k);
    }
    Matrix unitary = h.eigenvectors() * rho_desc.adjoint();
    Matrix passive = h.eigenvectors() * pops.asDiagonal() * h.eigenvectors().adjoint();

    const double e_initial = h.expectation(state);
    const double e_final = pops.dot(h.energies());
    return PassiveTransform{DensityMatrix::unchecked(std::move(passive), state.dims),
                            std::move(unitary), e_initial - e_final};
}

double ergotropy(const DensityMatrix& state, const Hamiltonian& h) {
    return passive_transform(state, h).extracted;
}

ErgotropyRecord observational_ergotropy(const DensityMatrix& state, const Hamiltonian& h,
                                        const Measurement& measurement) {
    if (state.dim() != h.dim()) {
        throw DimensionMismatch("observational_ergotropy: state and Hamiltonian differ");
    }
    ErgotropyRecord rec;
    rec.s_obs = observational_entropy(state, measurement);
    rec.beta = solve_beta(h, rec.s_obs);
    const ThermalState th = thermal_state(h, rec.beta);
    rec.e_initial = h.expectation(state);
    rec.e_final = th.populations.dot(h.energies());
    rec.work = rec.e_initial - rec.e_final;
    rec.mismatched = rec.work < 0.0;
    return rec;
}

ErgotropyRecord entanglement_ergotropy(const PureState& state, const Hamiltonian& h) {
    const SchmidtDecomposition sd = schmidt(state);
    return observational_ergotropy(state.projector(), h,
                                   sd.product_basis().to_measurement());
}

}  // namespace ergolab
