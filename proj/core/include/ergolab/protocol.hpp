#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ergolab/entropy.hpp"
#include "ergolab/rng.hpp"
#include "ergolab/thermo.hpp"

namespace ergolab {

/// Certification sample budget: nullopt means exact probabilities.
using CertSamples = std::optional<std::int64_t>;
inline constexpr CertSamples kCertExact = std::nullopt;

struct ProtocolConfig {
    int copies = 1;
    int trials = 1;
    std::uint64_t seed = 0;
    CertSamples certification_samples = kCertExact;
    Measurement measurement;  // rank-1
    std::int64_t dim_cap = kDefaultDimCap;
};

/// Per-trial extracted-work samples with summary statistics and the
/// closed-form mean.
struct WorkSamples {
    std::vector<double> samples;
    double mean = 0.0;
    double std_error = 0.0;
    double exact_mean = 0.0;
    ProtocolConfig config;
};

struct ConvergenceRow {
    int copies = 0;
    double work_per_copy = 0.0;  // exact max-over-U <W_N>/N
    double gap = 0.0;            // w_inf - work_per_copy
};

struct ConvergenceReport {
    std::vector<ConvergenceRow> rows;
    double w_inf = 0.0;  // observational ergotropy
};

struct CoolingRecord {
    double trace_distance = 0.0;
    double beta = 0.0;
};

/// Estimate outcome probabilities: exact tr[P_i rho], or empirical
/// frequencies of i.i.d. draws (deterministic given seed).
OutcomeDistribution certify(const DensityMatrix& state, const Measurement& measurement,
                            CertSamples samples, std::uint64_t seed);

/// Diagonal unitary sum_i e^{i theta_i} |i><i| in a rank-1 basis with i.i.d.
/// uniform phases on [0, 2*pi).
Matrix random_phase_unitary(const Measurement& basis, Rng& rng);

/// Total Hamiltonian H_N = sum of local terms on dimension d^N.
Matrix total_hamiltonian(const Hamiltonian& h, int copies,
                         std::int64_t dim_cap = kDefaultDimCap);

/// Passive-sorting unitary of rho_cg^{(x)N} with respect to H_N, built from
/// the product structure of both eigenbases.
Matrix extraction_unitary(const OutcomeDistribution& p, const Hamiltonian& h, int copies,
                          std::int64_t dim_cap = kDefaultDimCap);

/// Monte Carlo run of the certify-dephase-extract protocol.
WorkSamples simulate_extraction(const DensityMatrix& state, const Hamiltonian& h,
                                const ProtocolConfig& config);

/// Exact max-over-U work per copy for N = 1..n_max, against the
/// observational-ergotropy limit. Population-space computation; never forms
/// d^N matrices.
ConvergenceReport convergence_study(const DensityMatrix& state, const Hamiltonian& h,
                                    const Measurement& measurement, int n_max,
                                    CertSamples certification = kCertExact,
                                    std::uint64_t seed = 0);

/// Trace distance between the single-copy marginal of the N-copy passive
/// state and the entropy-matched thermal state.
CoolingRecord cooling_diagnostic(const OutcomeDistribution& p, const Hamiltonian& h,
                                 int copies);

}  // namespace ergolab
