#include "ergolab/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

namespace ergolab {

namespace {

constexpr std::uint64_t kCertifyTag = 0x6365727469667921ULL;
constexpr std::uint64_t kExtractTag = 0x6578747261637421ULL;

// Population-space computations enumerate d^N multi-indices without forming
// d^N matrices; this caps the enumeration size.
constexpr std::int64_t kPopulationCap = std::int64_t(1) << 24;

std::int64_t checked_power(int dim, int copies, std::int64_t cap, const char* op) {
    std::int64_t total = 1;
    for (int k = 0; k < copies; ++k) {
        total *= dim;
        if (total > cap) {
            std::ostringstream msg;
            msg << op << ": dim " << dim << "^" << copies << " exceeds cap " << cap;
            throw DimensionCap(msg.str());
        }
    }
    return total;
}

/// lambda(k) = prod_j values(k_j) over Kronecker-ordered multi-indices
/// (copy 1 slowest).
std::vector<double> product_table(const RealVector& values, int copies,
                                  std::int64_t total) {
    const int d = static_cast<int>(values.size());
    std::vector<double> out(static_cast<size_t>(total), 1.0);
    std::int64_t block = total;
    for (int j = 0; j < copies; ++j) {
        block /= d;
        for (std::int64_t k = 0; k < total; ++k) {
            out[static_cast<size_t>(k)] *= values((k / block) % d);
        }
    }
    return out;
}

/// E(k) = sum_j energies(k_j).
std::vector<double> sum_table(const RealVector& values, int copies, std::int64_t total) {
    const int d = static_cast<int>(values.size());
    std::vector<double> out(static_cast<size_t>(total), 0.0);
    std::int64_t block = total;
    for (int j = 0; j < copies; ++j) {
        block /= d;
        for (std::int64_t k = 0; k < total; ++k) {
            out[static_cast<size_t>(k)] += values((k / block) % d);
        }
    }
    return out;
}

/// Indices sorted by value; ties broken by index (stable).
std::vector<std::int64_t> order_by(const std::vector<double>& values, bool descending) {
    std::vector<std::int64_t> idx(values.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::int64_t a, std::int64_t b) {
        return descending ? values[a] > values[b] : values[a] < values[b];
    });
    return idx;
}

Matrix kron_power(const Matrix& m, int copies) {
    Matrix out = m;
    for (int k = 1; k < copies; ++k) {
        out = kron(out, m);
    }
    return out;
}

void require_rank_one(const Measurement& m, const char* op) {
    if (!m.rank_one()) {
        throw ValidationError("NotRankOne",
                              std::string("NotRankOne: ") + op + " needs a rank-1 basis");
    }
}

/// tr[H_N U rho_cg^N U'] for the passive-sorting U built from the certified
/// distribution p_hat, with true basis populations p_true.
double paired_final_energy(const RealVector& p_true, const RealVector& p_hat,
                           const RealVector& energies, int copies, std::int64_t total) {
    const std::vector<double> lam_true = product_table(p_true, copies, total);
    const std::vector<double> lam_hat = product_table(p_hat, copies, total);
    const std::vector<double> esum = sum_table(energies, copies, total);
    const std::vector<std::int64_t> by_pop = order_by(lam_hat, /*descending=*/true);
    const std::vector<std::int64_t> by_energy = order_by(esum, /*descending=*/false);
    double e_final = 0.0;
    for (std::int64_t m = 0; m < total; ++m) {
        e_final += lam_true[static_cast<size_t>(by_pop[m])] *
                   esum[static_cast<size_t>(by_energy[m])];
    }
    return e_final;
}

}  // namespace

OutcomeDistribution certify(const DensityMatrix& state, const Measurement& measurement,
                            CertSamples samples, std::uint64_t seed) {
    OutcomeDistribution exact = outcome_distribution(state, measurement);
    if (!samples) {
        return exact;
    }
    if (*samples < 1) {
        throw ValidationError("BadSamples", "BadSamples: certification needs >= 1 sample");
    }
    const int n = exact.outcomes();
    std::vector<double> cdf(n);
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        acc += exact.probabilities(i);
        cdf[i] = acc;
    }
    cdf[n - 1] = 1.0;
    Rng rng(Rng::derive({seed, kCertifyTag}));
    RealVector counts = RealVector::Zero(n);
    for (std::int64_t s = 0; s < *samples; ++s) {
        const double u = rng.uniform();
        const int i = static_cast<int>(
            std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
        counts(std::min(i, n - 1)) += 1.0;
    }
    return OutcomeDistribution{counts / static_cast<double>(*samples), measurement};
}

Matrix random_phase_unitary(const Measurement& basis, Rng& rng) {
    require_rank_one(basis, "random_phase_unitary");
    const Matrix b = basis.basis_unitary();
    Vector phases(basis.dim);
    for (int i = 0; i < basis.dim; ++i) {
        phases(i) = std::exp(Complex(0.0, rng.uniform_angle()));
    }
    return b * phases.asDiagonal() * b.adjoint();
}

Matrix total_hamiltonian(const Hamiltonian& h, int copies, std::int64_t dim_cap) {
    const std::int64_t total = checked_power(h.dim(), copies, dim_cap, "total_hamiltonian");
    Matrix out = Matrix::Zero(total, total);
    const Matrix eye = Matrix::Identity(h.dim(), h.dim());
    for (int j = 0; j < copies; ++j) {
        Matrix term = j == 0 ? h.mat : eye;
        for (int k = 1; k < copies; ++k) {
            term = kron(term, k == j ? h.mat : eye);
        }
        out += term;
    }
    return out;
}

Matrix extraction_unitary(const OutcomeDistribution& p, const Hamiltonian& h, int copies,
                          std::int64_t dim_cap) {
    require_rank_one(p.measurement, "extraction_unitary");
    if (p.measurement.dim != h.dim()) {
        throw DimensionMismatch("extraction_unitary: measurement and Hamiltonian differ");
    }
    const std::int64_t total =
        checked_power(h.dim(), copies, dim_cap, "extraction_unitary");

    // Both rho_cg^N and H_N have product eigenbases: sort and pair.
    const std::vector<double> lam = product_table(p.probabilities, copies, total);
    const std::vector<double> esum = sum_table(h.energies(), copies, total);
    const std::vector<std::int64_t> by_pop = order_by(lam, /*descending=*/true);
    const std::vector<std::int64_t> by_energy = order_by(esum, /*descending=*/false);

    const Matrix basis_n = kron_power(p.measurement.basis_unitary(), copies);
    const Matrix vh_n = kron_power(h.eigenvectors(), copies);
    Matrix left(total, total), right(total, total);
    for (std::int64_t m = 0; m < total; ++m) {
        left.col(m) = vh_n.col(by_energy[m]);
        right.col(m) = basis_n.col(by_pop[m]);
    }
    return left * right.adjoint();
}

WorkSamples simulate_extraction(const DensityMatrix& state, const Hamiltonian& h,
                                const ProtocolConfig& config) {
    require_rank_one(config.measurement, "simulate_extraction");
    if (state.dim() != h.dim() || state.dim() != config.measurement.dim) {
        throw DimensionMismatch("simulate_extraction: operand dimensions differ");
    }
    if (config.copies < 1 || config.trials < 1) {
        throw ValidationError("BadConfig", "BadConfig: copies >= 1 and trials >= 1");
    }
    const int n = config.copies;
    const std::int64_t total =
        checked_power(h.dim(), n, config.dim_cap, "simulate_extraction");

    const OutcomeDistribution p_hat =
        certify(state, config.measurement, config.certification_samples,
                Rng::derive({config.seed, kCertifyTag}));
    const Matrix u = extraction_unitary(p_hat, h, n, config.dim_cap);
    const Matrix h_n = total_hamiltonian(h, n, config.dim_cap);
    const DensityMatrix rho_n = tensor_power(state, n, config.dim_cap);
    const double e_initial = (h_n * rho_n.mat).trace().real();

    const DensityMatrix rho_cg = dephase(state, config.measurement);
    const DensityMatrix cg_n = tensor_power(rho_cg, n, config.dim_cap);
    const double exact_mean = e_initial - (h_n * u * cg_n.mat * u.adjoint()).trace().real();

    // Work in the product measurement frame where every dephasing unitary is
    // diagonal: the per-trial cost is O(d^2N) instead of a matrix product.
    const Matrix basis_n = kron_power(config.measurement.basis_unitary(), n);
    const Matrix k_tilde = basis_n.adjoint() * (u.adjoint() * h_n * u) * basis_n;
    const Matrix rho_tilde = basis_n.adjoint() * rho_n.mat * basis_n;
    const int d = h.dim();

    WorkSamples out;
    out.config = config;
    out.samples.reserve(config.trials);
    Vector phase(total);
    std::vector<double> theta(static_cast<size_t>(n) * d);
    for (int t = 0; t < config.trials; ++t) {
        for (int c = 0; c < n; ++c) {
            Rng rng(Rng::derive({config.seed, kExtractTag, static_cast<std::uint64_t>(t),
                                 static_cast<std::uint64_t>(c)}));
            for (int i = 0; i < d; ++i) {
                theta[static_cast<size_t>(c) * d + i] = rng.uniform_angle();
            }
        }
        std::int64_t block = total;
        phase.setOnes();
        for (int c = 0; c < n; ++c) {
            block /= d;
            for (std::int64_t k = 0; k < total; ++k) {
                phase(k) *= std::exp(
                    Complex(0.0, theta[static_cast<size_t>(c) * d + (k / block) % d]));
            }
        }
        Complex e_final = 0.0;
        for (std::int64_t m = 0; m < total; ++m) {
            for (std::int64_t q = 0; q < total; ++q) {
                e_final += k_tilde(m, q) * phase(q) * rho_tilde(q, m) * std::conj(phase(m));
            }
        }
        out.samples.push_back(e_initial - e_final.real());
    }

    const double mean = std::accumulate(out.samples.begin(), out.samples.end(), 0.0) /
                        config.trials;
    double var = 0.0;
    for (double w : out.samples) {
        var += (w - mean) * (w - mean);
    }
    out.mean = mean;
    out.std_error = config.trials > 1
                        ? std::sqrt(var / (config.trials - 1) / config.trials)
                        : 0.0;
    out.exact_mean = exact_mean;
    return out;
}

ConvergenceReport convergence_study(const DensityMatrix& state, const Hamiltonian& h,
                                    const Measurement& measurement, int n_max,
                                    CertSamples certification, std::uint64_t seed) {
    require_rank_one(measurement, "convergence_study");
    if (state.dim() != h.dim() || state.dim() != measurement.dim) {
        throw DimensionMismatch("convergence_study: operand dimensions differ");
    }
    checked_power(h.dim(), n_max, kPopulationCap, "convergence_study");

    const RealVector p_true = outcome_distribution(state, measurement).probabilities;
    const RealVector p_hat =
        certify(state, measurement, certification, Rng::derive({seed, kCertifyTag}))
            .probabilities;
    const double e_per_copy = h.expectation(state);

    ConvergenceReport report;
    report.w_inf = observational_ergotropy(state, h, measurement).work;
    for (int n = 1; n <= n_max; ++n) {
        std::int64_t total = 1;
        for (int k = 0; k < n; ++k) total *= h.dim();
        const double e_final =
            paired_final_energy(p_true, p_hat, h.energies(), n, total);
        const double per_copy = e_per_copy - e_final / n;
        report.rows.push_back({n, per_copy, report.w_inf - per_copy});
    }
    return report;
}

CoolingRecord cooling_diagnostic(const OutcomeDistribution& p, const Hamiltonian& h,
                                 int copies) {
    require_rank_one(p.measurement, "cooling_diagnostic");
    if (p.measurement.dim != h.dim()) {
        throw DimensionMismatch("cooling_diagnostic: measurement and Hamiltonian differ");
    }
    const std::int64_t total =
        checked_power(h.dim(), copies, kPopulationCap, "cooling_diagnostic");
    const int d = h.dim();

    const double s_cg = shannon_entropy(p.probabilities);
    const double beta = solve_beta(h, s_cg);
    const ThermalState th = thermal_state(h, beta);

    // Marginal of the passive N-copy state on copy 1: the k-th ascending
    // energy eigenvector is a product vector whose first factor is the
    // (k / d^{N-1})-th local H-eigenvector.
    const std::vector<double> lam = product_table(p.probabilities, copies, total);
    const std::vector<double> esum = sum_table(h.energies(), copies, total);
    const std::vector<std::int64_t> by_pop = order_by(lam, /*descending=*/true);
    const std::vector<std::int64_t> by_energy = order_by(esum, /*descending=*/false);
    const std::int64_t leading_block = total / d;
    RealVector marginal_pops = RealVector::Zero(d);
    for (std::int64_t m = 0; m < total; ++m) {
        marginal_pops(by_energy[m] / leading_block) +=
            lam[static_cast<size_t>(by_pop[m])];
    }
    const Matrix marginal = h.eigenvectors() * marginal_pops.asDiagonal() *
                            h.eigenvectors().adjoint();
    const SpectralDecomposition diff = spectral(marginal - th.state.mat, 1e-8);
    return CoolingRecord{0.5 * diff.values.cwiseAbs().sum(), beta};
}

}  // namespace ergolab
