#include "ergolab/localopt.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ergolab {

namespace {

constexpr std::uint64_t kLocaloptTag = 0x6C6F63616C6F7074ULL;  // "localopt"

double plogp(double p) { return p > kProbFloor ? -p * std::log(p) : 0.0; }

Matrix conjugated(const DensityMatrix& state, const Matrix& basis_a,
                  const Matrix& basis_b) {
    const Matrix m = kron(basis_a, basis_b);
    return m.adjoint() * state.mat * m;
}

double diag_entropy(const Matrix& sigma) {
    double s = 0.0;
    for (Eigen::Index k = 0; k < sigma.rows(); ++k) {
        s += plogp(std::max(0.0, sigma(k, k).real()));
    }
    return s;
}

/// Entropy restricted to the two rows touched by a plane rotation, as a
/// function of the Givens angle/phase. xs, ys, zs hold sigma_{pk,pk},
/// sigma_{qk,qk} and sigma_{pk,qk} over the untouched index k.
struct PlaneObjective {
    RealVector xs, ys;
    Vector zs;

    double eval(double theta, double phi) const {
        const double c = std::cos(theta);
        const double s = std::sin(theta);
        const double c2 = c * c, s2 = s * s, cs2 = 2.0 * c * s;
        const Complex ph(std::cos(phi), std::sin(phi));
        double total = 0.0;
        for (Eigen::Index k = 0; k < xs.size(); ++k) {
            const double cross = cs2 * (ph * zs(k)).real();
            total += plogp(std::max(0.0, c2 * xs(k) + s2 * ys(k) + cross));
            total += plogp(std::max(0.0, s2 * xs(k) + c2 * ys(k) - cross));
        }
        return total;
    }
};

struct PlaneBest {
    double theta = 0.0;
    double phi = 0.0;
    double value = 0.0;
};

/// Coarse grid over (theta, phi) followed by a shrinking pattern search.
/// The grid guards against distant plane minima and is only worth its cost
/// early in a restart; later sweeps refine around the identity rotation.
PlaneBest optimize_plane(const PlaneObjective& obj, bool coarse) {
    constexpr double half_pi = std::numbers::pi / 2.0;
    constexpr double two_pi = 2.0 * std::numbers::pi;
    PlaneBest best{0.0, 0.0, obj.eval(0.0, 0.0)};
    const int nt = 12, np = 16;
    if (coarse) {
        for (int it = 0; it < nt; ++it) {
            const double theta = (it + 0.5) * half_pi / nt;
            for (int ip = 0; ip < np; ++ip) {
                const double phi = ip * two_pi / np;
                const double v = obj.eval(theta, phi);
                if (v < best.value) best = PlaneBest{theta, phi, v};
            }
        }
    }
    double step_t = 0.5 * half_pi / nt;
    double step_p = 0.5 * two_pi / np;
    // Entropy is quadratic in the angles near the optimum, so an angular
    // resolution of 1e-7 resolves it well below the sweep tolerance.
    while (step_t > 1e-7 || step_p > 1e-7) {
        bool moved = false;
        for (double st : {step_t, -step_t}) {
            const double v = obj.eval(best.theta + st, best.phi);
            if (v < best.value) {
                best.theta += st;
                best.value = v;
                moved = true;
            }
        }
        for (double sp : {step_p, -step_p}) {
            const double v = obj.eval(best.theta, best.phi + sp);
            if (v < best.value) {
                best.phi += sp;
                best.value = v;
                moved = true;
            }
        }
        if (moved) {
            // Expand on success so descent along a valley takes O(log) probes
            // instead of crawling at a fixed resolution.
            step_t = std::min(2.0 * step_t, half_pi / 4.0);
            step_p = std::min(2.0 * step_p, two_pi / 8.0);
        } else {
            step_t *= 0.5;
            step_p *= 0.5;
        }
    }
    return best;
}

/// Apply the accepted plane rotation to one local basis.
void apply_givens(Matrix& basis, int p, int q, double theta, double phi) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const Complex ph(std::cos(phi), std::sin(phi));
    const Vector col_p = basis.col(p);
    const Vector col_q = basis.col(q);
    basis.col(p) = c * col_p + s * ph * col_q;
    basis.col(q) = -s * std::conj(ph) * col_p + c * col_q;
}

struct SweepState {
    const DensityMatrix* state;
    Matrix basis_a;
    Matrix basis_b;
    Matrix sigma;  // (U_A (x) U_B)' rho (U_A (x) U_B)
    int da, db;

    void refresh() { sigma = conjugated(*state, basis_a, basis_b); }

    double entropy() const { return diag_entropy(sigma); }

    PlaneObjective plane(bool side_a, int p, int q) const {
        const int n = side_a ? db : da;
        PlaneObjective obj;
        obj.xs.resize(n);
        obj.ys.resize(n);
        obj.zs.resize(n);
        for (int k = 0; k < n; ++k) {
            const int ip = side_a ? p * db + k : k * db + p;
            const int iq = side_a ? q * db + k : k * db + q;
            obj.xs(k) = sigma(ip, ip).real();
            obj.ys(k) = sigma(iq, iq).real();
            obj.zs(k) = sigma(ip, iq);
        }
        return obj;
    }
};

double run_givens_sweeps(SweepState& st, const OptimizerConfig& config, bool& converged) {
    st.refresh();
    double current = st.entropy();
    converged = false;
    for (int sweep = 0; sweep < config.max_sweeps; ++sweep) {
        const double at_start = current;
        for (int side = 0; side < 2; ++side) {
            const bool side_a = side == 0;
            const int d = side_a ? st.da : st.db;
            for (int p = 0; p < d; ++p) {
                for (int q = p + 1; q < d; ++q) {
                    const PlaneObjective obj = st.plane(side_a, p, q);
                    // Without coupling a rotation only mixes populations
                    // convexly, which cannot lower the entropy: skip.
                    if (obj.zs.cwiseAbs().maxCoeff() < 1e-12) continue;
                    const double base = obj.eval(0.0, 0.0);
                    const PlaneBest best = optimize_plane(obj, sweep < 3);
                    if (base - best.value > 1e-14 * std::max(1.0, std::abs(base))) {
                        apply_givens(side_a ? st.basis_a : st.basis_b, p, q, best.theta,
                                     best.phi);
                        st.refresh();
                        current += best.value - base;
                    }
                }
            }
        }
        current = st.entropy();  // resync against incremental drift
        if (at_start - current <= config.tol) {
            converged = true;
            break;
        }
    }
    return current;
}

/// Riemannian gradient of the diagonal entropy with respect to one side's
/// basis, as an anti-Hermitian generator (descent direction).
Matrix side_gradient(const Matrix& sigma, bool side_a, int da, int db) {
    const int dim = da * db;
    RealVector ell(dim);
    for (int k = 0; k < dim; ++k) {
        const double p = std::max(kProbFloor, sigma(k, k).real());
        ell(k) = -(std::log(p) + 1.0);
    }
    // C = [L, sigma]; dS along U -> U exp(tX) is tr[ptr(C) X].
    Matrix c = ell.asDiagonal() * sigma - sigma * ell.asDiagonal().toDenseMatrix();
    const int d = side_a ? da : db;
    const int n = side_a ? db : da;
    Matrix ca = Matrix::Zero(d, d);
    for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) {
            Complex sum = 0.0;
            for (int k = 0; k < n; ++k) {
                const int ia = side_a ? a * db + k : k * db + a;
                const int ib = side_a ? b * db + k : k * db + b;
                sum += c(ia, ib);
            }
            ca(a, b) = sum;
        }
    }
    // Anti-Hermitian part; X = K is a descent direction (dS = -||K||^2).
    return 0.5 * (ca - ca.adjoint());
}

Matrix unitary_exp(const Matrix& anti_hermitian) {
    // exp(X) with X = iH, H Hermitian.
    const Matrix h = Complex(0.0, -1.0) * anti_hermitian;
    const SpectralDecomposition sd = spectral(h, 1e-8);
    Vector phases(sd.values.size());
    for (Eigen::Index k = 0; k < sd.values.size(); ++k) {
        phases(k) = std::exp(Complex(0.0, sd.values(k)));
    }
    return sd.vectors * phases.asDiagonal() * sd.vectors.adjoint();
}

double run_exp_map_gradient(SweepState& st, const OptimizerConfig& config,
                            bool& converged) {
    st.refresh();
    double current = st.entropy();
    converged = false;
    for (int iter = 0; iter < config.max_sweeps * 10; ++iter) {
        const Matrix xa = side_gradient(st.sigma, true, st.da, st.db);
        const Matrix xb = side_gradient(st.sigma, false, st.da, st.db);
        const double gnorm = xa.norm() + xb.norm();
        if (gnorm < 1e-12) {
            converged = true;
            break;
        }
        double eta = 1.0 / std::max(1.0, gnorm);
        bool accepted = false;
        for (int bt = 0; bt < 40; ++bt) {
            SweepState trial = st;
            trial.basis_a = st.basis_a * unitary_exp(eta * xa);
            trial.basis_b = st.basis_b * unitary_exp(eta * xb);
            trial.refresh();
            const double value = trial.entropy();
            if (value < current - 0.25 * eta * gnorm * gnorm) {
                st = trial;
                accepted = true;
                if (current - value <= config.tol) {
                    st.refresh();
                    current = value;
                    converged = true;
                }
                current = value;
                break;
            }
            eta *= 0.5;
        }
        if (!accepted || converged) {
            converged = true;
            break;
        }
    }
    return current;
}

}  // namespace

Matrix haar_random_unitary(int dim, Rng& rng) {
    if (dim < 1) {
        throw DimensionMismatch("haar_random_unitary: dim must be >= 1");
    }
    Matrix g(dim, dim);
    for (int j = 0; j < dim; ++j) {
        for (int i = 0; i < dim; ++i) {
            g(i, j) = Complex(rng.gaussian(), rng.gaussian());
        }
    }
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ() * Matrix::Identity(dim, dim);
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < dim; ++j) {
        const Complex d = r(j, j);
        q.col(j) *= d / std::abs(d);
    }
    return q;
}

double product_basis_entropy(const DensityMatrix& state, const Matrix& basis_a,
                             const Matrix& basis_b) {
    return diag_entropy(conjugated(state, basis_a, basis_b));
}

LocalMinResult minimize_obs_entropy_product(const DensityMatrix& state,
                                            const OptimizerConfig& config) {
    const Bipartition& bp = state.bipartition("minimize_obs_entropy_product");
    if (bp.dim_a > 8 || bp.dim_b > 8) {
        throw DimensionCap("minimize_obs_entropy_product: subsystem dimensions capped at 8");
    }
    if (config.restarts < 1 || config.tol <= 0.0) {
        throw ValidationError("BadConfig", "BadConfig: restarts >= 1 and tol > 0 required");
    }

    LocalMinResult result;
    result.s_min = std::numeric_limits<double>::infinity();
    result.history.reserve(config.restarts);

    for (int restart = 0; restart < config.restarts; ++restart) {
        SweepState st;
        st.state = &state;
        st.da = bp.dim_a;
        st.db = bp.dim_b;
        if (restart == 0) {
            st.basis_a = spectral(partial_trace(state, Subsystem::A).mat).vectors;
            st.basis_b = spectral(partial_trace(state, Subsystem::B).mat).vectors;
        } else {
            Rng rng(Rng::derive({config.seed, kLocaloptTag,
                                 static_cast<std::uint64_t>(restart)}));
            st.basis_a = haar_random_unitary(bp.dim_a, rng);
            st.basis_b = haar_random_unitary(bp.dim_b, rng);
        }
        bool converged = false;
        double value;
        if (config.strategy == OptStrategy::givens_sweeps) {
            value = run_givens_sweeps(st, config, converged);
        } else {
            value = run_exp_map_gradient(st, config, converged);
        }
        result.history.push_back(value);
        if (value < result.s_min) {
            result.s_min = value;
            result.basis = ProductMeasurement{st.basis_a, st.basis_b};
            result.converged = converged;
        }
    }
    result.restarts_agreeing = static_cast<int>(
        std::count_if(result.history.begin(), result.history.end(),
                      [&](double v) { return v <= result.s_min + 1e-8; }));
    return result;
}

QuantumCorrelationResult quantum_correlation_entropy(const DensityMatrix& state,
                                                     const OptimizerConfig& config) {
    QuantumCorrelationResult out;
    out.detail = minimize_obs_entropy_product(state, config);
    out.s_min = out.detail.s_min;
    out.basis = out.detail.basis;
    out.s_qc = out.s_min - von_neumann_entropy(state);
    if (out.s_qc < 0.0) {
        if (out.s_qc < -1e-9) {
            throw ValidationError("NegativeQC",
                                  "NegativeQC: s_min fell below the von Neumann floor");
        }
        out.s_qc = 0.0;
    }
    return out;
}

}  // namespace ergolab
