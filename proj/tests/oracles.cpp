#include "test_support.hpp"

#include <Eigen/Dense>

namespace testing {

namespace {

Matrix pauli(int k) {
    Matrix m(2, 2);
    switch (k) {
        case 0:
            m << 0, 1, 1, 0;
            break;
        case 1:
            m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
            break;
        default:
            m << 1, 0, 0, -1;
            break;
    }
    return m;
}

}  // namespace

double grid_search_oracle(const Matrix& rho, double step) {
    // Bloch form: p(s,t) = (1 + s a.rA + t b.rB + s t a^T T b) / 4.
    Eigen::Vector3d ra, rb;
    Eigen::Matrix3d t;
    const Matrix eye = Matrix::Identity(2, 2);
    for (int k = 0; k < 3; ++k) {
        ra(k) = (rho * ergolab::kron(pauli(k), eye)).trace().real();
        rb(k) = (rho * ergolab::kron(eye, pauli(k))).trace().real();
        for (int l = 0; l < 3; ++l) {
            t(k, l) = (rho * ergolab::kron(pauli(k), pauli(l))).trace().real();
        }
    }

    // Hemisphere of directions at the requested resolution; a and -a give the
    // same basis up to outcome relabeling.
    const int n_theta = static_cast<int>(std::floor(M_PI / 2.0 / step)) + 1;
    const int n_phi = static_cast<int>(std::floor(2.0 * M_PI / step));
    const int n_dir = n_theta * n_phi;
    std::vector<Eigen::Vector3d> dirs;
    dirs.reserve(n_dir);
    for (int it = 0; it < n_theta; ++it) {
        const double theta = it * step;
        for (int ip = 0; ip < n_phi; ++ip) {
            const double phi = ip * step;
            dirs.emplace_back(std::sin(theta) * std::cos(phi),
                              std::sin(theta) * std::sin(phi), std::cos(theta));
        }
    }

    std::vector<double> vb(n_dir);
    for (int j = 0; j < n_dir; ++j) {
        vb[j] = rb.dot(dirs[j]);
    }

    auto entropy_of = [](double x1, double x2, double x3, double x4) {
        // sum x = 4; S = ln 4 - (1/4) sum x ln x.
        double acc = 0.0;
        if (x1 > 4e-15) acc += x1 * std::log(x1);
        if (x2 > 4e-15) acc += x2 * std::log(x2);
        if (x3 > 4e-15) acc += x3 * std::log(x3);
        if (x4 > 4e-15) acc += x4 * std::log(x4);
        return std::log(4.0) - 0.25 * acc;
    };

    double best = std::numeric_limits<double>::infinity();
    double purity_gate = 0.0;  // keep (a,b) only if sum p^2 >= e^{-best}
    for (int i = 0; i < n_dir; ++i) {
        const double u = ra.dot(dirs[i]);
        const Eigen::Vector3d c = t.transpose() * dirs[i];
        for (int j = 0; j < n_dir; ++j) {
            const double v = vb[j];
            const double w = c.dot(dirs[j]);
            const double x1 = 1.0 + u + v + w;
            const double x2 = 1.0 + u - v - w;
            const double x3 = 1.0 - u + v - w;
            const double x4 = 1.0 - u - v + w;
            // Renyi-2 prune: S >= -ln sum p^2, so sum p^2 < e^{-best} cannot
            // improve on best.
            const double p2 = (x1 * x1 + x2 * x2 + x3 * x3 + x4 * x4) / 16.0;
            if (p2 < purity_gate) continue;
            const double s = entropy_of(std::max(0.0, x1), std::max(0.0, x2),
                                        std::max(0.0, x3), std::max(0.0, x4));
            if (s < best) {
                best = s;
                purity_gate = std::exp(-best);
            }
        }
    }
    return best;
}

}  // namespace testing
