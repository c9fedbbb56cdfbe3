#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ergolab/entropy.hpp"
#include "ergolab/qstate.hpp"
#include "test_support.hpp"

using namespace ergolab;
using testing::bell_phi_plus;
using testing::random_density;
using testing::random_pure;

namespace {

DensityMatrix basis_projector(int dim, int index,
                              std::optional<Bipartition> dims = std::nullopt) {
    Matrix m = Matrix::Zero(dim, dim);
    m(index, index) = 1.0;
    return DensityMatrix::unchecked(std::move(m), dims);
}

}  // namespace

TEST_CASE("validate_density accepts the maximally mixed qubit") {
    const DensityMatrix rho = validate_density(Matrix::Identity(2, 2) / 2.0);
    CHECK(rho.dim() == 2);
}

TEST_CASE("validate_density names the violated invariant") {
    Matrix bad_trace = Matrix::Zero(2, 2);
    bad_trace(0, 0) = bad_trace(1, 1) = 0.6;
    CHECK_THROWS_WITH_AS(validate_density(bad_trace),
                         doctest::Contains("TraceNotOne"), ValidationError);

    Matrix bad_psd = Matrix::Zero(2, 2);
    bad_psd(0, 0) = 1.2;
    bad_psd(1, 1) = -0.2;
    CHECK_THROWS_WITH_AS(validate_density(bad_psd), doctest::Contains("NotPositive"),
                         ValidationError);

    Matrix bad_herm = Matrix::Identity(2, 2) / 2.0;
    bad_herm(0, 1) = Complex(0.1, 0.0);
    CHECK_THROWS_WITH_AS(validate_density(bad_herm), doctest::Contains("NotHermitian"),
                         ValidationError);
}

TEST_CASE("validation never mutates its input") {
    Matrix m = Matrix::Identity(3, 3) / 3.0;
    const Matrix copy = m;
    (void)validate_density(m);
    CHECK((m - copy).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("partial_trace of |01><01| keeps |0><0| on A") {
    const DensityMatrix rho = basis_projector(4, 1, Bipartition{2, 2});
    const DensityMatrix a = partial_trace(rho, Subsystem::A);
    CHECK(std::abs(a.mat(0, 0) - Complex(1.0, 0.0)) < 1e-14);
    const DensityMatrix b = partial_trace(rho, Subsystem::B);
    CHECK(std::abs(b.mat(1, 1) - Complex(1.0, 0.0)) < 1e-14);
}

TEST_CASE("partial_trace of the Bell state is maximally mixed") {
    const DensityMatrix rho = bell_phi_plus().projector();
    const DensityMatrix a = partial_trace(rho, Subsystem::A);
    CHECK((a.mat - Matrix::Identity(2, 2) / 2.0).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("partial_trace matches the index-summation oracle on products") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const DensityMatrix a = random_density(2, seed);
        const DensityMatrix b = random_density(2, seed + 100);
        const DensityMatrix ab = tensor_product(a, b);
        const DensityMatrix ra = partial_trace(ab, Subsystem::A);
        CHECK((ra.mat - a.mat).cwiseAbs().maxCoeff() < 1e-12);
        const Matrix oracle = testing::partial_trace_oracle(ab.mat, 2, 2, true);
        CHECK((ra.mat - oracle).cwiseAbs().maxCoeff() < 1e-13);
        CHECK(std::abs(ra.mat.trace().real() - 1.0) < 1e-12);
    }
}

TEST_CASE("partial_trace requires a bipartition annotation") {
    const DensityMatrix rho = validate_density(Matrix::Identity(4, 4) / 4.0);
    CHECK_THROWS_AS(partial_trace(rho, Subsystem::A), MissingDims);
}

TEST_CASE("tensor products and powers") {
    const DensityMatrix zero = basis_projector(2, 0);
    const DensityMatrix cubed = tensor_power(zero, 3);
    CHECK(cubed.dim() == 8);
    CHECK(std::abs(cubed.mat(0, 0) - Complex(1.0, 0.0)) < 1e-14);
    CHECK(cubed.mat.cwiseAbs().sum() == doctest::Approx(1.0));

    const DensityMatrix mixed = validate_density(Matrix::Identity(2, 2) / 2.0);
    const DensityMatrix prod = tensor_product(mixed, mixed);
    CHECK((prod.mat - Matrix::Identity(4, 4) / 4.0).cwiseAbs().maxCoeff() < 1e-14);

    Matrix pops = Matrix::Zero(2, 2);
    pops(0, 0) = 0.3;
    pops(1, 1) = 0.7;
    const DensityMatrix sq = tensor_power(validate_density(pops), 2);
    CHECK(sq.mat(0, 0).real() == doctest::Approx(0.09));
    CHECK(sq.mat(1, 1).real() == doctest::Approx(0.21));
    CHECK(sq.mat(2, 2).real() == doctest::Approx(0.21));
    CHECK(sq.mat(3, 3).real() == doctest::Approx(0.49));

    CHECK((tensor_power(mixed, 1).mat - mixed.mat).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("tensor_power enforces the dimension cap") {
    const DensityMatrix mixed = validate_density(Matrix::Identity(2, 2) / 2.0);
    CHECK_THROWS_AS(tensor_power(mixed, 13), DimensionCap);
    CHECK_NOTHROW(tensor_power(mixed, 13, std::int64_t(1) << 13));
}

TEST_CASE("spectral decomposes simple Hermitian matrices") {
    Matrix d = Matrix::Zero(3, 3);
    d(0, 0) = 2.0;
    d(2, 2) = 1.0;
    const SpectralDecomposition sd = spectral(d);
    CHECK(sd.values(0) == doctest::Approx(0.0));
    CHECK(sd.values(1) == doctest::Approx(1.0));
    CHECK(sd.values(2) == doctest::Approx(2.0));

    Matrix x(2, 2);
    x << 0, 1, 1, 0;
    const SpectralDecomposition sx = spectral(x);
    CHECK(sx.values(0) == doctest::Approx(-1.0));
    CHECK(sx.values(1) == doctest::Approx(1.0));
    CHECK(std::abs(std::abs(sx.vectors(0, 1)) - 1.0 / std::sqrt(2.0)) < 1e-12);
}

TEST_CASE("spectral reconstruction and orthonormality on random matrices") {
    for (std::uint64_t seed : {11u, 12u, 13u}) {
        const Matrix h = testing::random_hermitian(4, seed);
        const SpectralDecomposition sd = spectral(h);
        Matrix rebuilt = Matrix::Zero(4, 4);
        for (int k = 0; k < 4; ++k) {
            rebuilt += sd.values(k) * sd.vectors.col(k) * sd.vectors.col(k).adjoint();
        }
        CHECK((rebuilt - h).cwiseAbs().maxCoeff() < 1e-10);
        CHECK((sd.vectors.adjoint() * sd.vectors - Matrix::Identity(4, 4))
                  .cwiseAbs()
                  .maxCoeff() < 1e-10);
    }
    Matrix not_herm(2, 2);
    not_herm << 0, 1, 0, 0;
    CHECK_THROWS_AS(spectral(not_herm), ValidationError);
}

TEST_CASE("dephase examples") {
    const Measurement comp4 = Measurement::computational(4);
    const DensityMatrix bell = bell_phi_plus().projector();
    const DensityMatrix cg = dephase(bell, comp4);
    CHECK(cg.mat(0, 0).real() == doctest::Approx(0.5));
    CHECK(cg.mat(3, 3).real() == doctest::Approx(0.5));
    CHECK(std::abs(cg.mat(0, 3)) < 1e-14);

    // A basis-diagonal state is a fixed point.
    Matrix diag = Matrix::Zero(2, 2);
    diag(0, 0) = 0.3;
    diag(1, 1) = 0.7;
    const DensityMatrix rho = validate_density(diag);
    const Measurement comp2 = Measurement::computational(2);
    CHECK((dephase(rho, comp2).mat - rho.mat).cwiseAbs().maxCoeff() < 1e-14);

    Vector plus(2);
    plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    const DensityMatrix proj = validate_pure(plus).projector();
    CHECK((dephase(proj, comp2).mat - Matrix::Identity(2, 2) / 2.0).cwiseAbs().maxCoeff() <
          1e-14);

    CHECK_THROWS_AS(dephase(rho, comp4), DimensionMismatch);
}

TEST_CASE("dephase is a projection and never decreases entropy") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const int dim = 2 + static_cast<int>(seed % 3);
        const DensityMatrix rho = random_density(dim, seed);
        Rng rng(Rng::derive({seed, 0xDEFA5EULL}));
        const Measurement m = Measurement::from_basis(haar_random_unitary(dim, rng));
        const DensityMatrix once = dephase(rho, m);
        const DensityMatrix twice = dephase(once, m);
        CHECK((once.mat - twice.mat).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(von_neumann_entropy(once) >= von_neumann_entropy(rho) - 1e-10);
        for (const Matrix& p : m.projectors) {
            CHECK((p * once.mat - once.mat * p).cwiseAbs().maxCoeff() < 1e-12);
        }
    }
}

TEST_CASE("reduced states of a bipartite pure state share a spectrum") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const int da = 2 + static_cast<int>(seed % 2);
        const int db = 2 + static_cast<int>((seed / 2) % 3);
        const PureState psi = random_pure(da, db, seed);
        const DensityMatrix rho = psi.projector();
        const RealVector ea = spectral(partial_trace(rho, Subsystem::A).mat).values;
        const RealVector eb = spectral(partial_trace(rho, Subsystem::B).mat).values;
        const int r = std::min<int>(ea.size(), eb.size());
        for (int k = 0; k < r; ++k) {
            // Both ascending; nonzero parts agree, smaller side pads zeros.
            CHECK(std::abs(ea(ea.size() - 1 - k) - eb(eb.size() - 1 - k)) < 1e-10);
        }
    }
}
