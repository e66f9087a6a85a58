#include "lincan/williamson.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace lincan;
using lincan::testing::oracle_spectrum;
using lincan::testing::random_symplectic;

namespace {

Matrix diag(std::initializer_list<double> values) {
    Vector v(static_cast<Eigen::Index>(values.size()));
    Eigen::Index i = 0;
    for (double x : values) v(i++) = x;
    return v.asDiagonal();
}

CovarianceMatrix squeezed(const CovarianceMatrix& base, const Matrix& lambda) {
    return apply_symplectic(GaussianState(base), SymplecticMatrix::computed(lambda)).covariance();
}

// A physical covariance: random Fock-like diagonal, then a random symplectic.
CovarianceMatrix random_physical(std::mt19937_64& rng, int n) {
    std::uniform_real_distribution<double> u(0.5, 3.0);
    Vector d(2 * n);
    for (int k = 0; k < n; ++k) d(k) = d(n + k) = u(rng);
    return squeezed(CovarianceMatrix(d.asDiagonal()), random_symplectic(rng, n, 0.4));
}

}  // namespace

TEST(Williamson, AlreadyNormalForm) {
    const auto r = williamson_decompose(diag({0.5, 0.5}));
    EXPECT_EQ(r.lambda_d.matrix(), Matrix::Identity(2, 2));
    EXPECT_EQ(r.diagonal, Vector::Constant(2, 0.5));
    EXPECT_EQ(r.reconstruction_residual(diag({0.5, 0.5})), 0.0);
}

TEST(Williamson, CorrelatedOneMode) {
    Matrix s(2, 2);
    s << 1, 0.5, 0.5, 1;
    const auto r = williamson_decompose(s);
    EXPECT_NEAR(r.spectrum(0), std::sqrt(3.0) / 2, 1e-14);
    EXPECT_NEAR(oracle_spectrum(s)(0), std::sqrt(3.0) / 2, 1e-14);
    EXPECT_LT(r.reconstruction_residual(s), 1e-14);
    EXPECT_NEAR(symplectic_spectrum(s)(0), std::sqrt(3.0) / 2, 1e-14);
}

TEST(Williamson, SqueezedCoherentOneMode) {
    EXPECT_NEAR(symplectic_spectrum(diag({2.0, 0.125}))(0), 0.5, 1e-15);
    EXPECT_NEAR(williamson_decompose(diag({2.0, 0.125})).spectrum(0), 0.5, 1e-15);
}

TEST(Williamson, RejectsIndefiniteMatrix) {
    try {
        williamson_decompose(diag({1.0, -1.0}));
        FAIL() << "expected not_positive_definite";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::not_positive_definite);
        EXPECT_NE(std::string(e.what()).find("-1"), std::string::npos);
    }
}

TEST(Williamson, DiagonalIsPairedAndDescending) {
    std::mt19937_64 rng(41);
    const auto s = random_physical(rng, 4);
    const auto r = williamson_decompose(s);
    for (int k = 0; k < 4; ++k) EXPECT_DOUBLE_EQ(r.diagonal(k), r.diagonal(4 + k));
    for (int k = 0; k + 1 < 4; ++k) EXPECT_GE(r.spectrum(k), r.spectrum(k + 1));
    const Matrix normal = congruence(r.lambda_d.matrix(), s.matrix());
    EXPECT_LT(max_abs(normal - Matrix(r.diagonal.asDiagonal())), 1e-9);
}

TEST(SymplecticSpectrum, Examples) {
    EXPECT_LT(max_abs(symplectic_spectrum(ccs_covariance(OscillatorTarget::uniform(2))) - Vector::Constant(2, 0.5)),
              1e-15);
    const Vector fock = symplectic_spectrum(fock_covariance({0, 1}, OscillatorTarget::uniform(2)));
    EXPECT_NEAR(fock(0), 1.5, 1e-14);
    EXPECT_NEAR(fock(1), 0.5, 1e-14);
}

TEST(SymplecticSpectrum, InvariantUnderTransformations) {
    std::mt19937_64 rng(42);
    const auto base = fock_covariance({0, 1, 3}, OscillatorTarget({1.0, 2.0, 0.5}, {1.0, 0.3, 3.0}));
    const Vector expected = symplectic_spectrum(base);
    for (int trial = 0; trial < 20; ++trial) {
        const auto s = squeezed(base, random_symplectic(rng, 3, 0.5));
        EXPECT_LT(max_abs(symplectic_spectrum(s) - expected), 1e-9);
        EXPECT_LT(max_abs(oracle_spectrum(s.matrix()) - expected), 1e-9);
    }
}

TEST(HeisenbergProducts, Examples) {
    const auto ccs = ccs_covariance(OscillatorTarget({3.0, 0.2}, {0.7, 5.0}, 2.0));
    const auto p = heisenberg_products(williamson_decompose(ccs), 2.0);
    for (double x : p.products) EXPECT_NEAR(x, 1.0, 1e-12);
    EXPECT_TRUE(p.all_satisfied());

    const auto fock = heisenberg_products(williamson_decompose(fock_covariance({2}, OscillatorTarget::uniform(1))), 1.0);
    EXPECT_NEAR(fock.products[0], 6.25, 1e-14);

    const auto bad = heisenberg_products(williamson_decompose(diag({0.4, 0.4})), 1.0);
    EXPECT_NEAR(bad.products[0], 0.16, 1e-15);
    EXPECT_FALSE(bad.satisfied[0]);
    EXPECT_FALSE(bad.all_satisfied());
}

TEST(RobertsonMinimal, Examples) {
    std::mt19937_64 rng(43);
    const auto ccs = ccs_covariance(OscillatorTarget::uniform(3));
    EXPECT_TRUE(is_robertson_minimal(ccs));
    EXPECT_TRUE(is_robertson_minimal(squeezed(ccs, random_symplectic(rng, 3, 0.7))));
    EXPECT_FALSE(is_robertson_minimal(fock_covariance({1}, OscillatorTarget::uniform(1))));
}

TEST(WilliamsonProperties, ReconstructionUpToTwentyDimensions) {
    std::mt19937_64 rng(44);
    for (int n = 1; n <= 10; ++n) {
        for (int rep = 0; rep < 3; ++rep) {
            const auto s = random_physical(rng, n);
            const auto r = williamson_decompose(s);
            EXPECT_LT(r.reconstruction_residual(s.matrix()), 1e-8) << "N=" << n;
            EXPECT_LT(r.lambda_d.residual(), 1e-8);
            EXPECT_LT(max_abs(r.spectrum - oracle_spectrum(s.matrix())), 1e-8);
            double prod = 1.0;
            for (int k = 0; k < n; ++k) prod *= r.diagonal(k) * r.diagonal(n + k);
            EXPECT_LT(lincan::testing::relative_change(s.matrix().determinant(), prod), 1e-8);
        }
    }
}

TEST(WilliamsonProperties, DegenerateSpectrum) {
    std::mt19937_64 rng(45);
    const auto s = squeezed(fock_covariance({2, 2, 2}, OscillatorTarget::uniform(3)), random_symplectic(rng, 3, 0.6));
    const auto r = williamson_decompose(s);
    EXPECT_LT(r.reconstruction_residual(s.matrix()), 1e-8);
    EXPECT_LT(max_abs(r.spectrum - Vector::Constant(3, 2.5)), 1e-9);
}

TEST(WilliamsonProperties, RobertsonChainMatchesMinimality) {
    std::mt19937_64 rng(46);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + trial % 4;
        const bool coherent = trial % 2 == 0;
        std::vector<int> occ(static_cast<std::size_t>(n), 0);
        if (!coherent) occ[rng() % static_cast<std::size_t>(n)] = 1 + static_cast<int>(rng() % 3);
        const auto target = lincan::testing::random_target(rng, n, 0.5, 2.0);
        const auto s = squeezed(fock_covariance(occ, target), random_symplectic(rng, n, 0.5));
        const Vector nu = symplectic_spectrum(s);
        double prod = 1.0;
        for (int k = 0; k < n; ++k) prod *= nu(k) * nu(k);
        const double bound = std::pow(0.25, n);
        EXPECT_EQ(robertson_defect(s) >= -1e-9, prod >= bound * (1 - 1e-9));
        EXPECT_EQ(is_robertson_minimal(s), coherent);
        EXPECT_EQ(std::abs(robertson_defect(s)) <= 1e-9 * std::max(1.0, s.matrix().determinant()), coherent);
    }
}
