#include "lincan/gaussian_state.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace lincan;
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

}  // namespace

TEST(CovarianceMatrix, RejectsAsymmetricInput) {
    Matrix m = diag({1, 1});
    m(0, 1) = 0.1;
    try {
        CovarianceMatrix c(m);
        FAIL() << "expected shape error";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::shape);
    }
}

TEST(CovarianceMatrix, RejectsIndefiniteInput) {
    try {
        CovarianceMatrix c(diag({1, -0.5}));
        FAIL() << "expected not_positive_definite";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::not_positive_definite);
    }
}

TEST(CovarianceMatrix, RejectsOddDimensionAndBadHbar) {
    EXPECT_THROW(CovarianceMatrix(Matrix::Identity(3, 3)), Error);
    EXPECT_THROW(CovarianceMatrix(Matrix::Identity(2, 2), 0.0), Error);
}

TEST(GaussianState, MeanDimensionIsChecked) {
    EXPECT_THROW(GaussianState(CovarianceMatrix(diag({1, 1})), Vector::Zero(3)), Error);
}

TEST(CcsCovariance, UnitOscillator) {
    const auto s = ccs_covariance(OscillatorTarget::uniform(1));
    EXPECT_EQ(s.matrix(), diag({0.5, 0.5}));
    EXPECT_DOUBLE_EQ(s.matrix().determinant(), 0.25);
}

TEST(CcsCovariance, MassAndFrequencyScaling) {
    const auto s = ccs_covariance(OscillatorTarget({2.0}, {2.0}));
    EXPECT_EQ(s.matrix(), diag({2.0, 0.125}));
    EXPECT_DOUBLE_EQ(symplectic_invariants(s, 1).determinant, 0.25);
}

TEST(CcsCovariance, ThreeModes) {
    EXPECT_NEAR(symplectic_invariants(ccs_covariance(OscillatorTarget::uniform(3)), 1).determinant,
                std::pow(0.25, 3), 1e-15);
}

TEST(CcsCovariance, HbarScales) {
    const auto s = ccs_covariance(OscillatorTarget::uniform(2, 1.0, 1.0, 2.0));
    EXPECT_EQ(s.matrix(), Matrix::Identity(4, 4));
    EXPECT_NEAR(robertson_defect(s), 0.0, 1e-14);
}

TEST(FockCovariance, VacuumIsCoherent) {
    const OscillatorTarget target({1.5, 0.3}, {2.0, 4.0});
    EXPECT_EQ(fock_covariance({0, 0}, target).matrix(), ccs_covariance(target).matrix());
}

TEST(FockCovariance, OneQuantum) {
    const auto s = fock_covariance({1}, OscillatorTarget::uniform(1));
    EXPECT_EQ(s.matrix(), diag({1.5, 1.5}));
    EXPECT_DOUBLE_EQ(s.matrix()(0, 0) * s.matrix()(1, 1), 2.25);
}

TEST(FockCovariance, TwoModesEqualOccupation) {
    const auto s = fock_covariance({1, 1}, OscillatorTarget::uniform(2));
    EXPECT_NEAR(s.matrix().determinant(), 2.25 * 2.25, 1e-14);
    const Matrix qq_pp = s.matrix().bottomRightCorner(2, 2) * s.matrix().topLeftCorner(2, 2);
    EXPECT_LT(max_abs(qq_pp - 2.25 * Matrix::Identity(2, 2)), 1e-15);
}

TEST(FockCovariance, RejectsNegativeOccupation) {
    EXPECT_THROW(fock_covariance({-1}, OscillatorTarget::uniform(1)), Error);
    EXPECT_THROW(fock_covariance({1, 2}, OscillatorTarget::uniform(1)), Error);
}

TEST(ApplySymplectic, IdentityLeavesStateUnchanged) {
    Vector mean(2);
    mean << 0.3, -1.2;
    const GaussianState s(fock_covariance({2}, OscillatorTarget::uniform(1)), mean);
    const auto out = apply_symplectic(s, SymplecticMatrix::identity(1));
    EXPECT_EQ(out.covariance().matrix(), s.covariance().matrix());
    EXPECT_EQ(out.mean(), s.mean());
}

TEST(ApplySymplectic, SqueezingKeepsSaturation) {
    const double sq = 1.7;
    const auto out = squeezed(ccs_covariance(OscillatorTarget::uniform(1)), diag({sq, 1 / sq}));
    EXPECT_LT(max_abs(out.matrix() - diag({sq * sq / 2, 1 / (2 * sq * sq)})), 1e-15);
    EXPECT_NEAR(out.matrix().determinant(), 0.25, 1e-15);
}

TEST(ApplySymplectic, TransformsMean) {
    Vector mean(2);
    mean << 1.0, 2.0;
    Matrix lambda(2, 2);
    lambda << 0, -1, 1, 0;
    const auto out = apply_symplectic(GaussianState(ccs_covariance(OscillatorTarget::uniform(1)), mean),
                                      SymplecticMatrix(lambda));
    EXPECT_DOUBLE_EQ(out.mean()(0), -2.0);
    EXPECT_DOUBLE_EQ(out.mean()(1), 1.0);
}

TEST(CheckPhysical, Examples) {
    const auto ccs = check_physical(CovarianceMatrix(diag({0.5, 0.5})));
    EXPECT_TRUE(ccs.physical);
    EXPECT_NEAR(ccs.min_eigenvalue, 0.0, 1e-15);

    const auto bad = check_physical(CovarianceMatrix(diag({0.4, 0.4})));
    EXPECT_FALSE(bad.physical);
    EXPECT_NEAR(bad.min_eigenvalue, -0.1, 1e-14);

    const auto wide = check_physical(CovarianceMatrix(diag({5, 5})));
    EXPECT_TRUE(wide.physical);
    EXPECT_NEAR(wide.min_eigenvalue, 4.5, 1e-14);
}

TEST(CheckPhysical, HbarEntersTheBound) {
    EXPECT_TRUE(check_physical(CovarianceMatrix(diag({0.5, 0.5}), 1.0)).physical);
    EXPECT_FALSE(check_physical(CovarianceMatrix(diag({0.5, 0.5}), 2.0)).physical);
}

TEST(RobertsonDefect, Examples) {
    for (int n : {1, 2, 4}) EXPECT_NEAR(robertson_defect(ccs_covariance(OscillatorTarget::uniform(n))), 0.0, 1e-12);
    EXPECT_NEAR(robertson_defect(fock_covariance({1}, OscillatorTarget::uniform(1))), 2.0, 1e-15);
    std::mt19937_64 rng(31);
    for (int n = 1; n <= 4; ++n) {
        const auto s = squeezed(ccs_covariance(OscillatorTarget::uniform(n)), random_symplectic(rng, n, 0.5));
        EXPECT_NEAR(robertson_defect(s), 0.0, 1e-9);
    }
}

TEST(SymplecticInvariants, Examples) {
    const auto half = symplectic_invariants(CovarianceMatrix(diag({0.5, 0.5})), 2);
    EXPECT_DOUBLE_EQ(half.determinant, 0.25);
    ASSERT_EQ(half.traces.size(), 2u);
    EXPECT_DOUBLE_EQ(half.traces[0], -0.5);
    EXPECT_DOUBLE_EQ(half.traces[1], 2.0 * 0.0625);
    const auto fock = symplectic_invariants(fock_covariance({1}, OscillatorTarget::uniform(1)), 1);
    EXPECT_DOUBLE_EQ(fock.traces[0], -4.5);
}

TEST(SymplecticInvariants, PreservedByRandomTransformations) {
    std::mt19937_64 rng(32);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 1 + trial % 4;
        const CovarianceMatrix s(lincan::testing::random_positive_definite(rng, 2 * n));
        const auto out = squeezed(s, random_symplectic(rng, n, 0.5));
        const auto a = symplectic_invariants(s, 2);
        const auto b = symplectic_invariants(out, 2);
        EXPECT_LT(lincan::testing::relative_change(a.determinant, b.determinant), 1e-9);
        for (int k = 0; k < 2; ++k) {
            EXPECT_LT(lincan::testing::relative_change(a.traces[static_cast<std::size_t>(k)],
                                                       b.traces[static_cast<std::size_t>(k)]),
                      1e-9);
        }
    }
}

TEST(SigmaSymplectic, Examples) {
    const auto ccs = is_sigma_symplectic(ccs_covariance(OscillatorTarget::uniform(1)));
    EXPECT_TRUE(ccs.symplectic);
    EXPECT_EQ(ccs.max_residual(), 0.0);
    EXPECT_TRUE(is_sigma_symplectic(fock_covariance({1, 1}, OscillatorTarget::uniform(2))).symplectic);
    const auto mixed = is_sigma_symplectic(fock_covariance({0, 1}, OscillatorTarget::uniform(2)));
    EXPECT_FALSE(mixed.symplectic);
    EXPECT_GT(mixed.unit_block, 0.1);
}

TEST(SigmaSymplectic, VerdictInvariantUnderTransformations) {
    std::mt19937_64 rng(33);
    const auto yes = fock_covariance({2, 2}, OscillatorTarget::uniform(2));
    const auto no = fock_covariance({0, 3}, OscillatorTarget::uniform(2));
    for (int trial = 0; trial < 100; ++trial) {
        const Matrix lambda = random_symplectic(rng, 2, 0.5);
        const auto a = is_sigma_symplectic(squeezed(yes, lambda));
        EXPECT_TRUE(a.symplectic) << a.max_residual();
        EXPECT_FALSE(is_sigma_symplectic(squeezed(no, lambda)).symplectic);
    }
}

TEST(SigmaSymplectic, ProductStatesWithEqualUncertaintyProducts) {
    // Different squeezing per mode, same product 1, no p-q correlation.
    EXPECT_TRUE(is_sigma_symplectic(CovarianceMatrix(diag({2.0, 0.25, 0.5, 4.0}))).symplectic);
    EXPECT_FALSE(is_sigma_symplectic(CovarianceMatrix(diag({2.0, 0.25, 0.5, 5.0}))).symplectic);
}

TEST(Physicality, EveryGeneratedStateIsPhysical) {
    std::mt19937_64 rng(34);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 1 + trial % 4;
        const auto target = lincan::testing::random_target(rng, n, 0.5, 2.0);
        std::vector<int> occ(static_cast<std::size_t>(n));
        for (auto& k : occ) k = static_cast<int>(rng() % 4);
        const auto s = squeezed(fock_covariance(occ, target), random_symplectic(rng, n, 0.5));
        EXPECT_TRUE(check_physical(s).physical);
        EXPECT_GE(robertson_defect(s), -1e-9);
    }
}
