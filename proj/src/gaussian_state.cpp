#include "lincan/gaussian_state.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>
#include <string>

namespace lincan {

namespace {

double determinant_pd(const Matrix& m) {
    // LDL^T pivots multiply to the determinant; for diagonal input they are the
    // entries themselves, so saturated states give an exact defect of zero.
    return Eigen::LDLT<Matrix>(m).vectorD().prod();
}

}  // namespace

CovarianceMatrix::CovarianceMatrix(const Matrix& sigma, double hbar) : hbar_(hbar) {
    PhaseSpaceLayout::of(sigma);
    if (!(std::isfinite(hbar) && hbar > 0.0)) throw Error(ErrorKind::shape, "hbar must be positive");
    if (!sigma.allFinite()) throw Error(ErrorKind::non_finite, "covariance matrix has non-finite entries");
    const double scale = std::max(1.0, max_abs(sigma));
    if (max_abs(sigma - sigma.transpose()) > 1e-9 * scale) {
        throw Error(ErrorKind::shape, "shape: covariance matrix is not symmetric");
    }
    sigma_ = symmetrized(sigma);
    Eigen::LLT<Matrix> llt(sigma_);
    if (llt.info() != Eigen::Success) {
        Eigen::SelfAdjointEigenSolver<Matrix> eig(sigma_, Eigen::EigenvaluesOnly);
        throw Error(ErrorKind::not_positive_definite,
                    "covariance matrix is not positive definite: smallest eigenvalue " +
                        std::to_string(eig.eigenvalues().minCoeff()));
    }
}

GaussianState::GaussianState(CovarianceMatrix covariance, Vector mean)
    : covariance_(std::move(covariance)), mean_(std::move(mean)) {
    PhaseSpaceLayout(covariance_.n_modes()).require_vector(mean_, "mean");
}

GaussianState::GaussianState(CovarianceMatrix covariance)
    : covariance_(std::move(covariance)), mean_(Vector::Zero(2 * covariance_.n_modes())) {}

CovarianceMatrix ccs_covariance(const OscillatorTarget& target) {
    return fock_covariance(std::vector<int>(static_cast<std::size_t>(target.n_modes()), 0), target);
}

CovarianceMatrix fock_covariance(const std::vector<int>& occupations, const OscillatorTarget& target) {
    const int n = target.n_modes();
    if (static_cast<int>(occupations.size()) != n) {
        throw Error(ErrorKind::shape, "shape: " + std::to_string(occupations.size()) + " occupations for " +
                                          std::to_string(n) + " modes");
    }
    const double hbar = target.hbar();
    Matrix sigma = Matrix::Zero(2 * n, 2 * n);
    for (int k = 0; k < n; ++k) {
        const auto ks = static_cast<std::size_t>(k);
        if (occupations[ks] < 0) throw Error(ErrorKind::shape, "occupation numbers must be nonnegative");
        const double mw = target.masses()[ks] * target.frequencies()[ks];
        const double factor = 1.0 + 2.0 * occupations[ks];
        sigma(k, k) = factor * hbar * mw / 2.0;
        sigma(n + k, n + k) = factor * hbar / (2.0 * mw);
    }
    return CovarianceMatrix(sigma, hbar);
}

GaussianState apply_symplectic(const GaussianState& state, const SymplecticMatrix& lambda) {
    const PhaseSpaceLayout layout(state.n_modes());
    layout.require_square(lambda.matrix(), "symplectic matrix");
    const auto& cov = state.covariance();
    return GaussianState(CovarianceMatrix(congruence(lambda.matrix(), cov.matrix()), cov.hbar()),
                         lambda.matrix() * state.mean());
}

PhysicalityReport check_physical(const CovarianceMatrix& sigma, double tol) {
    const Matrix j = standard_form(sigma.n_modes());
    const ComplexMatrix phi =
        sigma.matrix().cast<std::complex<double>>() - std::complex<double>(0.0, sigma.hbar() / 2.0) * j;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(phi, Eigen::EigenvaluesOnly);
    const double min_eig = eig.eigenvalues().minCoeff();
    return {min_eig >= -tol, min_eig};
}

double robertson_defect(const CovarianceMatrix& sigma) {
    const double bound = std::pow(sigma.hbar() * sigma.hbar() / 4.0, sigma.n_modes());
    return determinant_pd(sigma.matrix()) - bound;
}

SymplecticInvariants symplectic_invariants(const CovarianceMatrix& sigma, int k_max) {
    if (k_max < 1) throw Error(ErrorKind::shape, "k_max must be >= 1");
    const Matrix sj = sigma.matrix() * standard_form(sigma.n_modes());
    const Matrix sj2 = sj * sj;
    SymplecticInvariants out;
    out.determinant = determinant_pd(sigma.matrix());
    Matrix power = sj2;
    for (int k = 1; k <= k_max; ++k) {
        out.traces.push_back(power.trace());
        if (k < k_max) power = power * sj2;
    }
    return out;
}

double SigmaSymplecticReport::max_residual() const { return std::max({full, unit_block, q_block, p_block}); }

SigmaSymplecticReport is_sigma_symplectic(const CovarianceMatrix& sigma, double tol) {
    const int n = sigma.n_modes();
    const Matrix& s = sigma.matrix();
    const Matrix j = standard_form(n);
    const double scale = std::pow(determinant_pd(s), -1.0 / n);

    const Matrix pp = s.topLeftCorner(n, n);
    const Matrix pq = s.topRightCorner(n, n);
    const Matrix qp = s.bottomLeftCorner(n, n);
    const Matrix qq = s.bottomRightCorner(n, n);

    SigmaSymplecticReport r;
    r.full = max_abs(scale * (s * j * s.transpose()) - j);
    r.unit_block = max_abs(scale * (qq * pp - qp * qp) - Matrix::Identity(n, n));
    r.q_block = max_abs(scale * (qq * pq - pq.transpose() * qq));
    r.p_block = max_abs(scale * (pp * qp - qp.transpose() * pp));
    r.symplectic = r.max_residual() <= tol;
    return r;
}

}  // namespace lincan
