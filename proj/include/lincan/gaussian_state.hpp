#pragma once

// Covariance (dispersion) matrices of N-mode states,
//
//   sigma_{mu nu} = <Q_mu Q_nu + Q_nu Q_mu>/2 - <Q_mu><Q_nu>,  Q = (p, q),
//
// together with the checks that certify them: physicality of
// sigma - (i hbar / 2) J, the Robertson determinant bound, the invariants of
// linear canonical transformations and the symplectic-uncertainty condition.

#include "lincan/hamiltonian.hpp"
#include "lincan/symplectic.hpp"
#include "lincan/types.hpp"

#include <vector>

namespace lincan {

class CovarianceMatrix {
  public:
    // Symmetrises `sigma` (asymmetry above 1e-9 relative is rejected with
    // Error{shape}) and checks positive definiteness with a Cholesky
    // factorisation (Error{not_positive_definite}).
    CovarianceMatrix(const Matrix& sigma, double hbar = 1.0);

    const Matrix& matrix() const noexcept { return sigma_; }
    double hbar() const noexcept { return hbar_; }
    int n_modes() const noexcept { return static_cast<int>(sigma_.rows() / 2); }

  private:
    Matrix sigma_;
    double hbar_;
};

class GaussianState {
  public:
    GaussianState(CovarianceMatrix covariance, Vector mean);
    explicit GaussianState(CovarianceMatrix covariance);

    const CovarianceMatrix& covariance() const noexcept { return covariance_; }
    const Vector& mean() const noexcept { return mean_; }
    int n_modes() const noexcept { return covariance_.n_modes(); }

  private:
    CovarianceMatrix covariance_;
    Vector mean_;
};

// sigma_pp,k = hbar m_k w_k / 2, sigma_qq,k = hbar / (2 m_k w_k).
CovarianceMatrix ccs_covariance(const OscillatorTarget& target);

// CCS variances scaled by (1 + 2 n_k) per mode.
CovarianceMatrix fock_covariance(const std::vector<int>& occupations, const OscillatorTarget& target);

// sigma -> Lambda sigma Lambda^T, mean -> Lambda mean.
GaussianState apply_symplectic(const GaussianState& state, const SymplecticMatrix& lambda);

struct PhysicalityReport {
    bool physical = false;
    double min_eigenvalue = 0.0;
};

// Smallest eigenvalue of the Hermitian matrix sigma - (i hbar / 2) J.
PhysicalityReport check_physical(const CovarianceMatrix& sigma, double tol = Tolerances{}.physical);

// det sigma - (hbar^2 / 4)^N.
double robertson_defect(const CovarianceMatrix& sigma);

struct SymplecticInvariants {
    double determinant = 0.0;
    std::vector<double> traces;  // Tr[(sigma J)^{2k}], k = 1..k_max
};

SymplecticInvariants symplectic_invariants(const CovarianceMatrix& sigma, int k_max = 2);

// Residuals of sigma J sigma^T (det sigma)^{-1/N} = J and of its block form
//   (sigma_qq sigma_pp - sigma_qp^2) (det sigma)^{-1/N} = I,
//   sigma_qq sigma_pq - sigma_pq^T sigma_qq = 0,
//   sigma_pp sigma_qp - sigma_qp^T sigma_pp = 0.
struct SigmaSymplecticReport {
    bool symplectic = false;
    double full = 0.0;
    double unit_block = 0.0;
    double q_block = 0.0;
    double p_block = 0.0;

    double max_residual() const;
};

SigmaSymplecticReport is_sigma_symplectic(const CovarianceMatrix& sigma,
                                          double tol = Tolerances{}.sigma_symplectic);

}  // namespace lincan
