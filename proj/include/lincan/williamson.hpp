#pragma once

// Symplectic diagonalisation of positive-definite covariance matrices:
// Lambda_d sigma Lambda_d^T = diag(d_1, ..., d_2N) with Lambda_d symplectic.

#include "lincan/gaussian_state.hpp"
#include "lincan/symplectic.hpp"
#include "lincan/types.hpp"

#include <vector>

namespace lincan {

struct WilliamsonResult {
    SymplecticMatrix lambda_d;
    // Mode k occupies indices k (momentum) and N + k (coordinate).
    Vector diagonal;
    // nu_k = sqrt(d_k d_{N+k}), same mode order as `diagonal`.
    Vector spectrum;

    int n_modes() const { return static_cast<int>(spectrum.size()); }
    // max|Lambda_d^{-1} diag(d) Lambda_d^{-T} - sigma|
    double reconstruction_residual(const Matrix& sigma) const;
};

// A diagonal sigma is returned as is with Lambda_d = I. Otherwise the
// symplectic spectrum appears in descending order with d_k = d_{N+k} = nu_k.
// Throws Error{not_positive_definite} for indefinite input.
WilliamsonResult williamson_decompose(const Matrix& sigma);
WilliamsonResult williamson_decompose(const CovarianceMatrix& sigma);

// Positive eigenvalues of i J sigma (each appears twice with opposite sign),
// sorted descending.
Vector symplectic_spectrum(const Matrix& sigma);
Vector symplectic_spectrum(const CovarianceMatrix& sigma);

struct HeisenbergProducts {
    std::vector<double> products;  // d_k d_{N+k}
    std::vector<bool> satisfied;   // product >= hbar^2/4 - tol
    bool all_satisfied() const;
};

HeisenbergProducts heisenberg_products(const WilliamsonResult& result, double hbar,
                                       double tol = Tolerances{}.physical);

// Every nu_k equals hbar/2 within `rel_tol * hbar`.
bool is_robertson_minimal(const CovarianceMatrix& sigma, double rel_tol = Tolerances{}.minimal);

}  // namespace lincan
