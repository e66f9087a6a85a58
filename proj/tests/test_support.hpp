#pragma once

// Shared helpers for the unit tests and the acceptance suite: reproducible
// random symplectic matrices and states, plus small independent oracles.

#include "lincan/gaussian_state.hpp"
#include "lincan/hamiltonian.hpp"
#include "lincan/symplectic.hpp"
#include "lincan/types.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace lincan::testing {

inline Matrix random_symmetric(std::mt19937_64& rng, int dim, double scale = 1.0) {
    std::uniform_real_distribution<double> u(-scale, scale);
    Matrix s(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = i; j < dim; ++j) s(i, j) = s(j, i) = u(rng);
    }
    return s;
}

// exp(J S) with S symmetric spans the connected symplectic group.
inline Matrix random_symplectic(std::mt19937_64& rng, int n_modes, double scale = 1.0) {
    return matrix_exponential(standard_form(n_modes) * random_symmetric(rng, 2 * n_modes, scale));
}

inline Matrix random_positive_definite(std::mt19937_64& rng, int dim) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Matrix m(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) m(i, j) = u(rng);
    }
    return m * m.transpose() + 0.1 * Matrix::Identity(dim, dim);
}

inline OscillatorTarget random_target(std::mt19937_64& rng, int n_modes, double lo = 0.1, double hi = 10.0,
                                      double hbar = 1.0) {
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> m(static_cast<std::size_t>(n_modes));
    std::vector<double> w(static_cast<std::size_t>(n_modes));
    for (auto& x : m) x = u(rng);
    for (auto& x : w) x = u(rng);
    return {m, w, hbar};
}

// Oracle: moduli of the eigenvalues of i J sigma, each symplectic eigenvalue
// appearing twice; returns the N distinct-pair values sorted descending.
inline Vector oracle_spectrum(const Matrix& sigma) {
    const int dim = static_cast<int>(sigma.rows());
    const ComplexMatrix m = std::complex<double>(0.0, 1.0) * (standard_form(dim / 2) * sigma).cast<std::complex<double>>();
    Eigen::ComplexEigenSolver<ComplexMatrix> es(m);
    std::vector<double> mods;
    for (int i = 0; i < dim; ++i) mods.push_back(std::abs(es.eigenvalues()(i)));
    std::sort(mods.begin(), mods.end(), std::greater<>());
    Vector out(dim / 2);
    for (int k = 0; k < dim / 2; ++k) out(k) = 0.5 * (mods[static_cast<std::size_t>(2 * k)] + mods[static_cast<std::size_t>(2 * k + 1)]);
    return out;
}

// Oracle: exp(M) by a plain Taylor series on M / 2^s followed by squaring.
inline Matrix taylor_exponential(const Matrix& m) {
    const double norm = m.cwiseAbs().rowwise().sum().maxCoeff();
    int s = 0;
    while (norm / std::ldexp(1.0, s) > 0.25) ++s;
    const Matrix a = m / std::ldexp(1.0, s);
    Matrix term = Matrix::Identity(m.rows(), m.cols());
    Matrix sum = term;
    for (int k = 1; k < 30; ++k) {
        term = term * a / static_cast<double>(k);
        sum += term;
    }
    for (int i = 0; i < s; ++i) sum = sum * sum;
    return sum;
}

inline double relative_change(double before, double after) {
    return std::abs(after - before) / std::max(std::abs(before), 1e-300);
}

}  // namespace lincan::testing
