#include "lincan/williamson.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <string>

namespace lincan {

namespace {

struct SquareRoots {
    Matrix root;
    Matrix inverse_root;
};

SquareRoots square_roots(const Matrix& sigma) {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(symmetrized(sigma));
    const Vector w = eig.eigenvalues();
    if (!(w.minCoeff() > 0.0)) {
        throw Error(ErrorKind::not_positive_definite,
                    "not diagonalizable by symplectic congruence: eigenvalue " + std::to_string(w.minCoeff()));
    }
    const Matrix& v = eig.eigenvectors();
    return {v * w.cwiseSqrt().asDiagonal() * v.transpose(), v * w.cwiseSqrt().cwiseInverse().asDiagonal() * v.transpose()};
}

// Hermitian matrix i sigma^{1/2} J sigma^{1/2}; its eigenvalues are +-nu_k.
Eigen::SelfAdjointEigenSolver<ComplexMatrix> normal_form_eigen(const Matrix& root, bool vectors) {
    const int n = static_cast<int>(root.rows() / 2);
    Matrix k = root * standard_form(n) * root;
    k = 0.5 * (k - k.transpose());
    const ComplexMatrix h = std::complex<double>(0.0, 1.0) * k.cast<std::complex<double>>();
    return Eigen::SelfAdjointEigenSolver<ComplexMatrix>(h, vectors ? Eigen::ComputeEigenvectors
                                                                   : Eigen::EigenvaluesOnly);
}

bool is_diagonal(const Matrix& m) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            if (r != c && m(r, c) != 0.0) return false;
        }
    }
    return true;
}

Eigen::Index dominant_index(const ComplexVector& u) {
    Eigen::Index idx = 0;
    u.cwiseAbs().maxCoeff(&idx);
    return idx;
}

}  // namespace

double WilliamsonResult::reconstruction_residual(const Matrix& sigma) const {
    const Matrix inv = symplectic_inverse(lambda_d.matrix());
    return max_abs(inv * diagonal.asDiagonal() * inv.transpose() - sigma);
}

WilliamsonResult williamson_decompose(const Matrix& sigma) {
    const auto layout = PhaseSpaceLayout::of(sigma);
    const int n = layout.n_modes();
    const auto roots = square_roots(sigma);

    if (is_diagonal(sigma)) {
        const Vector d = sigma.diagonal();
        Vector nu(n);
        for (int k = 0; k < n; ++k) nu(k) = std::sqrt(d(k) * d(n + k));
        return {SymplecticMatrix::identity(n), d, nu};
    }

    const auto eig = normal_form_eigen(roots.root, true);
    const Vector& values = eig.eigenvalues();
    const ComplexMatrix& vectors = eig.eigenvectors();

    // Eigenvalues are ascending; the last N are the +nu_k.
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), n);
    std::vector<ComplexVector> modes(static_cast<std::size_t>(2 * n));
    for (int i = n; i < 2 * n; ++i) {
        ComplexVector u = vectors.col(i);
        const std::complex<double> pivot = u(dominant_index(u));
        u *= std::conj(pivot) / std::abs(pivot);
        modes[static_cast<std::size_t>(i)] = std::move(u);
    }
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const double va = values(a);
        const double vb = values(b);
        if (std::abs(va - vb) > 1e-12 * std::max(1.0, std::abs(va))) return va > vb;
        return dominant_index(modes[static_cast<std::size_t>(a)]) < dominant_index(modes[static_cast<std::size_t>(b)]);
    });

    // Orthogonal O with O^T K O = [[0, D], [-D, 0]] where K = sigma^{1/2} J sigma^{1/2}:
    // for i K u = nu u with u = a + i b, the columns are sqrt(2) b (momentum slot)
    // and sqrt(2) a (coordinate slot).
    Matrix o(2 * n, 2 * n);
    Vector nu(n);
    for (int k = 0; k < n; ++k) {
        const int idx = order[static_cast<std::size_t>(k)];
        const ComplexVector& u = modes[static_cast<std::size_t>(idx)];
        nu(k) = values(idx);
        o.col(k) = std::sqrt(2.0) * u.imag();
        o.col(n + k) = std::sqrt(2.0) * u.real();
    }

    Vector d(2 * n);
    d << nu, nu;
    // Lambda_d = D^{1/2} O^T sigma^{-1/2}
    Matrix lambda = d.cwiseSqrt().asDiagonal() * o.transpose() * roots.inverse_root;
    return {SymplecticMatrix::computed(std::move(lambda)), d, nu};
}

WilliamsonResult williamson_decompose(const CovarianceMatrix& sigma) { return williamson_decompose(sigma.matrix()); }

Vector symplectic_spectrum(const Matrix& sigma) {
    const int n = PhaseSpaceLayout::of(sigma).n_modes();
    const auto eig = normal_form_eigen(square_roots(sigma).root, false);
    return eig.eigenvalues().tail(n).reverse();
}

Vector symplectic_spectrum(const CovarianceMatrix& sigma) { return symplectic_spectrum(sigma.matrix()); }

bool HeisenbergProducts::all_satisfied() const {
    return std::all_of(satisfied.begin(), satisfied.end(), [](bool b) { return b; });
}

HeisenbergProducts heisenberg_products(const WilliamsonResult& result, double hbar, double tol) {
    const int n = result.n_modes();
    const double bound = hbar * hbar / 4.0;
    HeisenbergProducts out;
    for (int k = 0; k < n; ++k) {
        const double prod = result.diagonal(k) * result.diagonal(n + k);
        out.products.push_back(prod);
        out.satisfied.push_back(prod >= bound - tol);
    }
    return out;
}

bool is_robertson_minimal(const CovarianceMatrix& sigma, double rel_tol) {
    const Vector nu = symplectic_spectrum(sigma);
    const double half = sigma.hbar() / 2.0;
    return ((nu.array() - half).abs() <= rel_tol * sigma.hbar()).all();
}

}  // namespace lincan
