#include "lincan/symplectic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace lincan {

PhaseSpaceLayout::PhaseSpaceLayout(int n_modes) : n_(n_modes) {
    if (n_modes < 1) {
        throw Error(ErrorKind::shape, "shape: number of modes must be >= 1, got " + std::to_string(n_modes));
    }
}

void PhaseSpaceLayout::require_square(const Matrix& m, std::string_view what) const {
    if (m.rows() != dim() || m.cols() != dim()) {
        throw Error(ErrorKind::shape, "shape: " + std::string(what) + " is " + std::to_string(m.rows()) + "x" +
                                          std::to_string(m.cols()) + ", expected " + std::to_string(dim()) + "x" +
                                          std::to_string(dim()));
    }
}

void PhaseSpaceLayout::require_vector(const Vector& v, std::string_view what) const {
    if (v.size() != dim()) {
        throw Error(ErrorKind::shape, "shape: " + std::string(what) + " has length " + std::to_string(v.size()) +
                                          ", expected " + std::to_string(dim()));
    }
}

PhaseSpaceLayout PhaseSpaceLayout::of(const Matrix& m) {
    if (m.rows() != m.cols() || m.rows() % 2 != 0 || m.rows() == 0) {
        throw Error(ErrorKind::shape, "shape: expected a square matrix of even dimension, got " +
                                          std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
    return PhaseSpaceLayout(static_cast<int>(m.rows() / 2));
}

Matrix standard_form(const PhaseSpaceLayout& layout) {
    const int n = layout.n_modes();
    Matrix j = Matrix::Zero(2 * n, 2 * n);
    j.topRightCorner(n, n).setIdentity();
    j.bottomLeftCorner(n, n) = -Matrix::Identity(n, n);
    return j;
}

Matrix standard_form(int n_modes) { return standard_form(PhaseSpaceLayout(n_modes)); }

SymplecticCheck is_symplectic(const Matrix& m, double tol) {
    const auto layout = PhaseSpaceLayout::of(m);
    const Matrix j = standard_form(layout);
    const double residual = max_abs(m * j * m.transpose() - j);
    return {residual <= tol, residual};
}

SymplecticMatrix::SymplecticMatrix(Matrix m, double tol) : m_(std::move(m)), residual_(0.0) {
    const auto check = is_symplectic(m_, tol);
    residual_ = check.residual;
    if (!check.symplectic) {
        throw Error(ErrorKind::not_symplectic,
                    "matrix is not symplectic: residual " + std::to_string(check.residual));
    }
}

SymplecticMatrix SymplecticMatrix::identity(int n_modes) {
    const PhaseSpaceLayout layout(n_modes);
    return SymplecticMatrix(Matrix::Identity(layout.dim(), layout.dim()), 0.0, Unchecked{});
}

SymplecticMatrix SymplecticMatrix::computed(Matrix m, double tol) {
    const double scale = std::max(1.0, max_abs(m) * max_abs(m));
    return SymplecticMatrix(std::move(m), tol * scale);
}

SymplecticMatrix SymplecticMatrix::inverse() const {
    Matrix inv = symplectic_inverse(m_);
    const double r = is_symplectic(inv).residual;
    return SymplecticMatrix(std::move(inv), r, Unchecked{});
}

SymplecticMatrix SymplecticMatrix::operator*(const SymplecticMatrix& rhs) const {
    if (rhs.m_.rows() != m_.rows()) {
        throw Error(ErrorKind::shape, "shape: symplectic product of mismatched dimensions");
    }
    Matrix prod = m_ * rhs.m_;
    const double r = is_symplectic(prod).residual;
    return SymplecticMatrix(std::move(prod), r, Unchecked{});
}

Matrix symplectic_inverse(const Matrix& m) {
    const Matrix j = standard_form(PhaseSpaceLayout::of(m));
    return -j * m.transpose() * j;
}

double BlockResiduals::max() const { return std::max({max_abs(unit), max_abs(q_rows), max_abs(p_rows)}); }

BlockResiduals block_conditions(const Matrix& lambda) {
    const int n = PhaseSpaceLayout::of(lambda).n_modes();
    const Matrix pp = lambda.topLeftCorner(n, n);
    const Matrix pq = lambda.topRightCorner(n, n);
    const Matrix qp = lambda.bottomLeftCorner(n, n);
    const Matrix qq = lambda.bottomRightCorner(n, n);
    BlockResiduals r;
    r.unit = qq * pp.transpose() - qp * pq.transpose() - Matrix::Identity(n, n);
    r.q_rows = qq * qp.transpose() - qp * qq.transpose();
    r.p_rows = pq * pp.transpose() - pp * pq.transpose();
    return r;
}

Matrix congruence(const Matrix& lambda, const Matrix& m) {
    if (lambda.cols() != m.rows() || m.rows() != m.cols()) {
        throw Error(ErrorKind::shape, "shape: congruence of " + std::to_string(lambda.rows()) + "x" +
                                          std::to_string(lambda.cols()) + " with " + std::to_string(m.rows()) +
                                          "x" + std::to_string(m.cols()));
    }
    return symmetrized(lambda * m * lambda.transpose());
}

namespace {

// Pade coefficients b_0..b_m of the [m/m] approximant to exp, and the 1-norm
// bounds theta_m below which no scaling is needed (double precision).
constexpr std::array<double, 4> kPade3 = {120.0, 60.0, 12.0, 1.0};
constexpr std::array<double, 6> kPade5 = {30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0};
constexpr std::array<double, 8> kPade7 = {17297280.0, 8648640.0, 1995840.0, 277200.0,
                                          25200.0,    1512.0,    56.0,      1.0};
constexpr std::array<double, 10> kPade9 = {17643225600.0, 8821612800.0, 2075673600.0, 302702400.0, 30270240.0,
                                           2162160.0,     110880.0,     3960.0,       90.0,        1.0};
constexpr std::array<double, 14> kPade13 = {64764752532480000.0,
                                            32382376266240000.0,
                                            7771770303897600.0,
                                            1187353796428800.0,
                                            129060195264000.0,
                                            10559470521600.0,
                                            670442572800.0,
                                            33522128640.0,
                                            1323241920.0,
                                            40840800.0,
                                            960960.0,
                                            16380.0,
                                            182.0,
                                            1.0};

constexpr double kTheta3 = 1.495585217958292e-2;
constexpr double kTheta5 = 2.539398330063230e-1;
constexpr double kTheta7 = 9.504178996162932e-1;
constexpr double kTheta9 = 2.097847961257068e0;
constexpr double kTheta13 = 5.371920351148152e0;

template <std::size_t K>
Matrix pade_low(const Matrix& a, const std::array<double, K>& b) {
    const Eigen::Index n = a.rows();
    const Matrix ident = Matrix::Identity(n, n);
    const Matrix a2 = a * a;
    Matrix u_even = b[1] * ident;
    Matrix v = b[0] * ident;
    Matrix power = ident;
    for (std::size_t k = 2; k < K; k += 2) {
        power = power * a2;
        v += b[k] * power;
        u_even += b[k + 1] * power;
    }
    const Matrix u = a * u_even;
    return (v - u).partialPivLu().solve(v + u);
}

Matrix pade13(const Matrix& a) {
    const auto& b = kPade13;
    const Eigen::Index n = a.rows();
    const Matrix ident = Matrix::Identity(n, n);
    const Matrix a2 = a * a;
    const Matrix a4 = a2 * a2;
    const Matrix a6 = a4 * a2;
    const Matrix u_inner = b[13] * a6 + b[11] * a4 + b[9] * a2;
    const Matrix u = a * (a6 * u_inner + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * ident);
    const Matrix v_inner = b[12] * a6 + b[10] * a4 + b[8] * a2;
    const Matrix v = a6 * v_inner + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * ident;
    return (v - u).partialPivLu().solve(v + u);
}

}  // namespace

Matrix matrix_exponential(const Matrix& m, double t) {
    if (m.rows() != m.cols()) {
        throw Error(ErrorKind::shape, "shape: matrix exponential of a non-square matrix");
    }
    if (!m.allFinite() || !std::isfinite(t)) {
        throw Error(ErrorKind::non_finite, "matrix exponential: non-finite entries");
    }
    const Matrix a = m * t;
    if (a.size() == 0) return a;
    const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
    if (norm1 <= kTheta3) return pade_low(a, kPade3);
    if (norm1 <= kTheta5) return pade_low(a, kPade5);
    if (norm1 <= kTheta7) return pade_low(a, kPade7);
    if (norm1 <= kTheta9) return pade_low(a, kPade9);

    int squarings = 0;
    if (norm1 > kTheta13) squarings = static_cast<int>(std::ceil(std::log2(norm1 / kTheta13)));
    Matrix r = pade13(a / std::ldexp(1.0, squarings));
    for (int i = 0; i < squarings; ++i) r = r * r;
    return r;
}

}  // namespace lincan
