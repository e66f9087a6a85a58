#pragma once

// Phase-space linear algebra in the momenta-first ordering
// Q = (p_1..p_N, q_1..q_N).

#include "lincan/types.hpp"

#include <string_view>

namespace lincan {

class PhaseSpaceLayout {
  public:
    explicit PhaseSpaceLayout(int n_modes);

    int n_modes() const noexcept { return n_; }
    int dim() const noexcept { return 2 * n_; }

    // Throws Error{shape} unless `m` is dim() x dim().
    void require_square(const Matrix& m, std::string_view what) const;
    void require_vector(const Vector& v, std::string_view what) const;

    static PhaseSpaceLayout of(const Matrix& m);

  private:
    int n_;
};

// Index of the ordering convention written into every file format.
inline constexpr std::string_view kOrderingTag = "p_then_q";

// J = [[0, I], [-I, 0]].
Matrix standard_form(const PhaseSpaceLayout& layout);
Matrix standard_form(int n_modes);

struct SymplecticCheck {
    bool symplectic = false;
    double residual = 0.0;
};

// max|M J M^T - J| against `tol`. Throws Error{shape} for odd or non-square M.
SymplecticCheck is_symplectic(const Matrix& m, double tol = Tolerances{}.symplectic);

// A matrix known to satisfy Lambda J Lambda^T = J within a tolerance. The
// residual measured at construction is kept alongside.
class SymplecticMatrix {
  public:
    // Validates; throws Error{not_symplectic} when the residual exceeds tol.
    explicit SymplecticMatrix(Matrix m, double tol = Tolerances{}.symplectic);

    static SymplecticMatrix identity(int n_modes);
    // For computed results: the tolerance is scaled by max(1, max|m|^2), the
    // size of the rounding error in m J m^T.
    static SymplecticMatrix computed(Matrix m, double tol = Tolerances{}.symplectic);

    const Matrix& matrix() const noexcept { return m_; }
    double residual() const noexcept { return residual_; }
    int n_modes() const noexcept { return static_cast<int>(m_.rows() / 2); }

    // -J Lambda^T J
    SymplecticMatrix inverse() const;
    SymplecticMatrix operator*(const SymplecticMatrix& rhs) const;

  private:
    struct Unchecked {};
    SymplecticMatrix(Matrix m, double residual, Unchecked) : m_(std::move(m)), residual_(residual) {}

    Matrix m_;
    double residual_;
};

// Analytic inverse of a symplectic matrix, -J M^T J. Only meaningful when M is
// (close to) symplectic.
Matrix symplectic_inverse(const Matrix& m);

// The three N x N conditions equivalent to Lambda J Lambda^T = J, written for
// the blocks [[pp, pq], [qp, qq]]:
//   qq pp^T - qp pq^T - I,   qq qp^T - qp qq^T,   pq pp^T - pp pq^T.
struct BlockResiduals {
    Matrix unit;
    Matrix q_rows;
    Matrix p_rows;

    double max() const;
};

BlockResiduals block_conditions(const Matrix& lambda);

// Lambda M Lambda^T, symmetrised.
Matrix congruence(const Matrix& lambda, const Matrix& m);

// exp(M t) by scaling and squaring with a Pade core of degree up to 13.
// Throws Error{non_finite} for NaN or infinite input.
Matrix matrix_exponential(const Matrix& m, double t = 1.0);

// Symmetric part (M + M^T)/2.
inline Matrix symmetrized(const Matrix& m) { return 0.5 * (m + m.transpose()); }

}  // namespace lincan
