#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace lincan {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

enum class ErrorKind {
    shape,
    non_finite,
    time_out_of_range,
    blow_up,
    singular_coefficient,
    not_positive_definite,
    not_symplectic,
    parse,
};

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

// Thresholds shared by the checks below. Absolute unless noted.
struct Tolerances {
    double symplectic = 1e-9;        // max-norm of M J M^T - J
    double physical = 1e-9;          // eigenvalue floor of sigma - (i hbar/2) J
    double minimal = 1e-7;           // |nu_k - hbar/2| <= minimal * hbar
    double sigma_symplectic = 1e-7;  // normalised sigma J sigma^T residual
    double reprojection = 1e-10;     // drift that triggers symplectic re-projection
    double invariant_change = 1e-9;  // relative change flagged by `invariants`
};

inline double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

inline bool all_finite(const Matrix& m) { return m.allFinite(); }

}  // namespace lincan
