#pragma once

// Time-dependent quadratic Hamiltonians
//
//   H(t) = p A p + p B q + q B^T p + q C q + d.p + e.q
//
// written through the symmetric grand matrix H = [[A, B], [B^T, C]] so that the
// homogeneous part is Q^T H Q with Q = (p, q).

#include "lincan/expression.hpp"
#include "lincan/symplectic.hpp"
#include "lincan/types.hpp"

#include <boost/math/interpolators/makima.hpp>

#include <functional>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

namespace lincan {

// Cubic (modified Akima) interpolant through at least four samples.
class Tabulated {
  public:
    Tabulated(std::vector<double> times, std::vector<double> values);

    double operator()(double t) const;
    double derivative(double t) const;
    double t_min() const { return t_min_; }
    double t_max() const { return t_max_; }

  private:
    double t_min_;
    double t_max_;
    boost::math::interpolators::makima<std::vector<double>> spline_;
};

// A real function of time: constant, closed-form expression, or samples.
class TimeFunction {
  public:
    TimeFunction() : impl_(0.0) {}
    TimeFunction(double value) : impl_(value) {}
    TimeFunction(Expression expr) : impl_(std::move(expr)) {}
    TimeFunction(Tabulated table) : impl_(std::move(table)) {}

    double operator()(double t) const;

    bool is_constant() const;
    bool is_tabulated() const { return std::holds_alternative<Tabulated>(impl_); }
    // Symbolic derivative; std::nullopt for tabulated data.
    std::optional<TimeFunction> derivative() const;
    // Samples of a tabulated function restrict the admissible time range.
    std::optional<std::pair<double, double>> range() const;

  private:
    std::variant<double, Expression, Tabulated> impl_;
};

class MatrixFunction {
  public:
    MatrixFunction() = default;
    MatrixFunction(int rows, int cols, std::vector<TimeFunction> entries);
    static MatrixFunction constant(const Matrix& m);

    Matrix operator()(double t) const;
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool is_constant() const;
    std::optional<MatrixFunction> derivative() const;
    const TimeFunction& entry(int r, int c) const { return entries_[static_cast<std::size_t>(r * cols_ + c)]; }
    std::optional<std::pair<double, double>> range() const;

  private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<TimeFunction> entries_;
};

class QuadraticHamiltonian {
  public:
    // A, C are N x N and symmetrised on evaluation; B is N x N. The optional
    // drive holds the coefficients of d.p (first N) and e.q (last N).
    QuadraticHamiltonian(MatrixFunction a, MatrixFunction b, MatrixFunction c,
                         std::optional<MatrixFunction> linear = std::nullopt);

    static QuadraticHamiltonian stationary(const Matrix& a, const Matrix& b, const Matrix& c);

    int n_modes() const noexcept { return n_; }
    const MatrixFunction& a() const { return a_; }
    const MatrixFunction& b() const { return b_; }
    const MatrixFunction& c() const { return c_; }
    const std::optional<MatrixFunction>& linear() const { return linear_; }

    bool is_stationary() const;
    // Intersection of the ranges of all tabulated coefficients.
    std::optional<std::pair<double, double>> time_range() const;
    // Throws Error{time_out_of_range} outside time_range().
    void require_time(double t) const;

    // (d(t), e(t)); zero when there is no linear part.
    Vector linear_terms(double t) const;

  private:
    int n_;
    MatrixFunction a_;
    MatrixFunction b_;
    MatrixFunction c_;
    std::optional<MatrixFunction> linear_;
};

class GrandMatrix {
  public:
    // Stores (m + m^T)/2.
    GrandMatrix(const Matrix& m, double time = 0.0);

    const Matrix& matrix() const noexcept { return m_; }
    double time() const noexcept { return time_; }
    int n_modes() const noexcept { return static_cast<int>(m_.rows() / 2); }

  private:
    Matrix m_;
    double time_;
};

class OscillatorTarget {
  public:
    OscillatorTarget(std::vector<double> masses, std::vector<double> frequencies, double hbar = 1.0);
    static OscillatorTarget uniform(int n_modes, double mass = 1.0, double frequency = 1.0, double hbar = 1.0);

    int n_modes() const noexcept { return static_cast<int>(masses_.size()); }
    const std::vector<double>& masses() const { return masses_; }
    const std::vector<double>& frequencies() const { return frequencies_; }
    double hbar() const noexcept { return hbar_; }

  private:
    std::vector<double> masses_;
    std::vector<double> frequencies_;
    double hbar_;
};

GrandMatrix grand_matrix(const QuadraticHamiltonian& h, double t);

// A = diag(1/(2 m_k)), B = 0, C = diag(m_k w_k^2 / 2).
GrandMatrix ho_grand_matrix(const OscillatorTarget& target);

// F1(t) = -2 J H(t) = 2 [[-B^T, -C], [A, B]].
Matrix generator_forward(const QuadraticHamiltonian& h, double t);
Matrix generator_forward(const GrandMatrix& h);

// F2 = 2 J H'.
Matrix generator_target(const GrandMatrix& target_grand);

// Linear terms only shift the mean: d<Q>/dt = F1(t) <Q> + g(t) with
// g(t) = -J (d(t), e(t)). The covariance equations are the same as for the
// homogeneous part.
struct DisplacedHamiltonian {
    QuadraticHamiltonian homogeneous;
    std::function<Vector(double)> drive;
};

DisplacedHamiltonian displace_out_linear_terms(const QuadraticHamiltonian& h);

}  // namespace lincan
