#pragma once

// One-mode reduction. For H = A p^2 + 2 B p q + C q^2 the coordinate obeys
// q = sqrt(A) z with
//
//   z'' + Omega^2(t) z = 0,
//   Omega^2 = 4AC + 2B A'/A + A''/(2A) - 3 A'^2/(4 A^2) - 4 B^2 - 2 B'.
//
// A complex solution z = z_q + i z_p carries the two real solutions needed to
// rebuild the 2x2 phase-space flow.

#include "lincan/hamiltonian.hpp"
#include "lincan/types.hpp"

#include <complex>
#include <functional>
#include <vector>

namespace lincan {

enum class DerivativeMode { automatic, finite_difference };

class OneModeCoefficients {
  public:
    // Central-difference steps used when no symbolic derivative exists.
    static constexpr double kFirstDerivativeStep = 1e-5;
    static constexpr double kSecondDerivativeStep = 1e-4;

    // `automatic` differentiates expressions symbolically and falls back to
    // central differences for tabulated data.
    OneModeCoefficients(TimeFunction a, TimeFunction b, TimeFunction c,
                        DerivativeMode mode = DerivativeMode::automatic);
    // Requires a one-mode Hamiltonian.
    static OneModeCoefficients from_hamiltonian(const QuadraticHamiltonian& h,
                                                DerivativeMode mode = DerivativeMode::automatic);

    double a(double t) const { return a_(t); }
    double b(double t) const { return b_(t); }
    double c(double t) const { return c_(t); }
    double a_dot(double t) const;
    double a_ddot(double t) const;
    double b_dot(double t) const;

    bool analytic() const { return a_dot_.has_value() && a_ddot_.has_value() && b_dot_.has_value(); }

  private:
    TimeFunction a_;
    TimeFunction b_;
    TimeFunction c_;
    std::optional<TimeFunction> a_dot_;
    std::optional<TimeFunction> a_ddot_;
    std::optional<TimeFunction> b_dot_;
};

// Throws Error{singular_coefficient} when A(t) = 0.
double omega_squared(const OneModeCoefficients& c, double t);

struct ComplexTrajectory {
    std::vector<double> times;
    std::vector<std::complex<double>> z;
    std::vector<std::complex<double>> z_dot;
};

// RK4 for z'' = -Omega^2(t) z. Throws Error{blow_up} on overflow and
// Error{shape} for dt <= 0 or t1 < t0.
ComplexTrajectory solve_oscillator(const std::function<double(double)>& omega2, std::complex<double> z0,
                                   std::complex<double> z_dot0, double t0, double t1, double dt);

// max_t |W(t) - W(t0)| with W = z' conj(z) - z conj(z').
double wronskian_defect(const ComplexTrajectory& traj);

struct ReconstructedFlow {
    ComplexTrajectory oscillator;
    std::vector<Matrix> flow;  // 2x2 phase-space flow at oscillator.times
};

// Solves z'' + Omega^2 z = 0 with initial data that make Re z and Im z the
// q(t) / sqrt(A) of the unit columns (p0, q0) = (0, 1) and (1, 0), then maps
// back through q = sqrt(A) z, p = (q' - 2 B q) / (2 A).
ReconstructedFlow reconstruct_flow(const OneModeCoefficients& c, double t0, double t1, double dt);

}  // namespace lincan
