#pragma once

// Time propagation of symplectic matrices and Gaussian states under quadratic
// Hamiltonians, with closed forms for the stationary case.

#include "lincan/gaussian_state.hpp"
#include "lincan/hamiltonian.hpp"
#include "lincan/symplectic.hpp"
#include "lincan/types.hpp"

#include <vector>

namespace lincan {

// Which matrix equation evolve_symplectic integrates, with F1 = -2 J H(t):
//   forward: dL/dt = L F1(t)
//   target:  dL/dt = F2(t) L,  F2 = 2 J H(t) with h read as the target Hamiltonian
//   flow:    dL/dt = F1(t) L   (phase-space flow Q(t) = L(t) Q(t0))
// For stationary H, forward and flow coincide and equal exp(F1 (t - t0)) L0.
enum class PropagatorSide { forward, target, flow };

struct IntegrationOptions {
    // Re-project onto the symplectic group when the residual exceeds this.
    double reprojection_threshold = Tolerances{}.reprojection;
    // Keep every k-th step (the final time is always kept).
    int sample_stride = 1;
};

struct PropagatorTrajectory {
    std::vector<double> times;
    std::vector<Matrix> lambdas;
    std::vector<double> drift;      // symplecticity residual after re-projection
    std::vector<double> raw_drift;  // residual before re-projection
};

// Fixed-step RK4. Throws Error{blow_up} if the state stops being finite and
// Error{shape} for dt <= 0 or t1 < t0.
PropagatorTrajectory evolve_symplectic(const QuadraticHamiltonian& h, double t0, double t1, double dt,
                                       const SymplecticMatrix& lambda0, PropagatorSide side,
                                       const IntegrationOptions& options = {});

// exp(-2 J H t).
SymplecticMatrix stationary_propagator(const GrandMatrix& h, double t);

// Per-mode rotation
//   q' = q cos(w t) + p sin(w t) / (m w),   p' = -m w q sin(w t) + p cos(w t).
SymplecticMatrix ho_rotation(const OscillatorTarget& target, double t);

// exp(2 J H_ho t) exp(-2 J H t), i.e. both initial transformations set to I.
// Other initial choices give equally valid diagonalising transformations.
SymplecticMatrix diagonalizing_transform(const GrandMatrix& h, const OscillatorTarget& target, double t);

struct StateTrajectory {
    std::vector<double> times;
    std::vector<GaussianState> states;
    std::vector<double> drift;  // symplecticity residual of the flow
};

// sigma(t) = L(t) sigma0 L(t)^T with L the phase-space flow, and
// d<Q>/dt = F1(t) <Q> + g(t) with the drive of displace_out_linear_terms.
// Throws Error{blow_up} when the flow overflows or sigma(t) loses positive
// definiteness through cancellation.
StateTrajectory evolve_state(const GaussianState& state, const QuadraticHamiltonian& h, double t0, double t1,
                             double dt, const IntegrationOptions& options = {});

// Newton-type correction L <- (I + E J / 2) L, E = L J L^T - J, repeated
// until the residual stops improving (at most 4 passes).
Matrix project_symplectic(const Matrix& lambda);

}  // namespace lincan
