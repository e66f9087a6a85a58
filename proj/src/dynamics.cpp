#include "lincan/dynamics.hpp"

#include <cmath>
#include <string>

namespace lincan {

namespace {

void require_window(double t0, double t1, double dt) {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw Error(ErrorKind::shape, "time step must be positive");
    if (!(t1 >= t0) || !std::isfinite(t0) || !std::isfinite(t1)) {
        throw Error(ErrorKind::shape, "time window must satisfy t1 >= t0");
    }
}

// Number of steps so that t0 + steps * dt reaches t1; the final step may be shorter.
long step_count(double t0, double t1, double dt) {
    const double ratio = (t1 - t0) / dt;
    const auto rounded = std::llround(ratio);
    if (std::abs(ratio - static_cast<double>(rounded)) <= 1e-9 * std::max(1.0, ratio)) return static_cast<long>(rounded);
    return static_cast<long>(std::ceil(ratio));
}

double step_time(double t0, double t1, double dt, long i, long steps) {
    return i == steps ? t1 : t0 + static_cast<double>(i) * dt;
}

// Generators at the three RK4 abscissae t, t + h/2, t + h.
struct StageGenerators {
    Matrix start;
    Matrix mid;
    Matrix end;
};

StageGenerators stage_generators(const QuadraticHamiltonian& h, double t, double step) {
    return {generator_forward(h, t), generator_forward(h, t + step / 2.0), generator_forward(h, t + step)};
}

// One RK4 step of dX/dt = G X (left) or X G (right).
Matrix rk4_step(const Matrix& x, const StageGenerators& g, double step, bool left) {
    auto rhs = [left](const Matrix& gen, const Matrix& y) -> Matrix { return left ? Matrix(gen * y) : Matrix(y * gen); };
    const Matrix k1 = rhs(g.start, x);
    const Matrix k2 = rhs(g.mid, x + (step / 2.0) * k1);
    const Matrix k3 = rhs(g.mid, x + (step / 2.0) * k2);
    const Matrix k4 = rhs(g.end, x + step * k3);
    return x + (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

Vector rk4_mean_step(const Vector& m, const StageGenerators& g, const std::function<Vector(double)>& drive, double t,
                     double step) {
    const Vector d0 = drive(t);
    const Vector dm = drive(t + step / 2.0);
    const Vector d1 = drive(t + step);
    const Vector k1 = g.start * m + d0;
    const Vector k2 = g.mid * (m + (step / 2.0) * k1) + dm;
    const Vector k3 = g.mid * (m + (step / 2.0) * k2) + dm;
    const Vector k4 = g.end * (m + step * k3) + d1;
    return m + (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

void require_finite(const Matrix& m, double t) {
    if (!m.allFinite()) throw Error(ErrorKind::blow_up, "blow-up at t=" + std::to_string(t));
}

}  // namespace

Matrix project_symplectic(const Matrix& lambda) {
    const Matrix j = standard_form(PhaseSpaceLayout::of(lambda));
    const Eigen::Index dim = lambda.rows();
    Matrix out = lambda;
    double residual = max_abs(out * j * out.transpose() - j);
    for (int pass = 0; pass < 4 && residual > 0.0; ++pass) {
        const Matrix e = out * j * out.transpose() - j;
        const Matrix next = (Matrix::Identity(dim, dim) + 0.5 * e * j) * out;
        const double next_residual = max_abs(next * j * next.transpose() - j);
        if (!(next_residual < residual)) break;
        out = next;
        residual = next_residual;
    }
    return out;
}

PropagatorTrajectory evolve_symplectic(const QuadraticHamiltonian& h, double t0, double t1, double dt,
                                       const SymplecticMatrix& lambda0, PropagatorSide side,
                                       const IntegrationOptions& options) {
    require_window(t0, t1, dt);
    PhaseSpaceLayout(h.n_modes()).require_square(lambda0.matrix(), "initial symplectic matrix");
    const Matrix j = standard_form(h.n_modes());
    const long steps = step_count(t0, t1, dt);
    const int stride = std::max(1, options.sample_stride);

    PropagatorTrajectory traj;
    Matrix lambda = lambda0.matrix();
    traj.times.push_back(t0);
    traj.lambdas.push_back(lambda);
    traj.drift.push_back(lambda0.residual());
    traj.raw_drift.push_back(lambda0.residual());

    for (long i = 0; i < steps; ++i) {
        const double t = step_time(t0, t1, dt, i, steps);
        const double t_next = step_time(t0, t1, dt, i + 1, steps);
        const double step = t_next - t;
        StageGenerators g = stage_generators(h, t, step);
        if (side == PropagatorSide::target) {
            g.start = -g.start;
            g.mid = -g.mid;
            g.end = -g.end;
        }
        lambda = rk4_step(lambda, g, step, side != PropagatorSide::forward);
        require_finite(lambda, t_next);

        const double raw = max_abs(lambda * j * lambda.transpose() - j);
        double post = raw;
        if (raw > options.reprojection_threshold) {
            lambda = project_symplectic(lambda);
            post = max_abs(lambda * j * lambda.transpose() - j);
        }
        if ((i + 1) % stride == 0 || i + 1 == steps) {
            traj.times.push_back(t_next);
            traj.lambdas.push_back(lambda);
            traj.drift.push_back(post);
            traj.raw_drift.push_back(raw);
        }
    }
    return traj;
}

SymplecticMatrix stationary_propagator(const GrandMatrix& h, double t) {
    return SymplecticMatrix::computed(matrix_exponential(generator_forward(h), t));
}

SymplecticMatrix ho_rotation(const OscillatorTarget& target, double t) {
    const int n = target.n_modes();
    Matrix r = Matrix::Zero(2 * n, 2 * n);
    for (int k = 0; k < n; ++k) {
        const double m = target.masses()[static_cast<std::size_t>(k)];
        const double w = target.frequencies()[static_cast<std::size_t>(k)];
        const double c = std::cos(w * t);
        const double s = std::sin(w * t);
        r(k, k) = c;
        r(k, n + k) = -m * w * s;
        r(n + k, k) = s / (m * w);
        r(n + k, n + k) = c;
    }
    return SymplecticMatrix::computed(std::move(r));
}

SymplecticMatrix diagonalizing_transform(const GrandMatrix& h, const OscillatorTarget& target, double t) {
    const GrandMatrix ho = ho_grand_matrix(target);
    if (ho.n_modes() != h.n_modes()) {
        throw Error(ErrorKind::shape, "shape: oscillator target has " + std::to_string(ho.n_modes()) +
                                          " modes, Hamiltonian has " + std::to_string(h.n_modes()));
    }
    const Matrix f2 = generator_target(ho);
    const Matrix f1 = generator_forward(h);
    // Commuting generators combine into a single exponential, which is exact
    // when they cancel (H = H_ho).
    if (max_abs(f2 * f1 - f1 * f2) == 0.0) return SymplecticMatrix::computed(matrix_exponential(f2 + f1, t));
    return SymplecticMatrix::computed(matrix_exponential(f2, t) * matrix_exponential(f1, t));
}

StateTrajectory evolve_state(const GaussianState& state, const QuadraticHamiltonian& h, double t0, double t1,
                             double dt, const IntegrationOptions& options) {
    require_window(t0, t1, dt);
    const PhaseSpaceLayout layout(h.n_modes());
    layout.require_square(state.covariance().matrix(), "covariance matrix");
    const auto displaced = displace_out_linear_terms(h);
    const Matrix j = standard_form(layout);
    const long steps = step_count(t0, t1, dt);
    const int stride = std::max(1, options.sample_stride);
    const Matrix& sigma0 = state.covariance().matrix();
    const double hbar = state.covariance().hbar();

    StateTrajectory traj;
    traj.times.push_back(t0);
    traj.states.push_back(state);
    traj.drift.push_back(0.0);

    Matrix flow = Matrix::Identity(layout.dim(), layout.dim());
    Vector mean = state.mean();
    for (long i = 0; i < steps; ++i) {
        const double t = step_time(t0, t1, dt, i, steps);
        const double t_next = step_time(t0, t1, dt, i + 1, steps);
        const double step = t_next - t;
        const StageGenerators g = stage_generators(displaced.homogeneous, t, step);
        flow = rk4_step(flow, g, step, true);
        mean = rk4_mean_step(mean, g, displaced.drive, t, step);
        require_finite(flow, t_next);
        if (!mean.allFinite()) throw Error(ErrorKind::blow_up, "blow-up at t=" + std::to_string(t_next));

        double residual = max_abs(flow * j * flow.transpose() - j);
        if (residual > options.reprojection_threshold) {
            flow = project_symplectic(flow);
            residual = max_abs(flow * j * flow.transpose() - j);
        }
        if ((i + 1) % stride == 0 || i + 1 == steps) {
            traj.times.push_back(t_next);
            try {
                traj.states.emplace_back(CovarianceMatrix(congruence(flow, sigma0), hbar), mean);
            } catch (const Error& e) {
                // A flow too ill-conditioned to keep sigma positive definite
                // has lost all precision.
                if (e.kind() != ErrorKind::not_positive_definite) throw;
                throw Error(ErrorKind::blow_up, "blow-up at t=" + std::to_string(t_next) +
                                                    ": covariance lost positive definiteness");
            }
            traj.drift.push_back(residual);
        }
    }
    return traj;
}

}  // namespace lincan
