#include "lincan/one_mode.hpp"

#include <cmath>
#include <string>

namespace lincan {

namespace {

double central_first(const TimeFunction& f, double t, double h) { return (f(t + h) - f(t - h)) / (2.0 * h); }

double central_second(const TimeFunction& f, double t, double h) {
    return (f(t + h) - 2.0 * f(t) + f(t - h)) / (h * h);
}

}  // namespace

OneModeCoefficients::OneModeCoefficients(TimeFunction a, TimeFunction b, TimeFunction c, DerivativeMode mode)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
    if (mode == DerivativeMode::automatic) {
        a_dot_ = a_.derivative();
        if (a_dot_) a_ddot_ = a_dot_->derivative();
        b_dot_ = b_.derivative();
    }
}

OneModeCoefficients OneModeCoefficients::from_hamiltonian(const QuadraticHamiltonian& h, DerivativeMode mode) {
    if (h.n_modes() != 1) {
        throw Error(ErrorKind::shape, "shape: one-mode reduction needs N=1, got N=" + std::to_string(h.n_modes()));
    }
    return OneModeCoefficients(h.a().entry(0, 0), h.b().entry(0, 0), h.c().entry(0, 0), mode);
}

double OneModeCoefficients::a_dot(double t) const {
    return a_dot_ ? (*a_dot_)(t) : central_first(a_, t, kFirstDerivativeStep);
}

double OneModeCoefficients::a_ddot(double t) const {
    return a_ddot_ ? (*a_ddot_)(t) : central_second(a_, t, kSecondDerivativeStep);
}

double OneModeCoefficients::b_dot(double t) const {
    return b_dot_ ? (*b_dot_)(t) : central_first(b_, t, kFirstDerivativeStep);
}

double omega_squared(const OneModeCoefficients& c, double t) {
    const double a = c.a(t);
    if (a == 0.0 || !std::isfinite(a)) {
        throw Error(ErrorKind::singular_coefficient, "singular coefficient: A(t)=0 at t=" + std::to_string(t));
    }
    const double b = c.b(t);
    const double a1 = c.a_dot(t);
    return 4.0 * a * c.c(t) + 2.0 * b * a1 / a + c.a_ddot(t) / (2.0 * a) - 3.0 * a1 * a1 / (4.0 * a * a) -
           4.0 * b * b - 2.0 * c.b_dot(t);
}

ComplexTrajectory solve_oscillator(const std::function<double(double)>& omega2, std::complex<double> z0,
                                   std::complex<double> z_dot0, double t0, double t1, double dt) {
    if (!(dt > 0.0)) throw Error(ErrorKind::shape, "time step must be positive");
    if (!(t1 >= t0)) throw Error(ErrorKind::shape, "time window must satisfy t1 >= t0");
    using C = std::complex<double>;

    const double ratio = (t1 - t0) / dt;
    long steps = std::lround(ratio);
    if (std::abs(ratio - static_cast<double>(steps)) > 1e-9 * std::max(1.0, ratio)) {
        steps = static_cast<long>(std::ceil(ratio));
    }

    ComplexTrajectory traj;
    traj.times.reserve(static_cast<std::size_t>(steps + 1));
    traj.times.push_back(t0);
    traj.z.push_back(z0);
    traj.z_dot.push_back(z_dot0);

    C z = z0;
    C v = z_dot0;
    for (long i = 0; i < steps; ++i) {
        const double t = t0 + static_cast<double>(i) * dt;
        const double t_next = (i + 1 == steps) ? t1 : t0 + static_cast<double>(i + 1) * dt;
        const double h = t_next - t;
        const double w0 = omega2(t);
        const double wm = omega2(t + h / 2.0);
        const double w1 = omega2(t_next);

        const C kz1 = v;
        const C kv1 = -w0 * z;
        const C kz2 = v + (h / 2.0) * kv1;
        const C kv2 = -wm * (z + (h / 2.0) * kz1);
        const C kz3 = v + (h / 2.0) * kv2;
        const C kv3 = -wm * (z + (h / 2.0) * kz2);
        const C kz4 = v + h * kv3;
        const C kv4 = -w1 * (z + h * kz3);
        z += (h / 6.0) * (kz1 + 2.0 * kz2 + 2.0 * kz3 + kz4);
        v += (h / 6.0) * (kv1 + 2.0 * kv2 + 2.0 * kv3 + kv4);
        if (!std::isfinite(std::abs(z)) || !std::isfinite(std::abs(v))) {
            throw Error(ErrorKind::blow_up, "blow-up at t=" + std::to_string(t_next));
        }
        traj.times.push_back(t_next);
        traj.z.push_back(z);
        traj.z_dot.push_back(v);
    }
    return traj;
}

double wronskian_defect(const ComplexTrajectory& traj) {
    if (traj.z.empty()) throw Error(ErrorKind::shape, "empty trajectory");
    auto w = [&](std::size_t i) { return traj.z_dot[i] * std::conj(traj.z[i]) - traj.z[i] * std::conj(traj.z_dot[i]); };
    const auto w0 = w(0);
    double worst = 0.0;
    for (std::size_t i = 1; i < traj.z.size(); ++i) worst = std::max(worst, std::abs(w(i) - w0));
    return worst;
}

ReconstructedFlow reconstruct_flow(const OneModeCoefficients& c, double t0, double t1, double dt) {
    const double a0 = c.a(t0);
    if (!(a0 > 0.0)) {
        throw Error(ErrorKind::singular_coefficient, "singular coefficient: A(t0) must be positive");
    }
    const double root0 = std::sqrt(a0);
    // Column q0 = 1: q = 1, q' = 2 B q. Column p0 = 1: q = 0, q' = 2 A.
    const double zq0 = 1.0 / root0;
    const double zq_dot0 = (2.0 * c.b(t0) - c.a_dot(t0) / (2.0 * a0)) / root0;
    const double zp0 = 0.0;
    const double zp_dot0 = 2.0 * root0;

    ReconstructedFlow out;
    out.oscillator = solve_oscillator([&c](double t) { return omega_squared(c, t); }, {zq0, zp0},
                                      {zq_dot0, zp_dot0}, t0, t1, dt);
    out.flow.reserve(out.oscillator.times.size());
    for (std::size_t i = 0; i < out.oscillator.times.size(); ++i) {
        const double t = out.oscillator.times[i];
        const double a = c.a(t);
        const double b = c.b(t);
        const double root = std::sqrt(a);
        const double scale_dot = c.a_dot(t) / (2.0 * root);
        auto column = [&](double z, double z_dot) {
            const double q = root * z;
            const double q_dot = scale_dot * z + root * z_dot;
            return std::pair{(q_dot - 2.0 * b * q) / (2.0 * a), q};
        };
        const auto [p_from_q0, q_from_q0] = column(out.oscillator.z[i].real(), out.oscillator.z_dot[i].real());
        const auto [p_from_p0, q_from_p0] = column(out.oscillator.z[i].imag(), out.oscillator.z_dot[i].imag());
        Matrix flow(2, 2);
        flow << p_from_p0, p_from_q0, q_from_p0, q_from_q0;
        out.flow.push_back(std::move(flow));
    }
    return out;
}

}  // namespace lincan
