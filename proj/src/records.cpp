#include "lincan/records.hpp"

#include "lincan/gaussian_state.hpp"
#include "lincan/symplectic.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace lincan {

namespace {

std::string to_chars_string(double value, std::chars_format fmt, int precision) {
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value, fmt, precision);
    if (ec != std::errc()) return "nan";
    return std::string(buf.data(), ptr);
}

std::string mode_label(int index, int n_modes) {
    return (index < n_modes ? "p" : "q") + std::to_string(index % n_modes + 1);
}

}  // namespace

std::string format_record(double value) {
    if (value == 0.0) value = 0.0;  // drop the sign of -0
    return to_chars_string(value, std::chars_format::scientific, 16);
}

std::string format_table(double value, int digits) {
    if (value == 0.0) value = 0.0;
    return to_chars_string(value, std::chars_format::general, digits);
}

std::string format_short(double value) {
    if (value == 0.0 || !std::isfinite(value)) return value == 0.0 ? "0.0e0" : to_chars_string(value, std::chars_format::general, 2);
    std::string s = to_chars_string(value, std::chars_format::scientific, 1);
    const auto e = s.find('e');
    std::string mantissa = s.substr(0, e);
    int exponent = std::stoi(s.substr(e + 1));
    return mantissa + "e" + std::to_string(exponent);
}

std::vector<std::string> trajectory_columns(int n_modes) {
    std::vector<std::string> cols{"t"};
    const int dim = 2 * n_modes;
    for (int i = 0; i < dim; ++i) cols.push_back("mean_" + mode_label(i, n_modes));
    for (int i = 0; i < dim; ++i) {
        for (int j = i; j < dim; ++j) cols.push_back("sigma_" + mode_label(i, n_modes) + "_" + mode_label(j, n_modes));
    }
    cols.emplace_back("det_sigma");
    cols.emplace_back("symplectic_residual");
    return cols;
}

void write_trajectory_records(std::ostream& os, const StateTrajectory& traj, const std::string& extra_header) {
    if (traj.states.empty()) return;
    const int n = traj.states.front().n_modes();
    os << "# ordering=" << kOrderingTag << " n_modes=" << n
       << " hbar=" << format_table(traj.states.front().covariance().hbar(), 17);
    if (!extra_header.empty()) os << ' ' << extra_header;
    os << '\n';
    const auto cols = trajectory_columns(n);
    for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
    os << '\n';
    for (std::size_t s = 0; s < traj.states.size(); ++s) {
        const auto& state = traj.states[s];
        const Matrix& sigma = state.covariance().matrix();
        os << format_record(traj.times[s]);
        for (Eigen::Index i = 0; i < state.mean().size(); ++i) os << ',' << format_record(state.mean()(i));
        for (Eigen::Index i = 0; i < sigma.rows(); ++i) {
            for (Eigen::Index j = i; j < sigma.cols(); ++j) os << ',' << format_record(sigma(i, j));
        }
        os << ',' << format_record(symplectic_invariants(state.covariance(), 1).determinant);
        os << ',' << format_record(traj.drift[s]) << '\n';
    }
}

}  // namespace lincan
