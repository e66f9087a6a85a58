#pragma once

// Text formatting shared by the CLI. Numbers in machine-readable records use
// 17 significant digits in scientific notation with '.' as decimal separator,
// independent of the global locale.

#include "lincan/dynamics.hpp"
#include "lincan/types.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace lincan {

// 17 significant digits, e.g. "2.5000000000000000e+00".
std::string format_record(double value);
// Up to `digits` significant digits, shortest form, e.g. "0.5", "1.5".
std::string format_table(double value, int digits = 10);
// One decimal of mantissa and a bare exponent, e.g. "0.0e0", "-1.0e-1".
std::string format_short(double value);

// Column names of the trajectory export:
//   t, mean_p1..mean_qN, sigma_<a>_<b> for the upper triangle, det_sigma,
//   symplectic_residual
std::vector<std::string> trajectory_columns(int n_modes);

// A "# ordering=p_then_q n_modes=N hbar=... <extra>" line, the column header,
// then one comma-separated row per sample.
void write_trajectory_records(std::ostream& os, const StateTrajectory& traj, const std::string& extra_header = {});

}  // namespace lincan
