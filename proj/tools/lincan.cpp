// lincan: command-line front end for the Gaussian-state / symplectic toolkit.
//
// Exit codes: 0 success, 1 usage or parse error, 2 validation failure
// (unphysical state, non-symplectic matrix, singular coefficient),
// 3 runtime failure (integration blow-up).

#include "lincan/dynamics.hpp"
#include "lincan/gaussian_state.hpp"
#include "lincan/hamiltonian.hpp"
#include "lincan/one_mode.hpp"
#include "lincan/records.hpp"
#include "lincan/spec_io.hpp"
#include "lincan/symplectic.hpp"
#include "lincan/williamson.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace {

using namespace lincan;

enum ExitCode : int { kOk = 0, kUsage = 1, kValidation = 2, kRuntime = 3 };

enum class Format { table, records };

struct RunConfig {
    std::string command;
    std::string state_path;
    std::string hamiltonian_path;
    std::string target_path;
    std::string matrix_path;
    std::string out_path;
    double t0 = 0.0;
    double t1 = 1.0;
    double dt = 1e-3;
    double time = 0.0;
    int stride = 1;
    std::optional<double> hbar;
    Tolerances tol;
    Format format = Format::table;
};

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::not_symplectic:
        case ErrorKind::not_positive_definite:
        case ErrorKind::singular_coefficient: return kValidation;
        case ErrorKind::blow_up:
        case ErrorKind::non_finite: return kRuntime;
        case ErrorKind::shape:
        case ErrorKind::time_out_of_range:
        case ErrorKind::parse: return kUsage;
    }
    return kUsage;
}

// Key/value report rendered either as "key: value" lines or "key,value" records.
class Report {
  public:
    explicit Report(Format format) : format_(format) {}

    void number(const std::string& key, double v) {
        rows_.emplace_back(key, format_ == Format::table ? format_table(v) : format_record(v));
    }
    void text(const std::string& key, const std::string& v) { rows_.emplace_back(key, v); }
    void list(const std::string& key, const std::vector<double>& values) {
        std::string out;
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (i) out += format_ == Format::table ? ", " : ";";
            out += format_ == Format::table ? format_table(values[i]) : format_record(values[i]);
        }
        rows_.emplace_back(key, out);
    }
    void matrix(const std::string& key, const Matrix& m) {
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            std::vector<double> row(m.row(r).data(), m.row(r).data() + 0);
            row.clear();
            for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
            list(key + "[" + std::to_string(r) + "]", row);
        }
    }
    void summary(std::string line) { summary_ = std::move(line); }

    void write(std::ostream& os, const std::string& command, const Tolerances& tol) const {
        os << "# lincan " << command << '\n';
        os << "# tolerances: symplectic=" << format_table(tol.symplectic)
           << " physical=" << format_table(tol.physical) << " minimal=" << format_table(tol.minimal)
           << " sigma_symplectic=" << format_table(tol.sigma_symplectic)
           << " invariant_change=" << format_table(tol.invariant_change) << '\n';
        for (const auto& [k, v] : rows_) os << k << (format_ == Format::table ? ": " : ",") << v << '\n';
        if (!summary_.empty()) {
            if (format_ == Format::table) {
                os << summary_ << '\n';
            } else {
                os << "summary," << summary_ << '\n';
            }
        }
    }

  private:
    Format format_;
    std::vector<std::pair<std::string, std::string>> rows_;
    std::string summary_;
};

class Output {
  public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw Error(ErrorKind::parse, "cannot write " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }
    bool to_file() const { return file_.is_open(); }

  private:
    std::ofstream file_;
};

std::vector<double> to_vector(const Vector& v) { return {v.data(), v.data() + v.size()}; }

void require_window(const RunConfig& cfg) {
    if (!(cfg.dt > 0.0)) throw Error(ErrorKind::shape, "--dt must be positive");
    if (!(cfg.t1 > cfg.t0)) throw Error(ErrorKind::shape, "--t1 must exceed --t0");
}

int cmd_check(const RunConfig& cfg) {
    const auto spec = load_state(read_json_file(cfg.state_path), cfg.hbar);
    const auto& sigma = spec.state.covariance();
    const auto phys = check_physical(sigma, cfg.tol.physical);
    const double defect = robertson_defect(sigma);
    const auto sym = is_sigma_symplectic(sigma, cfg.tol.sigma_symplectic);

    Report r(cfg.format);
    r.text("kind", spec.kind);
    r.number("n_modes", sigma.n_modes());
    r.number("hbar", sigma.hbar());
    r.number("min_eigenvalue", phys.min_eigenvalue);
    r.number("robertson_defect", defect);
    r.number("sigma_symplectic_residual_full", sym.full);
    r.number("sigma_symplectic_residual_unit_block", sym.unit_block);
    r.number("sigma_symplectic_residual_q_block", sym.q_block);
    r.number("sigma_symplectic_residual_p_block", sym.p_block);
    const std::string sym_text = std::string("sigma symplectic: ") + (sym.symplectic ? "yes" : "no");
    if (phys.physical) {
        r.summary("physical; Robertson defect " + format_short(defect) + "; " + sym_text);
    } else {
        r.summary("unphysical; min eigenvalue " + format_short(phys.min_eigenvalue) + "; Robertson defect " +
                  format_short(defect) + "; " + sym_text);
    }
    Output out(cfg.out_path);
    r.write(out.stream(), "check", cfg.tol);
    return phys.physical ? kOk : kValidation;
}

int cmd_williamson(const RunConfig& cfg) {
    const auto spec = load_state(read_json_file(cfg.state_path), cfg.hbar);
    const auto& sigma = spec.state.covariance();
    const auto phys = check_physical(sigma, cfg.tol.physical);
    if (!phys.physical) {
        std::cerr << "error: unphysical covariance matrix (min eigenvalue " << format_short(phys.min_eigenvalue)
                  << ")\n";
        return kValidation;
    }
    const auto result = williamson_decompose(sigma);
    const auto products = heisenberg_products(result, sigma.hbar(), cfg.tol.physical);
    const bool minimal = is_robertson_minimal(sigma, cfg.tol.minimal);

    Report r(cfg.format);
    r.number("n_modes", sigma.n_modes());
    r.number("hbar", sigma.hbar());
    r.list("spectrum", to_vector(symplectic_spectrum(sigma)));
    r.list("diagonal", to_vector(result.diagonal));
    r.list("heisenberg_products", products.products);
    std::string verdicts;
    for (std::size_t k = 0; k < products.satisfied.size(); ++k) {
        verdicts += (k ? (cfg.format == Format::table ? ", " : ";") : "") +
                    std::string(products.satisfied[k] ? "ok" : "violated");
    }
    r.text("heisenberg_verdicts", verdicts);
    r.text("minimal", minimal ? "yes" : "no");
    r.number("reconstruction_residual", result.reconstruction_residual(sigma.matrix()));
    r.number("lambda_d_symplectic_residual", result.lambda_d.residual());
    r.matrix("lambda_d", result.lambda_d.matrix());
    Output out(cfg.out_path);
    r.write(out.stream(), "williamson", cfg.tol);
    return kOk;
}

int cmd_evolve(const RunConfig& cfg) {
    require_window(cfg);
    const auto spec = load_state(read_json_file(cfg.state_path), cfg.hbar);
    const auto h = load_hamiltonian(read_json_file(cfg.hamiltonian_path));
    if (h.n_modes() != spec.state.n_modes()) {
        throw Error(ErrorKind::shape, "Hamiltonian and state have different numbers of modes");
    }
    IntegrationOptions opts;
    opts.reprojection_threshold = cfg.tol.reprojection;
    opts.sample_stride = cfg.stride;
    const auto traj = evolve_state(spec.state, h, cfg.t0, cfg.t1, cfg.dt, opts);

    Output out(cfg.out_path);
    write_trajectory_records(out.stream(), traj, "dt=" + format_table(cfg.dt, 17));

    const auto first = symplectic_invariants(traj.states.front().covariance(), 1);
    const auto last = symplectic_invariants(traj.states.back().covariance(), 1);
    double max_drift = 0.0;
    for (double d : traj.drift) max_drift = std::max(max_drift, d);
    Report r(Format::table);
    r.number("t_final", traj.times.back());
    r.number("det_sigma_initial", first.determinant);
    r.number("det_sigma_final", last.determinant);
    r.number("det_sigma_relative_change", std::abs(last.determinant - first.determinant) / std::abs(first.determinant));
    r.number("trace_sigmaJ2_initial", first.traces[0]);
    r.number("trace_sigmaJ2_final", last.traces[0]);
    r.number("trace_sigmaJ2_relative_change", std::abs(last.traces[0] - first.traces[0]) / std::abs(first.traces[0]));
    r.number("max_symplectic_residual", max_drift);
    r.write(out.to_file() ? std::cout : std::cerr, "evolve", cfg.tol);
    return kOk;
}

int cmd_diagonalize(const RunConfig& cfg) {
    const auto h = load_hamiltonian(read_json_file(cfg.hamiltonian_path));
    if (!h.is_stationary() || h.linear()) {
        std::cerr << "error: stationary only; time-dependent or inhomogeneous Hamiltonians go through `evolve`\n";
        return kUsage;
    }
    const OscillatorTarget target = cfg.target_path.empty()
                                        ? OscillatorTarget::uniform(h.n_modes(), 1.0, 1.0, cfg.hbar.value_or(1.0))
                                        : load_target(read_json_file(cfg.target_path), cfg.hbar);
    const auto lambda = diagonalizing_transform(grand_matrix(h, 0.0), target, cfg.time);

    Report r(cfg.format);
    r.number("n_modes", h.n_modes());
    r.number("time", cfg.time);
    r.number("symplectic_residual", lambda.residual());
    r.matrix("lambda", lambda.matrix());
    Output out(cfg.out_path);
    r.write(out.stream(), "diagonalize", cfg.tol);
    return kOk;
}

int cmd_omega(const RunConfig& cfg) {
    require_window(cfg);
    const auto h = load_hamiltonian(read_json_file(cfg.hamiltonian_path));
    const auto coeffs = OneModeCoefficients::from_hamiltonian(h);
    const auto steps = static_cast<long>(std::llround((cfg.t1 - cfg.t0) / cfg.dt));
    std::vector<double> times;
    std::vector<double> values;
    for (long i = 0; i <= steps; ++i) {
        const double t = i == steps ? cfg.t1 : cfg.t0 + static_cast<double>(i) * cfg.dt;
        times.push_back(t);
        values.push_back(omega_squared(coeffs, t));
    }
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    const double spread = *hi - *lo;
    const bool constant = spread <= 1e-9 * std::max(1.0, std::abs(*hi));

    Output out(cfg.out_path);
    if (cfg.format == Format::records) {
        out.stream() << "# ordering=" << kOrderingTag << " n_modes=1\n";
        out.stream() << "t,omega_squared\n";
        for (std::size_t i = 0; i < times.size(); ++i) {
            out.stream() << format_record(times[i]) << ',' << format_record(values[i]) << '\n';
        }
        return kOk;
    }
    Report r(cfg.format);
    r.number("samples", static_cast<double>(values.size()));
    r.number("omega_squared_min", *lo);
    r.number("omega_squared_max", *hi);
    r.number("max_minus_min", spread);
    r.text("derivatives", coeffs.analytic() ? "symbolic" : "central differences");
    if (constant) {
        r.summary("constant omega_squared " + format_table(values.front()));
    } else {
        r.summary("time-dependent omega_squared, spread " + format_table(spread));
    }
    r.write(out.stream(), "omega", cfg.tol);
    return kOk;
}

int cmd_invariants(const RunConfig& cfg) {
    const auto spec = load_state(read_json_file(cfg.state_path), cfg.hbar);
    const int n = spec.state.n_modes();
    Matrix m = Matrix::Identity(2 * n, 2 * n);
    if (!cfg.matrix_path.empty()) {
        m = load_matrix(read_json_file(cfg.matrix_path));
        PhaseSpaceLayout(n).require_square(m, "symplectic matrix");
    }
    const auto check = is_symplectic(m, cfg.tol.symplectic);
    if (!check.symplectic) {
        std::cerr << "error: matrix is not symplectic (residual " << format_short(check.residual) << ")\n";
        return kValidation;
    }
    const auto after_state = apply_symplectic(spec.state, SymplecticMatrix(m, cfg.tol.symplectic));
    const auto before = symplectic_invariants(spec.state.covariance(), 2);
    const auto after = symplectic_invariants(after_state.covariance(), 2);

    Report r(cfg.format);
    r.number("symplectic_residual", check.residual);
    std::vector<std::string> flagged;
    auto row = [&](const std::string& name, double b, double a) {
        r.number(name + "_before", b);
        r.number(name + "_after", a);
        const double rel = std::abs(a - b) / std::max(std::abs(b), 1e-300);
        r.number(name + "_relative_change", rel);
        if (rel > cfg.tol.invariant_change) flagged.push_back(name);
    };
    row("det_sigma", before.determinant, after.determinant);
    row("trace_sigmaJ2", before.traces[0], after.traces[0]);
    row("trace_sigmaJ4", before.traces[1], after.traces[1]);
    std::string flags;
    for (const auto& f : flagged) flags += (flags.empty() ? "" : " ") + f;
    r.summary(flagged.empty() ? "invariants preserved" : "changed: " + flags);
    Output out(cfg.out_path);
    r.write(out.stream(), "invariants", cfg.tol);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    if (const char* env = std::getenv("LINCAN_TOL")) {
        try {
            cfg.tol.symplectic = std::stod(env);
            cfg.tol.physical = cfg.tol.symplectic;
        } catch (const std::exception&) {
            std::cerr << "error: LINCAN_TOL is not a number\n";
            return kUsage;
        }
    }

    CLI::App app{"Gaussian states under linear canonical transformations (ordering Q = (p, q))"};
    app.require_subcommand(1);
    std::string format = "table";
    std::optional<double> tol;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", cfg.out_path, "Write output to this file instead of stdout");
        sub->add_option("--format", format, "table or records")->check(CLI::IsMember({"table", "records"}));
        sub->add_option("--tol", tol, "Symplecticity and physicality tolerance");
        sub->add_option("--hbar", cfg.hbar, "Override hbar from the spec files")->check(CLI::PositiveNumber);
    };
    auto add_state = [&](CLI::App* sub) {
        auto* opt = sub->add_option("--state", cfg.state_path, "State spec file")->check(CLI::ExistingFile);
        sub->add_option("--input", cfg.state_path, "Alias for --state")->excludes(opt)->check(CLI::ExistingFile);
    };
    auto add_window = [&](CLI::App* sub) {
        sub->add_option("--t0", cfg.t0, "Start time");
        sub->add_option("--t1", cfg.t1, "End time");
        sub->add_option("--dt", cfg.dt, "Time step");
    };

    auto* check = app.add_subcommand("check", "Physicality, Robertson defect and symplectic-sigma test");
    add_common(check);
    add_state(check);

    auto* williamson = app.add_subcommand("williamson", "Symplectic diagonalisation of the covariance matrix");
    add_common(williamson);
    add_state(williamson);

    auto* evolve = app.add_subcommand("evolve", "Propagate a state under a quadratic Hamiltonian");
    add_common(evolve);
    add_state(evolve);
    add_window(evolve);
    evolve->add_option("--hamiltonian", cfg.hamiltonian_path, "Hamiltonian spec file")
        ->required()
        ->check(CLI::ExistingFile);
    evolve->add_option("--stride", cfg.stride, "Record every k-th step")->check(CLI::PositiveNumber);

    auto* diagonalize = app.add_subcommand("diagonalize", "Diagonalising transformation of a stationary Hamiltonian");
    add_common(diagonalize);
    diagonalize->add_option("--hamiltonian", cfg.hamiltonian_path, "Hamiltonian spec file")
        ->required()
        ->check(CLI::ExistingFile);
    diagonalize->add_option("--target", cfg.target_path, "Oscillator target spec (default m = w = 1)")
        ->check(CLI::ExistingFile);
    diagonalize->add_option("--time", cfg.time, "Time t");

    auto* omega = app.add_subcommand("omega", "Classical-oscillator frequency of a one-mode Hamiltonian");
    add_common(omega);
    add_window(omega);
    {
        auto* opt = omega->add_option("--hamiltonian", cfg.hamiltonian_path, "One-mode Hamiltonian spec file")
                        ->check(CLI::ExistingFile);
        omega->add_option("--input", cfg.hamiltonian_path, "Alias for --hamiltonian")
            ->excludes(opt)
            ->check(CLI::ExistingFile);
    }

    auto* invariants = app.add_subcommand("invariants", "det sigma and Tr[(sigma J)^2k] before and after a matrix");
    add_common(invariants);
    add_state(invariants);
    invariants->add_option("--matrix", cfg.matrix_path, "Symplectic matrix file (default identity)")
        ->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    if (tol) {
        cfg.tol.symplectic = *tol;
        cfg.tol.physical = *tol;
    }
    cfg.format = format == "records" ? Format::records : Format::table;

    try {
        for (auto* sub : {check, williamson, invariants}) {
            if (sub->parsed() && cfg.state_path.empty()) throw Error(ErrorKind::parse, "--state is required");
        }
        if (evolve->parsed() && cfg.state_path.empty()) throw Error(ErrorKind::parse, "--state is required");
        if (omega->parsed() && cfg.hamiltonian_path.empty()) {
            throw Error(ErrorKind::parse, "--hamiltonian is required");
        }

        if (check->parsed()) return cmd_check(cfg);
        if (williamson->parsed()) return cmd_williamson(cfg);
        if (evolve->parsed()) return cmd_evolve(cfg);
        if (diagonalize->parsed()) return cmd_diagonalize(cfg);
        if (omega->parsed()) return cmd_omega(cfg);
        if (invariants->parsed()) return cmd_invariants(cfg);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kRuntime;
    }
    return kUsage;
}
