#include "lincan/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lincan {

namespace {

boost::math::interpolators::makima<std::vector<double>> make_spline(std::vector<double>& times,
                                                                    std::vector<double>& values) {
    if (times.size() != values.size()) {
        throw Error(ErrorKind::shape, "shape: tabulated function has " + std::to_string(times.size()) +
                                          " times but " + std::to_string(values.size()) + " values");
    }
    if (times.size() < 4) {
        throw Error(ErrorKind::shape, "shape: tabulated function needs at least 4 samples");
    }
    if (!std::is_sorted(times.begin(), times.end()) ||
        std::adjacent_find(times.begin(), times.end()) != times.end()) {
        throw Error(ErrorKind::shape, "shape: tabulation times must be strictly increasing");
    }
    return {std::move(times), std::move(values)};
}

std::optional<std::pair<double, double>> intersect(std::optional<std::pair<double, double>> a,
                                                   const std::optional<std::pair<double, double>>& b) {
    if (!b) return a;
    if (!a) return b;
    return std::make_pair(std::max(a->first, b->first), std::min(a->second, b->second));
}

}  // namespace

Tabulated::Tabulated(std::vector<double> times, std::vector<double> values)
    : t_min_(times.empty() ? 0.0 : times.front()),
      t_max_(times.empty() ? 0.0 : times.back()),
      spline_(make_spline(times, values)) {}

double Tabulated::operator()(double t) const {
    if (t < t_min_ || t > t_max_) {
        throw Error(ErrorKind::time_out_of_range, "time out of range: t=" + std::to_string(t) + " outside [" +
                                                      std::to_string(t_min_) + ", " + std::to_string(t_max_) + "]");
    }
    return spline_(t);
}

double Tabulated::derivative(double t) const {
    (void)(*this)(t);
    return spline_.prime(t);
}

double TimeFunction::operator()(double t) const {
    return std::visit(
        [t](const auto& f) -> double {
            using F = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<F, double>) {
                return f;
            } else {
                return f(t);
            }
        },
        impl_);
}

bool TimeFunction::is_constant() const {
    if (std::holds_alternative<double>(impl_)) return true;
    if (const auto* e = std::get_if<Expression>(&impl_)) return e->is_constant();
    return false;
}

std::optional<TimeFunction> TimeFunction::derivative() const {
    if (std::holds_alternative<double>(impl_)) return TimeFunction(0.0);
    if (const auto* e = std::get_if<Expression>(&impl_)) return TimeFunction(e->derivative());
    return std::nullopt;
}

std::optional<std::pair<double, double>> TimeFunction::range() const {
    if (const auto* tab = std::get_if<Tabulated>(&impl_)) return std::make_pair(tab->t_min(), tab->t_max());
    return std::nullopt;
}

MatrixFunction::MatrixFunction(int rows, int cols, std::vector<TimeFunction> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (rows < 0 || cols < 0 || entries_.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {
        throw Error(ErrorKind::shape, "shape: matrix function has " + std::to_string(entries_.size()) +
                                          " entries for a " + std::to_string(rows) + "x" + std::to_string(cols) +
                                          " matrix");
    }
}

MatrixFunction MatrixFunction::constant(const Matrix& m) {
    std::vector<TimeFunction> entries;
    entries.reserve(static_cast<std::size_t>(m.size()));
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) entries.emplace_back(m(r, c));
    }
    return MatrixFunction(static_cast<int>(m.rows()), static_cast<int>(m.cols()), std::move(entries));
}

Matrix MatrixFunction::operator()(double t) const {
    Matrix m(rows_, cols_);
    for (int r = 0; r < rows_; ++r) {
        for (int c = 0; c < cols_; ++c) m(r, c) = entry(r, c)(t);
    }
    return m;
}

bool MatrixFunction::is_constant() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const TimeFunction& f) { return f.is_constant(); });
}

std::optional<MatrixFunction> MatrixFunction::derivative() const {
    std::vector<TimeFunction> d;
    d.reserve(entries_.size());
    for (const auto& f : entries_) {
        auto df = f.derivative();
        if (!df) return std::nullopt;
        d.push_back(std::move(*df));
    }
    return MatrixFunction(rows_, cols_, std::move(d));
}

std::optional<std::pair<double, double>> MatrixFunction::range() const {
    std::optional<std::pair<double, double>> r;
    for (const auto& f : entries_) r = intersect(r, f.range());
    return r;
}

QuadraticHamiltonian::QuadraticHamiltonian(MatrixFunction a, MatrixFunction b, MatrixFunction c,
                                           std::optional<MatrixFunction> linear)
    : n_(a.rows()), a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), linear_(std::move(linear)) {
    PhaseSpaceLayout layout(n_);
    auto check = [&](const MatrixFunction& m, const char* name) {
        if (m.rows() != n_ || m.cols() != n_) {
            throw Error(ErrorKind::shape, std::string("shape: block ") + name + " is " + std::to_string(m.rows()) +
                                              "x" + std::to_string(m.cols()) + ", expected " +
                                              std::to_string(n_) + "x" + std::to_string(n_));
        }
    };
    check(a_, "A");
    check(b_, "B");
    check(c_, "C");
    if (linear_ && (linear_->rows() != layout.dim() || linear_->cols() != 1)) {
        throw Error(ErrorKind::shape, "shape: linear terms must have length " + std::to_string(layout.dim()));
    }
}

QuadraticHamiltonian QuadraticHamiltonian::stationary(const Matrix& a, const Matrix& b, const Matrix& c) {
    return QuadraticHamiltonian(MatrixFunction::constant(a), MatrixFunction::constant(b),
                                MatrixFunction::constant(c));
}

bool QuadraticHamiltonian::is_stationary() const {
    return a_.is_constant() && b_.is_constant() && c_.is_constant() && (!linear_ || linear_->is_constant());
}

std::optional<std::pair<double, double>> QuadraticHamiltonian::time_range() const {
    auto r = intersect(intersect(a_.range(), b_.range()), c_.range());
    if (linear_) r = intersect(r, linear_->range());
    return r;
}

void QuadraticHamiltonian::require_time(double t) const {
    if (const auto r = time_range(); r && (t < r->first || t > r->second)) {
        throw Error(ErrorKind::time_out_of_range, "time out of range: t=" + std::to_string(t) + " outside [" +
                                                      std::to_string(r->first) + ", " + std::to_string(r->second) +
                                                      "]");
    }
}

Vector QuadraticHamiltonian::linear_terms(double t) const {
    if (!linear_) return Vector::Zero(2 * n_);
    return (*linear_)(t).col(0);
}

GrandMatrix::GrandMatrix(const Matrix& m, double time) : m_(symmetrized(m)), time_(time) {
    PhaseSpaceLayout::of(m);
}

OscillatorTarget::OscillatorTarget(std::vector<double> masses, std::vector<double> frequencies, double hbar)
    : masses_(std::move(masses)), frequencies_(std::move(frequencies)), hbar_(hbar) {
    if (masses_.empty() || masses_.size() != frequencies_.size()) {
        throw Error(ErrorKind::shape, "shape: oscillator target needs one mass and one frequency per mode");
    }
    auto positive = [](double x) { return std::isfinite(x) && x > 0.0; };
    if (!std::all_of(masses_.begin(), masses_.end(), positive) ||
        !std::all_of(frequencies_.begin(), frequencies_.end(), positive)) {
        throw Error(ErrorKind::shape, "oscillator masses and frequencies must be positive");
    }
    if (!positive(hbar_)) throw Error(ErrorKind::shape, "hbar must be positive");
}

OscillatorTarget OscillatorTarget::uniform(int n_modes, double mass, double frequency, double hbar) {
    PhaseSpaceLayout layout(n_modes);
    return OscillatorTarget(std::vector<double>(static_cast<std::size_t>(n_modes), mass),
                            std::vector<double>(static_cast<std::size_t>(n_modes), frequency), hbar);
}

GrandMatrix grand_matrix(const QuadraticHamiltonian& h, double t) {
    h.require_time(t);
    const int n = h.n_modes();
    Matrix m(2 * n, 2 * n);
    const Matrix b = h.b()(t);
    m.topLeftCorner(n, n) = symmetrized(h.a()(t));
    m.topRightCorner(n, n) = b;
    m.bottomLeftCorner(n, n) = b.transpose();
    m.bottomRightCorner(n, n) = symmetrized(h.c()(t));
    return GrandMatrix(m, t);
}

GrandMatrix ho_grand_matrix(const OscillatorTarget& target) {
    const int n = target.n_modes();
    Matrix m = Matrix::Zero(2 * n, 2 * n);
    for (int k = 0; k < n; ++k) {
        const double mass = target.masses()[static_cast<std::size_t>(k)];
        const double w = target.frequencies()[static_cast<std::size_t>(k)];
        m(k, k) = 1.0 / (2.0 * mass);
        m(n + k, n + k) = mass * w * w / 2.0;
    }
    return GrandMatrix(m);
}

Matrix generator_forward(const GrandMatrix& h) { return -2.0 * standard_form(h.n_modes()) * h.matrix(); }

Matrix generator_forward(const QuadraticHamiltonian& h, double t) { return generator_forward(grand_matrix(h, t)); }

Matrix generator_target(const GrandMatrix& target_grand) {
    return 2.0 * standard_form(target_grand.n_modes()) * target_grand.matrix();
}

DisplacedHamiltonian displace_out_linear_terms(const QuadraticHamiltonian& h) {
    QuadraticHamiltonian homogeneous(h.a(), h.b(), h.c());
    if (!h.linear()) {
        const int dim = 2 * h.n_modes();
        return {std::move(homogeneous), [dim](double) { return Vector(Vector::Zero(dim)); }};
    }
    const Matrix j = standard_form(h.n_modes());
    return {std::move(homogeneous), [h, j](double t) { return Vector(-j * h.linear_terms(t)); }};
}

}  // namespace lincan
