#include "lincan/spec_io.hpp"

#include "lincan/symplectic.hpp"

#include <fstream>
#include <sstream>

namespace lincan {

using nlohmann::json;

namespace {

[[noreturn]] void field_error(const std::string& field, const std::string& msg) {
    throw Error(ErrorKind::parse, "field '" + field + "': " + msg);
}

const json& require(const json& doc, const std::string& field) {
    if (!doc.is_object()) field_error(field, "document is not an object");
    auto it = doc.find(field);
    if (it == doc.end()) field_error(field, "missing");
    return *it;
}

double number(const json& v, const std::string& field) {
    if (!v.is_number()) field_error(field, "expected a number");
    return v.get<double>();
}

int positive_int(const json& v, const std::string& field) {
    if (!v.is_number_integer() || v.get<long long>() < 1) field_error(field, "expected a positive integer");
    return v.get<int>();
}

void require_ordering(const json& doc) {
    const json& o = require(doc, "ordering");
    if (!o.is_string() || o.get<std::string>() != kOrderingTag) {
        field_error("ordering", "expected \"" + std::string(kOrderingTag) + "\"");
    }
}

int modes(const json& doc) { return positive_int(require(doc, "n_modes"), "n_modes"); }

double hbar_of(const json& doc, std::optional<double> override_value) {
    if (override_value) return *override_value;
    const double h = number(require(doc, "hbar"), "hbar");
    if (!(h > 0.0)) field_error("hbar", "must be positive");
    return h;
}

std::vector<double> number_list(const json& v, const std::string& field, std::size_t expected) {
    if (!v.is_array() || v.size() != expected) {
        field_error(field, "expected an array of " + std::to_string(expected) + " numbers");
    }
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(number(v[i], field + "[" + std::to_string(i) + "]"));
    return out;
}

Matrix matrix_of(const json& v, const std::string& field, int rows, int cols) {
    if (!v.is_array() || static_cast<int>(v.size()) != rows) {
        field_error(field, "expected " + std::to_string(rows) + " rows");
    }
    Matrix m(rows, cols);
    for (int r = 0; r < rows; ++r) {
        const auto row = number_list(v[static_cast<std::size_t>(r)], field + "[" + std::to_string(r) + "]",
                                     static_cast<std::size_t>(cols));
        for (int c = 0; c < cols; ++c) m(r, c) = row[static_cast<std::size_t>(c)];
    }
    return m;
}

TimeFunction time_function(const json& v, const std::string& field) {
    if (v.is_number()) return TimeFunction(v.get<double>());
    if (v.is_string()) {
        try {
            return TimeFunction(Expression::parse(v.get<std::string>()));
        } catch (const Error& e) {
            field_error(field, e.what());
        }
    }
    if (v.is_object()) {
        const json& times = require(v, "times");
        const json& values = require(v, "values");
        if (!times.is_array() || !values.is_array()) field_error(field, "times and values must be arrays");
        auto ts = number_list(times, field + ".times", times.size());
        auto vs = number_list(values, field + ".values", values.size());
        try {
            return TimeFunction(Tabulated(std::move(ts), std::move(vs)));
        } catch (const Error& e) {
            field_error(field, e.what());
        }
    }
    field_error(field, "expected a number, an expression string or a {times, values} table");
}

MatrixFunction matrix_function(const json* v, const std::string& field, int rows, int cols) {
    if (v == nullptr) return MatrixFunction::constant(Matrix::Zero(rows, cols));
    if (!v->is_array() || static_cast<int>(v->size()) != rows) {
        field_error(field, "expected " + std::to_string(rows) + " rows");
    }
    std::vector<TimeFunction> entries;
    for (int r = 0; r < rows; ++r) {
        const json& row = (*v)[static_cast<std::size_t>(r)];
        const std::string row_field = field + "[" + std::to_string(r) + "]";
        if (!row.is_array() || static_cast<int>(row.size()) != cols) {
            field_error(row_field, "expected " + std::to_string(cols) + " entries");
        }
        for (int c = 0; c < cols; ++c) {
            entries.push_back(time_function(row[static_cast<std::size_t>(c)], row_field + "[" + std::to_string(c) + "]"));
        }
    }
    return MatrixFunction(rows, cols, std::move(entries));
}

const json* optional_field(const json& doc, const std::string& field) {
    auto it = doc.find(field);
    return it == doc.end() ? nullptr : &*it;
}

}  // namespace

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::parse, "cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::parse, path.string() + ": " + e.what());
    }
}

OscillatorTarget load_target(const json& doc, std::optional<double> hbar_override) {
    require_ordering(doc);
    const int n = modes(doc);
    const double hbar = hbar_of(doc, hbar_override);
    const auto count = static_cast<std::size_t>(n);
    std::vector<double> masses(count, 1.0);
    std::vector<double> freqs(count, 1.0);
    if (const json* m = optional_field(doc, "masses")) masses = number_list(*m, "masses", count);
    if (const json* w = optional_field(doc, "frequencies")) freqs = number_list(*w, "frequencies", count);
    try {
        return OscillatorTarget(std::move(masses), std::move(freqs), hbar);
    } catch (const Error& e) {
        throw Error(ErrorKind::parse, std::string("field 'masses'/'frequencies': ") + e.what());
    }
}

StateSpec load_state(const json& doc, std::optional<double> hbar_override) {
    OscillatorTarget target = load_target(doc, hbar_override);
    const int n = target.n_modes();
    const json& kind_field = require(doc, "kind");
    if (!kind_field.is_string()) field_error("kind", "expected a string");
    const std::string kind = kind_field.get<std::string>();

    std::optional<CovarianceMatrix> sigma;
    if (kind == "ccs") {
        sigma = ccs_covariance(target);
    } else if (kind == "fock") {
        const json& occ = require(doc, "n");
        if (!occ.is_array() || static_cast<int>(occ.size()) != n) {
            field_error("n", "expected " + std::to_string(n) + " occupation numbers");
        }
        std::vector<int> counts;
        for (const auto& v : occ) {
            if (!v.is_number_integer() || v.get<long long>() < 0) field_error("n", "expected nonnegative integers");
            counts.push_back(v.get<int>());
        }
        sigma = fock_covariance(counts, target);
    } else if (kind == "explicit") {
        sigma = CovarianceMatrix(matrix_of(require(doc, "matrix"), "matrix", 2 * n, 2 * n), target.hbar());
    } else {
        field_error("kind", "expected one of ccs, fock, explicit");
    }

    Vector mean = Vector::Zero(2 * n);
    if (const json* m = optional_field(doc, "mean")) {
        const auto values = number_list(*m, "mean", static_cast<std::size_t>(2 * n));
        mean = Eigen::Map<const Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
    }
    GaussianState state(*sigma, mean);
    if (const json* t = optional_field(doc, "transform")) {
        state = apply_symplectic(state, SymplecticMatrix(matrix_of(*t, "transform", 2 * n, 2 * n)));
    }
    return {kind, std::move(target), std::move(state)};
}

QuadraticHamiltonian load_hamiltonian(const json& doc) {
    require_ordering(doc);
    const int n = modes(doc);
    hbar_of(doc, std::nullopt);
    const json& blocks = require(doc, "blocks");
    if (!blocks.is_object()) field_error("blocks", "expected an object with A, B, C");
    for (auto it = blocks.begin(); it != blocks.end(); ++it) {
        if (it.key() != "A" && it.key() != "B" && it.key() != "C") field_error("blocks." + it.key(), "unknown block");
    }
    auto a = matrix_function(optional_field(blocks, "A"), "blocks.A", n, n);
    auto b = matrix_function(optional_field(blocks, "B"), "blocks.B", n, n);
    auto c = matrix_function(optional_field(blocks, "C"), "blocks.C", n, n);

    std::optional<MatrixFunction> linear;
    if (const json* lin = optional_field(doc, "linear")) {
        if (!lin->is_object()) field_error("linear", "expected an object with d and e");
        std::vector<TimeFunction> entries;
        for (const char* part : {"d", "e"}) {
            const json* v = optional_field(*lin, part);
            const std::string field = std::string("linear.") + part;
            if (v == nullptr) {
                entries.insert(entries.end(), static_cast<std::size_t>(n), TimeFunction(0.0));
                continue;
            }
            if (!v->is_array() || static_cast<int>(v->size()) != n) {
                field_error(field, "expected " + std::to_string(n) + " entries");
            }
            for (std::size_t k = 0; k < v->size(); ++k) {
                entries.push_back(time_function((*v)[k], field + "[" + std::to_string(k) + "]"));
            }
        }
        linear = MatrixFunction(2 * n, 1, std::move(entries));
    }
    return QuadraticHamiltonian(std::move(a), std::move(b), std::move(c), std::move(linear));
}

Matrix load_matrix(const json& doc) {
    require_ordering(doc);
    const json& m = require(doc, "matrix");
    if (!m.is_array() || m.empty() || m.size() % 2 != 0) field_error("matrix", "expected a 2N x 2N array");
    const int dim = static_cast<int>(m.size());
    return matrix_of(m, "matrix", dim, dim);
}

}  // namespace lincan
