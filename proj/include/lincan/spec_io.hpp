#pragma once

// JSON spec files read by the command-line tool.
//
// Every file carries "ordering": "p_then_q". Matrices are nested arrays,
// row-major. Hamiltonian block entries may be numbers, expression strings in t
// or {"times": [...], "values": [...]} tables.
//
// state:       n_modes, hbar, ordering, kind (ccs | fock | explicit),
//              masses?, frequencies?, n (fock), matrix (explicit), mean?,
//              transform? (symplectic matrix applied to the base state)
// hamiltonian: n_modes, hbar, ordering, blocks {A?, B?, C?}, linear {d?, e?}?
// target:      n_modes, hbar, ordering, masses?, frequencies?
// matrix:      ordering, matrix

#include "lincan/gaussian_state.hpp"
#include "lincan/hamiltonian.hpp"
#include "lincan/types.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>

namespace lincan {

// Throws Error{parse} naming the file on I/O or syntax errors.
nlohmann::json read_json_file(const std::filesystem::path& path);

struct StateSpec {
    std::string kind;
    OscillatorTarget target;
    GaussianState state;
};

// `hbar_override` replaces (and makes optional) the file's hbar. Schema errors
// throw Error{parse} naming the field; an invalid transform throws
// Error{not_symplectic}; a non-positive-definite matrix Error{not_positive_definite}.
StateSpec load_state(const nlohmann::json& doc, std::optional<double> hbar_override = std::nullopt);
QuadraticHamiltonian load_hamiltonian(const nlohmann::json& doc);
OscillatorTarget load_target(const nlohmann::json& doc, std::optional<double> hbar_override = std::nullopt);
Matrix load_matrix(const nlohmann::json& doc);

}  // namespace lincan
