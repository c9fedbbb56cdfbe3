#pragma once

#include <cstdint>
#include <nlohmann/json_fwd.hpp>
#include <optional>
#include <string>

#include "ergolab/measurement.hpp"
#include "ergolab/qstate.hpp"
#include "ergolab/thermo.hpp"

namespace ergolab::io {

/// A parsed state input: the density form is always present, the pure form
/// only when the input was a state vector.
struct LoadedState {
    std::optional<PureState> pure;
    DensityMatrix density;
    std::string digest;  // content hash of the input

    const DensityMatrix& rho() const { return density; }
};

struct LoadedHamiltonian {
    Hamiltonian ham;
    std::string digest;
};

struct LoadedMeasurement {
    Measurement measurement;
    std::string digest;
};

/// FNV-1a 64-bit hash, hex-encoded.
std::string digest(const std::string& bytes);

/// Load a state from a JSON file path or an inline "gen:..." spec:
///   gen:bell                    Bell phi+ (pure, dims [2,2])
///   gen:werner:P                2-qubit Werner state, singlet weight P
///   gen:haar-pure:DA,DB:SEED    Haar-random bipartite pure state
LoadedState load_state(const std::string& source, double tol = kValidationTol);

/// Load a Hamiltonian from a JSON file or a spec:
///   gen:ham-diag:E0,E1,...      diagonal Hamiltonian
///   gen:ham-local:D:E0,...,E_{D-1}   h (x) I + I (x) h on dimension D^2
LoadedHamiltonian load_hamiltonian(const std::string& source);

/// Load a measurement from a JSON file (kind "basis" or "pvm") or a spec:
///   gen:comp:D                  computational rank-1 basis
LoadedMeasurement load_measurement(const std::string& source);

// JSON (de)serialization helpers. Complex entries are [re, im] pairs.
nlohmann::json matrix_to_json(const Matrix& m);
Matrix json_to_matrix(const nlohmann::json& j);
nlohmann::json vector_to_json(const Vector& v);
Vector json_to_vector(const nlohmann::json& j);

nlohmann::json state_to_json(const PureState& state);
nlohmann::json state_to_json(const DensityMatrix& state);
nlohmann::json measurement_to_json(const Measurement& m);

}  // namespace ergolab::io
