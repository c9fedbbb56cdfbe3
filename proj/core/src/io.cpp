#include "ergolab/io.hpp"

#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <vector>

#include "ergolab/localopt.hpp"
#include "ergolab/rng.hpp"

namespace ergolab::io {

using nlohmann::json;

std::string digest(const std::string& bytes) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    std::ostringstream out;
    out << std::hex;
    for (int i = 60; i >= 0; i -= 4) {
        out << "0123456789abcdef"[(h >> i) & 0xF];
    }
    return out.str();
}

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

json parse_json(const std::string& text, const std::string& what) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) {
        throw ParseError("invalid JSON in " + what);
    }
    return j;
}

Complex parse_complex(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw ParseError("complex entries must be [re, im] pairs");
    }
    return Complex(j[0].get<double>(), j[1].get<double>());
}

std::optional<Bipartition> parse_dims(const json& j) {
    if (!j.contains("dims") || j["dims"].is_null()) {
        return std::nullopt;
    }
    const json& d = j["dims"];
    if (!d.is_array() || d.size() != 2) {
        throw ParseError("dims must be a [d_A, d_B] pair");
    }
    return Bipartition{d[0].get<int>(), d[1].get<int>()};
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::istringstream in(s);
    std::string item;
    while (std::getline(in, item, sep)) {
        parts.push_back(item);
    }
    return parts;
}

double parse_real(const std::string& s) {
    try {
        size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw ParseError("trailing characters in number: " + s);
        return v;
    } catch (const std::exception&) {
        throw ParseError("invalid number: " + s);
    }
}

int parse_int(const std::string& s) {
    try {
        size_t pos = 0;
        const int v = std::stoi(s, &pos);
        if (pos != s.size()) throw ParseError("trailing characters in integer: " + s);
        return v;
    } catch (const std::exception&) {
        throw ParseError("invalid integer: " + s);
    }
}

LoadedState gen_state(const std::string& spec, double tol) {
    const std::vector<std::string> parts = split(spec, ':');
    const std::string& kind = parts[1];
    if (kind == "bell") {
        Vector amp = Vector::Zero(4);
        amp(0) = amp(3) = 1.0 / std::sqrt(2.0);
        PureState psi = validate_pure(amp, Bipartition{2, 2}, tol);
        return LoadedState{psi, psi.projector(), digest(spec)};
    }
    if (kind == "werner") {
        if (parts.size() != 3) throw ParseError("usage: gen:werner:P");
        const double p = parse_real(parts[2]);
        if (p < 0.0 || p > 1.0) throw ParseError("werner weight must be in [0, 1]");
        Vector singlet = Vector::Zero(4);
        singlet(1) = 1.0 / std::sqrt(2.0);
        singlet(2) = -1.0 / std::sqrt(2.0);
        Matrix rho = p * (singlet * singlet.adjoint()) +
                     (1.0 - p) / 4.0 * Matrix::Identity(4, 4);
        return LoadedState{std::nullopt,
                           validate_density(rho, Bipartition{2, 2}, tol), digest(spec)};
    }
    if (kind == "haar-pure") {
        if (parts.size() != 4) throw ParseError("usage: gen:haar-pure:DA,DB:SEED");
        const std::vector<std::string> ds = split(parts[2], ',');
        if (ds.size() != 2) throw ParseError("usage: gen:haar-pure:DA,DB:SEED");
        const int da = parse_int(ds[0]);
        const int db = parse_int(ds[1]);
        const std::uint64_t seed = std::stoull(parts[3]);
        Rng rng(Rng::derive({seed, 0x686161722D707372ULL}));
        Vector amp(da * db);
        for (int i = 0; i < da * db; ++i) {
            amp(i) = Complex(rng.gaussian(), rng.gaussian());
        }
        amp /= amp.norm();
        PureState psi = validate_pure(amp, Bipartition{da, db}, tol);
        return LoadedState{psi, psi.projector(), digest(spec)};
    }
    throw ParseError("unknown state generator: " + spec);
}

LoadedHamiltonian gen_hamiltonian(const std::string& spec) {
    const std::vector<std::string> parts = split(spec, ':');
    const std::string& kind = parts[1];
    if (kind == "ham-diag") {
        if (parts.size() != 3) throw ParseError("usage: gen:ham-diag:E0,E1,...");
        const std::vector<std::string> es = split(parts[2], ',');
        Matrix h = Matrix::Zero(es.size(), es.size());
        for (size_t i = 0; i < es.size(); ++i) {
            h(i, i) = parse_real(es[i]);
        }
        return LoadedHamiltonian{Hamiltonian(h), digest(spec)};
    }
    if (kind == "ham-local") {
        if (parts.size() != 4) throw ParseError("usage: gen:ham-local:D:E0,...");
        const int d = parse_int(parts[2]);
        const std::vector<std::string> es = split(parts[3], ',');
        if (static_cast<int>(es.size()) != d) {
            throw ParseError("ham-local needs exactly D diagonal entries");
        }
        Matrix h = Matrix::Zero(d, d);
        for (int i = 0; i < d; ++i) {
            h(i, i) = parse_real(es[i]);
        }
        const Matrix eye = Matrix::Identity(d, d);
        return LoadedHamiltonian{Hamiltonian(kron(h, eye) + kron(eye, h)), digest(spec)};
    }
    throw ParseError("unknown Hamiltonian generator: " + spec);
}

LoadedMeasurement gen_measurement(const std::string& spec) {
    const std::vector<std::string> parts = split(spec, ':');
    if (parts[1] == "comp") {
        if (parts.size() != 3) throw ParseError("usage: gen:comp:D");
        return LoadedMeasurement{Measurement::computational(parse_int(parts[2])),
                                 digest(spec)};
    }
    throw ParseError("unknown measurement generator: " + spec);
}

}  // namespace

Matrix json_to_matrix(const json& j) {
    if (!j.is_array() || j.empty()) {
        throw ParseError("matrix data must be a non-empty nested array");
    }
    const size_t rows = j.size();
    const size_t cols = j[0].size();
    Matrix m(rows, cols);
    for (size_t r = 0; r < rows; ++r) {
        if (!j[r].is_array() || j[r].size() != cols) {
            throw ParseError("ragged matrix rows");
        }
        for (size_t c = 0; c < cols; ++c) {
            m(r, c) = parse_complex(j[r][c]);
        }
    }
    return m;
}

Vector json_to_vector(const json& j) {
    if (!j.is_array() || j.empty()) {
        throw ParseError("vector data must be a non-empty array");
    }
    Vector v(j.size());
    for (size_t i = 0; i < j.size(); ++i) {
        v(i) = parse_complex(j[i]);
    }
    return v;
}

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            row.push_back({m(r, c).real(), m(r, c).imag()});
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

json vector_to_json(const Vector& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        out.push_back({v(i).real(), v(i).imag()});
    }
    return out;
}

json state_to_json(const PureState& state) {
    json j{{"kind", "pure"}, {"data", vector_to_json(state.amplitudes)}};
    if (state.dims) j["dims"] = {state.dims->dim_a, state.dims->dim_b};
    return j;
}

json state_to_json(const DensityMatrix& state) {
    json j{{"kind", "density"}, {"data", matrix_to_json(state.mat)}};
    if (state.dims) j["dims"] = {state.dims->dim_a, state.dims->dim_b};
    return j;
}

json measurement_to_json(const Measurement& m) {
    if (m.rank_one()) {
        return json{{"kind", "basis"}, {"data", matrix_to_json(m.basis_unitary())}};
    }
    json projectors = json::array();
    for (const Matrix& p : m.projectors) {
        projectors.push_back(matrix_to_json(p));
    }
    return json{{"kind", "pvm"}, {"projectors", projectors}, {"volumes", m.volumes}};
}

LoadedState load_state(const std::string& source, double tol) {
    if (source.rfind("gen:", 0) == 0) {
        return gen_state(source, tol);
    }
    const std::string text = slurp(source);
    const json j = parse_json(text, source);
    if (!j.contains("kind") || !j.contains("data")) {
        throw ParseError("state file needs \"kind\" and \"data\": " + source);
    }
    const std::string kind = j["kind"].get<std::string>();
    const std::optional<Bipartition> dims = parse_dims(j);
    if (kind == "pure") {
        PureState psi = validate_pure(json_to_vector(j["data"]), dims, tol);
        return LoadedState{psi, psi.projector(), digest(text)};
    }
    if (kind == "density") {
        return LoadedState{std::nullopt,
                           validate_density(json_to_matrix(j["data"]), dims, tol),
                           digest(text)};
    }
    throw ParseError("state kind must be \"pure\" or \"density\": " + source);
}

LoadedHamiltonian load_hamiltonian(const std::string& source) {
    if (source.rfind("gen:", 0) == 0) {
        return gen_hamiltonian(source);
    }
    const std::string text = slurp(source);
    const json j = parse_json(text, source);
    if (!j.contains("data")) {
        throw ParseError("Hamiltonian file needs \"data\": " + source);
    }
    return LoadedHamiltonian{Hamiltonian(json_to_matrix(j["data"])), digest(text)};
}

LoadedMeasurement load_measurement(const std::string& source) {
    if (source.rfind("gen:", 0) == 0) {
        return gen_measurement(source);
    }
    const std::string text = slurp(source);
    const json j = parse_json(text, source);
    const std::string kind = j.value("kind", "");
    if (kind == "basis") {
        return LoadedMeasurement{Measurement::from_basis(json_to_matrix(j["data"])),
                                 digest(text)};
    }
    if (kind == "pvm") {
        std::vector<Matrix> projectors;
        for (const json& p : j.at("projectors")) {
            projectors.push_back(json_to_matrix(p));
        }
        return LoadedMeasurement{Measurement::from_projectors(std::move(projectors)),
                                 digest(text)};
    }
    throw ParseError("measurement kind must be \"basis\" or \"pvm\": " + source);
}

}  // namespace ergolab::io
