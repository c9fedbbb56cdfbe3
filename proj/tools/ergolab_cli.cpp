// ergolab command-line front end: entropy, ergotropy, protocol, qce.
// Reads states, Hamiltonians and measurements from JSON files or inline
// gen: specs and prints exactly one JSON result record on standard output.

#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <nlohmann/json.hpp>
#include <string>

#include "ergolab/entropy.hpp"
#include "ergolab/io.hpp"
#include "ergolab/localopt.hpp"
#include "ergolab/protocol.hpp"
#include "ergolab/thermo.hpp"

namespace {

using nlohmann::json;
using namespace ergolab;

constexpr const char* kVersion = "0.1.0";

std::int64_t dim_cap_from_env() {
    if (const char* env = std::getenv("ERGOLAB_DIM_CAP")) {
        const std::int64_t cap = std::strtoll(env, nullptr, 10);
        if (cap >= 1) return cap;
        throw ParseError("ERGOLAB_DIM_CAP must be a positive integer");
    }
    return kDefaultDimCap;
}

/// Entropies are computed in nats; --bits only rescales the displayed value.
double display_entropy(double nats, bool bits) {
    return bits ? nats / std::log(2.0) : nats;
}

json make_record(const std::string& command, const json& inputs, std::uint64_t seed) {
    return json{{"command", command},
                {"inputs", inputs},
                {"outputs", json::object()},
                {"seed", seed},
                {"version", kVersion}};
}

void emit(const json& record) { std::cout << record.dump(2) << "\n"; }

struct ErgotropyFlags {
    std::string state_file;
    std::string ham_file;
    std::string measurement_file;
    bool optimize_local = false;
    int restarts = 16;
    std::uint64_t seed = 0;
    double tol = kValidationTol;
    bool bits = false;
};

int run_ergotropy(const ErgotropyFlags& f, const std::string& command) {
    const io::LoadedState state = io::load_state(f.state_file, f.tol);
    const io::LoadedHamiltonian ham = io::load_hamiltonian(f.ham_file);

    json inputs{{"state", state.digest}, {"ham", ham.digest}};
    json record = make_record(command, inputs, f.seed);
    json& out = record["outputs"];
    out["ergotropy"] = ergotropy(state.rho(), ham.ham);

    if (f.optimize_local) {
        OptimizerConfig config;
        config.restarts = f.restarts;
        config.seed = f.seed;
        const QuantumCorrelationResult qc =
            quantum_correlation_entropy(state.rho(), config);
        const ErgotropyRecord rec = observational_ergotropy(
            state.rho(), ham.ham, qc.basis.to_measurement());
        out["s_min"] = display_entropy(qc.s_min, f.bits);
        out["s_qc"] = display_entropy(qc.s_qc, f.bits);
        out["s_obs"] = display_entropy(rec.s_obs, f.bits);
        out["restarts_agreeing"] = qc.detail.restarts_agreeing;
        out["converged"] = qc.detail.converged;
        out["work"] = rec.work;
        out["beta"] = rec.beta;
        out["e_initial"] = rec.e_initial;
        out["e_final"] = rec.e_final;
        out["mismatched"] = rec.mismatched;
    } else if (!f.measurement_file.empty()) {
        const io::LoadedMeasurement m = io::load_measurement(f.measurement_file);
        record["inputs"]["measurement"] = m.digest;
        const ErgotropyRecord rec =
            observational_ergotropy(state.rho(), ham.ham, m.measurement);
        out["s_obs"] = display_entropy(rec.s_obs, f.bits);
        out["work"] = rec.work;
        out["beta"] = rec.beta;
        out["e_initial"] = rec.e_initial;
        out["e_final"] = rec.e_final;
        out["mismatched"] = rec.mismatched;
    }
    emit(record);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"entanglement entropy, observational ergotropy and the "
                 "certify-dephase-extract protocol"};
    app.require_subcommand(1);

    // --- entropy ---
    auto* cmd_entropy = app.add_subcommand("entropy", "entropy functionals of a state");
    std::string ent_state, ent_measurement;
    bool ent_schmidt = false, ent_bits = false;
    double ent_tol = kValidationTol;
    cmd_entropy->add_option("--state", ent_state, "state file or gen: spec")->required();
    cmd_entropy->add_option("--measurement", ent_measurement, "measurement file or gen: spec");
    cmd_entropy->add_flag("--schmidt", ent_schmidt, "report entanglement entropy");
    cmd_entropy->add_flag("--bits", ent_bits, "display entropies in bits");
    cmd_entropy->add_option("--tol", ent_tol, "validation tolerance");

    // --- ergotropy / qce ---
    ErgotropyFlags ef;
    auto add_ergotropy_flags = [&](CLI::App* cmd, bool with_optimize) {
        cmd->add_option("--state", ef.state_file, "state file or gen: spec")->required();
        cmd->add_option("--ham", ef.ham_file, "Hamiltonian file or gen: spec")->required();
        if (with_optimize) {
            cmd->add_option("--measurement", ef.measurement_file,
                            "measurement file or gen: spec");
            cmd->add_flag("--optimize-local", ef.optimize_local,
                          "minimize observational entropy over product bases first");
        }
        cmd->add_option("--restarts", ef.restarts, "optimizer restarts");
        cmd->add_option("--seed", ef.seed, "random seed");
        cmd->add_option("--tol", ef.tol, "validation tolerance");
        cmd->add_flag("--bits", ef.bits, "display entropies in bits");
    };
    auto* cmd_ergotropy =
        app.add_subcommand("ergotropy", "observational ergotropy of a state");
    add_ergotropy_flags(cmd_ergotropy, true);
    auto* cmd_qce = app.add_subcommand(
        "qce", "quantum correlation entropy (ergotropy --optimize-local)");
    add_ergotropy_flags(cmd_qce, false);

    // --- protocol ---
    auto* cmd_protocol =
        app.add_subcommand("protocol", "simulate the certify-dephase-extract protocol");
    std::string pr_state, pr_ham, pr_measurement;
    int pr_copies = 1, pr_trials = 1, pr_converge = 0;
    std::uint64_t pr_seed = 0;
    std::int64_t pr_cert_samples = 0;
    bool pr_cert_exact = false, pr_cooling = false;
    double pr_tol = kValidationTol;
    cmd_protocol->add_option("--state", pr_state)->required();
    cmd_protocol->add_option("--ham", pr_ham)->required();
    cmd_protocol->add_option("--measurement", pr_measurement)->required();
    cmd_protocol->add_option("--copies", pr_copies)->required();
    cmd_protocol->add_option("--trials", pr_trials)->required();
    cmd_protocol->add_option("--seed", pr_seed)->required();
    auto* opt_samples = cmd_protocol->add_option("--cert-samples", pr_cert_samples,
                                                 "finite certification sample budget");
    cmd_protocol->add_flag("--cert-exact", pr_cert_exact, "use exact probabilities")
        ->excludes(opt_samples);
    cmd_protocol->add_option("--converge", pr_converge,
                             "emit per-N convergence rows up to N_MAX");
    cmd_protocol->add_flag("--cooling", pr_cooling, "emit per-N cooling rows");
    cmd_protocol->add_option("--tol", pr_tol, "validation tolerance");

    CLI11_PARSE(app, argc, argv);

    std::string command;
    for (int i = 1; i < argc; ++i) {
        if (i > 1) command += ' ';
        command += argv[i];
    }

    try {
        if (*cmd_entropy) {
            const io::LoadedState state = io::load_state(ent_state, ent_tol);
            json record = make_record(command, json{{"state", state.digest}}, 0);
            json& out = record["outputs"];
            out["s_vn"] = display_entropy(von_neumann_entropy(state.rho()), ent_bits);
            if (!ent_measurement.empty()) {
                const io::LoadedMeasurement m = io::load_measurement(ent_measurement);
                record["inputs"]["measurement"] = m.digest;
                out["s_obs"] = display_entropy(
                    observational_entropy(state.rho(), m.measurement), ent_bits);
            }
            if (ent_schmidt) {
                if (!state.pure) {
                    throw ValidationError("NotPure",
                                          "NotPure: --schmidt needs a pure state file");
                }
                out["s_ent"] =
                    display_entropy(entanglement_entropy(*state.pure), ent_bits);
            }
            emit(record);
            return 0;
        }
        if (*cmd_ergotropy || *cmd_qce) {
            if (*cmd_qce) ef.optimize_local = true;
            return run_ergotropy(ef, command);
        }
        if (*cmd_protocol) {
            const std::int64_t cap = dim_cap_from_env();
            const io::LoadedState state = io::load_state(pr_state, pr_tol);
            const io::LoadedHamiltonian ham = io::load_hamiltonian(pr_ham);
            const io::LoadedMeasurement m = io::load_measurement(pr_measurement);

            ProtocolConfig config;
            config.copies = pr_copies;
            config.trials = pr_trials;
            config.seed = pr_seed;
            config.measurement = m.measurement;
            config.dim_cap = cap;
            config.certification_samples =
                opt_samples->count() > 0 ? CertSamples(pr_cert_samples) : kCertExact;

            json record = make_record(
                command,
                json{{"state", state.digest}, {"ham", ham.digest}, {"measurement", m.digest}},
                pr_seed);
            json& out = record["outputs"];

            const WorkSamples ws = simulate_extraction(state.rho(), ham.ham, config);
            out["copies"] = config.copies;
            out["trials"] = config.trials;
            out["mean"] = ws.mean;
            out["std_error"] = ws.std_error;
            out["exact_mean"] = ws.exact_mean;

            if (pr_converge > 0) {
                const ConvergenceReport report = convergence_study(
                    state.rho(), ham.ham, m.measurement, pr_converge,
                    config.certification_samples, pr_seed);
                out["w_inf"] = report.w_inf;
                json rows = json::array();
                for (const ConvergenceRow& row : report.rows) {
                    rows.push_back({{"N", row.copies},
                                    {"work_per_copy", row.work_per_copy},
                                    {"gap", row.gap}});
                }
                out["convergence"] = rows;
            }
            if (pr_cooling) {
                const OutcomeDistribution p =
                    certify(state.rho(), m.measurement, config.certification_samples,
                            pr_seed);
                const int n_max = pr_converge > 0 ? pr_converge : pr_copies;
                json rows = json::array();
                for (int n = 1; n <= n_max; ++n) {
                    const CoolingRecord rec = cooling_diagnostic(p, ham.ham, n);
                    rows.push_back({{"N", n},
                                    {"trace_distance", rec.trace_distance},
                                    {"beta", rec.beta}});
                }
                out["cooling"] = rows;
            }
            emit(record);
            return 0;
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DimensionMismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const MissingDims& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const EntropyOutOfRange& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const DegenerateSpectrum& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const DimensionCap& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
