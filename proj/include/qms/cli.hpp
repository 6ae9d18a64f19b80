#ifndef QMS_CLI_HPP
#define QMS_CLI_HPP

#include <nlohmann/json.hpp>
#include <optional>
#include <string>

#include "qms/spin_chain.hpp"

namespace qms::cli {

using json = nlohmann::ordered_json;

// Configuration document for a run.  Key names are normative; unknown
// keys are rejected.
struct RunConfig {
    // model
    std::string model_type;  // "blocks" | "spin_chain"
    std::vector<int> blocks;
    int chain_length = 0;
    Boundary boundary = Boundary::periodic;
    double coupling_j = 1.0;
    double coupling_h = 1.0;
    double lambda = 0.5;

    // state
    std::string state_type;  // "gibbs" | "random_faithful" | "explicit" | "tracial"
    double beta = 0.0;
    std::uint64_t state_seed = 0;
    std::vector<Matrix> explicit_rho;

    // generators
    std::string generator_type;  // "pauli_all_sites" | "explicit" | "random_hermitian"
    int generator_count = 3;
    std::uint64_t generator_seed = 0;
    std::vector<std::vector<Matrix>> explicit_generators;  // blocks per element

    // function
    std::string function_type = "f0";  // "f0" | "sech_pi" | "sampled"
    std::vector<double> sample_t;
    std::vector<double> sample_values;

    QuadratureSpec quadrature;
    Tolerances tolerances;
    long size_cap = 4096;
    std::uint64_t seed = 0;

    std::vector<double> betas;  // gap-sweep only
};

RunConfig parse_config(const json& doc);
RunConfig load_config(const std::string& path);

// The fully resolved config (defaults filled in) for report echoes.
json resolved_config(const RunConfig& cfg);

struct ModelInstance {
    std::shared_ptr<const StandardForm> sf;
    std::vector<AlgebraElement> family;
    WeightFunction weight = WeightFunction::f0();
};

ModelInstance build_model(const RunConfig& cfg);

// Command entry points; each returns the full output document as a string.
std::string cmd_verify(const RunConfig& cfg);
std::string cmd_spectrum(const RunConfig& cfg);
std::string cmd_gap_sweep(const RunConfig& cfg, const std::vector<double>& betas);
std::string cmd_markov_check(const RunConfig& cfg);

}  // namespace qms::cli

#endif
