// qmslab: build Dirichlet generators on standard forms of block algebras
// and spin chains, verify the fixed-space/center identity, and run gap
// sweeps and Markovianity checks from a JSON config.

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>

#include "qms/cli.hpp"

namespace {

int run(const std::function<std::string()>& command, const std::string& out_path) {
    using clock = std::chrono::steady_clock;
    const auto start = clock::now();
    std::string result;
    try {
        result = command();
    } catch (const qms::capacity_error& e) {
        std::cerr << nlohmann::ordered_json{{"error", "capacity"}, {"message", e.what()}}.dump()
                  << "\n";
        return 3;
    } catch (const qms::numeric_error& e) {
        std::cerr << nlohmann::ordered_json{{"error", "numeric"},
                                            {"message", e.what()},
                                            {"residual", e.residual}}
                         .dump()
                  << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << nlohmann::ordered_json{{"error", "structural"}, {"message", e.what()}}.dump()
                  << "\n";
        return 1;
    }
    // Timing goes to stderr so that stdout/file output stays byte-identical
    // across repeated runs with the same seed.
    const auto elapsed =
        std::chrono::duration_cast<std::chrono::milliseconds>(clock::now() - start);
    std::cerr << "elapsed_ms " << elapsed.count() << "\n";

    if (out_path.empty()) {
        std::cout << result;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) {
            std::cerr << nlohmann::ordered_json{{"error", "structural"},
                                                {"message", "cannot open output: " + out_path}}
                             .dump()
                      << "\n";
            return 1;
        }
        out << result;
    }
    return 0;
}

std::vector<double> parse_betas(const std::string& csv) {
    std::vector<double> out;
    size_t pos = 0;
    while (pos < csv.size()) {
        size_t next = csv.find(',', pos);
        if (next == std::string::npos) next = csv.size();
        const std::string tok = csv.substr(pos, next - pos);
        if (!tok.empty()) out.push_back(std::stod(tok));
        pos = next + 1;
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dirichlet forms and Markovian semigroups on standard forms"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::string betas_csv;
    std::string format = "json";
    std::uint64_t seed = 0;
    bool seed_given = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "path to the JSON run config")->required();
        sub->add_option("--out", out_path, "output path (default: stdout)");
        sub->add_option("--format", format, "output format: json|csv");
        sub->add_option("--seed", seed, "override the root seed")
            ->each([&](const std::string&) { seed_given = true; });
    };

    CLI::App* verify = app.add_subcommand("verify", "run the fixed-space/center verification");
    add_common(verify);
    CLI::App* spectrum = app.add_subcommand("spectrum", "eigenvalues of the Dirichlet operator");
    add_common(spectrum);
    CLI::App* sweep = app.add_subcommand("gap-sweep", "temperature sweep for a spin chain");
    add_common(sweep);
    sweep->add_option("--betas", betas_csv, "comma-separated inverse temperatures");
    CLI::App* markov = app.add_subcommand("markov-check", "sampled Markovianity checks");
    add_common(markov);

    CLI11_PARSE(app, argc, argv);

    qms::cli::RunConfig cfg;
    try {
        cfg = qms::cli::load_config(config_path);
    } catch (const std::exception& e) {
        std::cerr << nlohmann::ordered_json{{"error", "structural"}, {"message", e.what()}}.dump()
                  << "\n";
        return 1;
    }
    if (seed_given) cfg.seed = seed;

    if (verify->parsed()) return run([&] { return qms::cli::cmd_verify(cfg); }, out_path);
    if (spectrum->parsed()) return run([&] { return qms::cli::cmd_spectrum(cfg); }, out_path);
    if (sweep->parsed()) {
        const std::vector<double> betas =
            betas_csv.empty() ? cfg.betas : parse_betas(betas_csv);
        return run([&] { return qms::cli::cmd_gap_sweep(cfg, betas); }, out_path);
    }
    if (markov->parsed()) return run([&] { return qms::cli::cmd_markov_check(cfg); }, out_path);
    return 1;
}
