#include "qms/cli.hpp"

#include <cstdio>
#include <fstream>

namespace qms::cli {

namespace {

void require_keys(const json& obj, const std::string& where,
                  const std::vector<std::string>& allowed) {
    if (!obj.is_object()) throw structural_error("config: '" + where + "' must be an object");
    for (const auto& [key, _] : obj.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            throw structural_error("config: unknown key '" + key + "' in '" + where + "'");
    }
}

Matrix parse_matrix(const json& rows, const std::string& where) {
    if (!rows.is_array() || rows.empty())
        throw structural_error("config: '" + where + "' must be a nonempty array of rows");
    const int n = static_cast<int>(rows.size());
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) {
        const auto& row = rows[i];
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw structural_error("config: '" + where + "' must be square");
        for (int j = 0; j < n; ++j) {
            const auto& e = row[j];
            if (e.is_number()) {
                m(i, j) = Complex(e.get<double>(), 0.0);
            } else if (e.is_array() && e.size() == 2) {
                m(i, j) = Complex(e[0].get<double>(), e[1].get<double>());
            } else {
                throw structural_error("config: matrix entries must be numbers or [re, im]");
            }
        }
    }
    return m;
}

json dump_matrix(const Matrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j)
            row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

AlgebraSpec spec_of(const RunConfig& cfg) {
    if (cfg.model_type == "blocks") return AlgebraSpec(cfg.blocks);
    return AlgebraSpec({1 << cfg.chain_length});
}

WeightFunction weight_of(const RunConfig& cfg) {
    if (cfg.function_type == "f0") return WeightFunction::f0();
    if (cfg.function_type == "sech_pi") return WeightFunction::sech_pi();
    // sampled: piecewise-linear interpolation of the tabulated values,
    // zero outside the table.  No strip data, so admissibility check (b)
    // reports not-verifiable.
    const std::vector<double> ts = cfg.sample_t;
    const std::vector<double> vs = cfg.sample_values;
    return WeightFunction::sampled([ts, vs](double t) {
        if (t <= ts.front() || t >= ts.back()) return 0.0;
        const auto it = std::upper_bound(ts.begin(), ts.end(), t);
        const size_t i = static_cast<size_t>(it - ts.begin());
        const double w = (t - ts[i - 1]) / (ts[i] - ts[i - 1]);
        return (1.0 - w) * vs[i - 1] + w * vs[i];
    });
}

std::vector<AlgebraElement> random_hermitian_family(const AlgebraSpec& spec, int count,
                                                    std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<AlgebraElement> out;
    for (int k = 0; k < count; ++k) {
        std::vector<Matrix> blocks;
        double norm2 = 0.0;
        for (int b = 0; b < spec.num_blocks(); ++b) {
            const int n = spec.block_dim(b);
            Matrix g(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
            Matrix x = 0.5 * (g + g.adjoint());
            norm2 += x.squaredNorm();
            blocks.push_back(std::move(x));
        }
        const double norm = std::sqrt(norm2);
        for (auto& bmat : blocks) bmat /= norm;
        out.emplace_back(spec, std::move(blocks));
    }
    return out;
}

}  // namespace

RunConfig parse_config(const json& doc) {
    require_keys(doc, "config",
                 {"model", "state", "generators", "function", "quadrature", "tolerances",
                  "size_cap", "seed", "betas"});
    RunConfig cfg;

    if (!doc.contains("model")) throw structural_error("config: 'model' is required");
    const json& model = doc.at("model");
    require_keys(model, "model", {"type", "blocks", "length", "boundary", "J", "h", "lambda"});
    cfg.model_type = model.at("type").get<std::string>();
    if (cfg.model_type == "blocks") {
        cfg.blocks = model.at("blocks").get<std::vector<int>>();
    } else if (cfg.model_type == "spin_chain") {
        cfg.chain_length = model.at("length").get<int>();
        if (model.contains("boundary")) {
            const std::string b = model.at("boundary").get<std::string>();
            if (b == "open") cfg.boundary = Boundary::open;
            else if (b == "periodic") cfg.boundary = Boundary::periodic;
            else throw structural_error("config: boundary must be 'open' or 'periodic'");
        }
        if (model.contains("J")) cfg.coupling_j = model.at("J").get<double>();
        if (model.contains("h")) cfg.coupling_h = model.at("h").get<double>();
        if (model.contains("lambda")) cfg.lambda = model.at("lambda").get<double>();
    } else {
        throw structural_error("config: model.type must be 'blocks' or 'spin_chain'");
    }

    const json state = doc.value("state", json{{"type", "tracial"}});
    require_keys(state, "state", {"type", "beta", "seed", "rho"});
    cfg.state_type = state.value("type", std::string("tracial"));
    cfg.beta = state.value("beta", 0.0);
    cfg.state_seed = state.value("seed", std::uint64_t{0});
    if (cfg.state_type == "explicit") {
        if (!state.contains("rho"))
            throw structural_error("config: explicit state requires 'rho'");
        for (const auto& block : state.at("rho"))
            cfg.explicit_rho.push_back(parse_matrix(block, "state.rho"));
    }

    const json gens = doc.value("generators", json{{"type", "random_hermitian"}});
    require_keys(gens, "generators", {"type", "count", "seed", "elements"});
    cfg.generator_type = gens.value("type", std::string("random_hermitian"));
    cfg.generator_count = gens.value("count", 3);
    cfg.generator_seed = gens.value("seed", std::uint64_t{0});
    if (cfg.generator_type == "explicit") {
        if (!gens.contains("elements"))
            throw structural_error("config: explicit generators require 'elements'");
        for (const auto& elem : gens.at("elements")) {
            std::vector<Matrix> blocks;
            for (const auto& block : elem)
                blocks.push_back(parse_matrix(block, "generators.elements"));
            cfg.explicit_generators.push_back(std::move(blocks));
        }
    }

    const json func = doc.value("function", json{{"type", "f0"}});
    require_keys(func, "function", {"type", "data"});
    cfg.function_type = func.value("type", std::string("f0"));
    if (cfg.function_type != "f0" && cfg.function_type != "sech_pi" &&
        cfg.function_type != "sampled")
        throw structural_error("config: function.type must be f0, sech_pi, or sampled");
    if (cfg.function_type == "sampled") {
        if (!func.contains("data"))
            throw structural_error("config: sampled function requires 'data'");
        const json& data = func.at("data");
        require_keys(data, "function.data", {"t", "values"});
        cfg.sample_t = data.at("t").get<std::vector<double>>();
        cfg.sample_values = data.at("values").get<std::vector<double>>();
        if (cfg.sample_t.size() != cfg.sample_values.size() || cfg.sample_t.size() < 2)
            throw structural_error("config: sampled function needs matching t/values arrays");
    }

    const json quad = doc.value("quadrature", json::object());
    require_keys(quad, "quadrature", {"t_max", "nodes"});
    cfg.quadrature.t_max = quad.value("t_max", 10.0);
    cfg.quadrature.nodes = quad.value("nodes", 2001);
    if (cfg.quadrature.nodes < 3 || cfg.quadrature.nodes % 2 == 0)
        throw structural_error("config: quadrature.nodes must be odd and >= 3");

    const json tols = doc.value("tolerances", json::object());
    require_keys(tols, "tolerances", {"kernel", "psd", "subspace", "cone"});
    cfg.tolerances.kernel = tols.value("kernel", 1e-9);
    cfg.tolerances.psd = tols.value("psd", 1e-10);
    cfg.tolerances.subspace = tols.value("subspace", 1e-7);
    cfg.tolerances.cone = tols.value("cone", 1e-9);
    for (double t : {cfg.tolerances.kernel, cfg.tolerances.psd, cfg.tolerances.subspace,
                     cfg.tolerances.cone})
        if (!(t > 0.0)) throw structural_error("config: all tolerances must be > 0");

    cfg.size_cap = doc.value("size_cap", 4096L);
    cfg.seed = doc.value("seed", std::uint64_t{0});
    cfg.betas = doc.value("betas", std::vector<double>{});
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw structural_error("cannot open config file: " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw structural_error(std::string("config parse error: ") + e.what());
    }
    return parse_config(doc);
}

json resolved_config(const RunConfig& cfg) {
    json model;
    model["type"] = cfg.model_type;
    if (cfg.model_type == "blocks") {
        model["blocks"] = cfg.blocks;
    } else {
        model["length"] = cfg.chain_length;
        model["boundary"] = cfg.boundary == Boundary::open ? "open" : "periodic";
        model["J"] = cfg.coupling_j;
        model["h"] = cfg.coupling_h;
        model["lambda"] = cfg.lambda;
    }

    json state;
    state["type"] = cfg.state_type;
    state["beta"] = cfg.beta;
    state["seed"] = cfg.state_seed;
    if (!cfg.explicit_rho.empty()) {
        json blocks = json::array();
        for (const auto& b : cfg.explicit_rho) blocks.push_back(dump_matrix(b));
        state["rho"] = std::move(blocks);
    }

    json gens;
    gens["type"] = cfg.generator_type;
    gens["count"] = cfg.generator_count;
    gens["seed"] = cfg.generator_seed;

    json func;
    func["type"] = cfg.function_type;
    if (cfg.function_type == "sampled")
        func["data"] = json{{"t", cfg.sample_t}, {"values", cfg.sample_values}};

    json out;
    out["model"] = std::move(model);
    out["state"] = std::move(state);
    out["generators"] = std::move(gens);
    out["function"] = std::move(func);
    out["quadrature"] = json{{"t_max", cfg.quadrature.t_max}, {"nodes", cfg.quadrature.nodes}};
    out["tolerances"] = json{{"kernel", cfg.tolerances.kernel},
                             {"psd", cfg.tolerances.psd},
                             {"subspace", cfg.tolerances.subspace},
                             {"cone", cfg.tolerances.cone}};
    out["size_cap"] = cfg.size_cap;
    out["seed"] = cfg.seed;
    out["betas"] = cfg.betas;
    return out;
}

ModelInstance build_model(const RunConfig& cfg) {
    ModelInstance inst;
    const AlgebraSpec spec = spec_of(cfg);
    if (spec.gns_dim() > cfg.size_cap)
        throw capacity_error("model GNS dimension " + std::to_string(spec.gns_dim()) +
                             " exceeds size cap " + std::to_string(cfg.size_cap));

    if (cfg.model_type == "spin_chain") {
        const LatticeSpec lattice(cfg.chain_length, cfg.boundary);
        const Interaction phi = ising_interaction(cfg.coupling_j, cfg.coupling_h);
        const double beta = cfg.state_type == "gibbs" ? cfg.beta : 0.0;
        inst.sf = std::make_shared<const StandardForm>(gibbs_state(phi, beta, lattice));
        inst.family = pauli_family(lattice);
    } else {
        FaithfulState state = [&]() {
            if (cfg.state_type == "tracial") return FaithfulState::tracial(spec);
            if (cfg.state_type == "random_faithful")
                return FaithfulState::random(spec, cfg.state_seed);
            if (cfg.state_type == "explicit") return FaithfulState(spec, cfg.explicit_rho);
            throw structural_error("config: unsupported state.type '" + cfg.state_type +
                                   "' for blocks model");
        }();
        inst.sf = std::make_shared<const StandardForm>(std::move(state));

        if (cfg.generator_type == "random_hermitian") {
            inst.family = random_hermitian_family(spec, cfg.generator_count, cfg.generator_seed);
        } else if (cfg.generator_type == "explicit") {
            for (const auto& blocks : cfg.explicit_generators)
                inst.family.emplace_back(spec, blocks);
        } else {
            throw structural_error("config: unsupported generators.type '" + cfg.generator_type +
                                   "' for blocks model");
        }
    }
    inst.weight = weight_of(cfg);
    return inst;
}

std::string cmd_verify(const RunConfig& cfg) {
    const ModelInstance inst = build_model(cfg);
    const VerificationReport rep =
        verify_theorem(inst.sf, inst.family, inst.weight, cfg.tolerances, cfg.seed);

    json out;
    out["tool"] = "qmslab";
    out["version"] = "1.0.0";
    out["command"] = "verify";
    out["config"] = resolved_config(cfg);
    out["report"] = json{
        {"generates_M", rep.generates_M},
        {"generated_dimension", rep.generated_dimension},
        {"dim_N", rep.dim_N},
        {"dim_center_space", rep.dim_center_space},
        {"max_principal_angle", rep.max_principal_angle},
        {"subspace_dim_mismatch", rep.subspace_dim_mismatch},
        {"spectral_gap", rep.spectral_gap},
        {"containment_residual", rep.containment_residual},
        {"containment_ok", rep.containment_ok},
        {"theorem_holds", rep.theorem_holds},
        {"ergodic", rep.ergodic},
        {"markov",
         json{{"unital", rep.markov.unital},
              {"unital_residual", rep.markov.unital_residual},
              {"positivity_min", rep.markov.positivity_min},
              {"positivity_samples", rep.markov.positivity_samples},
              {"submarkov_failures", rep.markov.submarkov_failures},
              {"submarkov_samples", rep.markov.submarkov_samples}}},
        {"notes", rep.notes}};
    return out.dump(2) + "\n";
}

std::string cmd_spectrum(const RunConfig& cfg) {
    const ModelInstance inst = build_model(cfg);
    const GeneratorMatrix h =
        assemble_generator_spectral(inst.sf, inst.family, inst.weight, false);
    std::string out = "index,eigenvalue\n";
    for (int i = 0; i < h.eigenvalues.size(); ++i)
        out += std::to_string(i) + "," + format_double(h.eigenvalues(i)) + "\n";
    return out;
}

std::string cmd_gap_sweep(const RunConfig& cfg, const std::vector<double>& betas) {
    if (cfg.model_type != "spin_chain")
        throw structural_error("gap-sweep requires a spin_chain model");
    const LatticeSpec lattice(cfg.chain_length, cfg.boundary);
    const Interaction phi = ising_interaction(cfg.coupling_j, cfg.coupling_h);
    const auto rows =
        gap_sweep(phi, lattice, weight_of(cfg), betas, cfg.lambda, cfg.size_cap);

    std::string out = "beta,phi_norm_lambda,lambda,condition_ok,gap,dim_N,ergodic\n";
    for (const auto& r : rows) {
        out += format_double(r.beta) + "," + format_double(r.phi_norm_lambda) + "," +
               format_double(r.lambda) + "," + (r.condition_ok ? "true" : "false") + "," +
               format_double(r.gap) + "," + std::to_string(r.dim_N) + "," +
               (r.ergodic ? "true" : "false") + "\n";
    }
    return out;
}

std::string cmd_markov_check(const RunConfig& cfg) {
    const ModelInstance inst = build_model(cfg);
    const GeneratorMatrix h =
        assemble_generator_spectral(inst.sf, inst.family, inst.weight, false);
    const std::vector<double> t_grid = {0.1, 1.0, 10.0};
    const MarkovReport rep = check_markovian(h, 1000, t_grid, 1e-9, cfg.seed);

    json out;
    out["tool"] = "qmslab";
    out["version"] = "1.0.0";
    out["command"] = "markov-check";
    out["config"] = resolved_config(cfg);
    out["t_grid"] = t_grid;
    out["markov"] = json{{"unital", rep.unital},
                         {"unital_residual", rep.unital_residual},
                         {"positivity_min", rep.positivity_min},
                         {"positivity_samples", rep.positivity_samples},
                         {"submarkov_failures", rep.submarkov_failures},
                         {"submarkov_samples", rep.submarkov_samples}};
    return out.dump(2) + "\n";
}

}  // namespace qms::cli
