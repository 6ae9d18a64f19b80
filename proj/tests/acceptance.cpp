// End-to-end acceptance checks; prints one PASS/FAIL line per criterion
// and exits nonzero if any fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "qms/cli.hpp"
#include "qms/spin_chain.hpp"

using namespace qms;

namespace {

struct Config {
    std::shared_ptr<const StandardForm> sf;
    std::vector<AlgebraElement> family;
    GeneratorMatrix h;
};

std::vector<AlgebraElement> random_hermitians(const AlgebraSpec& spec, int count,
                                              std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<AlgebraElement> out;
    for (int k = 0; k < count; ++k) {
        std::vector<Matrix> blocks;
        for (int b = 0; b < spec.num_blocks(); ++b) {
            const int n = spec.block_dim(b);
            Matrix m(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) m(i, j) = Complex(gauss(rng), gauss(rng));
            blocks.push_back(0.5 * (m + m.adjoint()));
        }
        out.emplace_back(spec, std::move(blocks));
    }
    return out;
}

GnsVector random_j_real(const StandardForm& sf, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<Matrix> blocks;
    for (int b = 0; b < sf.spec().num_blocks(); ++b) {
        const int n = sf.spec().block_dim(b);
        Matrix m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m(i, j) = Complex(gauss(rng), gauss(rng));
        blocks.push_back(0.5 * (m + m.adjoint()));
    }
    return {sf.spec(), std::move(blocks)};
}

Matrix pauli(char which) {
    Matrix m(2, 2);
    if (which == 'x')
        m << 0, 1, 1, 0;
    else
        m << 1, 0, 0, -1;
    return m;
}

// Random configurations shared by several criteria: 4 instances for each
// of the five block shapes, random faithful states, 3 random Hermitian
// generators each.
std::vector<Config> make_configs() {
    const std::vector<std::vector<int>> shapes{{2}, {3}, {2, 2}, {2, 3}, {1, 4}};
    std::mt19937_64 rng(20240401);
    std::vector<Config> out;
    for (int rep = 0; rep < 4; ++rep) {
        for (const auto& dims : shapes) {
            Config cfg;
            const AlgebraSpec spec(dims);
            cfg.sf = std::make_shared<const StandardForm>(FaithfulState::random(spec, rng()));
            cfg.family = random_hermitians(spec, 3, rng);
            cfg.h = assemble_generator_spectral(cfg.sf, cfg.family, WeightFunction::f0(), true);
            out.push_back(std::move(cfg));
        }
    }
    return out;
}

// Delta^{is} applied entrywise in the modular basis.
Vector modular_unitary(const StandardForm& sf, double s, const Vector& v) {
    const RealVector& lam = sf.modular_log_eigenvalues();
    Vector out(v.size());
    for (int i = 0; i < v.size(); ++i) out(i) = std::exp(Complex(0.0, s * lam(i))) * v(i);
    return out;
}

// D_k(t) eta = sigma_{t - i/4}(x_k) eta - eta sigma_{t + i/4}(x_k); for
// self-adjoint x_k the right factor is the adjoint of the left one.
GnsVector derivation_at(const StandardForm& sf, const AlgebraElement& x, double t,
                        const GnsVector& eta) {
    const auto a = sf.modular_flow_modular(Complex(t, -0.25), x);
    std::vector<Matrix> blocks;
    for (int b = 0; b < sf.spec().num_blocks(); ++b)
        blocks.push_back(a[b] * eta.block(b) - eta.block(b) * a[b].adjoint());
    return {sf.spec(), std::move(blocks)};
}

bool run_cli(const std::string& args, const std::string& out_path) {
    const std::string cmd =
        std::string(QMSLAB_CLI_PATH) + " " + args + " --out " + out_path + " 2>/dev/null";
    return std::system(cmd.c_str()) == 0;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int failures = 0;

void report(int index, bool ok, const std::string& what) {
    std::printf("[%s] %2d %s\n", ok ? "PASS" : "FAIL", index, what.c_str());
    if (!ok) ++failures;
}

}  // namespace

int main() {
    const auto t_start = std::chrono::steady_clock::now();
    std::vector<Config> configs = make_configs();
    const double build_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();

    // 1: on every random configuration the kernel of H equals the center
    // subspace [Z(M) xi0]; total runtime budget 30 s.
    {
        bool ok = configs.size() == 20;
        for (const auto& cfg : configs) {
            const FixedSpace fs = fixed_space(cfg.h, 1e-9);
            const Matrix center = center_vector_space(*cfg.sf);
            const auto dist = subspace_distance(fs.basis, center);
            ok = ok && generated_subalgebra(cfg.family).generates_M &&
                 fs.dimension() == cfg.sf->spec().num_blocks() && !dist.dim_mismatch &&
                 dist.angle <= 1e-7;
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
        ok = ok && elapsed <= 30.0;
        report(1, ok, "kernel of H equals the center subspace on 20 random configurations");
    }

    // 2: factor configurations are ergodic with a gap.
    {
        bool ok = true;
        int factors = 0;
        for (const auto& cfg : configs) {
            if (!cfg.sf->spec().is_factor()) continue;
            ++factors;
            const FixedSpace fs = fixed_space(cfg.h, 1e-9);
            Matrix xi0 = cfg.sf->xi0().flatten();
            ok = ok && fs.dimension() == 1 &&
                 subspace_distance(fs.basis, xi0).angle <= 1e-8 &&
                 spectral_gap(cfg.h, 1e-9) > 0.0;
        }
        ok = ok && factors == 8;
        report(2, ok, "factor configurations: simple kernel spanned by xi0, positive gap");
    }

    // 3: a non-generating family enlarges the kernel while the center
    // subspace stays contained in it.
    {
        const AlgebraSpec m2({2});
        auto sf = std::make_shared<const StandardForm>(FaithfulState::tracial(m2));
        const std::vector<AlgebraElement> family{{m2, {pauli('z')}}};
        const auto h = assemble_generator_spectral(sf, family, WeightFunction::f0());
        const FixedSpace fs = fixed_space(h, 1e-9);
        const Matrix center = center_vector_space(*sf);
        double contain = 0.0;
        for (int i = 0; i < center.cols(); ++i)
            contain = std::max(contain, (h.matrix * center.col(i)).norm());
        report(3, fs.dimension() == 2 && contain <= 1e-9,
               "non-generating family: kernel exceeds the center, containment still holds");
    }

    // 4: hand-derived spectrum {0, 2, 2, 4} for the tracial qubit with
    // generators sigma_x, sigma_z.
    {
        const AlgebraSpec m2({2});
        auto sf = std::make_shared<const StandardForm>(FaithfulState::tracial(m2));
        const std::vector<AlgebraElement> family{{m2, {pauli('x')}}, {m2, {pauli('z')}}};
        const auto h = assemble_generator_spectral(sf, family, WeightFunction::f0());
        const double expected[] = {0.0, 2.0, 2.0, 4.0};
        bool ok = h.eigenvalues.size() == 4;
        for (int i = 0; ok && i < 4; ++i)
            ok = std::abs(h.eigenvalues(i) - expected[i]) <= 1e-9;
        report(4, ok, "tracial qubit closed-form spectrum {0, 2, 2, 4}");
    }

    // 5: the spectral assembly agrees with independent time-domain
    // quadrature for both built-in weights.
    {
        bool ok = true;
        const QuadratureSpec quad{10.0, 2001};
        const WeightFunction weights[] = {WeightFunction::f0(), WeightFunction::sech_pi()};
        for (const auto& cfg : configs) {
            for (const auto& f : weights) {
                const auto hs = assemble_generator_spectral(cfg.sf, cfg.family, f, false);
                const auto hq =
                    assemble_generator_quadrature(cfg.sf, cfg.family, f, quad, false);
                ok = ok && (hs.matrix - hq.matrix).norm() <= 1e-6;
            }
        }
        report(5, ok, "spectral and quadrature assemblies agree to 1e-6");
    }

    // 6: closed-form transform of the built-in weight against quadrature.
    {
        const WeightFunction closed = WeightFunction::f0();
        const WeightFunction sampled = WeightFunction::sampled([](double t) {
            return 2.0 / (std::exp(2.0 * M_PI * t) + std::exp(-2.0 * M_PI * t));
        });
        const QuadratureSpec quad{10.0, 2001};
        bool ok = true;
        for (double w : {0.0, 1.0, -1.0, 4.0, -4.0, 10.0, -10.0})
            ok = ok &&
                 std::abs(closed.spectral_weight(w) - sampled.spectral_weight(w, quad)) <= 1e-8;
        report(6, ok, "closed-form spectral transform matches quadrature at sampled frequencies");
    }

    // 7: Markovianity: invariant xi0, positive pairings on 1000 cone
    // pairs, no sub-Markov violations on order-interval samples.
    {
        bool ok = true;
        for (int idx : {0, 2}) {  // one factor and one direct-sum shape
            const Config& cfg = configs[idx];
            ok = ok && gns_norm(apply(cfg.h, cfg.sf->xi0())) <= 1e-10;
            const MarkovReport rep = check_markovian(cfg.h, 1000, {0.1, 1.0, 10.0}, 1e-8, 5);
            ok = ok && rep.unital && rep.positivity_min >= -1e-9 &&
                 rep.positivity_samples == 1000 && rep.submarkov_failures == 0 &&
                 rep.submarkov_samples >= 500;
        }
        report(7, ok, "Markovianity: unital, cone-positive pairings, no sub-Markov violations");
    }

    // 8: Dirichlet-form contraction properties on random J-real vectors.
    {
        const Config& cfg = configs[2];  // a two-block shape
        std::mt19937_64 rng(808);
        bool ok = true;
        for (int trial = 0; trial < 100 && ok; ++trial) {
            const GnsVector xi = random_j_real(*cfg.sf, rng);
            const ConeDecomposition d = cfg.sf->cone_project(xi, 1e-9);
            ok = ok && d.residual <= 1e-9;
            ok = ok && form_eval(cfg.h, d.plus, d.minus).real() <= 1e-8;
            const GnsVector met = cfg.sf->meet(xi, cfg.sf->xi0());
            ok = ok && form_eval(cfg.h, met, met).real() <=
                           form_eval(cfg.h, xi, xi).real() + 1e-7;
        }
        report(8, ok, "Beurling-Deny pairing and contraction under the meet with xi0");
    }

    // 9: kernel invariance suite on every random configuration:
    // Delta^{is} and J preserve ker H, the cone parts of a J-real kernel
    // vector stay in the kernel, and kernel membership is equivalent to
    // vanishing per-generator energies / derivations.
    {
        bool ok = true;
        std::mt19937_64 rng(909);
        std::uniform_real_distribution<double> unif(-3.0, 3.0);
        for (const auto& cfg : configs) {
            const FixedSpace fs = fixed_space(cfg.h, 1e-9);
            const Matrix& basis = fs.basis;
            const auto in_span = [&](const Vector& v) {
                return (v - basis * (basis.adjoint() * v)).norm() <= 1e-9 * std::max(1.0, v.norm());
            };
            const double hnorm = std::max(1.0, cfg.h.operator_norm());
            for (int c = 0; c < fs.dimension() && ok; ++c) {
                const Vector v = basis.col(c);
                // modular invariance
                ok = ok && in_span(modular_unitary(*cfg.sf, unif(rng), v));
                // conjugation invariance
                const GnsVector gv = GnsVector::unflatten(cfg.sf->spec(), v);
                ok = ok && in_span(cfg.sf->j_conjugate(gv).flatten());
                // cone parts of a J-real kernel vector remain in the kernel
                const GnsVector jr = gv + cfg.sf->j_conjugate(gv);
                if (gns_norm(jr) > 1e-6) {
                    const ConeDecomposition d = cfg.sf->cone_project(jr, 1e-9);
                    ok = ok && (cfg.h.matrix * d.plus.flatten()).norm() <= 1e-7 * hnorm &&
                         (cfg.h.matrix * d.minus.flatten()).norm() <= 1e-7 * hnorm;
                }
                // per-generator energies and sampled derivations vanish
                for (std::size_t k = 0; k < cfg.h.per_k.size() && ok; ++k) {
                    ok = ok && per_k_energy(cfg.h, static_cast<int>(k), gv) <= 1e-9;
                    for (double t : {0.0, 0.6, -1.3})
                        ok = ok && gns_norm(derivation_at(*cfg.sf, cfg.family[k], t, gv)) <= 1e-8;
                }
            }
            // converse: the first eigenvector above the kernel carries energy
            if (ok && fs.dimension() < cfg.h.eigenvalues.size()) {
                const GnsVector u = GnsVector::unflatten(
                    cfg.sf->spec(), cfg.h.eigenvectors.col(fs.dimension()));
                double total = 0.0;
                for (std::size_t k = 0; k < cfg.h.per_k.size(); ++k)
                    total += per_k_energy(cfg.h, static_cast<int>(k), u);
                ok = ok && total > 1e-9;
            }
        }
        report(9, ok, "kernel invariances: modular flow, conjugation, cone parts, energies");
    }

    // 10: transverse-field Ising chain, L = 4, J = h = 1: ergodic with a
    // gap at every temperature; interaction norm matches hand arithmetic.
    {
        const auto t0 = std::chrono::steady_clock::now();
        const Interaction phi = ising_interaction(1.0, 1.0);
        const LatticeSpec lattice(4, Boundary::periodic);
        const double lam = 0.5;
        const auto rows = gap_sweep(phi, lattice, WeightFunction::f0(), {0.0, 0.1, 0.3}, lam);
        const double sweep_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

        const double hand_norm = 2.0 * std::exp(2.0 * lam) + std::exp(lam);  // ~7.0853
        bool ok = rows.size() == 3 && sweep_seconds <= 120.0;
        for (std::size_t i = 0; ok && i < rows.size(); ++i) {
            const auto& r = rows[i];
            ok = r.dim_N == 1 && r.ergodic && r.gap > 0.0 &&
                 std::abs(r.phi_norm_lambda - hand_norm) <= 1e-9 &&
                 std::abs(r.phi_norm_lambda - 7.0853) <= 1e-3 &&
                 r.condition_ok == (r.beta * hand_norm < lam);
        }
        report(10, ok, "Ising chain sweep: ergodic rows with gap, interaction norm as derived");
    }

    // 11: fixed seed implies byte-identical CLI output across reruns.
    {
        namespace fs = std::filesystem;
        const fs::path dir = fs::temp_directory_path() / "qmslab_acceptance";
        fs::create_directories(dir);
        const fs::path cfg_blocks = dir / "blocks.json";
        {
            std::ofstream out(cfg_blocks);
            out << R"({"model": {"type": "blocks", "blocks": [2, 3]},
                       "state": {"type": "random_faithful", "seed": 7},
                       "generators": {"type": "random_hermitian", "count": 3, "seed": 8},
                       "seed": 42})";
        }
        const fs::path cfg_chain = dir / "chain.json";
        {
            std::ofstream out(cfg_chain);
            out << R"({"model": {"type": "spin_chain", "length": 3},
                       "betas": [0.0, 0.1]})";
        }

        bool ok = true;
        const std::pair<std::string, std::string> runs[] = {
            {"verify --config " + cfg_blocks.string(), "verify"},
            {"markov-check --config " + cfg_blocks.string(), "markov"},
            {"spectrum --config " + cfg_blocks.string() + " --format csv", "spectrum"},
            {"gap-sweep --config " + cfg_chain.string() + " --format csv", "sweep"},
        };
        for (const auto& [args, tag] : runs) {
            const std::string a = (dir / (tag + "_a.out")).string();
            const std::string b = (dir / (tag + "_b.out")).string();
            ok = ok && run_cli(args, a) && run_cli(args, b);
            const std::string sa = slurp(a), sb = slurp(b);
            ok = ok && !sa.empty() && sa == sb;
        }
        report(11, ok, "fixed-seed CLI reruns are byte-identical");
    }

    (void)build_seconds;
    return failures == 0 ? 0 : 1;
}
