#include "qms/spin_chain.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>

namespace qms {

namespace {

// Largest singular value; the local terms are Hermitian so this is the
// spectral radius.
double operator_norm(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace

Matrix pauli_x() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

Matrix pauli_y() {
    Matrix m(2, 2);
    m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
    return m;
}

Matrix pauli_z() {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

int Interaction::range() const {
    int r = 0;
    for (const auto& t : terms)
        for (int o : t.offsets) r = std::max(r, o);
    return r + 1;
}

Interaction ising_interaction(double j_coupling, double h_field) {
    Interaction phi;
    Matrix zz(4, 4);
    zz.setZero();
    const Matrix z = pauli_z();
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c)
                for (int d = 0; d < 2; ++d) zz(a * 2 + c, b * 2 + d) = z(a, b) * z(c, d);
    phi.terms.push_back({{0, 1}, j_coupling * zz, "J"});
    phi.terms.push_back({{0}, h_field * pauli_x(), "h"});
    return phi;
}

Matrix embed_sites(const Matrix& op, const std::vector<int>& sites, int length) {
    const int k = static_cast<int>(sites.size());
    if (op.rows() != (1 << k) || op.cols() != (1 << k))
        throw structural_error("embed_sites: operator size does not match site count");
    for (int s : sites)
        if (s < 0 || s >= length) throw structural_error("embed_sites: site out of range");
    std::vector<int> sorted = sites;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw structural_error("embed_sites: duplicate site");

    const int dim = 1 << length;
    Matrix out = Matrix::Zero(dim, dim);
    // Site s occupies bit (length - 1 - s); rest bits pass through.
    std::vector<int> bits(k);
    for (int i = 0; i < k; ++i) bits[i] = length - 1 - sites[i];

    int rest_mask = dim - 1;
    for (int b : bits) rest_mask &= ~(1 << b);

    for (int rest = 0; rest < dim; ++rest) {
        if ((rest & rest_mask) != rest) continue;
        for (int a = 0; a < (1 << k); ++a) {
            int row = rest;
            for (int i = 0; i < k; ++i)
                if (a & (1 << (k - 1 - i))) row |= 1 << bits[i];
            for (int b = 0; b < (1 << k); ++b) {
                if (op(a, b) == Complex(0.0, 0.0)) continue;
                int col = rest;
                for (int i = 0; i < k; ++i)
                    if (b & (1 << (k - 1 - i))) col |= 1 << bits[i];
                out(row, col) += op(a, b);
            }
        }
    }
    return out;
}

std::vector<std::pair<std::vector<int>, Matrix>> embedded_terms(const Interaction& phi,
                                                                const LatticeSpec& lattice) {
    const int L = lattice.length;
    if (phi.range() >= L + 1 && lattice.boundary == Boundary::periodic)
        throw structural_error("interaction range exceeds lattice length");
    std::vector<std::pair<std::vector<int>, Matrix>> out;
    for (const auto& term : phi.terms) {
        for (int j = 0; j < L; ++j) {
            std::vector<int> sites;
            bool in_range = true;
            for (int o : term.offsets) {
                int s = j + o;
                if (lattice.boundary == Boundary::periodic) {
                    s %= L;
                } else if (s >= L) {
                    in_range = false;
                    break;
                }
                sites.push_back(s);
            }
            if (!in_range) continue;
            // Wraparound can duplicate sites on tiny periodic chains.
            std::vector<int> sorted = sites;
            std::sort(sorted.begin(), sorted.end());
            if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
                throw structural_error("interaction term wraps onto itself; chain too short");
            out.emplace_back(std::move(sites), term.local_op);
        }
    }
    return out;
}

double interaction_norm(const Interaction& phi, double lambda, const LatticeSpec& lattice) {
    if (!(lambda > 0.0)) throw argument_error("interaction_norm: lambda must be > 0");
    const auto instances = embedded_terms(phi, lattice);
    std::vector<double> per_site(lattice.length, 0.0);
    for (const auto& [sites, op] : instances) {
        const double contrib = std::exp(lambda * static_cast<double>(sites.size())) *
                               operator_norm(op);
        for (int s : sites) per_site[s] += contrib;
    }
    return *std::max_element(per_site.begin(), per_site.end());
}

Matrix chain_hamiltonian(const Interaction& phi, const LatticeSpec& lattice) {
    const int dim = lattice.hilbert_dim();
    Matrix h = Matrix::Zero(dim, dim);
    for (const auto& [sites, op] : embedded_terms(phi, lattice))
        h += embed_sites(op, sites, lattice.length);
    return h;
}

FaithfulState gibbs_state(const Interaction& phi, double beta, const LatticeSpec& lattice) {
    if (beta < 0.0) throw argument_error("gibbs_state: beta must be >= 0");
    const Matrix h = chain_hamiltonian(phi, lattice);
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    const RealVector e = es.eigenvalues();
    const double emin = e.minCoeff();
    RealVector boltz(e.size());
    for (int i = 0; i < e.size(); ++i) boltz(i) = std::exp(-beta * (e(i) - emin));
    boltz /= boltz.sum();
    Matrix rho = es.eigenvectors() * boltz.cast<Complex>().asDiagonal() *
                 es.eigenvectors().adjoint();
    rho = 0.5 * (rho + rho.adjoint());
    rho /= rho.trace().real();
    return {AlgebraSpec({lattice.hilbert_dim()}), {rho}};
}

std::vector<AlgebraElement> pauli_family(const LatticeSpec& lattice) {
    const AlgebraSpec spec({lattice.hilbert_dim()});
    std::vector<AlgebraElement> out;
    const Matrix paulis[] = {pauli_x(), pauli_y(), pauli_z()};
    for (int j = 0; j < lattice.length; ++j)
        for (const Matrix& p : paulis)
            out.emplace_back(spec, std::vector<Matrix>{embed_sites(p, {j}, lattice.length)});
    return out;
}

AnalyticityMargin analyticity_margin(const Interaction& phi, double beta, double lambda,
                                     const LatticeSpec& lattice) {
    if (!(lambda > 0.0)) throw argument_error("analyticity_margin: lambda must be > 0");
    const double norm = interaction_norm(phi, lambda, lattice);
    AnalyticityMargin out;
    if (beta * norm == 0.0) {
        out.gamma = std::numeric_limits<double>::infinity();
        out.condition_ok = true;
    } else {
        out.gamma = lambda / (2.0 * beta * norm);
        out.condition_ok = beta * norm < lambda;
    }
    return out;
}

std::vector<SweepRow> gap_sweep(const Interaction& phi, const LatticeSpec& lattice,
                                const WeightFunction& f, const std::vector<double>& betas,
                                double lambda, long size_cap) {
    if (lattice.gns_dim() > size_cap)
        throw capacity_error("gap_sweep: GNS dimension " + std::to_string(lattice.gns_dim()) +
                             " exceeds size cap " + std::to_string(size_cap));
    const double norm = interaction_norm(phi, lambda, lattice);
    const auto family = pauli_family(lattice);

    std::vector<SweepRow> rows;
    for (double beta : betas) {
        SweepRow row;
        row.beta = beta;
        row.phi_norm_lambda = norm;
        row.lambda = lambda;
        row.condition_ok = analyticity_margin(phi, beta, lambda, lattice).condition_ok;

        auto sf = std::make_shared<const StandardForm>(gibbs_state(phi, beta, lattice));
        const GeneratorMatrix h = assemble_generator_spectral(sf, family, f, false);

        const Tolerances tol;
        const FixedSpace fixed = fixed_space(h, tol.kernel);
        row.dim_N = fixed.dimension();
        row.gap = spectral_gap(h, tol.kernel);
        if (row.dim_N == 1) {
            Matrix xi0_col = sf->xi0().flatten();
            row.ergodic = subspace_distance(fixed.basis, xi0_col).angle <= tol.subspace;
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace qms
