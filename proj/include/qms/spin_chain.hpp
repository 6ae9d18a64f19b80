#ifndef QMS_SPIN_CHAIN_HPP
#define QMS_SPIN_CHAIN_HPP

#include "qms/ergodicity.hpp"

namespace qms {

enum class Boundary { open, periodic };

struct LatticeSpec {
    int length = 2;
    Boundary boundary = Boundary::periodic;

    LatticeSpec(int L, Boundary b) : length(L), boundary(b) {
        if (L < 1) throw argument_error("LatticeSpec: length must be >= 1");
    }

    int hilbert_dim() const { return 1 << length; }
    long gns_dim() const { return 1L << (2 * length); }
};

// One translation-invariant term template: a Hermitian operator on the
// sites {j + o : o in offsets} for every translate j.
struct InteractionTerm {
    std::vector<int> offsets;  // distinct, starting at 0
    Matrix local_op;           // 2^{|offsets|} x 2^{|offsets|}, Hermitian
    std::string name;
};

struct Interaction {
    std::vector<InteractionTerm> terms;
    bool translation_invariant = true;

    int range() const;
};

struct SweepRow {
    double beta = 0.0;
    double phi_norm_lambda = 0.0;
    double lambda = 0.0;
    bool condition_ok = false;
    double gap = 0.0;
    int dim_N = 0;
    bool ergodic = false;
};

Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();

// Transverse-field Ising: J sigma_z sigma_z bonds + h sigma_x fields.
Interaction ising_interaction(double j_coupling, double h_field);

// Embed a k-site operator at the given absolute sites of the chain.
Matrix embed_sites(const Matrix& op, const std::vector<int>& sites, int length);

// All embedded instances of the interaction (translate per site, with
// wraparound for periodic and truncation for open boundaries).
std::vector<std::pair<std::vector<int>, Matrix>> embedded_terms(const Interaction& phi,
                                                                const LatticeSpec& lattice);

// sup over sites i of sum_{X containing i} e^{lambda |X|} ||Phi_X||.
double interaction_norm(const Interaction& phi, double lambda, const LatticeSpec& lattice);

Matrix chain_hamiltonian(const Interaction& phi, const LatticeSpec& lattice);

// rho = e^{-beta H} / Z on the single block M_{2^L}; spectrum-shifted
// against overflow; beta = 0 gives the tracial state.
FaithfulState gibbs_state(const Interaction& phi, double beta, const LatticeSpec& lattice);

// {sigma_x, sigma_y, sigma_z} at every site (identity omitted: its
// derivation vanishes identically); generates M_{2^L}.
std::vector<AlgebraElement> pauli_family(const LatticeSpec& lattice);

struct AnalyticityMargin {
    double gamma = 0.0;  // infinity sentinel when beta * norm == 0
    bool condition_ok = false;
};

// gamma = lambda / (2 beta ||Phi||_lambda); condition beta ||Phi||_lambda < lambda.
// Informational at finite volume, where every element is entire.
AnalyticityMargin analyticity_margin(const Interaction& phi, double beta, double lambda,
                                     const LatticeSpec& lattice);

std::vector<SweepRow> gap_sweep(const Interaction& phi, const LatticeSpec& lattice,
                                const WeightFunction& f, const std::vector<double>& betas,
                                double lambda, long size_cap = 4096);

}  // namespace qms

#endif
