#ifndef QMS_ERGODICITY_HPP
#define QMS_ERGODICITY_HPP

#include <cstdint>
#include <string>

#include "qms/generator.hpp"

namespace qms {

struct Tolerances {
    double kernel = 1e-9;
    double psd = 1e-10;
    double subspace = 1e-7;
    double cone = 1e-9;
};

struct FixedSpace {
    Matrix basis;  // orthonormal columns spanning ker H (flattened GNS index)
    double tol_used = 0.0;
    // gap between the largest accepted and smallest rejected eigenvalue
    double eigenvalue_margin = 0.0;
    bool ill_separated = false;

    int dimension() const { return static_cast<int>(basis.cols()); }
};

struct MarkovReport {
    bool unital = false;
    double unital_residual = 0.0;
    double positivity_min = 0.0;
    int submarkov_failures = 0;
    int positivity_samples = 0;
    int submarkov_samples = 0;
};

struct ErgodicWitness {
    int sample = 0;
    double best_pairing = 0.0;
};

struct ErgodicSampleReport {
    bool all_positive = false;
    std::vector<ErgodicWitness> failures;
};

struct VerificationReport {
    bool generates_M = false;
    int generated_dimension = 0;
    int dim_N = 0;
    int dim_center_space = 0;
    double max_principal_angle = 0.0;
    bool subspace_dim_mismatch = false;
    double spectral_gap = 0.0;
    double containment_residual = 0.0;  // max ||H c|| over center vectors c
    bool containment_ok = false;
    bool theorem_holds = false;
    bool ergodic = false;
    MarkovReport markov;
    std::vector<std::string> notes;
};

// T_t xi = e^{-tH} xi via the stored eigendecomposition; t >= 0.
GnsVector evolve(const GeneratorMatrix& h, double t, const GnsVector& xi);

// Eigenvectors with eigenvalue <= tol * max(1, ||H||).
FixedSpace fixed_space(const GeneratorMatrix& h, double tol);

// Orthonormalized {e_i xi0} for the center basis elements; B columns.
Matrix center_vector_space(const StandardForm& sf);

struct SubspaceDistance {
    double angle = 0.0;  // largest principal angle, radians
    bool dim_mismatch = false;
};

// Largest principal angle via singular values of the cross-Gram matrix.
// Unequal dimensions return pi/2 with the mismatch flag set.
SubspaceDistance subspace_distance(const Matrix& u, const Matrix& v);

// Smallest eigenvalue above the kernel threshold; 0 if none.
double spectral_gap(const GeneratorMatrix& h, double tol);

MarkovReport check_markovian(const GeneratorMatrix& h, int sample_count,
                             const std::vector<double>& t_grid, double tol,
                             std::uint64_t seed = 0);

ErgodicSampleReport check_ergodic(const GeneratorMatrix& h, int sample_count,
                                  const std::vector<double>& t_grid, double tol,
                                  std::uint64_t seed = 0);

// End-to-end Theorem 2.1 / Corollary 2.1 style verification: generation
// check, spectral assembly, fixed space vs center subspace, gap,
// Markovianity sampling, structural ergodicity verdict.
VerificationReport verify_theorem(std::shared_ptr<const StandardForm> sf,
                                  const std::vector<AlgebraElement>& family,
                                  const WeightFunction& f, const Tolerances& tol = {},
                                  std::uint64_t seed = 0, int markov_samples = 100);

}  // namespace qms

#endif
