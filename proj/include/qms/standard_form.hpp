#ifndef QMS_STANDARD_FORM_HPP
#define QMS_STANDARD_FORM_HPP

#include <memory>
#include <random>
#include <vector>

#include "qms/algebra.hpp"

namespace qms {

// Faithful state on a block algebra: density matrix with trace 1 and
// strictly positive spectrum, kept together with its eigendecomposition.
class FaithfulState {
public:
    FaithfulState(AlgebraSpec spec, std::vector<Matrix> rho_blocks);

    static FaithfulState tracial(const AlgebraSpec& spec);
    static FaithfulState random(const AlgebraSpec& spec, std::uint64_t seed);

    const AlgebraSpec& spec() const { return spec_; }
    const Matrix& rho_block(int b) const { return rho_blocks_[b]; }
    // Eigenvalues of rho restricted to block b, ascending.
    const RealVector& eigenvalues(int b) const { return eigvals_[b]; }
    // Orthonormal eigenvectors (columns) of block b.
    const Matrix& eigenvectors(int b) const { return eigvecs_[b]; }
    double min_eigenvalue() const { return min_eig_; }

private:
    AlgebraSpec spec_;
    std::vector<Matrix> rho_blocks_;
    std::vector<RealVector> eigvals_;
    std::vector<Matrix> eigvecs_;
    double min_eig_ = 0.0;
};

// Element of the GNS space in the Hilbert-Schmidt picture, stored
// blockwise in the eigenbasis of rho (the modular basis).
class GnsVector {
public:
    GnsVector(AlgebraSpec spec, std::vector<Matrix> blocks);

    static GnsVector zero(const AlgebraSpec& spec);

    const AlgebraSpec& spec() const { return spec_; }
    const Matrix& block(int b) const { return blocks_[b]; }
    std::vector<Matrix>& mutable_blocks() { return blocks_; }

    Vector flatten() const;
    static GnsVector unflatten(const AlgebraSpec& spec, const Vector& v);

    GnsVector operator+(const GnsVector& o) const;
    GnsVector operator-(const GnsVector& o) const;
    GnsVector operator*(Complex c) const;
    GnsVector operator-() const;

private:
    AlgebraSpec spec_;
    std::vector<Matrix> blocks_;
};

Complex gns_inner(const GnsVector& a, const GnsVector& b);
double gns_norm(const GnsVector& a);

struct ConeDecomposition {
    GnsVector plus;
    GnsVector minus;
    int iterations = 0;
    double residual = 0.0;
};

// Standard form (M, H, P, J) of (spec, state) in the Hilbert-Schmidt
// picture: xi0 = rho^{1/2}, Delta(xi) = rho xi rho^{-1}, J(xi) = xi*.
// GNS vectors are stored in the eigenbasis of rho, where Delta^alpha is
// the entrywise scaling by (r_p / r_q)^alpha.
class StandardForm {
public:
    explicit StandardForm(FaithfulState state);

    const FaithfulState& state() const { return state_; }
    const AlgebraSpec& spec() const { return state_.spec(); }
    int gns_dim() const { return spec().gns_dim(); }

    const GnsVector& xi0() const { return xi0_; }

    // log r_p - log r_q at flattened GNS index (block, p, q).
    const RealVector& modular_log_eigenvalues() const { return log_eigs_; }

    // Algebra element expressed in the modular basis (U^* x U per block).
    std::vector<Matrix> to_modular(const AlgebraElement& x) const;
    AlgebraElement from_modular(const std::vector<Matrix>& blocks) const;

    // GNS representative of x xi0.
    GnsVector vector_of(const AlgebraElement& x) const;

    // sigma_z(x) = rho^{iz} x rho^{-iz}; entire in z in finite dimension
    // (the paper's strip conditions I_lambda, M_lambda are vacuous here).
    AlgebraElement modular_flow(Complex z, const AlgebraElement& x) const;
    // Same, returned in the modular basis.
    std::vector<Matrix> modular_flow_modular(Complex z, const AlgebraElement& x) const;

    GnsVector j_conjugate(const GnsVector& xi) const;
    bool is_j_real(const GnsVector& xi, double tol = 1e-12) const;

    GnsVector delta_power(double alpha, const GnsVector& xi) const;

    // xi in P iff rho^{-1/4} xi rho^{-1/4} is Hermitian with spectrum >= -tol.
    bool cone_membership(const GnsVector& xi, double tol) const;

    // Moreau decomposition xi = plus - minus with plus, minus in P and
    // <plus, minus> = 0; projected-gradient solve in the congruence
    // coordinates a = rho^{-1/4} xi rho^{-1/4} (see solver defaults below).
    ConeDecomposition cone_project(const GnsVector& xi, double tol = 1e-9,
                                   int max_iterations = 10000) const;

    // xi `meet` eta = eta - Proj_P(eta - xi).
    GnsVector meet(const GnsVector& xi, const GnsVector& eta, double tol = 1e-9) const;

    // Haar-random cone extreme ray rho^{1/4} u u^* rho^{1/4} on a random
    // block, normalized.
    GnsVector sample_cone_vector(std::mt19937_64& rng) const;
    // Random xi with 0 <= xi <= xi0 (order interval sample).
    GnsVector sample_order_interval(std::mt19937_64& rng) const;

private:
    FaithfulState state_;
    GnsVector xi0_;
    RealVector log_eigs_;
};

}  // namespace qms

#endif
