#ifndef QMS_GENERATOR_HPP
#define QMS_GENERATOR_HPP

#include <memory>

#include "qms/standard_form.hpp"
#include "qms/weight.hpp"

namespace qms {

// Dirichlet operator H on the GNS space: Hermitian, PSD, H xi0 = 0,
// commuting with J.  Stored dense over the flattened GNS index together
// with its eigendecomposition; optionally keeps the per-generator PSD
// summands H_k.
struct GeneratorMatrix {
    std::shared_ptr<const StandardForm> sf;
    Matrix matrix;
    RealVector eigenvalues;   // ascending
    Matrix eigenvectors;      // columns
    std::vector<Matrix> per_k;

    double operator_norm() const {
        return eigenvalues.size() ? std::max(std::abs(eigenvalues(0)),
                                             std::abs(eigenvalues(eigenvalues.size() - 1)))
                                  : 0.0;
    }
};

// Exact route: diagonalize the modular superoperator and weight the matrix
// elements of D_k^* D_k by fhat(lambda_alpha - lambda_beta), which is the
// t-integral in closed form.  D_k xi = sigma_{-i/4}(x_k) xi - xi sigma_{+i/4}(x_k).
GeneratorMatrix assemble_generator_spectral(std::shared_ptr<const StandardForm> sf,
                                            const std::vector<AlgebraElement>& family,
                                            const WeightFunction& f, bool keep_per_k = true);

// Independent oracle: trapezoidal integration of D_k(t)^* D_k(t) f(t) dt
// with D_k(t) built from the modular flow at t - i/4.
GeneratorMatrix assemble_generator_quadrature(std::shared_ptr<const StandardForm> sf,
                                              const std::vector<AlgebraElement>& family,
                                              const WeightFunction& f, const QuadratureSpec& quad,
                                              bool keep_per_k = false);

// E(xi, eta) = <xi, H eta>.
Complex form_eval(const GeneratorMatrix& h, const GnsVector& xi, const GnsVector& eta);

// E_k[xi]; requires per_k summands retained.
double per_k_energy(const GeneratorMatrix& h, int k, const GnsVector& xi);

GnsVector apply(const GeneratorMatrix& h, const GnsVector& xi);

}  // namespace qms

#endif
