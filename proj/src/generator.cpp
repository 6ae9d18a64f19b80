#include "qms/generator.hpp"

#include <Eigen/Eigenvalues>

namespace qms {

namespace {

// Left/right multiplication superoperators for row-major flattening:
// vec(A xi) = (A (x) I) vec(xi),  vec(xi B) = (I (x) B^T) vec(xi).
Matrix kron_left(const Matrix& a) {
    const int n = static_cast<int>(a.rows());
    Matrix out = Matrix::Zero(n * n, n * n);
    for (int p = 0; p < n; ++p)
        for (int r = 0; r < n; ++r)
            for (int q = 0; q < n; ++q) out(p * n + q, r * n + q) = a(p, r);
    return out;
}

Matrix kron_right(const Matrix& b) {
    const int n = static_cast<int>(b.rows());
    Matrix out = Matrix::Zero(n * n, n * n);
    for (int q = 0; q < n; ++q)
        for (int r = 0; r < n; ++r)
            for (int p = 0; p < n; ++p) out(p * n + q, p * n + r) = b(r, q);
    return out;
}

void check_family(const StandardForm& sf, const std::vector<AlgebraElement>& family) {
    if (family.empty())
        throw argument_error("generator assembly: family must be non-empty");
    for (const auto& x : family) {
        if (x.spec() != sf.spec())
            throw structural_error("generator assembly: family/state spec mismatch");
        if (!x.is_self_adjoint(1e-12))
            throw argument_error("generator assembly: family member is not self-adjoint");
    }
}

GeneratorMatrix finalize(std::shared_ptr<const StandardForm> sf, Matrix h,
                         std::vector<Matrix> per_k) {
    const double scale = std::max(1.0, h.norm());
    const double herm_resid = (h - h.adjoint()).norm();
    if (herm_resid > 1e-8 * scale)
        throw numeric_error("generator assembly: non-Hermitian result", herm_resid);
    h = 0.5 * (h + h.adjoint());

    GeneratorMatrix out;
    out.sf = std::move(sf);
    out.matrix = std::move(h);
    Eigen::SelfAdjointEigenSolver<Matrix> es(out.matrix);
    out.eigenvalues = es.eigenvalues();
    out.eigenvectors = es.eigenvectors();
    if (out.eigenvalues.minCoeff() < -1e-10 * std::max(1.0, out.operator_norm()))
        throw numeric_error("generator assembly: negative eigenvalue",
                            out.eigenvalues.minCoeff());

    const Vector xi0 = out.sf->xi0().flatten();
    const double kernel_resid = (out.matrix * xi0).norm();
    if (kernel_resid > 1e-10 * std::max(1.0, out.operator_norm()))
        throw numeric_error("generator assembly: H xi0 != 0", kernel_resid);

    out.per_k = std::move(per_k);
    return out;
}

}  // namespace

GeneratorMatrix assemble_generator_spectral(std::shared_ptr<const StandardForm> sf,
                                            const std::vector<AlgebraElement>& family,
                                            const WeightFunction& f, bool keep_per_k) {
    check_family(*sf, family);
    const AlgebraSpec& spec = sf->spec();
    const int d = spec.gns_dim();
    const RealVector& lambda = sf->modular_log_eigenvalues();

    Matrix h = Matrix::Zero(d, d);
    std::vector<Matrix> per_k;

    for (const auto& x : family) {
        // sigma_{-i/4}(x) in the modular basis; its adjoint is sigma_{+i/4}(x).
        const std::vector<Matrix> a = sf->modular_flow_modular(Complex(0.0, -0.25), x);
        Matrix hk = Matrix::Zero(d, d);
        for (int b = 0; b < spec.num_blocks(); ++b) {
            const int n = spec.block_dim(b);
            const int off = spec.block_offset(b);
            const Matrix dk = kron_left(a[b]) - kron_right(a[b].adjoint());
            const Matrix g = dk.adjoint() * dk;
            for (int al = 0; al < n * n; ++al)
                for (int be = 0; be < n * n; ++be)
                    hk(off + al, off + be) =
                        g(al, be) * f.spectral_weight(lambda(off + al) - lambda(off + be));
        }
        h += hk;
        if (keep_per_k) per_k.push_back(std::move(hk));
    }
    return finalize(std::move(sf), std::move(h), std::move(per_k));
}

GeneratorMatrix assemble_generator_quadrature(std::shared_ptr<const StandardForm> sf,
                                              const std::vector<AlgebraElement>& family,
                                              const WeightFunction& f, const QuadratureSpec& quad,
                                              bool keep_per_k) {
    check_family(*sf, family);
    if (quad.nodes < 3 || quad.nodes % 2 == 0)
        throw argument_error("quadrature: nodes must be odd and >= 3");
    const AlgebraSpec& spec = sf->spec();
    const int d = spec.gns_dim();

    const double step = 2.0 * quad.t_max / (quad.nodes - 1);
    Matrix h = Matrix::Zero(d, d);
    std::vector<Matrix> per_k;

    for (const auto& x : family) {
        Matrix hk = Matrix::Zero(d, d);
        for (int i = 0; i < quad.nodes; ++i) {
            const double t = -quad.t_max + i * step;
            const double w = ((i == 0 || i == quad.nodes - 1) ? 0.5 : 1.0) * step * f(t);
            if (w == 0.0) continue;
            const std::vector<Matrix> a = sf->modular_flow_modular(Complex(t, -0.25), x);
            for (int b = 0; b < spec.num_blocks(); ++b) {
                const int n = spec.block_dim(b);
                const int off = spec.block_offset(b);
                const Matrix dk = kron_left(a[b]) - kron_right(a[b].adjoint());
                hk.block(off, off, n * n, n * n) += w * (dk.adjoint() * dk);
            }
        }
        const double herm = (hk - hk.adjoint()).norm();
        if (herm > 1e-8 * std::max(1.0, hk.norm()))
            throw numeric_error("quadrature assembly: unstable (non-Hermitian residual)", herm);
        h += hk;
        if (keep_per_k) per_k.push_back(std::move(hk));
    }
    return finalize(std::move(sf), std::move(h), std::move(per_k));
}

Complex form_eval(const GeneratorMatrix& h, const GnsVector& xi, const GnsVector& eta) {
    const Vector vx = xi.flatten();
    const Vector ve = eta.flatten();
    return vx.dot(h.matrix * ve);
}

double per_k_energy(const GeneratorMatrix& h, int k, const GnsVector& xi) {
    if (h.per_k.empty())
        throw capability_error("per_k_energy: per-generator summands were not retained");
    if (k < 0 || k >= static_cast<int>(h.per_k.size()))
        throw argument_error("per_k_energy: index out of range");
    const Vector v = xi.flatten();
    return v.dot(h.per_k[k] * v).real();
}

GnsVector apply(const GeneratorMatrix& h, const GnsVector& xi) {
    return GnsVector::unflatten(xi.spec(), h.matrix * xi.flatten());
}

}  // namespace qms
