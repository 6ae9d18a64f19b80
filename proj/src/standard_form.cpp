#include "qms/standard_form.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace qms {

namespace {

Matrix hermitize(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

// Projection onto the PSD cone in the plain Hilbert-Schmidt metric.
Matrix psd_project(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(m));
    RealVector vals = es.eigenvalues().cwiseMax(0.0);
    return es.eigenvectors() * vals.asDiagonal() * es.eigenvectors().adjoint();
}

double min_eigenvalue(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(m), Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

Matrix random_gaussian(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
    return g;
}

}  // namespace

FaithfulState::FaithfulState(AlgebraSpec spec, std::vector<Matrix> rho_blocks)
    : spec_(std::move(spec)), rho_blocks_(std::move(rho_blocks)) {
    if (static_cast<int>(rho_blocks_.size()) != spec_.num_blocks())
        throw structural_error("FaithfulState: wrong number of blocks");
    double trace = 0.0;
    for (int b = 0; b < spec_.num_blocks(); ++b) {
        const int n = spec_.block_dim(b);
        if (rho_blocks_[b].rows() != n || rho_blocks_[b].cols() != n)
            throw structural_error("FaithfulState: block shape mismatch");
        if ((rho_blocks_[b] - rho_blocks_[b].adjoint()).norm() >
            1e-12 * std::max(1.0, rho_blocks_[b].norm()))
            throw structural_error("FaithfulState: density block not Hermitian");
        rho_blocks_[b] = hermitize(rho_blocks_[b]);
        trace += rho_blocks_[b].trace().real();
    }
    if (std::abs(trace - 1.0) > 1e-12)
        throw structural_error("FaithfulState: trace must be 1");

    min_eig_ = std::numeric_limits<double>::infinity();
    for (const auto& rho : rho_blocks_) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
        eigvals_.push_back(es.eigenvalues());
        eigvecs_.push_back(es.eigenvectors());
        min_eig_ = std::min(min_eig_, es.eigenvalues().minCoeff());
    }
    if (!(min_eig_ > 0.0))
        throw structural_error("FaithfulState: state is not faithful (min eigenvalue " +
                               std::to_string(min_eig_) + ")");
}

FaithfulState FaithfulState::tracial(const AlgebraSpec& spec) {
    double total = 0.0;
    for (int b = 0; b < spec.num_blocks(); ++b) total += spec.block_dim(b);
    std::vector<Matrix> blocks;
    for (int b = 0; b < spec.num_blocks(); ++b) {
        const int n = spec.block_dim(b);
        blocks.push_back(Matrix::Identity(n, n) / total);
    }
    return {spec, std::move(blocks)};
}

FaithfulState FaithfulState::random(const AlgebraSpec& spec, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Matrix> blocks;
    double trace = 0.0;
    for (int b = 0; b < spec.num_blocks(); ++b) {
        const int n = spec.block_dim(b);
        Matrix g = random_gaussian(n, rng);
        Matrix rho = g * g.adjoint();
        // Keep the spectrum away from zero so the state stays comfortably
        // faithful at double precision.
        rho += (0.1 * rho.trace().real() / n) * Matrix::Identity(n, n);
        trace += rho.trace().real();
        blocks.push_back(std::move(rho));
    }
    for (auto& rho : blocks) rho /= trace;
    // Round-trip the trace once more; the division above leaves 1 ulp slack.
    double t2 = 0.0;
    for (auto& rho : blocks) t2 += rho.trace().real();
    for (auto& rho : blocks) rho /= t2;
    return {spec, std::move(blocks)};
}

GnsVector::GnsVector(AlgebraSpec spec, std::vector<Matrix> blocks)
    : spec_(std::move(spec)), blocks_(std::move(blocks)) {
    if (static_cast<int>(blocks_.size()) != spec_.num_blocks())
        throw structural_error("GnsVector: wrong number of blocks");
    for (int b = 0; b < spec_.num_blocks(); ++b)
        if (blocks_[b].rows() != spec_.block_dim(b) || blocks_[b].cols() != spec_.block_dim(b))
            throw structural_error("GnsVector: block shape mismatch");
}

GnsVector GnsVector::zero(const AlgebraSpec& spec) {
    std::vector<Matrix> blocks;
    for (int b = 0; b < spec.num_blocks(); ++b)
        blocks.push_back(Matrix::Zero(spec.block_dim(b), spec.block_dim(b)));
    return {spec, std::move(blocks)};
}

Vector GnsVector::flatten() const {
    Vector v(spec_.gns_dim());
    for (int b = 0; b < spec_.num_blocks(); ++b) {
        const int n = spec_.block_dim(b);
        const int off = spec_.block_offset(b);
        for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q) v(off + p * n + q) = blocks_[b](p, q);
    }
    return v;
}

GnsVector GnsVector::unflatten(const AlgebraSpec& spec, const Vector& v) {
    if (v.size() != spec.gns_dim())
        throw structural_error("GnsVector::unflatten: length mismatch");
    std::vector<Matrix> blocks;
    for (int b = 0; b < spec.num_blocks(); ++b) {
        const int n = spec.block_dim(b);
        const int off = spec.block_offset(b);
        Matrix m(n, n);
        for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q) m(p, q) = v(off + p * n + q);
        blocks.push_back(std::move(m));
    }
    return {spec, std::move(blocks)};
}

GnsVector GnsVector::operator+(const GnsVector& o) const {
    if (spec_ != o.spec_) throw structural_error("GnsVector+: spec mismatch");
    std::vector<Matrix> blocks;
    for (size_t b = 0; b < blocks_.size(); ++b) blocks.push_back(blocks_[b] + o.blocks_[b]);
    return {spec_, std::move(blocks)};
}

GnsVector GnsVector::operator-(const GnsVector& o) const {
    if (spec_ != o.spec_) throw structural_error("GnsVector-: spec mismatch");
    std::vector<Matrix> blocks;
    for (size_t b = 0; b < blocks_.size(); ++b) blocks.push_back(blocks_[b] - o.blocks_[b]);
    return {spec_, std::move(blocks)};
}

GnsVector GnsVector::operator*(Complex c) const {
    std::vector<Matrix> blocks;
    for (const auto& m : blocks_) blocks.push_back(c * m);
    return {spec_, std::move(blocks)};
}

GnsVector GnsVector::operator-() const { return (*this) * Complex(-1.0, 0.0); }

Complex gns_inner(const GnsVector& a, const GnsVector& b) {
    if (a.spec() != b.spec()) throw structural_error("gns_inner: spec mismatch");
    Complex s = 0.0;
    for (int i = 0; i < a.spec().num_blocks(); ++i)
        s += (a.block(i).adjoint() * b.block(i)).trace();
    return s;
}

double gns_norm(const GnsVector& a) { return std::sqrt(std::abs(gns_inner(a, a))); }

StandardForm::StandardForm(FaithfulState state)
    : state_(std::move(state)), xi0_(GnsVector::zero(state_.spec())), log_eigs_(state_.spec().gns_dim()) {
    const AlgebraSpec& spec = state_.spec();
    std::vector<Matrix> xi0_blocks;
    for (int b = 0; b < spec.num_blocks(); ++b) {
        const int n = spec.block_dim(b);
        const int off = spec.block_offset(b);
        const RealVector& r = state_.eigenvalues(b);
        xi0_blocks.push_back(Matrix(r.cwiseSqrt().cast<Complex>().asDiagonal()));
        for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q)
                log_eigs_(off + p * n + q) = std::log(r(p)) - std::log(r(q));
    }
    xi0_ = GnsVector(spec, std::move(xi0_blocks));
}

std::vector<Matrix> StandardForm::to_modular(const AlgebraElement& x) const {
    if (x.spec() != spec()) throw structural_error("to_modular: spec mismatch");
    std::vector<Matrix> out;
    for (int b = 0; b < spec().num_blocks(); ++b) {
        const Matrix& u = state_.eigenvectors(b);
        out.push_back(u.adjoint() * x.block(b) * u);
    }
    return out;
}

AlgebraElement StandardForm::from_modular(const std::vector<Matrix>& blocks) const {
    std::vector<Matrix> out;
    for (int b = 0; b < spec().num_blocks(); ++b) {
        const Matrix& u = state_.eigenvectors(b);
        out.push_back(u * blocks[b] * u.adjoint());
    }
    return {spec(), std::move(out)};
}

GnsVector StandardForm::vector_of(const AlgebraElement& x) const {
    std::vector<Matrix> xm = to_modular(x);
    std::vector<Matrix> out;
    for (int b = 0; b < spec().num_blocks(); ++b) out.push_back(xm[b] * xi0_.block(b));
    return {spec(), std::move(out)};
}

std::vector<Matrix> StandardForm::modular_flow_modular(Complex z, const AlgebraElement& x) const {
    std::vector<Matrix> xm = to_modular(x);
    for (int b = 0; b < spec().num_blocks(); ++b) {
        const int n = spec().block_dim(b);
        const RealVector& r = state_.eigenvalues(b);
        for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q) {
                const double lam = std::log(r(p)) - std::log(r(q));
                xm[b](p, q) *= std::exp(Complex(0.0, 1.0) * z * lam);
            }
    }
    return xm;
}

AlgebraElement StandardForm::modular_flow(Complex z, const AlgebraElement& x) const {
    return from_modular(modular_flow_modular(z, x));
}

GnsVector StandardForm::j_conjugate(const GnsVector& xi) const {
    std::vector<Matrix> out;
    for (int b = 0; b < spec().num_blocks(); ++b) out.push_back(xi.block(b).adjoint());
    return {spec(), std::move(out)};
}

bool StandardForm::is_j_real(const GnsVector& xi, double tol) const {
    const GnsVector diff = xi - j_conjugate(xi);
    return gns_norm(diff) <= tol * std::max(1.0, gns_norm(xi));
}

GnsVector StandardForm::delta_power(double alpha, const GnsVector& xi) const {
    std::vector<Matrix> out;
    for (int b = 0; b < spec().num_blocks(); ++b) {
        const int n = spec().block_dim(b);
        const RealVector& r = state_.eigenvalues(b);
        Matrix m = xi.block(b);
        for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q) m(p, q) *= std::pow(r(p) / r(q), alpha);
        out.push_back(std::move(m));
    }
    return {spec(), std::move(out)};
}

bool StandardForm::cone_membership(const GnsVector& xi, double tol) const {
    for (int b = 0; b < spec().num_blocks(); ++b) {
        const int n = spec().block_dim(b);
        const RealVector& r = state_.eigenvalues(b);
        Matrix a = xi.block(b);
        for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q) a(p, q) *= std::pow(r(p) * r(q), -0.25);
        if ((a - a.adjoint()).norm() > tol * std::max(1.0, a.norm())) return false;
        if (min_eigenvalue(a) < -tol) return false;
    }
    return true;
}

// Weighted PSD projection: in the coordinates a = rho^{-1/4} xi rho^{-1/4}
// the GNS norm becomes sum w_pq |.|^2 with w_pq = sqrt(r_p r_q).  FISTA
// with step 1/max(w); stops when xi_minus is in the cone and
// <xi_plus, xi_minus> vanishes at the requested tolerance.
ConeDecomposition StandardForm::cone_project(const GnsVector& xi, double tol,
                                             int max_iterations) const {
    if (!is_j_real(xi))
        throw argument_error("cone_project: input is not J-real");

    const AlgebraSpec& sp = spec();
    const int nb = sp.num_blocks();
    const double xi_norm = gns_norm(xi);
    if (xi_norm == 0.0) {
        ConeDecomposition out{GnsVector::zero(sp), GnsVector::zero(sp), 0, 0.0};
        return out;
    }

    std::vector<Matrix> b_mat(nb), w(nb);
    double lipschitz = 0.0;
    for (int b = 0; b < nb; ++b) {
        const int n = sp.block_dim(b);
        const RealVector& r = state_.eigenvalues(b);
        Matrix bb = hermitize(xi.block(b));
        Matrix wb(n, n);
        for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q) {
                const double wpq = std::sqrt(r(p) * r(q));
                wb(p, q) = wpq;
                bb(p, q) *= std::pow(r(p) * r(q), -0.25);
                lipschitz = std::max(lipschitz, wpq);
            }
        bb = hermitize(bb);
        b_mat[b] = std::move(bb);
        w[b] = std::move(wb);
    }

    std::vector<Matrix> a(nb), y(nb), a_prev(nb);
    for (int b = 0; b < nb; ++b) {
        a[b] = psd_project(b_mat[b]);
        y[b] = a[b];
    }

    double theta = 1.0;
    double residual = std::numeric_limits<double>::infinity();
    int iter = 0;
    const double scale = std::max(1.0, xi_norm);
    for (; iter < max_iterations; ++iter) {
        // residual check on the current iterate
        double neg = 0.0;
        Complex overlap = 0.0;
        for (int b = 0; b < nb; ++b) {
            const Matrix diff = a[b] - b_mat[b];
            neg = std::min(neg, min_eigenvalue(diff));
            const Matrix grad = w[b].cwiseProduct(diff);
            overlap += (a[b].adjoint() * grad).trace();
        }
        residual = std::max(-neg, std::abs(overlap) / scale);
        if (residual <= tol) break;

        a_prev = a;
        for (int b = 0; b < nb; ++b) {
            const Matrix grad = w[b].cwiseProduct(y[b] - b_mat[b]);
            a[b] = psd_project(y[b] - grad / lipschitz);
        }
        const double theta_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * theta * theta));
        const double momentum = (theta - 1.0) / theta_next;
        for (int b = 0; b < nb; ++b) y[b] = a[b] + momentum * (a[b] - a_prev[b]);
        theta = theta_next;
    }
    if (residual > tol)
        throw convergence_error("cone_project: no convergence within iteration cap", residual);

    std::vector<Matrix> plus(nb), minus(nb);
    for (int b = 0; b < nb; ++b) {
        const int n = sp.block_dim(b);
        const RealVector& r = state_.eigenvalues(b);
        Matrix pm = a[b];
        Matrix mm = a[b] - b_mat[b];
        for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q) {
                const double s = std::pow(r(p) * r(q), 0.25);
                pm(p, q) *= s;
                mm(p, q) *= s;
            }
        plus[b] = std::move(pm);
        minus[b] = std::move(mm);
    }
    return {GnsVector(sp, std::move(plus)), GnsVector(sp, std::move(minus)), iter, residual};
}

GnsVector StandardForm::meet(const GnsVector& xi, const GnsVector& eta, double tol) const {
    if (!is_j_real(xi) || !is_j_real(eta))
        throw argument_error("meet: inputs must be J-real");
    const ConeDecomposition d = cone_project(eta - xi, tol);
    return eta - d.plus;
}

GnsVector StandardForm::sample_cone_vector(std::mt19937_64& rng) const {
    const AlgebraSpec& sp = spec();
    std::uniform_int_distribution<int> pick(0, sp.num_blocks() - 1);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const int b = pick(rng);
    const int n = sp.block_dim(b);
    Vector u(n);
    for (int i = 0; i < n; ++i) u(i) = Complex(gauss(rng), gauss(rng));
    u.normalize();
    GnsVector out = GnsVector::zero(sp);
    const RealVector& r = state_.eigenvalues(b);
    Matrix m = u * u.adjoint();
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) m(p, q) *= std::pow(r(p) * r(q), 0.25);
    out.mutable_blocks()[b] = m / m.norm();
    return out;
}

GnsVector StandardForm::sample_order_interval(std::mt19937_64& rng) const {
    const AlgebraSpec& sp = spec();
    std::vector<Matrix> a(sp.num_blocks());
    double top = 0.0;
    for (int b = 0; b < sp.num_blocks(); ++b) {
        const int n = sp.block_dim(b);
        Matrix g = random_gaussian(n, rng);
        a[b] = g * g.adjoint() / static_cast<double>(n);
        Eigen::SelfAdjointEigenSolver<Matrix> es(a[b], Eigen::EigenvaluesOnly);
        top = std::max(top, es.eigenvalues().maxCoeff());
    }
    std::vector<Matrix> out(sp.num_blocks());
    for (int b = 0; b < sp.num_blocks(); ++b) {
        const int n = sp.block_dim(b);
        const RealVector& r = state_.eigenvalues(b);
        Matrix m = a[b] / top;  // 0 <= a <= 1  =>  0 <= xi <= xi0
        for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q) m(p, q) *= std::pow(r(p) * r(q), 0.25);
        out[b] = std::move(m);
    }
    return {sp, std::move(out)};
}

}  // namespace qms
