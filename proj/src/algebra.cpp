#include "qms/algebra.hpp"

#include <Eigen/QR>

namespace qms {

AlgebraSpec::AlgebraSpec(std::vector<int> block_dims) : dims_(std::move(block_dims)) {
    if (dims_.empty()) throw argument_error("AlgebraSpec: need at least one block");
    offsets_.reserve(dims_.size());
    for (int n : dims_) {
        if (n < 1) throw argument_error("AlgebraSpec: block dimensions must be >= 1");
        offsets_.push_back(gns_dim_);
        gns_dim_ += n * n;
    }
}

AlgebraElement::AlgebraElement(AlgebraSpec spec, std::vector<Matrix> blocks)
    : spec_(std::move(spec)), blocks_(std::move(blocks)) {
    if (static_cast<int>(blocks_.size()) != spec_.num_blocks())
        throw structural_error("AlgebraElement: wrong number of blocks");
    for (int b = 0; b < spec_.num_blocks(); ++b) {
        const int n = spec_.block_dim(b);
        if (blocks_[b].rows() != n || blocks_[b].cols() != n)
            throw structural_error("AlgebraElement: block shape mismatch");
    }
}

AlgebraElement AlgebraElement::zero(const AlgebraSpec& spec) {
    std::vector<Matrix> blocks;
    for (int b = 0; b < spec.num_blocks(); ++b)
        blocks.push_back(Matrix::Zero(spec.block_dim(b), spec.block_dim(b)));
    return {spec, std::move(blocks)};
}

AlgebraElement AlgebraElement::identity(const AlgebraSpec& spec) {
    std::vector<Matrix> blocks;
    for (int b = 0; b < spec.num_blocks(); ++b)
        blocks.push_back(Matrix::Identity(spec.block_dim(b), spec.block_dim(b)));
    return {spec, std::move(blocks)};
}

AlgebraElement AlgebraElement::adjoint() const {
    std::vector<Matrix> blocks;
    blocks.reserve(blocks_.size());
    for (const auto& m : blocks_) blocks.push_back(m.adjoint());
    return {spec_, std::move(blocks)};
}

bool AlgebraElement::is_self_adjoint(double tol) const {
    for (const auto& m : blocks_)
        if ((m - m.adjoint()).norm() > tol * std::max(1.0, m.norm())) return false;
    return true;
}

Vector AlgebraElement::flatten() const {
    Vector v(spec_.gns_dim());
    for (int b = 0; b < spec_.num_blocks(); ++b) {
        const int n = spec_.block_dim(b);
        const int off = spec_.block_offset(b);
        for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q) v(off + p * n + q) = blocks_[b](p, q);
    }
    return v;
}

AlgebraElement AlgebraElement::unflatten(const AlgebraSpec& spec, const Vector& v) {
    if (v.size() != spec.gns_dim())
        throw structural_error("unflatten: vector length does not match spec");
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

AlgebraElement AlgebraElement::operator+(const AlgebraElement& o) const {
    if (spec_ != o.spec_) throw structural_error("operator+: spec mismatch");
    std::vector<Matrix> blocks;
    for (size_t b = 0; b < blocks_.size(); ++b) blocks.push_back(blocks_[b] + o.blocks_[b]);
    return {spec_, std::move(blocks)};
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& o) const {
    if (spec_ != o.spec_) throw structural_error("operator-: spec mismatch");
    std::vector<Matrix> blocks;
    for (size_t b = 0; b < blocks_.size(); ++b) blocks.push_back(blocks_[b] - o.blocks_[b]);
    return {spec_, std::move(blocks)};
}

AlgebraElement AlgebraElement::operator*(Complex c) const {
    std::vector<Matrix> blocks;
    for (const auto& m : blocks_) blocks.push_back(c * m);
    return {spec_, std::move(blocks)};
}

AlgebraElement compose(const AlgebraElement& a, const AlgebraElement& b) {
    if (a.spec() != b.spec()) throw structural_error("compose: spec mismatch");
    std::vector<Matrix> blocks;
    for (int i = 0; i < a.spec().num_blocks(); ++i) blocks.push_back(a.block(i) * b.block(i));
    return {a.spec(), std::move(blocks)};
}

Complex hs_inner(const AlgebraElement& a, const AlgebraElement& b) {
    if (a.spec() != b.spec()) throw structural_error("hs_inner: spec mismatch");
    Complex s = 0.0;
    for (int i = 0; i < a.spec().num_blocks(); ++i)
        s += (a.block(i).adjoint() * b.block(i)).trace();
    return s;
}

double hs_inner_real(const AlgebraElement& a, const AlgebraElement& b) {
    return hs_inner(a, b).real();
}

double hs_norm(const AlgebraElement& a) { return std::sqrt(std::abs(hs_inner(a, a))); }

std::pair<AlgebraElement, AlgebraElement> split_self_adjoint(const AlgebraElement& x) {
    const AlgebraElement xs = x.adjoint();
    return {(x + xs) * Complex(0.5, 0.0), (x - xs) * Complex(0.0, -0.5)};
}

namespace {

constexpr double kRankRelTol = 1e-10;

// Appends to `basis` (columns, orthonormal) whatever part of `cand` lies
// outside its span, using column-pivoted QR of the residual.
int extend_span(Matrix& basis, const Matrix& cand) {
    Matrix resid = cand;
    if (basis.cols() > 0) resid -= basis * (basis.adjoint() * cand);
    if (resid.size() == 0) return 0;
    Eigen::ColPivHouseholderQR<Matrix> qr(resid);
    const auto& rdiag = qr.matrixR();
    const double top = std::abs(rdiag(0, 0));
    if (top <= kRankRelTol * std::max(1.0, cand.norm())) return 0;
    int rank = 0;
    const int kmax = static_cast<int>(std::min(resid.rows(), resid.cols()));
    for (int k = 0; k < kmax; ++k)
        if (std::abs(rdiag(k, k)) > kRankRelTol * top) ++rank;
    Matrix q = qr.householderQ() * Matrix::Identity(resid.rows(), rank);
    // Re-orthogonalize against the existing basis (pivoted QR of the raw
    // residual can leak span components at the rank threshold).
    if (basis.cols() > 0) {
        q -= basis * (basis.adjoint() * q);
        Eigen::HouseholderQR<Matrix> qr2(q);
        q = qr2.householderQ() * Matrix::Identity(q.rows(), rank);
    }
    Matrix merged(basis.rows(), basis.cols() + rank);
    merged << basis, q;
    basis = std::move(merged);
    return rank;
}

}  // namespace

GeneratedSubalgebra generated_subalgebra(const std::vector<AlgebraElement>& family) {
    if (family.empty()) throw argument_error("generated_subalgebra: empty family");
    const AlgebraSpec spec = family.front().spec();
    for (const auto& x : family)
        if (x.spec() != spec) throw structural_error("generated_subalgebra: mixed specs");

    const int d = spec.gns_dim();

    // Multipliers: the family and its adjoints; words in these span the
    // *-algebra together with the unit.
    std::vector<AlgebraElement> mult;
    for (const auto& x : family) {
        mult.push_back(x);
        mult.push_back(x.adjoint());
    }

    Matrix basis(d, 0);
    {
        Matrix seed(d, 1 + static_cast<int>(mult.size()));
        seed.col(0) = AlgebraElement::identity(spec).flatten();
        for (size_t i = 0; i < mult.size(); ++i) seed.col(1 + static_cast<int>(i)) = mult[i].flatten();
        extend_span(basis, seed);
    }

    while (basis.cols() < d) {
        Matrix cand(d, basis.cols() * static_cast<int>(mult.size()));
        int c = 0;
        for (int j = 0; j < basis.cols(); ++j) {
            const AlgebraElement bj = AlgebraElement::unflatten(spec, basis.col(j));
            for (const auto& m : mult) cand.col(c++) = compose(m, bj).flatten();
        }
        if (extend_span(basis, cand) == 0) break;
    }

    GeneratedSubalgebra out;
    out.dimension = static_cast<int>(basis.cols());
    out.generates_M = (out.dimension == spec.algebra_dim());
    out.basis.reserve(out.dimension);
    for (int j = 0; j < basis.cols(); ++j)
        out.basis.push_back(AlgebraElement::unflatten(spec, basis.col(j)));
    return out;
}

std::vector<AlgebraElement> center_basis(const AlgebraSpec& spec) {
    std::vector<AlgebraElement> out;
    for (int b = 0; b < spec.num_blocks(); ++b) {
        AlgebraElement e = AlgebraElement::zero(spec);
        std::vector<Matrix> blocks = e.blocks();
        blocks[b] = Matrix::Identity(spec.block_dim(b), spec.block_dim(b));
        out.emplace_back(spec, std::move(blocks));
    }
    return out;
}

bool is_factor(const AlgebraSpec& spec) { return spec.is_factor(); }

}  // namespace qms
