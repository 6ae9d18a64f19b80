#ifndef QMS_ALGEBRA_HPP
#define QMS_ALGEBRA_HPP

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "qms/errors.hpp"

namespace qms {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// A finite-dimensional von Neumann algebra: direct sum of full matrix
// blocks M_{n_1} @ ... @ M_{n_B}.  The GNS (Hilbert-Schmidt) dimension
// is sum n_i^2 and the center has dimension B.
class AlgebraSpec {
public:
    explicit AlgebraSpec(std::vector<int> block_dims);

    const std::vector<int>& block_dims() const { return dims_; }
    int num_blocks() const { return static_cast<int>(dims_.size()); }
    int block_dim(int b) const { return dims_[b]; }
    // Offset of block b in the flattened (row-major per block) GNS index.
    int block_offset(int b) const { return offsets_[b]; }
    int gns_dim() const { return gns_dim_; }
    int algebra_dim() const { return gns_dim_; }
    int center_dim() const { return num_blocks(); }
    bool is_factor() const { return num_blocks() == 1; }

    bool operator==(const AlgebraSpec& other) const { return dims_ == other.dims_; }
    bool operator!=(const AlgebraSpec& other) const { return !(*this == other); }

private:
    std::vector<int> dims_;
    std::vector<int> offsets_;
    int gns_dim_ = 0;
};

// Block-diagonal element of the algebra.  Immutable by convention: all
// operations return new elements.
class AlgebraElement {
public:
    AlgebraElement(AlgebraSpec spec, std::vector<Matrix> blocks);

    static AlgebraElement zero(const AlgebraSpec& spec);
    static AlgebraElement identity(const AlgebraSpec& spec);

    const AlgebraSpec& spec() const { return spec_; }
    const Matrix& block(int b) const { return blocks_[b]; }
    const std::vector<Matrix>& blocks() const { return blocks_; }

    AlgebraElement adjoint() const;
    bool is_self_adjoint(double tol = 1e-12) const;

    // Flatten into a gns_dim vector (row-major within each block).
    Vector flatten() const;
    static AlgebraElement unflatten(const AlgebraSpec& spec, const Vector& v);

    AlgebraElement operator+(const AlgebraElement& o) const;
    AlgebraElement operator-(const AlgebraElement& o) const;
    AlgebraElement operator*(Complex c) const;

private:
    AlgebraSpec spec_;
    std::vector<Matrix> blocks_;
};

// Blockwise product.  Throws structural_error on spec mismatch.
AlgebraElement compose(const AlgebraElement& a, const AlgebraElement& b);

double hs_inner_real(const AlgebraElement& a, const AlgebraElement& b);
Complex hs_inner(const AlgebraElement& a, const AlgebraElement& b);
double hs_norm(const AlgebraElement& a);

// Splits x into self-adjoint components: x = first + i*second.
std::pair<AlgebraElement, AlgebraElement> split_self_adjoint(const AlgebraElement& x);

struct GeneratedSubalgebra {
    std::vector<AlgebraElement> basis;  // orthonormal in Hilbert-Schmidt inner product
    int dimension = 0;
    bool generates_M = false;
};

// Unital *-algebra generated by the family: alternating span closure and
// products until the dimension stabilizes.  Rank cuts use a singular-value
// threshold of 1e-10 relative to the largest singular value.
GeneratedSubalgebra generated_subalgebra(const std::vector<AlgebraElement>& family);

// The B block identities e_i = (0, ..., 1_{n_i}, ..., 0).
std::vector<AlgebraElement> center_basis(const AlgebraSpec& spec);

bool is_factor(const AlgebraSpec& spec);

}  // namespace qms

#endif
