#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ncfa/complex_matrix.hpp"
#include "ncfa/hermitian_eig.hpp"

namespace ncfa {

struct AlgebraBlock {
    int dim = 0;
    double weight = 0.0;
    bool operator==(const AlgebraBlock& o) const { return dim == o.dim && weight == o.weight; }
};

// Finite direct sum of full matrix blocks M_{n_1} (+) ... (+) M_{n_m} with a
// weighted trace tau(x) = sum_i w_i Tr(x_i). Models (M, tau), M (x) l_inf and
// discretized L_inf(0,1), depending on the block list.
class TracialAlgebra {
public:
    TracialAlgebra() = default;
    explicit TracialAlgebra(std::vector<AlgebraBlock> blocks);

    // single block (M_n, w * Tr)
    static TracialAlgebra matrix_algebra(int n, double weight);
    // (M_n, Tr/n), a noncommutative probability space
    static TracialAlgebra probability_matrix_algebra(int n);

    const std::vector<AlgebraBlock>& blocks() const { return blocks_; }
    int block_count() const { return static_cast<int>(blocks_.size()); }
    double total_mass() const { return total_mass_; }
    bool is_probability_space(double tol = 1e-12) const { return std::abs(total_mass_ - 1.0) <= tol; }

    bool operator==(const TracialAlgebra& o) const { return blocks_ == o.blocks_; }
    bool operator!=(const TracialAlgebra& o) const { return !(*this == o); }

private:
    std::vector<AlgebraBlock> blocks_;
    double total_mass_ = 0.0;
};

// An element of a TracialAlgebra: one dense matrix per block. hermitian_flag
// is conservative metadata; operations that actually require hermiticity
// re-check it at runtime.
class AlgElement {
public:
    AlgElement() = default;
    AlgElement(TracialAlgebra algebra, std::vector<ComplexMatrix> blocks, bool hermitian = false);

    static AlgElement zero(const TracialAlgebra& algebra);
    static AlgElement identity(const TracialAlgebra& algebra);
    // e_{k,l} inside one block, all other blocks zero
    static AlgElement matrix_unit(const TracialAlgebra& algebra, int block, int k, int l);
    // real diagonal element on a single-block algebra
    static AlgElement diagonal(const TracialAlgebra& algebra, const std::vector<double>& entries);

    const TracialAlgebra& algebra() const { return algebra_; }
    const std::vector<ComplexMatrix>& blocks() const { return blocks_; }
    ComplexMatrix& block(int i) { return blocks_[i]; }
    const ComplexMatrix& block(int i) const { return blocks_[i]; }
    bool hermitian_flag() const { return hermitian_flag_; }

    double max_abs_entry() const;

private:
    TracialAlgebra algebra_;
    std::vector<ComplexMatrix> blocks_;
    bool hermitian_flag_ = false;
};

// hermitian_flag tolerance from the element invariant (absolute, entrywise).
inline constexpr double kHermitianTol = 1e-10;

std::complex<double> trace(const AlgElement& x);
AlgElement adjoint(const AlgElement& x);
AlgElement add(const AlgElement& x, const AlgElement& y);
AlgElement sub(const AlgElement& x, const AlgElement& y);
AlgElement scale(const cplx& s, const AlgElement& x);
AlgElement multiply(const AlgElement& x, const AlgElement& y);

inline AlgElement operator+(const AlgElement& x, const AlgElement& y) { return add(x, y); }
inline AlgElement operator-(const AlgElement& x, const AlgElement& y) { return sub(x, y); }
inline AlgElement operator*(const AlgElement& x, const AlgElement& y) { return multiply(x, y); }
inline AlgElement operator*(const cplx& s, const AlgElement& x) { return scale(s, x); }
inline AlgElement operator*(double s, const AlgElement& x) { return scale(cplx(s, 0.0), x); }

// tau(x y) without forming the product.
std::complex<double> trace_of_product(const AlgElement& x, const AlgElement& y);
// tau(x^* y)
std::complex<double> l2_inner(const AlgElement& x, const AlgElement& y);
// tau(x^* x)^{1/2}; exact (no eigensolve), equals the L_2 norm of mu(x).
double l2_norm(const AlgElement& x);

bool is_hermitian(const AlgElement& x, double tol = kHermitianTol);

// Blockwise |x| = vectors * diag(sigma) * vectors^*; sigma ascending.
// Hermitian x is diagonalized directly (sigma = |eigenvalue|); otherwise the
// decomposition of x^* x is used with eigenvalues clamped at 0 before sqrt.
struct BlockSingular {
    std::vector<double> sigma;
    ComplexMatrix vectors;
};
std::vector<BlockSingular> singular_decomposition(const AlgElement& x);

// largest singular value of x (operator norm)
double operator_norm(const AlgElement& x);

// U f(D) U^* blockwise; requires hermitian_flag plus a runtime hermiticity
// check, throws std::invalid_argument otherwise.
AlgElement functional_calculus(const AlgElement& x, const std::function<double(double)>& f);

// (x^* x)^{1/2}; defined for every x.
AlgElement abs_op(const AlgElement& x);

// e_{(s,infty)}(|x|): orthogonal projection onto singular spaces with
// sigma > s + tie_tol, tie_tol = 1e-12 * (1 + ||x||).
AlgElement spectral_projection_above(const AlgElement& x, double s);

}  // namespace ncfa
