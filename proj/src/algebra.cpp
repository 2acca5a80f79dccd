#include "ncfa/algebra.hpp"

#include <cmath>
#include <stdexcept>

namespace ncfa {

TracialAlgebra::TracialAlgebra(std::vector<AlgebraBlock> blocks) : blocks_(std::move(blocks)) {
    if (blocks_.empty()) throw std::invalid_argument("TracialAlgebra: empty block list");
    double mass = 0.0;
    for (const auto& b : blocks_) {
        if (b.dim < 1) throw std::invalid_argument("TracialAlgebra: block dim must be >= 1");
        if (!(b.weight > 0.0)) throw std::invalid_argument("TracialAlgebra: block weight must be > 0");
        mass += b.weight * b.dim;
    }
    total_mass_ = mass;
}

TracialAlgebra TracialAlgebra::matrix_algebra(int n, double weight) {
    return TracialAlgebra({AlgebraBlock{n, weight}});
}

TracialAlgebra TracialAlgebra::probability_matrix_algebra(int n) {
    return TracialAlgebra({AlgebraBlock{n, 1.0 / n}});
}

AlgElement::AlgElement(TracialAlgebra algebra, std::vector<ComplexMatrix> blocks, bool hermitian)
    : algebra_(std::move(algebra)), blocks_(std::move(blocks)), hermitian_flag_(hermitian) {
    if (blocks_.size() != static_cast<std::size_t>(algebra_.block_count()))
        throw std::invalid_argument("AlgElement: block count mismatch");
    for (int i = 0; i < algebra_.block_count(); ++i)
        if (blocks_[i].dim() != algebra_.blocks()[i].dim)
            throw std::invalid_argument("AlgElement: block shape mismatch");
    if (hermitian_flag_) {
        for (const auto& b : blocks_)
            if (!b.hermitian_within(kHermitianTol))
                throw std::invalid_argument("AlgElement: hermitian_flag set on a non-Hermitian element");
    }
}

AlgElement AlgElement::zero(const TracialAlgebra& algebra) {
    std::vector<ComplexMatrix> blocks;
    for (const auto& b : algebra.blocks()) blocks.emplace_back(b.dim);
    return AlgElement(algebra, std::move(blocks), true);
}

AlgElement AlgElement::identity(const TracialAlgebra& algebra) {
    std::vector<ComplexMatrix> blocks;
    for (const auto& b : algebra.blocks()) blocks.push_back(ComplexMatrix::identity(b.dim));
    return AlgElement(algebra, std::move(blocks), true);
}

AlgElement AlgElement::matrix_unit(const TracialAlgebra& algebra, int block, int k, int l) {
    if (block < 0 || block >= algebra.block_count())
        throw std::invalid_argument("matrix_unit: block index out of range");
    const int n = algebra.blocks()[block].dim;
    if (k < 0 || k >= n || l < 0 || l >= n) throw std::invalid_argument("matrix_unit: entry index out of range");
    auto e = AlgElement::zero(algebra);
    std::vector<ComplexMatrix> blocks = e.blocks();
    blocks[block](k, l) = 1.0;
    return AlgElement(algebra, std::move(blocks), k == l);
}

AlgElement AlgElement::diagonal(const TracialAlgebra& algebra, const std::vector<double>& entries) {
    if (algebra.block_count() != 1 || algebra.blocks()[0].dim != static_cast<int>(entries.size()))
        throw std::invalid_argument("diagonal: expects a single block matching the entry count");
    ComplexMatrix m(algebra.blocks()[0].dim);
    for (int i = 0; i < m.dim(); ++i) m(i, i) = entries[i];
    return AlgElement(algebra, {std::move(m)}, true);
}

double AlgElement::max_abs_entry() const {
    double m = 0.0;
    for (const auto& b : blocks_) m = std::max(m, b.max_abs());
    return m;
}

std::complex<double> trace(const AlgElement& x) {
    cplx t = 0.0;
    for (int i = 0; i < x.algebra().block_count(); ++i)
        t += x.algebra().blocks()[i].weight * mat_trace(x.block(i));
    return t;
}

AlgElement adjoint(const AlgElement& x) {
    std::vector<ComplexMatrix> blocks;
    blocks.reserve(x.blocks().size());
    for (const auto& b : x.blocks()) blocks.push_back(b.adjoint());
    return AlgElement(x.algebra(), std::move(blocks), x.hermitian_flag());
}

namespace {

void require_same_algebra(const AlgElement& x, const AlgElement& y, const char* op) {
    if (x.algebra() != y.algebra()) throw std::invalid_argument(std::string(op) + ": algebra mismatch");
}

}  // namespace

AlgElement add(const AlgElement& x, const AlgElement& y) {
    require_same_algebra(x, y, "add");
    std::vector<ComplexMatrix> blocks;
    blocks.reserve(x.blocks().size());
    for (std::size_t i = 0; i < x.blocks().size(); ++i) blocks.push_back(x.blocks()[i] + y.blocks()[i]);
    return AlgElement(x.algebra(), std::move(blocks), x.hermitian_flag() && y.hermitian_flag());
}

AlgElement sub(const AlgElement& x, const AlgElement& y) { return add(x, scale(cplx(-1.0, 0.0), y)); }

AlgElement scale(const cplx& s, const AlgElement& x) {
    std::vector<ComplexMatrix> blocks;
    blocks.reserve(x.blocks().size());
    for (const auto& b : x.blocks()) blocks.push_back(s * b);
    return AlgElement(x.algebra(), std::move(blocks), x.hermitian_flag() && s.imag() == 0.0);
}

AlgElement multiply(const AlgElement& x, const AlgElement& y) {
    require_same_algebra(x, y, "multiply");
    std::vector<ComplexMatrix> blocks;
    blocks.reserve(x.blocks().size());
    for (std::size_t i = 0; i < x.blocks().size(); ++i) blocks.push_back(x.blocks()[i] * y.blocks()[i]);
    return AlgElement(x.algebra(), std::move(blocks), false);
}

std::complex<double> trace_of_product(const AlgElement& x, const AlgElement& y) {
    require_same_algebra(x, y, "trace_of_product");
    cplx t = 0.0;
    for (int i = 0; i < x.algebra().block_count(); ++i)
        t += x.algebra().blocks()[i].weight * mat_trace_of_product(x.block(i), y.block(i));
    return t;
}

std::complex<double> l2_inner(const AlgElement& x, const AlgElement& y) {
    require_same_algebra(x, y, "l2_inner");
    cplx t = 0.0;
    for (int i = 0; i < x.algebra().block_count(); ++i) {
        const auto& a = x.block(i);
        const auto& b = y.block(i);
        cplx s = 0.0;
        for (std::size_t m = 0; m < a.data().size(); ++m) s += std::conj(a.data()[m]) * b.data()[m];
        t += x.algebra().blocks()[i].weight * s;
    }
    return t;
}

double l2_norm(const AlgElement& x) {
    double t = 0.0;
    for (int i = 0; i < x.algebra().block_count(); ++i) {
        double s = 0.0;
        for (const cplx& v : x.block(i).data()) s += std::norm(v);
        t += x.algebra().blocks()[i].weight * s;
    }
    return std::sqrt(t);
}

bool is_hermitian(const AlgElement& x, double tol) {
    for (const auto& b : x.blocks())
        if (!b.hermitian_within(tol)) return false;
    return true;
}

std::vector<BlockSingular> singular_decomposition(const AlgElement& x) {
    std::vector<BlockSingular> out;
    out.reserve(x.blocks().size());
    const bool herm = is_hermitian(x);
    for (const auto& b : x.blocks()) {
        BlockSingular bs;
        if (herm) {
            EigenSystem es = hermitian_eigensystem(b);
            bs.sigma.resize(es.values.size());
            for (std::size_t i = 0; i < es.values.size(); ++i) bs.sigma[i] = std::abs(es.values[i]);
            bs.vectors = std::move(es.vectors);
        } else {
            EigenSystem es = hermitian_eigensystem(b.adjoint() * b);
            bs.sigma.resize(es.values.size());
            for (std::size_t i = 0; i < es.values.size(); ++i) bs.sigma[i] = std::sqrt(std::max(es.values[i], 0.0));
            bs.vectors = std::move(es.vectors);
        }
        out.push_back(std::move(bs));
    }
    return out;
}

double operator_norm(const AlgElement& x) {
    double m = 0.0;
    for (const auto& bs : singular_decomposition(x))
        for (double s : bs.sigma) m = std::max(m, s);
    return m;
}

AlgElement functional_calculus(const AlgElement& x, const std::function<double(double)>& f) {
    if (!x.hermitian_flag()) throw std::invalid_argument("functional_calculus: hermitian_flag not set");
    if (!is_hermitian(x)) throw std::invalid_argument("functional_calculus: element is not Hermitian");
    std::vector<ComplexMatrix> blocks;
    blocks.reserve(x.blocks().size());
    for (const auto& b : x.blocks()) blocks.push_back(apply_spectral(hermitian_eigensystem(b), f));
    return AlgElement(x.algebra(), std::move(blocks), true);
}

AlgElement abs_op(const AlgElement& x) {
    std::vector<ComplexMatrix> blocks;
    blocks.reserve(x.blocks().size());
    for (const auto& bs : singular_decomposition(x)) {
        EigenSystem es{bs.sigma, bs.vectors};
        blocks.push_back(apply_spectral(es, [](double t) { return t; }));
    }
    return AlgElement(x.algebra(), std::move(blocks), true);
}

AlgElement spectral_projection_above(const AlgElement& x, double s) {
    if (s < 0.0) throw std::invalid_argument("spectral_projection_above: s must be >= 0");
    const auto dec = singular_decomposition(x);
    double top = 0.0;
    for (const auto& bs : dec)
        for (double v : bs.sigma) top = std::max(top, v);
    const double tie_tol = 1e-12 * (1.0 + top);
    std::vector<ComplexMatrix> blocks;
    blocks.reserve(dec.size());
    for (const auto& bs : dec) {
        EigenSystem es{bs.sigma, bs.vectors};
        blocks.push_back(apply_spectral(es, [&](double t) { return t > s + tie_tol ? 1.0 : 0.0; }));
    }
    return AlgElement(x.algebra(), std::move(blocks), true);
}

}  // namespace ncfa
