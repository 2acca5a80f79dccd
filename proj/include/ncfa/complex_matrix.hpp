#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace ncfa {

using cplx = std::complex<double>;

// Dense square complex matrix, row-major.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {}

    static ComplexMatrix identity(int n) {
        ComplexMatrix m(n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    int dim() const { return n_; }

    cplx& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
    const cplx& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }

    const std::vector<cplx>& data() const { return a_; }
    std::vector<cplx>& data() { return a_; }

    ComplexMatrix adjoint() const {
        ComplexMatrix m(n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) m(j, i) = std::conj((*this)(i, j));
        return m;
    }

    // (A + A*)/2 in place; leaves an exactly Hermitian matrix.
    void symmetrize() {
        for (int i = 0; i < n_; ++i) {
            (*this)(i, i) = cplx((*this)(i, i).real(), 0.0);
            for (int j = i + 1; j < n_; ++j) {
                const cplx v = 0.5 * ((*this)(i, j) + std::conj((*this)(j, i)));
                (*this)(i, j) = v;
                (*this)(j, i) = std::conj(v);
            }
        }
    }

    double max_abs() const {
        double m = 0.0;
        for (const cplx& v : a_) m = std::max(m, std::abs(v));
        return m;
    }

    double frobenius() const {
        double s = 0.0;
        for (const cplx& v : a_) s += std::norm(v);
        return std::sqrt(s);
    }

    bool hermitian_within(double tol) const {
        const double tol_sq = tol * tol;
        for (int i = 0; i < n_; ++i)
            for (int j = i; j < n_; ++j)
                if (std::norm((*this)(i, j) - std::conj((*this)(j, i))) > tol_sq) return false;
        return true;
    }

private:
    int n_ = 0;
    std::vector<cplx> a_;
};

inline ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix c(a.dim());
    for (std::size_t i = 0; i < c.data().size(); ++i) c.data()[i] = a.data()[i] + b.data()[i];
    return c;
}

inline ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix c(a.dim());
    for (std::size_t i = 0; i < c.data().size(); ++i) c.data()[i] = a.data()[i] - b.data()[i];
    return c;
}

inline ComplexMatrix operator*(const cplx& s, const ComplexMatrix& a) {
    ComplexMatrix c(a.dim());
    for (std::size_t i = 0; i < c.data().size(); ++i) c.data()[i] = s * a.data()[i];
    return c;
}

inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    const int n = a.dim();
    ComplexMatrix c(n);
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx(0.0, 0.0)) continue;
            for (int j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

inline cplx mat_trace(const ComplexMatrix& a) {
    cplx t = 0.0;
    for (int i = 0; i < a.dim(); ++i) t += a(i, i);
    return t;
}

// Tr(a b) without forming the product.
inline cplx mat_trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    cplx t = 0.0;
    const int n = a.dim();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) t += a(i, j) * b(j, i);
    return t;
}

}  // namespace ncfa
