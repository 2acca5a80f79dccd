#include "ncfa/hermitian_eig.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ncfa {

namespace {

double off_diagonal_mass(const ComplexMatrix& a) {
    double s = 0.0;
    const int n = a.dim();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

}  // namespace

EigenSystem hermitian_eigensystem(ComplexMatrix a) {
    const int n = a.dim();
    EigenSystem es;
    es.vectors = ComplexMatrix::identity(n);
    if (n == 0) return es;
    a.symmetrize();

    const double scale = a.frobenius();
    const double stop = 1e-13 * scale;
    constexpr int max_sweeps = 100;

    if (n > 1 && scale > 0.0) {
        int sweep = 0;
        while (off_diagonal_mass(a) > stop) {
            if (sweep++ >= max_sweeps) throw std::runtime_error("hermitian_eigensystem: sweep cap exceeded");
            for (int p = 0; p < n - 1; ++p) {
                for (int q = p + 1; q < n; ++q) {
                    const cplx h = a(p, q);
                    const double ah = std::abs(h);
                    if (ah <= 1e-18 * scale) continue;
                    const cplx phase = h / ah;  // a(p,q) = phase * |h|
                    const double app = a(p, p).real();
                    const double aqq = a(q, q).real();
                    const double theta = (aqq - app) / (2.0 * ah);
                    const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                    const double c = 1.0 / std::sqrt(t * t + 1.0);
                    const double s = t * c;
                    const cplx cphase = std::conj(phase);
                    // a <- U* a U with U[p][p]=c, U[p][q]=s, U[q][p]=-s*conj(phase), U[q][q]=c*conj(phase)
                    for (int r = 0; r < n; ++r) {
                        const cplx bp = a(r, p), bq = a(r, q);
                        a(r, p) = c * bp - s * (cphase * bq);
                        a(r, q) = s * bp + c * (cphase * bq);
                    }
                    for (int r = 0; r < n; ++r) {
                        const cplx bp = a(p, r), bq = a(q, r);
                        a(p, r) = c * bp - s * (phase * bq);
                        a(q, r) = s * bp + c * (phase * bq);
                    }
                    for (int r = 0; r < n; ++r) {
                        const cplx vp = es.vectors(r, p), vq = es.vectors(r, q);
                        es.vectors(r, p) = c * vp - s * (cphase * vq);
                        es.vectors(r, q) = s * vp + c * (cphase * vq);
                    }
                    a(p, q) = 0.0;
                    a(q, p) = 0.0;
                    a(p, p) = cplx(app - t * ah, 0.0);
                    a(q, q) = cplx(aqq + t * ah, 0.0);
                }
            }
        }
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&a](int i, int j) { return a(i, i).real() < a(j, j).real(); });

    es.values.resize(n);
    ComplexMatrix sorted(n);
    for (int col = 0; col < n; ++col) {
        es.values[col] = a(order[col], order[col]).real();
        for (int r = 0; r < n; ++r) sorted(r, col) = es.vectors(r, order[col]);
    }
    es.vectors = sorted;
    return es;
}

ComplexMatrix apply_spectral(const EigenSystem& es, const std::function<double(double)>& f) {
    const int n = es.vectors.dim();
    std::vector<double> fv(es.values.size());
    for (std::size_t i = 0; i < fv.size(); ++i) fv[i] = f(es.values[i]);
    ComplexMatrix out(n);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            cplx s = 0.0;
            for (int m = 0; m < n; ++m) s += es.vectors(i, m) * fv[m] * std::conj(es.vectors(j, m));
            out(i, j) = s;
            out(j, i) = std::conj(s);
        }
    }
    for (int i = 0; i < n; ++i) out(i, i) = cplx(out(i, i).real(), 0.0);
    return out;
}

}  // namespace ncfa
