#include "ncfa/operators.hpp"

#include <cmath>
#include <stdexcept>

#include "ncfa/spaces.hpp"

namespace ncfa {

ColumnElement make_column(std::vector<AlgElement> entries) {
    if (entries.empty()) throw std::invalid_argument("make_column: empty entry list");
    for (const auto& e : entries)
        if (e.algebra() != entries.front().algebra())
            throw std::invalid_argument("make_column: entries must share one algebra");
    return ColumnElement{std::move(entries)};
}

OpMatrixElement make_op_matrix(int rows, int cols, std::vector<AlgElement> entries) {
    if (rows < 1 || cols < 1 || entries.size() != static_cast<std::size_t>(rows) * cols)
        throw std::invalid_argument("make_op_matrix: shape/entry mismatch");
    for (const auto& e : entries)
        if (e.algebra() != entries.front().algebra())
            throw std::invalid_argument("make_op_matrix: entries must share one algebra");
    return OpMatrixElement{rows, cols, std::move(entries)};
}

AlgElement op_T(const TensorFamily& family, const DirectSumElement& z) {
    if (static_cast<int>(z.summands.size()) != family.count())
        throw std::invalid_argument("op_T: summand count does not match the factor count");
    AlgElement acc = AlgElement::zero(family.ambient());
    const AlgElement one = AlgElement::identity(family.ambient());
    for (int k = 0; k < family.count(); ++k) {
        const AlgElement& zk = z.summands[k];
        acc = add(acc, sub(family.conditional_expectation(k, zk), scale(trace(zk), one)));
    }
    return acc;
}

DirectSumElement op_Tstar(const TensorFamily& family, const AlgElement& w) {
    const cplx tw = trace(w);
    const AlgElement one = AlgElement::identity(family.ambient());
    std::vector<AlgElement> summands;
    summands.reserve(family.count());
    for (int k = 0; k < family.count(); ++k)
        summands.push_back(sub(family.conditional_expectation(k, w), scale(tw, one)));
    return make_direct_sum(std::move(summands));
}

ColumnElement op_S(const TensorFamily& family, const AlgElement& z) {
    const cplx tz = trace(z);
    const AlgElement one = AlgElement::identity(family.ambient());
    std::vector<AlgElement> entries;
    entries.reserve(family.count());
    for (int k = 0; k < family.count(); ++k)
        entries.push_back(sub(family.conditional_expectation(k, z), scale(tz, one)));
    return make_column(std::move(entries));
}

AlgElement op_Sstar(const TensorFamily& family, const ColumnElement& z) {
    if (static_cast<int>(z.entries.size()) != family.count())
        throw std::invalid_argument("op_Sstar: entry count does not match the factor count");
    AlgElement acc = AlgElement::zero(family.ambient());
    const AlgElement one = AlgElement::identity(family.ambient());
    for (int k = 0; k < family.count(); ++k) {
        const AlgElement& zk = z.entries[k];
        acc = add(acc, sub(family.conditional_expectation(k, zk), scale(trace(zk), one)));
    }
    return acc;
}

DirectSumElement op_L(const OpMatrixElement& z) {
    std::vector<AlgElement> summands;
    summands.reserve(z.rows);
    for (int k = 0; k < z.rows; ++k) summands.push_back(z.at(k, 0));
    return make_direct_sum(std::move(summands));
}

namespace {

AlgElement gram_sum(const std::vector<AlgElement>& xs, bool star) {
    if (xs.empty()) throw std::invalid_argument("square_function: empty list");
    AlgElement acc = AlgElement::zero(xs.front().algebra());
    for (const auto& x : xs) {
        const AlgElement prod = star ? multiply(x, adjoint(x)) : multiply(adjoint(x), x);
        acc = add(acc, prod);
    }
    std::vector<ComplexMatrix> blocks = acc.blocks();
    for (auto& b : blocks) b.symmetrize();
    return AlgElement(acc.algebra(), std::move(blocks), true);
}

AlgElement psd_sqrt(const AlgElement& x) {
    return functional_calculus(x, [](double t) { return std::sqrt(std::max(t, 0.0)); });
}

}  // namespace

AlgElement square_function(const std::vector<AlgElement>& xs) { return psd_sqrt(gram_sum(xs, false)); }

AlgElement square_function_star(const std::vector<AlgElement>& xs) { return psd_sqrt(gram_sum(xs, true)); }

AlgElement column_abs(const ColumnElement& z) { return square_function(z.entries); }

StepFunction column_mu(const ColumnElement& z) { return singular_value_function(column_abs(z)); }

double column_norm(const ColumnElement& z, double q) { return norm(NormSpec::Lp(q), column_mu(z)); }

StepFunction op_matrix_mu(const OpMatrixElement& z) {
    const TracialAlgebra& alg = z.entries.front().algebra();
    if (alg.block_count() != 1) throw std::invalid_argument("op_matrix_mu: entries must live on a single-block algebra");
    const int d = alg.blocks()[0].dim;
    const int m = std::max(z.rows, z.cols);
    // tau (x) Tr keeps the ambient weight per copy: one block of dim d*m.
    const TracialAlgebra big = TracialAlgebra::matrix_algebra(d * m, alg.blocks()[0].weight);
    ComplexMatrix mat(d * m);
    for (int k = 0; k < z.rows; ++k)
        for (int l = 0; l < z.cols; ++l) {
            const ComplexMatrix& b = z.at(k, l).block(0);
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) mat(k * d + i, l * d + j) = b(i, j);
        }
    return singular_value_function(AlgElement(big, {std::move(mat)}, false));
}

double op_matrix_norm(const OpMatrixElement& z, double q) { return norm(NormSpec::Lp(q), op_matrix_mu(z)); }

cplx direct_sum_pairing(const DirectSumElement& z, const DirectSumElement& w) {
    if (z.summands.size() != w.summands.size()) throw std::invalid_argument("direct_sum_pairing: length mismatch");
    cplx acc = 0.0;
    for (std::size_t k = 0; k < z.summands.size(); ++k) acc += trace_of_product(z.summands[k], w.summands[k]);
    return acc;
}

cplx column_pairing(const ColumnElement& z, const ColumnElement& v) {
    if (z.entries.size() != v.entries.size()) throw std::invalid_argument("column_pairing: length mismatch");
    cplx acc = 0.0;
    for (std::size_t k = 0; k < z.entries.size(); ++k) acc += trace_of_product(z.entries[k], v.entries[k]);
    return acc;
}

}  // namespace ncfa
