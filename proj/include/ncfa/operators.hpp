#pragma once

#include "ncfa/independence.hpp"

namespace ncfa {

// Column z = sum_k z_k (x) e_{k,0} in M (x) L(l_2). Only |z| and the entry
// list are ever needed: |z| = (sum_k z_k^* z_k)^{1/2} sitting at e_{0,0}, so
// mu and the L_q norms reduce to one ambient-algebra element.
struct ColumnElement {
    std::vector<AlgElement> entries;
};

ColumnElement make_column(std::vector<AlgElement> entries);

// z = sum_{k,l} z_{k,l} (x) e_{k,l} with finitely many rows/columns; stored
// row-major. Norms are taken w.r.t. tau (x) Tr by assembling the block
// matrix over a single-block algebra of dimension dim * max(rows, cols).
struct OpMatrixElement {
    int rows = 0;
    int cols = 0;
    std::vector<AlgElement> entries;  // rows * cols, row-major

    const AlgElement& at(int k, int l) const { return entries[static_cast<std::size_t>(k) * cols + l]; }
};

OpMatrixElement make_op_matrix(int rows, int cols, std::vector<AlgElement> entries);

// T(sum z_k (x) e_k) = sum_k (E_k(z_k) - tau(z_k)); mean zero by construction.
AlgElement op_T(const TensorFamily& family, const DirectSumElement& z);

// T*(w) = sum_k (E_k(w) - tau(w)) (x) e_k.
DirectSumElement op_Tstar(const TensorFamily& family, const AlgElement& w);

// S(z) = sum_k (E_k(z) - tau(z)) (x) e_{k,0}.
ColumnElement op_S(const TensorFamily& family, const AlgElement& z);

// S*(z) = sum_k (E_k(z_{k,0}) - tau(z_{k,0})).
AlgElement op_Sstar(const TensorFamily& family, const ColumnElement& z);

// L(z) = sum_k z_{k,0} (x) e_k: first column extracted into M (x) l_inf.
DirectSumElement op_L(const OpMatrixElement& z);

// (sum_k x_k^* x_k)^{1/2}; equals (sum x_k^2)^{1/2} for Hermitian input.
AlgElement square_function(const std::vector<AlgElement>& xs);
// (sum_k x_k x_k^*)^{1/2}
AlgElement square_function_star(const std::vector<AlgElement>& xs);

// |z| of a column as the ambient element (sum z_k^* z_k)^{1/2}
AlgElement column_abs(const ColumnElement& z);
StepFunction column_mu(const ColumnElement& z);
// L_q(M (x) L(l_2)) norm of the column
double column_norm(const ColumnElement& z, double q);

StepFunction op_matrix_mu(const OpMatrixElement& z);
double op_matrix_norm(const OpMatrixElement& z, double q);

// (tau (x) Sigma)(z w) = sum_k tau(z_k w_k): the trace pairing under which
// T* is the adjoint of T.
cplx direct_sum_pairing(const DirectSumElement& z, const DirectSumElement& w);

// sum_k tau(z_k v_k): the pairing under which tau(S* z . w) = <z, S w>.
cplx column_pairing(const ColumnElement& z, const ColumnElement& v);

}  // namespace ncfa
