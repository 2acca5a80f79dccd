#pragma once

#include <functional>
#include <vector>

#include "ncfa/complex_matrix.hpp"

namespace ncfa {

// a = vectors * diag(values) * vectors^*, values ascending.
struct EigenSystem {
    std::vector<double> values;
    ComplexMatrix vectors;
};

// Cyclic Jacobi for complex Hermitian matrices: each off-diagonal entry is
// rotated out with a phase followed by a Givens rotation. Converged when the
// off-diagonal Frobenius mass drops below 1e-13 * ||a||_F; throws after 100
// sweeps without convergence. The input is symmetrized first.
EigenSystem hermitian_eigensystem(ComplexMatrix a);

// vectors * diag(f(values)) * vectors^*
ComplexMatrix apply_spectral(const EigenSystem& es, const std::function<double(double)>& f);

}  // namespace ncfa
