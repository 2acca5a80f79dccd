#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "ncfa/rng.hpp"
#include "ncfa/step_function.hpp"

namespace ncfa {

// dimension/factor budget violations (CLI exit 3)
struct budget_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// X = sum_k x_k (x) e_k in M (x) l_inf; all summands share one algebra.
struct DirectSumElement {
    std::vector<AlgElement> summands;
    StepFunction mu() const;
};

DirectSumElement make_direct_sum(std::vector<AlgElement> summands);

struct TensorFactor {
    TracialAlgebra algebra;  // single-block probability space
    AlgElement element;      // hermitian
};

// A family of independent noncommutative random variables together with the
// conditional expectations E_k onto the factor subalgebras.
//
// tensor mode embeds x_k as 1 (x) ... (x) x_k (x) ... (x) 1 in the Kronecker
// product; E_k is the partial trace over the complementary slots. fermionic
// mode holds x_k = a_k + b_k c_k for Jordan-Wigner strings c_k on M_{2^K};
// E_k is the conditional expectation onto span{1, c_k},
// E_k(y) = tau(y) 1 + tau(c_k y) c_k.
//
// Construction verifies the independence structure and aborts on failure
// (an implementation bug, not user error). The honest pairwise check
// trace(x_j-hat x_k-hat) = tau(x_j) tau(x_k) costs O(dim^2) per pair on the
// materialized embeddings and runs when the ambient dim is <= 1024; larger
// families get the factor-level and trace-preservation checks only.
class TensorFamily {
public:
    enum class Mode { tensor, fermionic };

    static constexpr int kMaxFactors = 8;
    static constexpr int kMaxAmbientDim = 4096;
    static constexpr int kFullCheckDim = 1024;

    static TensorFamily build(std::vector<TensorFactor> factors);
    // x_k = constant_k + linear_k * c_k; constants default to 0
    static TensorFamily fermionic(const std::vector<double>& linear, const std::vector<double>& constant = {});

    Mode mode() const { return mode_; }
    int count() const { return count_; }
    const TracialAlgebra& ambient() const { return ambient_; }
    int ambient_dim() const { return ambient_dim_; }

    const TensorFactor& factor(int k) const;  // tensor mode only
    cplx factor_trace(int k) const;
    StepFunction factor_mu(int k) const;

    // fermionic mode only: x_k = constant + linear * c_k
    double fermionic_linear(int k) const;
    double fermionic_constant(int k) const;
    const AlgElement& fermionic_generator(int k) const;

    AlgElement embedded(int k) const;
    AlgElement embedded_sum() const;
    DirectSumElement direct_sum() const;
    // mu(sum_k x_k (x) e_k) from the factor mus; no ambient materialization
    StepFunction direct_sum_mu() const;

    // E_k(y) embedded back into the ambient algebra
    AlgElement conditional_expectation(int k, const AlgElement& y) const;

private:
    TensorFamily() = default;
    void check_index(int k) const;
    AlgElement materialize_embedded(int k) const;
    void verify_construction() const;

    Mode mode_ = Mode::tensor;
    int count_ = 0;
    int ambient_dim_ = 0;
    TracialAlgebra ambient_;
    std::vector<TensorFactor> factors_;             // tensor mode
    std::vector<int> left_dim_, right_dim_;         // tensor mode
    std::vector<AlgElement> generators_;            // fermionic mode: c_k
    std::vector<double> lin_coeff_, const_coeff_;   // fermionic mode
    std::vector<AlgElement> cached_embedded_;       // filled when dim <= kFullCheckDim
};

// Sum_k x_k (x) r_k realized as the direct sum over all 2^K sign patterns
// (weight 2^{-K} each); the L_q norm of the result equals the L_q norm of
// sum x_k (x) r_k over M (x) L_inf(0,1). Enumeration cap: K <= 12.
DirectSumElement rademacher_expand(const TensorFamily& family);

// Jordan-Wigner strings sigma_z^{(x)k} (x) sigma_x (x) 1 ... on M_{2^K}.
std::vector<AlgElement> fermionic_generators(int K);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

enum class EnsembleKind { classical, gue_like, fermionic, rank_one };

EnsembleKind parse_kind(const std::string& name);
std::string kind_name(EnsembleKind kind);

struct EnsembleSpec {
    EnsembleKind kind = EnsembleKind::classical;
    int count = 1;  // K
    int dim = 2;    // n (block dim; fermionic factors are 2-dimensional)
    std::uint64_t seed = 0;
    bool mean_zero = true;

    // "classical:K=4,n=2" with ",mean_zero=0" appended when false
    std::string format() const;
    static EnsembleSpec parse(const std::string& text);
    EnsembleSpec with_seed(std::uint64_t s) const {
        EnsembleSpec e = *this;
        e.seed = s;
        return e;
    }
};

// RNG stream rule: Rng(derive_stream(seed, {kind, K, n})); draws are made in
// factor order. classical: real Gaussian diagonal factors. gue_like:
// (A + A*)/2 with iid standard complex Gaussian entries. fermionic: x_k =
// b_k c_k with Gaussian b_k (plus a Gaussian constant term when mean_zero is
// false). mean_zero subtracts tau(x) 1 per factor before embedding.
TensorFamily sample_family(const EnsembleSpec& spec);

// x_k = e_{k,0} in (M_n, Tr/n): the non-independent negative control.
std::vector<AlgElement> rank_one_family(int n, bool mean_zero = false);

using Ensemble = std::variant<TensorFamily, std::vector<AlgElement>>;
Ensemble sample_ensemble(const EnsembleSpec& spec);

// per-mode positive family: tensor factors x -> |x|; fermionic
// x = a + b c -> (|a| + |b|)/2 + (|b|/2) c (a scaled projection in alg(c)).
TensorFamily positive_variant(const TensorFamily& family);

// dense random element of the algebra (entries iid complex Gaussian,
// symmetrized when hermitian is requested)
AlgElement random_element(const TracialAlgebra& algebra, Rng& rng, bool hermitian);

}  // namespace ncfa
