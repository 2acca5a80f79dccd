#pragma once

#include <string>
#include <vector>

#include "ncfa/operators.hpp"
#include "ncfa/spaces.hpp"

namespace ncfa {

// Paired per-trial evaluations of both sides of a theorem's equivalence.
// Ratios are lhs/rhs; 0/0 pairs are excluded and counted. Equivalence
// constants are reported, never asserted; hard assertions are reserved for
// exact identities and bounds with explicit constants.
struct RatioReport {
    std::string theorem_id;
    std::string spec_label;
    std::string variant;  // direction or modular variant; empty when n/a
    EnsembleSpec ensemble;
    int trials = 0;
    std::vector<double> lhs;
    std::vector<double> rhs;
    int excluded = 0;
    std::vector<std::string> surrogate_flags;
    bool exploratory = false;

    double ratio_min = 0.0;
    double ratio_max = 0.0;
    double ratio_geomean = 0.0;

    // Computes the ratio stats; call after lhs/rhs are filled.
    void finalize();
};

// Per-trial RNG stream rule: the ensemble seed for trial t is
// derive_stream(seed, {t}); sample_family then folds in (kind, K, n).
std::uint64_t trial_seed(const EnsembleSpec& spec, int trial);
TensorFamily trial_family(const EnsembleSpec& spec, int trial);

// ||sum x_k||_p vs (sum ||x_k||_p^p)^{1/p} + (sum ||x_k||_2^2)^{1/2};
// requires p >= 2 and a mean-zero ensemble spec.
RatioReport verify_rosenthal(const EnsembleSpec& spec, double p, int trials);

enum class JsForm { mean_zero, positive };  // Z_E^2 vs Z_E^1 right-hand side

// ||sum x_k||_E vs ||sum x_k (x) e_k||_{Z_E^p}; direction is recorded in the
// report only (the ratio list covers both). Endpoint exponents are allowed
// here and mark the report exploratory.
RatioReport verify_js(const EnsembleSpec& spec, const NormSpec& E, JsForm form, const std::string& direction,
                      int trials);

// ||sum x_k||_E vs ||(sum x_k^2)^{1/2}||_E; E must have exponents strictly
// inside (1, inf).
RatioReport verify_khinchine(const EnsembleSpec& spec, const NormSpec& E, int trials);

enum class ModularVariant { positive, mean_zero, khinchine };
std::string variant_name(ModularVariant v);

// tau(Phi(|sum x_k|)) vs the variant right-hand side of the Phi-moment
// equivalences; Phi must be p-convex/q-concave with 1 < p <= q < inf.
RatioReport verify_modular(const EnsembleSpec& spec, const OrliczFunction& phi, ModularVariant variant, int trials);

struct LemmaBoundsResult {
    std::vector<RatioReport> reports;        // one per exponent plus c_N cells
    std::vector<std::string> hard_failures;  // explicit-constant violations
};

// Hard bound ||sum x_k||_q <= 2 ||sum x_k (x) r_k||_q per q; the c_N ratios
// for N in {1,2,3} with the c_1 = 1 equality case asserted; the L-contraction
// for q >= 2 on random columns.
LemmaBoundsResult verify_lemma_bounds(const EnsembleSpec& spec, const std::vector<double>& q_list, int trials);

// single-trial helpers shared with the acceptance suite
void lemma41_sides(const TensorFamily& family, double q, double& lhs, double& rhs);
void footnote_norms(int n, double p, double& direct, double& star);

struct OracleOutcome {
    int trials = 0;
    int failures = 0;
    std::vector<std::string> messages;
};

// Exact identity ||sum x_k||_2^2 = sum ||x_k||_2^2 for mean-zero independent
// families (kinds cycled, K <= 6, n in {2,4}), tolerance 1e-9 relative.
OracleOutcome oracle_l2_orthogonality(std::uint64_t seed, int trials);
// tau(T(z) w) = (tau (x) Sigma)(z . T* w) and the (S, S*) analogue, 1e-8.
OracleOutcome oracle_duality_pairing(std::uint64_t seed, int trials);
// mu(E_k(y)) << mu(y) over random (family, k, y).
OracleOutcome oracle_ce_submajorization(std::uint64_t seed, int trials);

}  // namespace ncfa
