#include <doctest.h>

#include <cmath>

#include "ncfa/harness.hpp"
#include "ncfa/majorization.hpp"
#include "test_helpers.hpp"

using namespace ncfa;
using ncfa::testing::step_sup_distance_off_jumps;
using ncfa::testing::steps;

namespace {

TensorFactor sigma_z_factor() {
    const TracialAlgebra m2 = TracialAlgebra::probability_matrix_algebra(2);
    return {m2, AlgElement::diagonal(m2, {1.0, -1.0})};
}

// Conditional-expectation oracle through the L_2 inner product with the
// embedded matrix units of slot k: E_k(y) = sum_ij n_k tau(e_ij-hat^* y) e_ij-hat.
// The unit embeddings are written out directly from the Kronecker index map.
AlgElement partial_trace_oracle(const TensorFamily& family, int k, const AlgElement& y) {
    const int n = family.factor(k).algebra.blocks()[0].dim;
    const int total = family.ambient_dim();
    int left = 1;
    for (int m = 0; m < k; ++m) left *= family.factor(m).algebra.blocks()[0].dim;
    const int right = total / (left * n);
    AlgElement acc = AlgElement::zero(family.ambient());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            ComplexMatrix mat(total);
            for (int a = 0; a < left; ++a)
                for (int r = 0; r < right; ++r) mat((a * n + i) * right + r, (a * n + j) * right + r) = 1.0;
            const AlgElement emb(family.ambient(), {std::move(mat)}, i == j);
            const cplx coeff = static_cast<double>(n) * trace_of_product(adjoint(emb), y);
            acc = add(acc, scale(coeff, emb));
        }
    return acc;
}

}  // namespace

TEST_CASE("tensor family embedding examples") {
    const TensorFamily family = TensorFamily::build({sigma_z_factor(), sigma_z_factor()});
    CHECK(family.ambient_dim() == 4);
    CHECK(family.ambient().is_probability_space());

    const AlgElement e0 = family.embedded(0);
    const AlgElement e1 = family.embedded(1);
    const TracialAlgebra m4 = family.ambient();
    CHECK((e0 - AlgElement::diagonal(m4, {1.0, 1.0, -1.0, -1.0})).max_abs_entry() < 1e-12);
    CHECK((e1 - AlgElement::diagonal(m4, {1.0, -1.0, 1.0, -1.0})).max_abs_entry() < 1e-12);

    const TensorFamily single = TensorFamily::build({sigma_z_factor()});
    CHECK((single.embedded(0) - single.factor(0).element).max_abs_entry() < 1e-12);
}

TEST_CASE("mixed moments factor through the independence identity") {
    Rng rng(401);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<TensorFactor> factors;
        for (int k = 0; k < 3; ++k) {
            const TracialAlgebra alg = TracialAlgebra::probability_matrix_algebra(2 + k % 2);
            factors.push_back({alg, random_element(alg, rng, true)});
        }
        const TensorFamily fam = TensorFamily::build(factors);
        // trace(x0 x1 x0) = tau(x0^2) tau(x1): x1 is independent of alg(x0)
        const cplx lhs = trace(multiply(multiply(fam.embedded(0), fam.embedded(1)), fam.embedded(0)));
        const cplx rhs = trace(multiply(fam.factor(0).element, fam.factor(0).element)) * fam.factor_trace(1);
        CHECK(std::abs(lhs - rhs) < 1e-10 * (1.0 + std::abs(rhs)));

        // random polynomial y in the others vs factor k
        for (int k = 0; k < fam.count(); ++k) {
            const int j1 = (k + 1) % fam.count(), j2 = (k + 2) % fam.count();
            const AlgElement y =
                add(multiply(fam.embedded(j1), fam.embedded(j2)), scale(cplx(rng.gaussian(), 0.0), fam.embedded(j1)));
            const cplx mixed = trace(multiply(fam.embedded(k), y));
            const cplx split = fam.factor_trace(k) * trace(y);
            CHECK(std::abs(mixed - split) <= 1e-8 * (1.0 + std::abs(split)));
        }
    }
}

TEST_CASE("conditional expectation examples and properties") {
    Rng rng(402);
    std::vector<TensorFactor> factors;
    for (int k = 0; k < 3; ++k) {
        const TracialAlgebra alg = TracialAlgebra::probability_matrix_algebra(2);
        factors.push_back({alg, random_element(alg, rng, true)});
    }
    const TensorFamily fam = TensorFamily::build(factors);
    const AlgElement one = AlgElement::identity(fam.ambient());

    for (int k = 0; k < fam.count(); ++k) {
        CHECK((fam.conditional_expectation(k, fam.embedded(k)) - fam.embedded(k)).max_abs_entry() < 1e-10);
        CHECK((fam.conditional_expectation(k, one) - one).max_abs_entry() < 1e-12);
        const int j = (k + 1) % fam.count();
        const AlgElement ek_xj = fam.conditional_expectation(k, fam.embedded(j));
        CHECK((ek_xj - scale(fam.factor_trace(j), one)).max_abs_entry() < 1e-9);
    }

    for (int trial = 0; trial < 10; ++trial) {
        const AlgElement y = random_element(fam.ambient(), rng, trial % 2 == 0);
        const int k = static_cast<int>(rng.uniform_index(fam.count()));
        const AlgElement ey = fam.conditional_expectation(k, y);
        CHECK((fam.conditional_expectation(k, ey) - ey).max_abs_entry() < 1e-9);           // idempotent
        CHECK(std::abs(trace(ey) - trace(y)) < 1e-9 * (1.0 + std::abs(trace(y))));         // trace preserving
        CHECK(operator_norm(ey) <= operator_norm(y) + 1e-9);                               // contraction
        CHECK(hl_submajorize(singular_value_function(ey), singular_value_function(y)));    // << y
        CHECK((ey - partial_trace_oracle(fam, k, y)).max_abs_entry() < 1e-9);              // unit-pairing oracle
    }

    CHECK_THROWS_AS(fam.conditional_expectation(5, one), std::out_of_range);
    CHECK_THROWS_AS(fam.conditional_expectation(0, AlgElement::identity(TracialAlgebra::probability_matrix_algebra(2))),
                    std::invalid_argument);
}

TEST_CASE("rademacher expansion examples") {
    Rng rng(403);
    const TracialAlgebra m3 = TracialAlgebra::probability_matrix_algebra(3);
    const TensorFamily single = TensorFamily::build({{m3, random_element(m3, rng, true)}});
    const DirectSumElement rad = rademacher_expand(single);
    REQUIRE(rad.summands.size() == 2);
    const StepFunction mu0 = single.factor_mu(0);
    for (double q : {1.0, 2.0, 4.0})
        CHECK(norm(NormSpec::Lp(q), rad.mu()) == doctest::Approx(norm(NormSpec::Lp(q), mu0)).epsilon(1e-10));

    // all-zero family expands to the zero element
    const TensorFamily zero_fam =
        TensorFamily::build({{m3, AlgElement::zero(m3)}, {m3, AlgElement::zero(m3)}});
    CHECK(rademacher_expand(zero_fam).mu().empty());

    // two commuting classical +-1 variables: 4 sign patterns, mu = [(2, 1/2)]
    const TensorFamily two = TensorFamily::build({sigma_z_factor(), sigma_z_factor()});
    const StepFunction rad_mu = rademacher_expand(two).mu();
    REQUIRE(rad_mu.steps().size() == 1);
    CHECK(rad_mu.steps()[0].value == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(rad_mu.steps()[0].length == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(norm(NormSpec::Lp(2.0), rad_mu) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(rad_mu.total_length() <= 1.0 + 1e-12);
}

TEST_CASE("fermionic generators anti-commute and square to one") {
    const auto gens = fermionic_generators(2);
    REQUIRE(gens.size() == 2);
    const TracialAlgebra m4 = gens[0].algebra();
    // c_0 = sigma_x (x) 1, c_1 = sigma_z (x) sigma_x
    ComplexMatrix c0(4), c1(4);
    c0(0, 2) = c0(2, 0) = c0(1, 3) = c0(3, 1) = 1.0;
    c1(0, 1) = c1(1, 0) = 1.0;
    c1(2, 3) = c1(3, 2) = -1.0;
    CHECK((gens[0] - AlgElement(m4, {c0}, true)).max_abs_entry() < 1e-12);
    CHECK((gens[1] - AlgElement(m4, {c1}, true)).max_abs_entry() < 1e-12);
    CHECK(add(multiply(gens[0], gens[1]), multiply(gens[1], gens[0])).max_abs_entry() < 1e-12);
    CHECK((multiply(gens[0], gens[0]) - AlgElement::identity(m4)).max_abs_entry() < 1e-12);

    const TensorFamily fam = TensorFamily::fermionic({0.7, -1.3, 0.4});
    CHECK(fam.mode() == TensorFamily::Mode::fermionic);
    CHECK(fam.ambient_dim() == 8);
    for (int k = 0; k < 3; ++k) {
        CHECK(std::abs(trace(fam.embedded(k))) < 1e-12);
        const AlgElement ek = fam.conditional_expectation(k, fam.embedded(k));
        CHECK((ek - fam.embedded(k)).max_abs_entry() < 1e-10);
    }
}

TEST_CASE("diagonal factor sums have the product-measure spectrum") {
    // spectrum of x0-hat + x1-hat is the multiset {a_i + b_j} with mass 1/(nm)
    Rng rng(421);
    const TracialAlgebra m3 = TracialAlgebra::probability_matrix_algebra(3);
    const TracialAlgebra m4 = TracialAlgebra::probability_matrix_algebra(4);
    std::vector<double> a(3), b(4);
    for (double& v : a) v = rng.gaussian();
    for (double& v : b) v = rng.gaussian();
    const TensorFamily fam =
        TensorFamily::build({{m3, AlgElement::diagonal(m3, a)}, {m4, AlgElement::diagonal(m4, b)}});
    std::vector<Step> expected;
    for (double ai : a)
        for (double bj : b) expected.push_back({std::abs(ai + bj), 1.0 / 12});
    const StepFunction oracle = StepFunction::from_steps(std::move(expected));
    const StepFunction mu = singular_value_function(fam.embedded_sum());
    CHECK(step_sup_distance_off_jumps(mu, oracle) < 1e-10);
}

TEST_CASE("direct sum mu matches the materialized summands") {
    for (auto kind : {EnsembleKind::classical, EnsembleKind::gue_like, EnsembleKind::fermionic}) {
        EnsembleSpec spec;
        spec.kind = kind;
        spec.count = 3;
        spec.dim = 2;
        spec.seed = 8;
        const TensorFamily fam = sample_family(spec);
        CHECK(step_sup_distance_off_jumps(fam.direct_sum_mu(), fam.direct_sum().mu()) < 1e-9);
    }
}

TEST_CASE("sampled ensembles are mean zero and independent") {
    for (auto kind : {EnsembleKind::classical, EnsembleKind::gue_like, EnsembleKind::fermionic}) {
        EnsembleSpec spec;
        spec.kind = kind;
        spec.count = 3;
        spec.dim = 2;
        spec.seed = 17;
        spec.mean_zero = true;
        const TensorFamily fam = sample_family(spec);
        for (int k = 0; k < fam.count(); ++k) CHECK(std::abs(trace(fam.embedded(k))) <= 1e-10);
    }
}

TEST_CASE("exact mean-zero orthogonality oracle") {
    const OracleOutcome outcome = oracle_l2_orthogonality(123, 72);
    CHECK(outcome.failures == 0);
}

TEST_CASE("rank one family and budget guards") {
    const auto xs = rank_one_family(4);
    REQUIRE(xs.size() == 4);
    for (const auto& x : xs) CHECK((multiply(adjoint(x), x) - multiply(adjoint(xs[0]), xs[0])).max_abs_entry() < 1e-12);

    const auto mz = rank_one_family(4, true);
    CHECK(std::abs(trace(mz[0])) < 1e-12);

    std::vector<TensorFactor> too_many;
    const TracialAlgebra m2 = TracialAlgebra::probability_matrix_algebra(2);
    for (int i = 0; i < 9; ++i) too_many.push_back({m2, AlgElement::zero(m2)});
    CHECK_THROWS_AS(TensorFamily::build(too_many), budget_error);

    std::vector<TensorFactor> too_big;
    const TracialAlgebra m8 = TracialAlgebra::probability_matrix_algebra(8);
    for (int i = 0; i < 5; ++i) too_big.push_back({m8, AlgElement::zero(m8)});
    CHECK_THROWS_AS(TensorFamily::build(too_big), budget_error);

    EnsembleSpec ro;
    ro.kind = EnsembleKind::rank_one;
    ro.dim = 4;
    ro.mean_zero = false;
    const Ensemble e = sample_ensemble(ro);
    CHECK(std::holds_alternative<std::vector<AlgElement>>(e));
}

TEST_CASE("sampling is deterministic per (kind, K, n, seed)") {
    EnsembleSpec spec;
    spec.kind = EnsembleKind::gue_like;
    spec.count = 2;
    spec.dim = 3;
    spec.seed = 99;
    const TensorFamily a = sample_family(spec);
    const TensorFamily b = sample_family(spec);
    CHECK((a.embedded_sum() - b.embedded_sum()).max_abs_entry() == 0.0);

    const TensorFamily c = sample_family(spec.with_seed(100));
    CHECK((a.embedded_sum() - c.embedded_sum()).max_abs_entry() > 1e-6);
}

TEST_CASE("ensemble descriptor grammar") {
    const EnsembleSpec spec = EnsembleSpec::parse("classical:K=4,n=2");
    CHECK(spec.kind == EnsembleKind::classical);
    CHECK(spec.count == 4);
    CHECK(spec.dim == 2);
    CHECK(spec.mean_zero);
    CHECK(spec.format() == "classical:K=4,n=2");

    const EnsembleSpec pos = EnsembleSpec::parse("fermionic:K=3,n=2,mean_zero=0");
    CHECK_FALSE(pos.mean_zero);
    CHECK(pos.format() == "fermionic:K=3,n=2,mean_zero=0");

    CHECK_THROWS_AS(EnsembleSpec::parse("bogus:K=2"), std::invalid_argument);
    CHECK_THROWS_AS(EnsembleSpec::parse("classical:K=0"), std::invalid_argument);
    CHECK_THROWS_AS(EnsembleSpec::parse("classical:J=2"), std::invalid_argument);
}

TEST_CASE("positive variant yields positive independent factors") {
    for (auto kind : {EnsembleKind::classical, EnsembleKind::gue_like, EnsembleKind::fermionic}) {
        EnsembleSpec spec;
        spec.kind = kind;
        spec.count = 3;
        spec.dim = 2;
        spec.seed = 7;
        const TensorFamily pos = positive_variant(sample_family(spec));
        for (int k = 0; k < pos.count(); ++k) {
            const StepFunction mu = pos.factor_mu(k);
            const AlgElement x = pos.embedded(k);
            // positive: x equals |x|
            CHECK((x - abs_op(x)).max_abs_entry() < 1e-9);
            CHECK(trace(x).real() >= -1e-12);
            (void)mu;
        }
    }
}
