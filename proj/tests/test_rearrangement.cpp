#include <doctest.h>

#include <cmath>

#include "ncfa/step_function.hpp"
#include "test_helpers.hpp"

using namespace ncfa;
using ncfa::testing::random_step_function;
using ncfa::testing::step_sup_distance_off_jumps;
using ncfa::testing::steps;

namespace {

// Independent oracle: mu(t, x) = inf{s > 0 : tau(e_{(s,inf)}(|x|)) <= t},
// evaluated by bisection on s through the spectral-projection route.
double mu_inf_formula(const AlgElement& x, double t) {
    double hi = operator_norm(x) + 1.0;
    double lo = 0.0;
    for (int iter = 0; iter < 60; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (trace(spectral_projection_above(x, mid)).real() <= t)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

}  // namespace

TEST_CASE("step function canonicalization") {
    const StepFunction f = StepFunction::from_steps({{1.0, 0.5}, {3.0, 0.25}, {1.0, 0.5}, {0.0, 2.0}});
    REQUIRE(f.steps().size() == 2);
    CHECK(f.steps()[0].value == 3.0);
    CHECK(f.steps()[0].length == 0.25);
    CHECK(f.steps()[1].value == 1.0);
    CHECK(f.steps()[1].length == 1.0);  // tie merged by summing lengths
    CHECK(f.total_length() == doctest::Approx(1.25));
    CHECK(f.top_value() == 3.0);
    CHECK(f.value_at(0.0) == 3.0);
    CHECK(f.value_at(0.25) == 1.0);  // right-continuous at the jump
    CHECK(f.value_at(5.0) == 0.0);

    const StepFunction zero;
    CHECK(zero.empty());
    CHECK(zero.top_value() == 0.0);
    CHECK(zero.total_length() == 0.0);
    CHECK(StepFunction::from_steps({{0.0, 1.0}}).empty());
}

TEST_CASE("singular value function examples") {
    const TracialAlgebra m3 = TracialAlgebra::probability_matrix_algebra(3);
    const StepFunction mu = singular_value_function(AlgElement::diagonal(m3, {3.0, 1.0, 2.0}));
    REQUIRE(mu.steps().size() == 3);
    CHECK(mu.steps()[0].value == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(mu.steps()[1].value == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(mu.steps()[2].value == doctest::Approx(1.0).epsilon(1e-12));
    for (const Step& s : mu.steps()) CHECK(s.length == doctest::Approx(1.0 / 3).epsilon(1e-12));

    const TracialAlgebra m4 = TracialAlgebra::probability_matrix_algebra(4);
    const StepFunction rank_one = singular_value_function(AlgElement::matrix_unit(m4, 0, 2, 0));
    REQUIRE(rank_one.steps().size() == 1);
    CHECK(rank_one.steps()[0].value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rank_one.steps()[0].length == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("singular value function matches the inf-formula grid oracle") {
    Rng rng(101);
    const TracialAlgebra m4 = TracialAlgebra::probability_matrix_algebra(4);
    const AlgElement x = random_element(m4, rng, true);
    const StepFunction mu = singular_value_function(x);
    const auto jumps = mu.breakpoints();
    int checked = 0;
    for (int i = 0; i < 10000; ++i) {
        const double t = 1.2 * (i + 0.5) / 10000.0;
        bool near_jump = false;
        for (double j : jumps)
            if (std::abs(t - j) < 1e-6) near_jump = true;
        if (near_jump) continue;
        ++checked;
        CHECK(std::abs(mu.value_at(t) - mu_inf_formula(x, t)) <= 1e-8);
    }
    CHECK(checked > 9000);
}

TEST_CASE("mu of direct sums") {
    const StepFunction a = steps({{2.0, 1.0}});
    const StepFunction b = steps({{3.0, 0.5}, {1.0, 1.0}});
    const StepFunction merged = mu_of_direct_sum({a, b});
    REQUIRE(merged.steps().size() == 3);
    CHECK(merged.steps()[0].value == 3.0);
    CHECK(merged.steps()[0].length == 0.5);
    CHECK(merged.steps()[1].value == 2.0);
    CHECK(merged.steps()[1].length == 1.0);
    CHECK(merged.steps()[2].value == 1.0);
    CHECK(merged.steps()[2].length == 1.0);

    const StepFunction unit = steps({{1.0, 0.25}});
    const StepFunction four = mu_of_direct_sum({unit, unit, unit, unit});
    REQUIRE(four.steps().size() == 1);
    CHECK(four.steps()[0].length == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(mu_of_direct_sum({}), std::invalid_argument);
}

TEST_CASE("direct sum mu equals mu of the assembled block-diagonal element") {
    Rng rng(102);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<StepFunction> parts;
        std::vector<AlgebraBlock> blocks;
        std::vector<ComplexMatrix> mats;
        const int parts_count = 2 + static_cast<int>(rng.uniform_index(3));
        for (int p = 0; p < parts_count; ++p) {
            const int dim = 2 + static_cast<int>(rng.uniform_index(3));
            const TracialAlgebra alg = TracialAlgebra::probability_matrix_algebra(dim);
            const AlgElement x = random_element(alg, rng, trial % 2 == 0);
            parts.push_back(singular_value_function(x));
            blocks.push_back({dim, 1.0 / dim});
            mats.push_back(x.block(0));
        }
        const AlgElement assembled(TracialAlgebra(blocks), mats, false);
        const StepFunction lhs = mu_of_direct_sum(parts);
        const StepFunction rhs = singular_value_function(assembled);
        CHECK(step_sup_distance_off_jumps(lhs, rhs) < 1e-10);
    }
}

TEST_CASE("restrict examples") {
    const StepFunction f = steps({{3.0, 0.5}, {1.0, 1.0}});
    const StepFunction head = restrict_to(f, 0.0, 1.0);
    REQUIRE(head.steps().size() == 2);
    CHECK(head.steps()[0].length == 0.5);
    CHECK(head.steps()[1].length == 0.5);

    const StepFunction same = restrict_to(f, 0.0, kInf);
    CHECK(step_sup_distance_off_jumps(same, f) == 0.0);

    CHECK(restrict_to(steps({{2.0, 0.25}}), 1.0, kInf).empty());
    CHECK_THROWS_AS(restrict_to(f, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(restrict_to(f, 2.0, 1.0), std::invalid_argument);
}

TEST_CASE("integrate_power examples") {
    CHECK(integrate_power(steps({{2.0, 3.0}}), 2.0, 0.0, 3.0) == doctest::Approx(12.0).epsilon(1e-12));
    CHECK(integrate_power(steps({{3.0, 1.0 / 3}, {2.0, 1.0 / 3}, {1.0, 1.0 / 3}}), 1.0, 0.0, 1.0) ==
          doctest::Approx(2.0).epsilon(1e-12));
    CHECK(integrate_power(StepFunction(), 1.0, 0.0, kInf) == 0.0);
    CHECK_THROWS_AS(integrate_power(steps({{1.0, 1.0}}), 0.5, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(integrate_power(steps({{1.0, 1.0}}), 1.0, 2.0, 1.0), std::invalid_argument);
}

TEST_CASE("partial integrals are concave and nondecreasing at breakpoints") {
    Rng rng(103);
    const StepFunction f = random_step_function(rng);
    const auto bp = f.breakpoints();
    double prev = 0.0, prev_slope = kInf, prev_t = 0.0;
    for (double t : bp) {
        const double v = f.partial_integral(t);
        CHECK(v >= prev - 1e-12);
        const double slope = (v - prev) / (t - prev_t);
        CHECK(slope <= prev_slope + 1e-9);
        prev = v;
        prev_slope = slope;
        prev_t = t;
    }
}

TEST_CASE("mu is invariant under adjoint and absolute value") {
    Rng rng(104);
    const TracialAlgebra alg({{3, 0.2}, {2, 0.2}});
    for (int trial = 0; trial < 10; ++trial) {
        const AlgElement x = random_element(alg, rng, false);
        const StepFunction mu_x = singular_value_function(x);
        CHECK(step_sup_distance_off_jumps(mu_x, singular_value_function(adjoint(x))) < 1e-9);
        CHECK(step_sup_distance_off_jumps(mu_x, singular_value_function(abs_op(x))) < 1e-9);
        const double alpha = 0.25 + rng.uniform();
        CHECK(step_sup_distance_off_jumps(scale(mu_x, alpha), singular_value_function(scale(cplx(alpha, 0.0), x))) <
              1e-9);
    }
}

TEST_CASE("trace of |x| equals the integral of mu") {
    Rng rng(105);
    const TracialAlgebra alg({{4, 0.1}, {3, 0.2}});
    for (int trial = 0; trial < 10; ++trial) {
        const AlgElement x = random_element(alg, rng, false);
        const double lhs = trace(abs_op(x)).real();
        const double rhs = integrate_power(singular_value_function(x), 1.0, 0.0, kInf);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
    }
}

TEST_CASE("pointwise power squares values in place") {
    const StepFunction f = steps({{3.0, 0.5}, {2.0, 1.0}});
    const StepFunction sq = pointwise_power(f, 2.0);
    CHECK(sq.steps()[0].value == doctest::Approx(9.0));
    CHECK(sq.steps()[1].value == doctest::Approx(4.0));
    CHECK(sq.steps()[0].length == 0.5);
}
