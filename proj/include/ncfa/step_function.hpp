#pragma once

#include <limits>
#include <vector>

#include "ncfa/algebra.hpp"

namespace ncfa {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct Step {
    double value = 0.0;
    double length = 0.0;
};

// Decreasing right-continuous finitely supported step function on (0,inf):
// the exact representation of a generalized singular value function. The
// zero function is the empty step list. Construction canonicalizes: values
// sorted descending, values within 1e-12*(1+top) merged (lengths summed),
// values within that tolerance of zero dropped.
class StepFunction {
public:
    StepFunction() = default;

    static StepFunction from_steps(std::vector<Step> raw);

    const std::vector<Step>& steps() const { return steps_; }
    bool empty() const { return steps_.empty(); }
    double total_length() const;
    double top_value() const { return steps_.empty() ? 0.0 : steps_.front().value; }

    // value on [c_{j-1}, c_j); 0 at or beyond the support
    double value_at(double t) const;

    // cumulative interval endpoints c_1 < c_2 < ... (excludes 0)
    std::vector<double> breakpoints() const;

    // int_0^t of the function; piecewise linear concave in t
    double partial_integral(double t) const;

private:
    std::vector<Step> steps_;
};

// mu(x): eigenvalues of |x| sorted descending, eigenvalues of block i
// contribute length weight_i; equals inf{s>0 : tau(e_{(s,inf)}(|x|)) <= t}
// exactly for this finite model.
StepFunction singular_value_function(const AlgElement& x);

// Decreasing rearrangement of the concatenation of the parts.
StepFunction mu_of_direct_sum(const std::vector<StepFunction>& parts);

// t -> mu(a + t) on (0, b-a); b may be kInf; throws if a >= b.
StepFunction restrict_to(const StepFunction& mu, double a, double b);

// int_a^b mu(t)^p dt, exact piecewise sum; p >= 1, a < b, b may be kInf.
double integrate_power(const StepFunction& mu, double p, double a, double b);

// alpha * mu for alpha >= 0
StepFunction scale(const StepFunction& mu, double alpha);

// t -> mu(t)^p as a step function (values powered, lengths kept)
StepFunction pointwise_power(const StepFunction& mu, double p);

}  // namespace ncfa
