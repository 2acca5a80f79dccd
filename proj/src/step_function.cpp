#include "ncfa/step_function.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ncfa {

StepFunction StepFunction::from_steps(std::vector<Step> raw) {
    StepFunction f;
    raw.erase(std::remove_if(raw.begin(), raw.end(), [](const Step& s) { return !(s.length > 0.0); }), raw.end());
    if (raw.empty()) return f;
    for (const Step& s : raw) {
        if (s.value < 0.0) throw std::invalid_argument("StepFunction: negative value");
        if (!std::isfinite(s.value)) throw std::invalid_argument("StepFunction: non-finite value");
    }
    std::sort(raw.begin(), raw.end(), [](const Step& a, const Step& b) { return a.value > b.value; });
    const double tol = 1e-12 * (1.0 + raw.front().value);
    for (const Step& s : raw) {
        if (s.value <= tol) break;  // sorted: the rest merge with zero
        if (!f.steps_.empty() && f.steps_.back().value - s.value <= tol)
            f.steps_.back().length += s.length;
        else
            f.steps_.push_back(s);
    }
    return f;
}

double StepFunction::total_length() const {
    double t = 0.0;
    for (const Step& s : steps_) t += s.length;
    return t;
}

double StepFunction::value_at(double t) const {
    if (t < 0.0) throw std::invalid_argument("StepFunction::value_at: t must be >= 0");
    double cum = 0.0;
    for (const Step& s : steps_) {
        cum += s.length;
        if (t < cum) return s.value;
    }
    return 0.0;
}

std::vector<double> StepFunction::breakpoints() const {
    std::vector<double> bp;
    bp.reserve(steps_.size());
    double cum = 0.0;
    for (const Step& s : steps_) {
        cum += s.length;
        bp.push_back(cum);
    }
    return bp;
}

double StepFunction::partial_integral(double t) const {
    if (t < 0.0) throw std::invalid_argument("StepFunction::partial_integral: t must be >= 0");
    double acc = 0.0, cum = 0.0;
    for (const Step& s : steps_) {
        const double next = cum + s.length;
        if (t <= next) return acc + s.value * (t - cum);
        acc += s.value * s.length;
        cum = next;
    }
    return acc;
}

StepFunction singular_value_function(const AlgElement& x) {
    std::vector<Step> raw;
    const auto dec = singular_decomposition(x);
    for (int i = 0; i < x.algebra().block_count(); ++i) {
        const double w = x.algebra().blocks()[i].weight;
        for (double s : dec[i].sigma) raw.push_back({s, w});
    }
    return StepFunction::from_steps(std::move(raw));
}

StepFunction mu_of_direct_sum(const std::vector<StepFunction>& parts) {
    if (parts.empty()) throw std::invalid_argument("mu_of_direct_sum: empty part list");
    std::vector<Step> raw;
    for (const auto& p : parts) raw.insert(raw.end(), p.steps().begin(), p.steps().end());
    return StepFunction::from_steps(std::move(raw));
}

StepFunction restrict_to(const StepFunction& mu, double a, double b) {
    if (!(a >= 0.0)) throw std::invalid_argument("restrict_to: a must be >= 0");
    if (!(a < b)) throw std::invalid_argument("restrict_to: requires a < b");
    std::vector<Step> raw;
    double cum = 0.0;
    for (const Step& s : mu.steps()) {
        const double lo = std::max(cum, a);
        const double hi = std::min(cum + s.length, b);
        if (hi > lo) raw.push_back({s.value, hi - lo});
        cum += s.length;
        if (cum >= b) break;
    }
    return StepFunction::from_steps(std::move(raw));
}

double integrate_power(const StepFunction& mu, double p, double a, double b) {
    if (!(p >= 1.0)) throw std::invalid_argument("integrate_power: p must be >= 1");
    if (!(a >= 0.0) || !(a < b)) throw std::invalid_argument("integrate_power: requires 0 <= a < b");
    double acc = 0.0, cum = 0.0;
    for (const Step& s : mu.steps()) {
        const double lo = std::max(cum, a);
        const double hi = std::min(cum + s.length, b);
        if (hi > lo) acc += std::pow(s.value, p) * (hi - lo);
        cum += s.length;
        if (cum >= b) break;
    }
    return acc;
}

StepFunction scale(const StepFunction& mu, double alpha) {
    if (alpha < 0.0) throw std::invalid_argument("scale: alpha must be >= 0");
    std::vector<Step> raw;
    raw.reserve(mu.steps().size());
    for (const Step& s : mu.steps()) raw.push_back({alpha * s.value, s.length});
    return StepFunction::from_steps(std::move(raw));
}

StepFunction pointwise_power(const StepFunction& mu, double p) {
    if (!(p > 0.0)) throw std::invalid_argument("pointwise_power: p must be > 0");
    std::vector<Step> raw;
    raw.reserve(mu.steps().size());
    for (const Step& s : mu.steps()) raw.push_back({std::pow(s.value, p), s.length});
    return StepFunction::from_steps(std::move(raw));
}

}  // namespace ncfa
