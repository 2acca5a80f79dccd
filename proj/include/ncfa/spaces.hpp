#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "ncfa/step_function.hpp"

namespace ncfa {

// Evaluatable convex Orlicz function with declared p-convexity/q-concavity.
// Phi(0) = 0, nondecreasing; t -> Phi(t^{1/p}) convex and t -> Phi(t^{1/q})
// concave. q_concave < inf is the Delta_2 growth condition.
class OrliczFunction {
public:
    OrliczFunction(std::function<double(double)> evaluate, double p_convex, double q_concave, std::string label);

    double operator()(double t) const { return f_(std::abs(t)); }
    double p_convex() const { return p_convex_; }
    double q_concave() const { return q_concave_; }
    const std::string& label() const { return label_; }

    // Grid checks of the declared shape: Phi(0)=0, monotone, midpoint
    // convexity/concavity of the powered compositions on a 256-point
    // log-spaced grid with slack 1e-9. Throws on violation.
    void validate() const;

    // Phi(t) = t^p
    static OrliczFunction power(double p);
    // M_{p,q}(t) = p t^q on [0,1), q t^p + p - q on [1,inf); p-convex, q-concave
    static OrliczFunction mpq(double p, double q);
    // Phi(t) = t^p log(1+t^q); p-convex and (p+q)-concave
    static OrliczFunction power_log(double p, double q);

    // parse "M:2,4" | "pow:2" | "plog:2,1"
    static OrliczFunction parse(const std::string& text);

private:
    std::function<double(double)> f_;
    double p_convex_;
    double q_concave_;
    std::string label_;
};

// Norm specification over step functions: L_p, L_p cap L_q, L_p + L_q
// (Holmstedt surrogate), Orlicz/Luxemburg, and Z_E^p built on an inner spec.
class NormSpec {
public:
    enum class Kind { lp, cap, sum, orlicz, ze };

    static NormSpec Lp(double p);
    static NormSpec cap(double p, double q);
    static NormSpec sum(double p, double q);
    static NormSpec orlicz(OrliczFunction phi);
    static NormSpec ZE(NormSpec inner, double p);

    Kind kind() const { return kind_; }
    double p() const { return p_; }
    double q() const { return q_; }
    const OrliczFunction& phi() const { return *phi_; }
    const NormSpec& inner() const { return *inner_; }

    // canonical text form: "Lp(2)", "cap(1,4)", "sum(1,2)", "orlicz(M:2,4)",
    // "ZE2(Lp(3))"; format(parse(s)) == s on canonical inputs
    std::string format() const;
    static NormSpec parse(const std::string& text);

    // true when any exponent touches 1 or inf (theorem-hypothesis guard)
    bool has_endpoint_exponent() const;

private:
    NormSpec() = default;
    Kind kind_ = Kind::lp;
    double p_ = 0.0;
    double q_ = 0.0;
    std::shared_ptr<const OrliczFunction> phi_;
    std::shared_ptr<const NormSpec> inner_;
};

double norm(const NormSpec& spec, const StepFunction& mu);

// inf{lambda > 0 : integral Phi(mu/lambda) <= 1} by bisection on the
// nonincreasing modular; bracket [1e-12, 1e12] * top value, relative
// tolerance 1e-10, 200 iteration cap. 0 for the zero function.
double luxemburg_norm(const OrliczFunction& phi, const StepFunction& mu);

// tau(Phi(|x|)) = integral Phi(mu); exact piecewise sum.
double phi_moment(const OrliczFunction& phi, const StepFunction& mu);

// spec op name from the module contract
inline OrliczFunction make_Mpq(double p, double q) { return OrliczFunction::mpq(p, q); }

}  // namespace ncfa
