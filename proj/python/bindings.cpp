#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ncfa/harness.hpp"
#include "ncfa/json_io.hpp"
#include "ncfa/majorization.hpp"

namespace py = pybind11;
using namespace ncfa;

namespace {

using Matrix = std::vector<std::vector<cplx>>;
using BlockList = std::vector<std::pair<Matrix, double>>;

AlgElement element_from_blocks(const BlockList& blocks) {
    std::vector<AlgebraBlock> specs;
    std::vector<ComplexMatrix> mats;
    for (const auto& [rows, weight] : blocks) {
        const int n = static_cast<int>(rows.size());
        ComplexMatrix m(n);
        for (int i = 0; i < n; ++i) {
            if (static_cast<int>(rows[i].size()) != n) throw std::invalid_argument("block is not square");
            for (int j = 0; j < n; ++j) m(i, j) = rows[i][j];
        }
        specs.push_back({n, weight});
        mats.push_back(std::move(m));
    }
    return AlgElement(TracialAlgebra(std::move(specs)), std::move(mats), false);
}

std::vector<std::pair<double, double>> step_pairs(const StepFunction& f) {
    std::vector<std::pair<double, double>> out;
    for (const Step& s : f.steps()) out.emplace_back(s.value, s.length);
    return out;
}

StepFunction steps_from_pairs(const std::vector<std::pair<double, double>>& pairs) {
    std::vector<Step> steps;
    for (const auto& [v, len] : pairs) steps.push_back({v, len});
    return StepFunction::from_steps(std::move(steps));
}

RatioReport run_verify(const std::string& theorem, const std::string& spec_text, const std::string& ensemble,
                       std::uint64_t seed, int trials) {
    EnsembleSpec es = EnsembleSpec::parse(ensemble);
    es.seed = seed;
    if (theorem == "rosenthal") return verify_rosenthal(es, NormSpec::parse(spec_text).p(), trials);
    if (theorem == "js") return verify_js(es, NormSpec::parse(spec_text), JsForm::mean_zero, "both", trials);
    if (theorem == "js-positive") return verify_js(es, NormSpec::parse(spec_text), JsForm::positive, "both", trials);
    if (theorem == "khinchine") return verify_khinchine(es, NormSpec::parse(spec_text), trials);
    const std::string prefix = "modular:";
    if (theorem.rfind(prefix, 0) == 0) {
        const std::string variant = theorem.substr(prefix.size());
        const NormSpec spec = NormSpec::parse(spec_text);
        ModularVariant v = variant == "positive"    ? ModularVariant::positive
                           : variant == "mean_zero" ? ModularVariant::mean_zero
                                                    : ModularVariant::khinchine;
        return verify_modular(es, spec.phi(), v, trials);
    }
    throw std::invalid_argument("unknown theorem '" + theorem + "'");
}

py::dict report_to_dict(const RatioReport& r) {
    py::dict d;
    d["theorem_id"] = r.theorem_id;
    d["spec"] = r.spec_label;
    d["variant"] = r.variant;
    d["ensemble"] = r.ensemble.format();
    d["seed"] = r.ensemble.seed;
    d["trials"] = r.trials;
    d["excluded"] = r.excluded;
    d["lhs"] = r.lhs;
    d["rhs"] = r.rhs;
    d["ratio_min"] = r.ratio_min;
    d["ratio_max"] = r.ratio_max;
    d["ratio_geomean"] = r.ratio_geomean;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Singular value functions, symmetric-space norms and "
              "noncommutative-probability inequality checks.";

    m.def(
        "mu",
        [](const BlockList& blocks) { return step_pairs(singular_value_function(element_from_blocks(blocks))); },
        py::arg("blocks"),
        "Generalized singular value function of a block element given as "
        "[(matrix, weight), ...]; returns [(value, length), ...].");

    m.def(
        "trace", [](const BlockList& blocks) { return trace(element_from_blocks(blocks)); }, py::arg("blocks"));

    m.def(
        "norm",
        [](const std::string& spec, const std::vector<std::pair<double, double>>& steps) {
            return norm(NormSpec::parse(spec), steps_from_pairs(steps));
        },
        py::arg("spec"), py::arg("steps"), "Norm of a step function under a spec like 'Lp(2)' or 'ZE2(Lp(3))'.");

    m.def(
        "phi_moment",
        [](const std::string& phi, const std::vector<std::pair<double, double>>& steps) {
            return phi_moment(OrliczFunction::parse(phi), steps_from_pairs(steps));
        },
        py::arg("phi"), py::arg("steps"));

    m.def(
        "luxemburg_norm",
        [](const std::string& phi, const std::vector<std::pair<double, double>>& steps) {
            return luxemburg_norm(OrliczFunction::parse(phi), steps_from_pairs(steps));
        },
        py::arg("phi"), py::arg("steps"));

    m.def(
        "orlicz_value", [](const std::string& phi, double t) { return OrliczFunction::parse(phi)(t); },
        py::arg("phi"), py::arg("t"));

    m.def(
        "hl_submajorize",
        [](const std::vector<std::pair<double, double>>& y, const std::vector<std::pair<double, double>>& x) {
            return hl_submajorize(steps_from_pairs(y), steps_from_pairs(x));
        },
        py::arg("y"), py::arg("x"));

    m.def(
        "uniform_submajorize",
        [](const std::vector<std::pair<double, double>>& y, const std::vector<std::pair<double, double>>& x,
           int lambda_max) {
            const auto r = uniform_submajorize(steps_from_pairs(y), steps_from_pairs(x), lambda_max);
            return r ? py::object(py::int_(*r)) : py::object(py::none());
        },
        py::arg("y"), py::arg("x"), py::arg("lambda_max") = 64);

    m.def(
        "footnote_norms",
        [](int n, double p) {
            double direct = 0.0, star = 0.0;
            footnote_norms(n, p, direct, star);
            return std::make_pair(direct, star);
        },
        py::arg("n"), py::arg("p"),
        "The rank-one counterexample norms (||(sum |x_k|^2)^(1/2)||_p, ||(sum |x_k*|^2)^(1/2)||_p).");

    m.def(
        "verify",
        [](const std::string& theorem, const std::string& spec, const std::string& ensemble, std::uint64_t seed,
           int trials) { return report_to_dict(run_verify(theorem, spec, ensemble, seed, trials)); },
        py::arg("theorem"), py::arg("spec"), py::arg("ensemble"), py::arg("seed"), py::arg("trials"),
        "Run one theorem driver; returns the ratio report as a dict.");

    m.def(
        "sum_mu",
        [](const std::string& ensemble, std::uint64_t seed) {
            EnsembleSpec es = EnsembleSpec::parse(ensemble);
            es.seed = seed;
            return step_pairs(singular_value_function(sample_family(es).embedded_sum()));
        },
        py::arg("ensemble"), py::arg("seed"), "mu of the sum of a sampled independent family.");

#ifdef VERSION_INFO
    m.attr("__version__") = VERSION_INFO;
#else
    m.attr("__version__") = "dev";
#endif
}
