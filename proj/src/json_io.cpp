#include "ncfa/json_io.hpp"

#include <cstdio>

#include <json.hpp>

namespace ncfa {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string csv_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

std::string element_to_json(const AlgElement& x) {
    ordered_json blocks = ordered_json::array();
    for (int i = 0; i < x.algebra().block_count(); ++i) {
        const auto& spec = x.algebra().blocks()[i];
        ordered_json entries = ordered_json::array();
        for (int r = 0; r < spec.dim; ++r) {
            ordered_json row = ordered_json::array();
            for (int c = 0; c < spec.dim; ++c) {
                const cplx v = x.block(i)(r, c);
                row.push_back(ordered_json::array({v.real(), v.imag()}));
            }
            entries.push_back(std::move(row));
        }
        blocks.push_back(ordered_json{{"dim", spec.dim}, {"weight", spec.weight}, {"entries", std::move(entries)}});
    }
    return ordered_json{{"blocks", std::move(blocks)}}.dump();
}

std::pair<TracialAlgebra, AlgElement> element_from_json(const std::string& text) {
    const ordered_json doc = ordered_json::parse(text);
    if (!doc.contains("blocks") || !doc["blocks"].is_array() || doc["blocks"].empty())
        throw std::invalid_argument("element_from_json: missing 'blocks' array");
    std::vector<AlgebraBlock> specs;
    std::vector<ComplexMatrix> mats;
    for (const auto& b : doc["blocks"]) {
        const int dim = b.at("dim").get<int>();
        const double weight = b.at("weight").get<double>();
        specs.push_back({dim, weight});
        ComplexMatrix m(dim);
        const auto& entries = b.at("entries");
        if (static_cast<int>(entries.size()) != dim)
            throw std::invalid_argument("element_from_json: entry row count mismatch");
        for (int r = 0; r < dim; ++r) {
            if (static_cast<int>(entries[r].size()) != dim)
                throw std::invalid_argument("element_from_json: entry column count mismatch");
            for (int c = 0; c < dim; ++c)
                m(r, c) = cplx(entries[r][c][0].get<double>(), entries[r][c][1].get<double>());
        }
        mats.push_back(std::move(m));
    }
    TracialAlgebra algebra(std::move(specs));
    AlgElement element(algebra, std::move(mats), false);
    return {std::move(algebra), std::move(element)};
}

std::string step_to_json(const StepFunction& mu) {
    ordered_json arr = ordered_json::array();
    for (const Step& s : mu.steps()) arr.push_back(ordered_json{{"v", s.value}, {"len", s.length}});
    return arr.dump();
}

StepFunction step_from_json(const std::string& text) {
    const ordered_json doc = ordered_json::parse(text);
    if (!doc.is_array()) throw std::invalid_argument("step_from_json: expected an array");
    std::vector<Step> steps;
    for (const auto& item : doc) steps.push_back({item.at("v").get<double>(), item.at("len").get<double>()});
    return StepFunction::from_steps(std::move(steps));
}

namespace {

ordered_json report_to_json(const RatioReport& r) {
    ordered_json ens{{"kind", kind_name(r.ensemble.kind)},
                     {"K", r.ensemble.count},
                     {"n", r.ensemble.dim},
                     {"seed", r.ensemble.seed},
                     {"mean_zero", r.ensemble.mean_zero}};
    return ordered_json{{"theorem_id", r.theorem_id},
                        {"spec", r.spec_label},
                        {"variant", r.variant},
                        {"ensemble", std::move(ens)},
                        {"trials", r.trials},
                        {"excluded", r.excluded},
                        {"surrogate_flags", r.surrogate_flags},
                        {"exploratory", r.exploratory},
                        {"lhs", r.lhs},
                        {"rhs", r.rhs},
                        {"ratio_min", r.ratio_min},
                        {"ratio_max", r.ratio_max},
                        {"ratio_geomean", r.ratio_geomean}};
}

}  // namespace

std::string reports_to_json(const std::vector<RatioReport>& reports) {
    ordered_json arr = ordered_json::array();
    for (const auto& r : reports) arr.push_back(report_to_json(r));
    return ordered_json{{"reports", std::move(arr)}}.dump(2) + "\n";
}

std::string reports_to_csv(const std::vector<RatioReport>& reports) {
    std::string out = "theorem_id,spec,kind,K,n,seed,trial,lhs,rhs,ratio\n";
    for (const auto& r : reports) {
        for (std::size_t t = 0; t < r.lhs.size(); ++t) {
            const double lhs = r.lhs[t], rhs = r.rhs[t];
            const double ratio = (lhs == 0.0 && rhs == 0.0) ? 0.0 : (rhs == 0.0 ? kInf : lhs / rhs);
            out += r.theorem_id + ",\"" + r.spec_label + "\"," + kind_name(r.ensemble.kind) + "," +
                   std::to_string(r.ensemble.count) + "," + std::to_string(r.ensemble.dim) + "," +
                   std::to_string(r.ensemble.seed) + "," + std::to_string(t) + "," + csv_number(lhs) + "," +
                   csv_number(rhs) + "," + csv_number(ratio) + "\n";
        }
    }
    return out;
}

}  // namespace ncfa
