#include "ncfa/run_config.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "ncfa/json_io.hpp"
#include "ncfa/majorization.hpp"

namespace ncfa {

namespace {

const std::vector<std::string> kTheorems = {"rosenthal", "js",           "js-positive", "khinchine",
                                            "modular",   "lemma-bounds", "footnote"};
const std::vector<std::string> kOracleChecks = {"l2-orthogonality", "duality-pairing", "ce-submajorization", "mu"};

bool contains(const std::vector<std::string>& v, const std::string& s) {
    for (const auto& item : v)
        if (item == s) return true;
    return false;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw config_error("cannot open file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file '" + path + "'");
    out << content;
}

}  // namespace

void RunConfig::validate() const {
    if (command != "verify" && command != "sweep" && command != "oracle")
        throw config_error("unknown command '" + command + "'");
    if (trials < 1) throw config_error("trials must be >= 1");
    if (!format.empty() && format != "json" && format != "csv") throw config_error("format must be json or csv");
    if (command == "oracle") {
        if (!contains(kOracleChecks, oracle_check)) throw config_error("unknown oracle check '" + oracle_check + "'");
        if (oracle_check == "mu" && input_path.empty()) throw config_error("oracle mu requires --input");
        return;
    }
    if (theorems.empty()) throw config_error("at least one theorem id is required");
    if (ensembles.empty()) throw config_error("at least one ensemble descriptor is required");
    for (const auto& t : theorems)
        if (!contains(kTheorems, t)) throw config_error("unknown theorem id '" + t + "'");
    for (const auto& e : ensembles) {
        try {
            EnsembleSpec::parse(e);
        } catch (const std::exception& ex) {
            throw config_error(std::string("bad ensemble descriptor: ") + ex.what());
        }
    }
    const bool needs_specs = contains(theorems, "js") || contains(theorems, "js-positive") ||
                             contains(theorems, "khinchine") || contains(theorems, "modular");
    if (needs_specs && specs.empty()) throw config_error("the requested theorems need at least one --spec");
    for (const auto& s : specs) {
        try {
            NormSpec::parse(s);
        } catch (const std::exception& ex) {
            throw config_error(std::string("bad norm spec: ") + ex.what());
        }
    }
    if (direction != "both" && direction != "upper" && direction != "lower")
        throw config_error("direction must be upper, lower or both");
    for (const auto& v : variants)
        if (v != "positive" && v != "mean_zero" && v != "khinchine")
            throw config_error("unknown modular variant '" + v + "'");
    for (double q : q_list)
        if (!(q >= 1.0)) throw config_error("q_list entries must be >= 1");
}

RunConfig RunConfig::from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const std::exception& ex) {
        throw config_error(std::string("config parse error: ") + ex.what());
    }
    RunConfig c;
    auto get_strings = [&](const char* key, std::vector<std::string>& target) {
        if (doc.contains(key)) target = doc[key].get<std::vector<std::string>>();
    };
    if (doc.contains("command")) c.command = doc["command"].get<std::string>();
    get_strings("theorems", c.theorems);
    get_strings("specs", c.specs);
    get_strings("ensembles", c.ensembles);
    get_strings("variants", c.variants);
    if (doc.contains("p")) c.rosenthal_p = doc["p"].get<double>();
    if (doc.contains("q_list")) c.q_list = doc["q_list"].get<std::vector<double>>();
    if (doc.contains("direction")) c.direction = doc["direction"].get<std::string>();
    if (doc.contains("trials")) c.trials = doc["trials"].get<int>();
    if (doc.contains("seed")) c.seed = doc["seed"].get<std::uint64_t>();
    if (doc.contains("out")) c.out_path = doc["out"].get<std::string>();
    if (doc.contains("format")) c.format = doc["format"].get<std::string>();
    if (doc.contains("check")) c.oracle_check = doc["check"].get<std::string>();
    if (doc.contains("input")) c.input_path = doc["input"].get<std::string>();
    return c;
}

RunConfig RunConfig::from_json_file(const std::string& path) { return from_json(read_file(path)); }

namespace {

int run_oracle(const RunConfig& config) {
    if (config.oracle_check == "mu") {
        const auto [algebra, element] = element_from_json(read_file(config.input_path));
        const std::string out = step_to_json(singular_value_function(element)) + "\n";
        if (config.out_path.empty())
            std::cout << out;
        else
            write_file(config.out_path, out);
        return 0;
    }
    OracleOutcome outcome;
    if (config.oracle_check == "l2-orthogonality")
        outcome = oracle_l2_orthogonality(config.seed, config.trials);
    else if (config.oracle_check == "duality-pairing")
        outcome = oracle_duality_pairing(config.seed, config.trials);
    else
        outcome = oracle_ce_submajorization(config.seed, config.trials);
    std::cout << "[oracle] check=" << config.oracle_check << " trials=" << outcome.trials
              << " failures=" << outcome.failures << "\n";
    if (outcome.failures > 0) {
        for (const auto& msg : outcome.messages) std::cerr << "FAIL " << msg << "\n";
        return 1;
    }
    return 0;
}

int run_verify(const RunConfig& config) {
    std::vector<RatioReport> reports;
    std::vector<std::string> hard_failures;
    for (const auto& ens_text : config.ensembles) {
        EnsembleSpec es = EnsembleSpec::parse(ens_text);
        es.seed = config.seed;
        for (const auto& theorem : config.theorems) {
            if (theorem == "rosenthal") {
                reports.push_back(verify_rosenthal(es, config.rosenthal_p, config.trials));
            } else if (theorem == "js" || theorem == "js-positive") {
                const JsForm form = theorem == "js" ? JsForm::mean_zero : JsForm::positive;
                for (const auto& spec_text : config.specs)
                    reports.push_back(verify_js(es, NormSpec::parse(spec_text), form, config.direction, config.trials));
            } else if (theorem == "khinchine") {
                for (const auto& spec_text : config.specs)
                    reports.push_back(verify_khinchine(es, NormSpec::parse(spec_text), config.trials));
            } else if (theorem == "modular") {
                for (const auto& spec_text : config.specs) {
                    const NormSpec spec = NormSpec::parse(spec_text);
                    if (spec.kind() != NormSpec::Kind::orlicz)
                        throw config_error("modular needs orlicz(...) specs, got '" + spec_text + "'");
                    for (const auto& variant : config.variants) {
                        ModularVariant v = variant == "positive"    ? ModularVariant::positive
                                           : variant == "mean_zero" ? ModularVariant::mean_zero
                                                                    : ModularVariant::khinchine;
                        reports.push_back(verify_modular(es, spec.phi(), v, config.trials));
                    }
                }
            } else if (theorem == "lemma-bounds") {
                LemmaBoundsResult res = verify_lemma_bounds(es, config.q_list, config.trials);
                reports.insert(reports.end(), res.reports.begin(), res.reports.end());
                hard_failures.insert(hard_failures.end(), res.hard_failures.begin(), res.hard_failures.end());
            } else if (theorem == "footnote") {
                if (es.kind != EnsembleKind::rank_one)
                    throw config_error("the footnote control expects a rank_one ensemble");
                RatioReport r;
                r.theorem_id = "footnote";
                r.spec_label = NormSpec::Lp(config.rosenthal_p).format();
                r.ensemble = es;
                double direct = 0.0, star = 0.0;
                footnote_norms(es.dim, config.rosenthal_p, direct, star);
                r.lhs.push_back(direct);
                r.rhs.push_back(star);
                r.finalize();
                reports.push_back(std::move(r));
            }
        }
    }
    for (const auto& r : reports)
        std::cout << "[report] theorem=" << r.theorem_id << " spec=" << r.spec_label
                  << (r.variant.empty() ? "" : " variant=" + r.variant) << " ensemble=" << r.ensemble.format()
                  << " trials=" << r.trials << " ratio_min=" << r.ratio_min << " ratio_max=" << r.ratio_max
                  << " ratio_geomean=" << r.ratio_geomean << "\n";
    const std::string format = config.format.empty() ? (config.command == "sweep" ? "csv" : "json") : config.format;
    const std::string payload = format == "csv" ? reports_to_csv(reports) : reports_to_json(reports);
    if (config.out_path.empty())
        std::cout << payload;
    else
        write_file(config.out_path, payload);
    if (!hard_failures.empty()) {
        for (const auto& msg : hard_failures) std::cerr << "FAIL " << msg << "\n";
        return 1;
    }
    return 0;
}

}  // namespace

int run(const RunConfig& config) {
    try {
        config.validate();
        if (config.command == "oracle") return run_oracle(config);
        return run_verify(config);
    } catch (const config_error& ex) {
        std::cerr << "config error: " << ex.what() << "\n";
        return 2;
    } catch (const budget_error& ex) {
        std::cerr << "budget exceeded: " << ex.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& ex) {
        std::cerr << "config error: " << ex.what() << "\n";
        return 2;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
}

}  // namespace ncfa
