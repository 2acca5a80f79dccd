#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ncfa/run_config.hpp"

namespace {

// Flags override the config file: only options the user actually passed are
// copied onto the file-provided base.
struct Options {
    std::string config_path;
    std::vector<std::string> theorems, specs, ensembles, variants;
    double p = 4.0;
    std::vector<double> q_list;
    std::string direction;
    int trials = 0;
    std::uint64_t seed = 0;
    std::string out, format, check, input;
};

void add_common(CLI::App* cmd, Options& opt) {
    cmd->add_option("--config", opt.config_path, "JSON config file (same schema as flags)");
    cmd->add_option("--trials", opt.trials, "trials per report cell");
    cmd->add_option("--seed", opt.seed, "base RNG seed");
    cmd->add_option("--out", opt.out, "output file path");
    cmd->add_option("--format", opt.format, "json or csv");
}

void add_verify_like(CLI::App* cmd, Options& opt) {
    add_common(cmd, opt);
    cmd->add_option("--theorem", opt.theorems, "theorem id (repeat or comma-separate)")->delimiter(',');
    // specs carry commas of their own (cap(1,4)); split at top level below
    cmd->add_option("--spec", opt.specs, "norm spec list, e.g. \"Lp(1.5),Lp(3)\" or orlicz(M:2,4)");
    cmd->add_option("--ensemble", opt.ensembles, "ensemble descriptor, e.g. classical:K=4,n=2");
    cmd->add_option("--p", opt.p, "exponent for rosenthal/footnote");
    cmd->add_option("--q", opt.q_list, "exponent list for lemma-bounds")->delimiter(',');
    cmd->add_option("--direction", opt.direction, "js direction: upper, lower or both");
    cmd->add_option("--variant", opt.variants, "modular variants to run")->delimiter(',');
}

// splits on commas outside parentheses: "Lp(1.5),cap(1,4)" -> two specs
std::vector<std::string> split_top_level(const std::vector<std::string>& items) {
    std::vector<std::string> out;
    for (const std::string& item : items) {
        std::string current;
        int depth = 0;
        for (char c : item) {
            if (c == '(') ++depth;
            if (c == ')') --depth;
            if (c == ',' && depth == 0) {
                if (!current.empty()) out.push_back(current);
                current.clear();
            } else {
                current += c;
            }
        }
        if (!current.empty()) out.push_back(current);
    }
    return out;
}

bool passed(const CLI::App& cmd, const std::string& name) {
    const CLI::Option* opt = cmd.get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
}

ncfa::RunConfig assemble(const CLI::App& cmd, const Options& opt, const std::string& command) {
    ncfa::RunConfig config;
    if (!opt.config_path.empty()) config = ncfa::RunConfig::from_json_file(opt.config_path);
    config.command = command;
    if (passed(cmd, "--theorem")) config.theorems = opt.theorems;
    if (passed(cmd, "--spec")) config.specs = split_top_level(opt.specs);
    if (passed(cmd, "--ensemble")) config.ensembles = opt.ensembles;
    if (passed(cmd, "--variant")) config.variants = opt.variants;
    if (passed(cmd, "--p")) config.rosenthal_p = opt.p;
    if (passed(cmd, "--q")) config.q_list = opt.q_list;
    if (passed(cmd, "--direction")) config.direction = opt.direction;
    if (passed(cmd, "--trials")) config.trials = opt.trials;
    if (passed(cmd, "--seed")) config.seed = opt.seed;
    if (passed(cmd, "--out")) config.out_path = opt.out;
    if (passed(cmd, "--format")) config.format = opt.format;
    if (passed(cmd, "--check")) config.oracle_check = opt.check;
    if (passed(cmd, "--input")) config.input_path = opt.input;
    return config;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"noncommutative-probability verification suite"};
    app.require_subcommand(1);

    Options vopt, sopt, oopt;
    CLI::App* verify = app.add_subcommand("verify", "run theorem drivers and write a report");
    add_verify_like(verify, vopt);
    CLI::App* sweep = app.add_subcommand("sweep", "cross-product run, CSV by default");
    add_verify_like(sweep, sopt);
    CLI::App* oracle = app.add_subcommand("oracle", "exact-identity suites and file transforms");
    add_common(oracle, oopt);
    oracle->add_option("--check", oopt.check, "l2-orthogonality | duality-pairing | ce-submajorization | mu");
    oracle->add_option("--input", oopt.input, "matrix JSON input (for --check mu)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (verify->parsed()) return ncfa::run(assemble(*verify, vopt, "verify"));
        if (sweep->parsed()) return ncfa::run(assemble(*sweep, sopt, "sweep"));
        return ncfa::run(assemble(*oracle, oopt, "oracle"));
    } catch (const ncfa::config_error& ex) {
        std::fprintf(stderr, "config error: %s\n", ex.what());
        return 2;
    }
}
