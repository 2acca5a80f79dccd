#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ncfa {

struct config_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Exit codes of run(): 0 ok, 1 hard-assertion failures, 2 config errors,
// 3 budget exceeded.
struct RunConfig {
    std::string command;  // verify | sweep | oracle
    std::vector<std::string> theorems;
    std::vector<std::string> specs;      // NormSpec grammar ("Lp(3)", "orlicz(M:2,4)", ...)
    std::vector<std::string> ensembles;  // "classical:K=4,n=2", ...
    double rosenthal_p = 4.0;
    std::vector<double> q_list = {2.0, 4.0, 8.0};
    std::string direction = "both";
    std::vector<std::string> variants = {"positive", "mean_zero", "khinchine"};
    int trials = 100;
    std::uint64_t seed = 0;
    std::string out_path;
    std::string format;  // json | csv; empty picks the command default
    std::string oracle_check;
    std::string input_path;

    void validate() const;  // throws config_error

    // Config files carry the same fields as flags, as one JSON object.
    static RunConfig from_json(const std::string& text);
    static RunConfig from_json_file(const std::string& path);
};

// Executes the config end to end: runs the requested drivers, writes report
// files, prints one summary line per report, enumerates failures on stderr.
int run(const RunConfig& config);

}  // namespace ncfa
