#ifndef DQPT_RUN_HPP
#define DQPT_RUN_HPP

#include <set>
#include <string>
#include <vector>

#include "dqpt/dynamics.hpp"
#include "dqpt/series.hpp"

namespace dqpt {

// Everything one sweep needs; parsed from a flat key-value config file.
struct RunConfig {
    std::string model = "kitaev";  // kitaev | kitaev_nnn
    ModelParams params_initial;
    ModelParams params_final;
    std::size_t n_momenta = 2000;
    double t_max = 6.0;
    std::size_t n_times = 1201;
    std::set<std::string> diagnostics = {"rate", "dtop", "fisher", "pkt"};
    int n_max = 3;
    bool half_bz = false;
    std::string output_dir = ".";
    std::uint64_t seed = 1;  // randomized selftest draws only

    void validate() const;
    QuenchSpec quench() const;
    std::vector<std::pair<std::string, std::string>> echo() const;
};

// "key = value" lines, '#' comments; nested ModelParams fields use dotted
// keys (params_initial.t1, ...). Throws ConfigError on unknown keys.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

// Apply one "key=value" override (CLI flags use this too).
void apply_key(RunConfig& cfg, const std::string& key, const std::string& value);

// Runs every requested diagnostic and writes one CSV per diagnostic into
// output_dir. Returns the tables in emission order.
std::vector<SeriesTable> run(const RunConfig& cfg);

}  // namespace dqpt

#endif
