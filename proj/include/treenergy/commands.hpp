#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "treenergy/cache.hpp"
#include "treenergy/energy.hpp"
#include "treenergy/tree.hpp"

namespace treenergy {

// Everything a run depends on; echoed verbatim into every output artifact.
struct RunConfig {
    std::string command;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    std::string format = "csv";  // csv | json
    std::string cache_dir;       // empty: caching disabled
    int workers = 1;
    int dense_cap = kDefaultDenseCap;
    double eps = 1e-10;
};

struct CommandOutput {
    std::vector<nlohmann::ordered_json> rows;
    std::string extra_table;  // second table name, empty if none
    std::vector<nlohmann::ordered_json> extra_rows;
};

// Accepts cstar:d,h | bn:level | tstar:n,d | a path to an edge-list or
// graph6 file.
Tree tree_from_input(const std::string& input);

CommandOutput run_alpha(const RunConfig& cfg, int d_min, int d_max);
CommandOutput run_energy(const RunConfig& cfg, const std::string& input, const std::string& method);
CommandOutput run_construct(const RunConfig& cfg, const std::string& spec,
                            const std::string& edge_list_file);
CommandOutput run_conjecture1(const RunConfig& cfg, int max_level, const std::string& plot_file);
CommandOutput run_minimal(const RunConfig& cfg, int n_lo, int n_hi, int d);
CommandOutput run_hypo_census(const RunConfig& cfg, int max_n, int max_degree, int tstar_max_n,
                              int tstar_full_n, int tstar_stride, const std::string& plot_file);

// CSV: '#'-prefixed config preamble, then header + rows; a second table is
// separated by one blank line. JSON: {config, engine_version, rows} plus
// the second table under its own key.
void write_output(std::ostream& os, const RunConfig& cfg, const CommandOutput& out);

}  // namespace treenergy
