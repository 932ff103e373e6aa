#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <utility>

#include "CLI11.hpp"

#include "treenergy/commands.hpp"
#include "treenergy/errors.hpp"
#include "treenergy/version.hpp"

namespace {

using treenergy::ParamError;

int parse_int(const std::string& s, const std::string& what) {
    int v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        throw ParamError("cannot parse integer '" + s + "' in " + what);
    return v;
}

// "a..b" or a single "a".
std::pair<int, int> parse_range(const std::string& s, const std::string& what) {
    auto dots = s.find("..");
    if (dots == std::string::npos) {
        int v = parse_int(s, what);
        return {v, v};
    }
    int lo = parse_int(s.substr(0, dots), what);
    int hi = parse_int(s.substr(dots + 2), what);
    if (lo > hi) throw ParamError(what + " range is reversed: " + s);
    return {lo, hi};
}

void emit(const treenergy::RunConfig& cfg, const treenergy::CommandOutput& out,
          const std::string& output_path) {
    if (output_path.empty()) {
        treenergy::write_output(std::cout, cfg, out);
        return;
    }
    std::ofstream f(output_path, std::ios::trunc);
    if (!f) throw ParamError("cannot open output file '" + output_path + "'");
    treenergy::write_output(f, cfg, out);
    if (!f) throw ParamError("failed writing output file '" + output_path + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"graph-energy toolkit for extremal trees"};
    app.require_subcommand(1);
    app.set_version_flag("--version", treenergy::kEngineVersion);

    treenergy::RunConfig cfg;
    std::string output_path;
    bool no_cache = false;

    app.add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    app.add_option("--cache-dir", cfg.cache_dir,
                   "energy cache directory (env TREENERGY_CACHE_DIR)");
    app.add_flag("--no-cache", no_cache, "disable the energy cache");
    app.add_option("--workers", cfg.workers, "worker threads for energy evaluation")
        ->check(CLI::Range(1, 512))
        ->capture_default_str();
    app.add_option("--dense-cap", cfg.dense_cap, "max vertices for the dense eigensolver")
        ->check(CLI::Range(1, 1 << 20))
        ->capture_default_str();
    app.add_option("--eps", cfg.eps, "certified truncation budget for alpha")
        ->capture_default_str();
    app.add_option("--output", output_path, "write the report here instead of stdout");

    auto* alpha_cmd = app.add_subcommand("alpha", "asymptotic energy-per-vertex constants");
    std::string alpha_d = "2..16";
    alpha_cmd->add_option("--d", alpha_d, "degree parameter or range a..b")->capture_default_str();

    auto* energy_cmd = app.add_subcommand("energy", "energy of one tree");
    std::string energy_input, energy_method = "auto";
    energy_cmd->add_option("input", energy_input, "cstar:d,h | bn:level | tstar:n,d | file path")
        ->required();
    energy_cmd->add_option("--method", energy_method, "energy engine")
        ->check(CLI::IsMember({"auto", "dense", "polynomial", "cross"}))
        ->capture_default_str();

    auto* construct_cmd = app.add_subcommand("construct", "materialize a tree family member");
    std::string construct_spec, construct_edge_file;
    construct_cmd->add_option("spec", construct_spec, "cstar:d,h | bn:level | tstar:n,d")
        ->required();
    construct_cmd->add_option("--edge-list-file", construct_edge_file,
                              "also dump the plain edge-list serialization here");

    auto* conj_cmd = app.add_subcommand("conjecture1", "apex-family convergence experiment");
    int conj_max_level = 10;
    std::string conj_plot;
    conj_cmd->add_option("--max-level", conj_max_level, "largest apex level")
        ->check(CLI::Range(0, 30))
        ->capture_default_str();
    conj_cmd->add_option("--plot-file", conj_plot, "two-column level/ratio data for plotting");

    auto* minimal_cmd = app.add_subcommand("minimal", "exhaustive minimum-energy scan");
    std::string minimal_n;
    int minimal_d = 2;
    minimal_cmd->add_option("--n", minimal_n, "vertex count or range a..b")->required();
    minimal_cmd->add_option("--d", minimal_d, "class bound: max degree d+1")->capture_default_str();

    auto* hypo_cmd = app.add_subcommand("hypo-census", "hypoenergetic tree census");
    int hypo_max_n = 16, hypo_max_degree = 3;
    int tstar_max_n = 2000, tstar_full_n = 800, tstar_stride = 25;
    std::string hypo_plot;
    hypo_cmd->add_option("--max-n", hypo_max_n, "census up to this vertex count")
        ->capture_default_str();
    hypo_cmd->add_option("--max-degree", hypo_max_degree, "census degree bound")
        ->capture_default_str();
    hypo_cmd->add_option("--tstar-max-n", tstar_max_n,
                         "scan minimal degree-4 trees up to this size (0 disables)")
        ->capture_default_str();
    hypo_cmd->add_option("--tstar-full-n", tstar_full_n, "scan every size up to here")
        ->capture_default_str();
    hypo_cmd->add_option("--tstar-stride", tstar_stride, "step size beyond the full range")
        ->capture_default_str();
    hypo_cmd->add_option("--plot-file", hypo_plot, "two-column size/energy data for plotting");

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (cfg.cache_dir.empty())
            if (const char* env = std::getenv("TREENERGY_CACHE_DIR")) cfg.cache_dir = env;
        if (no_cache) cfg.cache_dir.clear();

        treenergy::CommandOutput out;
        if (app.got_subcommand(alpha_cmd)) {
            auto [d_min, d_max] = parse_range(alpha_d, "--d");
            cfg.command = "alpha";
            cfg.params["d_min"] = d_min;
            cfg.params["d_max"] = d_max;
            out = treenergy::run_alpha(cfg, d_min, d_max);
        } else if (app.got_subcommand(energy_cmd)) {
            cfg.command = "energy";
            cfg.params["input"] = energy_input;
            cfg.params["method"] = energy_method;
            out = treenergy::run_energy(cfg, energy_input, energy_method);
        } else if (app.got_subcommand(construct_cmd)) {
            cfg.command = "construct";
            cfg.params["spec"] = construct_spec;
            cfg.params["edge_list_file"] = construct_edge_file;
            out = treenergy::run_construct(cfg, construct_spec, construct_edge_file);
        } else if (app.got_subcommand(conj_cmd)) {
            cfg.command = "conjecture1";
            cfg.params["max_level"] = conj_max_level;
            cfg.params["plot_file"] = conj_plot;
            out = treenergy::run_conjecture1(cfg, conj_max_level, conj_plot);
        } else if (app.got_subcommand(minimal_cmd)) {
            auto [n_lo, n_hi] = parse_range(minimal_n, "--n");
            cfg.command = "minimal";
            cfg.params["n_min"] = n_lo;
            cfg.params["n_max"] = n_hi;
            cfg.params["d"] = minimal_d;
            out = treenergy::run_minimal(cfg, n_lo, n_hi, minimal_d);
        } else if (app.got_subcommand(hypo_cmd)) {
            cfg.command = "hypo-census";
            cfg.params["max_n"] = hypo_max_n;
            cfg.params["max_degree"] = hypo_max_degree;
            cfg.params["tstar_max_n"] = tstar_max_n;
            cfg.params["tstar_full_n"] = tstar_full_n;
            cfg.params["tstar_stride"] = tstar_stride;
            cfg.params["plot_file"] = hypo_plot;
            out = treenergy::run_hypo_census(cfg, hypo_max_n, hypo_max_degree, tstar_max_n,
                                             tstar_full_n, tstar_stride, hypo_plot);
        }
        emit(cfg, out, output_path);
        return 0;
    } catch (const treenergy::ParamError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const treenergy::CapError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const treenergy::InvariantError& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
