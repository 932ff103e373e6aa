#include "treenergy/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>

#include "treenergy/alpha.hpp"
#include "treenergy/canonical.hpp"
#include "treenergy/construct.hpp"
#include "treenergy/enumerate.hpp"
#include "treenergy/errors.hpp"
#include "treenergy/min_energy.hpp"
#include "treenergy/parallel.hpp"
#include "treenergy/tree_io.hpp"
#include "treenergy/version.hpp"

namespace treenergy {

namespace {

using Row = nlohmann::ordered_json;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

std::string csv_cell(const Row& v) {
    if (v.is_null()) return "";
    if (v.is_string()) return csv_escape(v.get<std::string>());
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_float()) return fmt17(v.get<double>());
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    return csv_escape(v.dump());
}

void append_csv_table(std::ostream& os, const std::vector<Row>& rows) {
    if (rows.empty()) return;
    bool first = true;
    for (auto it = rows[0].begin(); it != rows[0].end(); ++it) {
        if (!first) os << ',';
        os << csv_escape(it.key());
        first = false;
    }
    os << '\n';
    for (const auto& row : rows) {
        first = true;
        for (auto it = row.begin(); it != row.end(); ++it) {
            if (!first) os << ',';
            os << csv_cell(it.value());
            first = false;
        }
        os << '\n';
    }
}

Row config_json(const RunConfig& cfg) {
    Row c;
    c["command"] = cfg.command;
    c["params"] = cfg.params;
    c["format"] = cfg.format;
    c["cache_dir"] = cfg.cache_dir;
    c["workers"] = cfg.workers;
    c["dense_cap"] = cfg.dense_cap;
    c["eps"] = cfg.eps;
    return c;
}

SpectralOptions options_for(const RunConfig& cfg) {
    SpectralOptions opts;
    opts.dense_cap = cfg.dense_cap;
    return opts;
}

EnergyMethod pick_method(const Tree& t, const std::string& method) {
    if (method == "auto") return t.n <= kPolynomialCap ? EnergyMethod::Cross : EnergyMethod::Dense;
    return energy_method_from_string(method);
}

EnergyResult cached_energy(const Tree& t, EnergyMethod method, const SpectralOptions& opts,
                           const EnergyCache& cache) {
    if (!cache.enabled()) return tree_energy(t, method, opts);
    CanonicalCode code = canonical_code(t);
    if (auto hit = cache.lookup(code, method, opts.root_tol)) return *hit;
    EnergyResult r = tree_energy(t, method, opts);
    cache.store(code, method, opts.root_tol, r);
    return r;
}

std::vector<long long> parse_ints(const std::string& text, size_t count, const std::string& what) {
    std::vector<long long> out;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t comma = text.find(',', pos);
        std::string piece = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
        long long v = 0;
        auto [p, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), v);
        if (ec != std::errc() || p != piece.data() + piece.size())
            throw ParamError("cannot parse '" + piece + "' in " + what);
        out.push_back(v);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (out.size() != count)
        throw ParamError(what + " takes " + std::to_string(count) + " integer(s), got " +
                         std::to_string(out.size()));
    return out;
}

void write_plot_file(const std::string& path, const std::vector<std::pair<double, double>>& points,
                     const std::string& what) {
    if (path.empty()) return;
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw ParamError("cannot open plot file '" + path + "'");
    for (const auto& [x, y] : points) out << fmt17(x) << ' ' << fmt17(y) << '\n';
    if (!out) throw ParamError("failed writing plot file '" + path + "'");
    std::cerr << "wrote " << what << " plot data to " << path << "\n";
}

}  // namespace

Tree tree_from_input(const std::string& input) {
    if (input.rfind("cstar:", 0) == 0) {
        auto v = parse_ints(input.substr(6), 2, "cstar:d,h");
        if (v[0] < 1 || v[1] < 0) throw ParamError("cstar needs d >= 1 and h >= 0");
        return complete_dary(static_cast<int>(v[0]), static_cast<int>(v[1])).tree;
    }
    if (input.rfind("bn:", 0) == 0) {
        auto v = parse_ints(input.substr(3), 1, "bn:level");
        if (v[0] < 0 || v[0] > 30) throw ParamError("bn level must be in [0, 30]");
        return bn_tree(static_cast<int>(v[0]));
    }
    if (input.rfind("tstar:", 0) == 0) {
        auto v = parse_ints(input.substr(6), 2, "tstar:n,d");
        if (v[0] < 1 || v[0] > 50000000) throw ParamError("tstar needs n in [1, 5e7]");
        if (v[1] < 2) throw ParamError("tstar needs d >= 2");
        return build_tstar(static_cast<long long>(v[0]), static_cast<int>(v[1]));
    }
    return read_tree_file(input);
}

CommandOutput run_alpha(const RunConfig& cfg, int d_min, int d_max) {
    CommandOutput out;
    for (const auto& est : alpha_table(d_min, d_max, cfg.eps)) {
        Row row;
        row["d"] = est.d;
        row["alpha"] = est.value;
        row["j_max"] = est.j_max;
        row["tail_bound"] = est.tail_bound;
        row["requested_eps"] = est.requested_eps;
        out.rows.push_back(std::move(row));
    }
    return out;
}

CommandOutput run_energy(const RunConfig& cfg, const std::string& input, const std::string& method) {
    Tree t = tree_from_input(input);
    if (t.n < 1) throw ParamError("input '" + input + "' is an empty tree; energy is undefined");
    EnergyCache cache(cfg.cache_dir.empty() ? EnergyCache() : EnergyCache(cfg.cache_dir));
    EnergyResult r = cached_energy(t, pick_method(t, method), options_for(cfg), cache);

    CommandOutput out;
    Row row;
    row["input"] = input;
    row["n"] = t.n;
    row["method"] = to_string(r.method);
    row["energy"] = r.value;
    row["error_bound"] = r.error_bound;
    out.rows.push_back(std::move(row));
    return out;
}

CommandOutput run_construct(const RunConfig& cfg, const std::string& spec,
                            const std::string& edge_list_file) {
    (void)cfg;
    Tree t = tree_from_input(spec);
    if (!edge_list_file.empty()) {
        std::ofstream f(edge_list_file, std::ios::trunc);
        if (!f) throw ParamError("cannot open edge list file '" + edge_list_file + "'");
        f << serialize_tree(t);
        if (!f) throw ParamError("failed writing edge list file '" + edge_list_file + "'");
    }
    CommandOutput out;
    for (const auto& [u, v] : t.edges) {
        Row row;
        row["u"] = u;
        row["v"] = v;
        out.rows.push_back(std::move(row));
    }
    return out;
}

CommandOutput run_conjecture1(const RunConfig& cfg, int max_level, const std::string& plot_file) {
    if (max_level < 0) throw ParamError("max level must be nonnegative");
    if (max_level > 30) throw CapError("bn levels above 30 are out of range");

    // The apex construction must coincide with the digital-expansion
    // construction where the latter is cheap to compare.
    for (int k = 0; k <= std::min(max_level, 6); ++k) {
        Tree bn = bn_tree(k);
        Tree tstar = build_tstar(bn_tree_size(k), 2);
        if (!(canonical_code(bn) == canonical_code(tstar)))
            throw InvariantError("bn_tree(" + std::to_string(k) +
                                 ") is not isomorphic to the minimal tree on " +
                                 std::to_string(bn_tree_size(k)) + " vertices");
    }

    double a2 = alpha(2, cfg.eps).value;
    EnergyCache cache(cfg.cache_dir.empty() ? EnergyCache() : EnergyCache(cfg.cache_dir));
    SpectralOptions opts = options_for(cfg);

    auto energies = parallel_map(max_level + 1, cfg.workers, [&](int k) {
        Tree t = bn_tree(k);
        return cached_energy(t, pick_method(t, "auto"), opts, cache).value;
    });

    CommandOutput out;
    std::vector<std::pair<double, double>> points;
    double prev_ratio = 0.0;
    for (int k = 0; k <= max_level; ++k) {
        long long size = bn_tree_size(k);
        double ratio = energies[k] / static_cast<double>(size);
        if (k > 0 && ratio <= prev_ratio)
            std::cerr << "warning: energy-per-vertex ratio is not strictly increasing at level " << k
                      << " (" << fmt17(prev_ratio) << " -> " << fmt17(ratio) << ")\n";
        prev_ratio = ratio;
        Row row;
        row["level"] = k;
        row["vertex_count"] = size;
        row["energy"] = energies[k];
        row["ratio"] = ratio;
        row["gap"] = std::fabs(ratio - a2);
        out.rows.push_back(std::move(row));
        points.emplace_back(static_cast<double>(k), ratio);
    }
    write_plot_file(plot_file, points, "ratio-vs-level");
    return out;
}

CommandOutput run_minimal(const RunConfig& cfg, int n_lo, int n_hi, int d) {
    if (n_lo < 1 || n_hi < n_lo) throw ParamError("need 1 <= n_lo <= n_hi");
    if (d < 1) throw ParamError("need d >= 1");

    std::optional<double> alpha_d;
    if (d >= 2 && d <= 16) alpha_d = alpha(d, cfg.eps).value;
    EnergyCache cache(cfg.cache_dir.empty() ? EnergyCache() : EnergyCache(cfg.cache_dir));
    SpectralOptions opts = options_for(cfg);
    EnergyFn eval = [&](const Tree& t) {
        return cached_energy(t, EnergyMethod::Cross, opts, cache).value;
    };

    auto reports = parallel_map(n_hi - n_lo + 1, cfg.workers, [&](int i) {
        return min_energy_search(n_lo + i, d, opts, eval);
    });

    CommandOutput out;
    for (const auto& rep : reports) {
        Row row;
        row["n"] = rep.n;
        row["d"] = rep.d;
        row["classes"] = rep.scanned;
        row["min_energy"] = rep.min_energy;
        row["energy_per_vertex"] = rep.min_energy / rep.n;
        row["alpha_d"] = alpha_d ? Row(*alpha_d) : Row(nullptr);
        row["argmin_code"] = rep.argmin_code.code;
        row["argmin_unique"] = rep.argmin_unique;
        row["tstar_match"] = rep.tstar_match;
        row["runner_up_gap"] = rep.runner_up_gap ? Row(*rep.runner_up_gap) : Row(nullptr);
        row["tie_indistinguishable"] = rep.tie_indistinguishable;
        out.rows.push_back(std::move(row));
    }
    return out;
}

CommandOutput run_hypo_census(const RunConfig& cfg, int max_n, int max_degree, int tstar_max_n,
                              int tstar_full_n, int tstar_stride, const std::string& plot_file) {
    if (max_n < 1) throw ParamError("census needs max_n >= 1");
    if (max_degree < 1) throw ParamError("census needs max_degree >= 1");
    if (tstar_max_n < 0) throw ParamError("tstar scan bound must be nonnegative");
    if (tstar_stride < 1) throw ParamError("tstar scan stride must be positive");

    EnergyCache cache(cfg.cache_dir.empty() ? EnergyCache() : EnergyCache(cfg.cache_dir));
    SpectralOptions opts = options_for(cfg);

    CommandOutput out;
    for (int n = 1; n <= max_n; ++n) {
        std::vector<Tree> trees;
        if (n < 3 || max_degree >= 2)
            enumerate_trees({n, max_degree}, [&](const Tree& t) { trees.push_back(t); });
        auto energies = parallel_map(static_cast<int>(trees.size()), cfg.workers, [&](int i) {
            return cached_energy(trees[i], pick_method(trees[i], "auto"), opts, cache).value;
        });

        long long hypo = 0, strong = 0;
        std::string witnesses;
        for (size_t i = 0; i < trees.size(); ++i) {
            if (energies[i] < n) {
                ++hypo;
                if (!witnesses.empty()) witnesses += ';';
                witnesses += canonical_code(trees[i]).code;
            }
            if (energies[i] < n - 1) ++strong;
        }
        if (strong > hypo || hypo > static_cast<long long>(trees.size()))
            throw InvariantError("census counts inconsistent at n = " + std::to_string(n));

        Row row;
        row["n"] = n;
        row["max_degree"] = max_degree;
        row["classes"] = static_cast<long long>(trees.size());
        row["hypoenergetic"] = hypo;
        row["strongly_hypoenergetic"] = strong;
        row["witnesses"] = witnesses;
        out.rows.push_back(std::move(row));
    }

    if (tstar_max_n >= 1) {
        // Minimal trees of branching degree 3 are built directly and scanned
        // with the dense engine: every n up to tstar_full_n, then a strided
        // tail so large sizes stay affordable.
        std::vector<int> sizes;
        for (int n = 1; n <= std::min(tstar_full_n, tstar_max_n); ++n) sizes.push_back(n);
        for (int n = tstar_full_n + tstar_stride; n <= tstar_max_n; n += tstar_stride)
            sizes.push_back(n);
        if (sizes.empty() || sizes.back() != tstar_max_n) sizes.push_back(tstar_max_n);

        auto energies = parallel_map(static_cast<int>(sizes.size()), cfg.workers, [&](int i) {
            Tree t = build_tstar(sizes[i], 3);
            return cached_energy(t, EnergyMethod::Dense, opts, cache).value;
        });

        auto first_with = [&](auto pred) -> Row {
            for (size_t i = 0; i < sizes.size(); ++i)
                if (pred(energies[i], sizes[i])) return Row(sizes[i]);
            return Row(nullptr);
        };
        auto stable_from = [&](auto pred) -> Row {
            if (!pred(energies.back(), sizes.back())) return Row(nullptr);
            size_t i = sizes.size();
            while (i > 0 && pred(energies[i - 1], sizes[i - 1])) --i;
            return Row(sizes[i]);
        };
        auto hypo_pred = [](double e, int n) { return e < n; };
        auto strong_pred = [](double e, int n) { return e < n - 1; };

        Row scan;
        scan["d"] = 3;
        scan["scan_max_n"] = tstar_max_n;
        scan["scan_full_n"] = tstar_full_n;
        scan["scan_stride"] = tstar_stride;
        scan["scanned_points"] = static_cast<long long>(sizes.size());
        scan["first_hypoenergetic_n"] = first_with(hypo_pred);
        scan["first_strongly_hypoenergetic_n"] = first_with(strong_pred);
        scan["hypoenergetic_stable_from"] = stable_from(hypo_pred);
        scan["strongly_hypoenergetic_stable_from"] = stable_from(strong_pred);
        scan["final_n"] = sizes.back();
        scan["final_energy"] = energies.back();
        scan["final_energy_per_vertex"] = energies.back() / sizes.back();
        out.extra_table = "tstar_scan";
        out.extra_rows.push_back(std::move(scan));

        std::vector<std::pair<double, double>> points;
        for (size_t i = 0; i < sizes.size(); ++i)
            points.emplace_back(static_cast<double>(sizes[i]), energies[i]);
        write_plot_file(plot_file, points, "minimal-tree energy scan");
    }
    return out;
}

void write_output(std::ostream& os, const RunConfig& cfg, const CommandOutput& out) {
    if (cfg.format == "json") {
        Row top;
        top["config"] = config_json(cfg);
        top["engine_version"] = kEngineVersion;
        top["rows"] = out.rows;
        if (!out.extra_table.empty()) top[out.extra_table] = out.extra_rows;
        os << top.dump(2) << '\n';
        return;
    }
    if (cfg.format != "csv") throw ParamError("unknown output format '" + cfg.format + "'");
    os << "# config: " << config_json(cfg).dump() << '\n';
    os << "# engine_version: " << kEngineVersion << '\n';
    append_csv_table(os, out.rows);
    if (!out.extra_table.empty()) {
        os << '\n';
        os << "# table: " << out.extra_table << '\n';
        append_csv_table(os, out.extra_rows);
    }
}

}  // namespace treenergy
