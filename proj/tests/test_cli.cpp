#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "treenergy/alpha.hpp"
#include "treenergy/cache.hpp"
#include "treenergy/canonical.hpp"
#include "treenergy/commands.hpp"
#include "treenergy/construct.hpp"
#include "treenergy/energy.hpp"
#include "treenergy/errors.hpp"
#include "treenergy/parallel.hpp"
#include "treenergy/tree_io.hpp"
#include "treenergy/version.hpp"

using namespace treenergy;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("treenergy_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    static int& counter() {
        static int c = 0;
        return c;
    }
};

std::string render(const RunConfig& cfg, const CommandOutput& out) {
    std::ostringstream os;
    write_output(os, cfg, out);
    return os.str();
}

}  // namespace

TEST_CASE("tree specs resolve to the advertised families") {
    CHECK(tree_from_input("cstar:2,3").n == 7);
    CHECK(tree_from_input("bn:1").n == 10);
    CHECK(tree_from_input("tstar:17,3").n == 17);
    CHECK(canonical_code(tree_from_input("tstar:10,2")) == canonical_code(tree_from_input("bn:1")));

    CHECK_THROWS_AS(tree_from_input("cstar:0,1"), ParamError);
    CHECK_THROWS_AS(tree_from_input("cstar:2"), ParamError);
    CHECK_THROWS_AS(tree_from_input("bn:-1"), ParamError);
    CHECK_THROWS_AS(tree_from_input("bn:31"), ParamError);
    CHECK_THROWS_AS(tree_from_input("tstar:0,2"), ParamError);
    CHECK_THROWS_AS(tree_from_input("tstar:10,1"), ParamError);
    CHECK_THROWS_AS(tree_from_input("tstar:x,2"), ParamError);
    CHECK_THROWS_AS(tree_from_input("/nonexistent/tree.txt"), ParamError);
}

TEST_CASE("tree files route through the right parser") {
    TempDir tmp;
    fs::path edge_list = tmp.path / "t.txt";
    std::ofstream(edge_list) << "4\n0 1\n0 2\n0 3\n";
    CHECK(canonical_code(tree_from_input(edge_list.string())) ==
          canonical_code(star_tree(4)));

    fs::path g6 = tmp.path / "t.g6";
    std::ofstream(g6) << "Ch\n";
    CHECK(canonical_code(tree_from_input(g6.string())) == canonical_code(path_tree(4)));
}

TEST_CASE("energy command rows") {
    RunConfig cfg;
    cfg.command = "energy";
    CommandOutput out = run_energy(cfg, "bn:0", "auto");
    REQUIRE(out.rows.size() == 1);
    const auto& row = out.rows[0];
    CHECK(row.at("input") == "bn:0");
    CHECK(row.at("n") == 4);
    CHECK(row.at("method") == "cross");  // auto picks cross below the polynomial cap
    CHECK(std::fabs(row.at("energy").get<double>() - 2.0 * std::sqrt(3.0)) < 1e-9);
    CHECK(row.at("error_bound").get<double>() > 0.0);

    CHECK(run_energy(cfg, "tstar:300,2", "auto").rows[0].at("method") == "dense");
    CHECK(run_energy(cfg, "bn:0", "dense").rows[0].at("method") == "dense");

    double via_tstar = run_energy(cfg, "tstar:10,2", "cross").rows[0].at("energy").get<double>();
    double via_bn = run_energy(cfg, "bn:1", "cross").rows[0].at("energy").get<double>();
    CHECK(std::fabs(via_tstar - via_bn) < 1e-12);

    CHECK_THROWS_AS(run_energy(cfg, "cstar:2,0", "auto"), ParamError);  // empty tree
    CHECK_THROWS_AS(run_energy(cfg, "bn:0", "fft"), ParamError);
}

TEST_CASE("construct command emits edges and optional files") {
    TempDir tmp;
    RunConfig cfg;
    cfg.command = "construct";
    fs::path out_file = tmp.path / "out.txt";
    CommandOutput out = run_construct(cfg, "tstar:9,2", out_file.string());
    CHECK(out.rows.size() == 8);
    for (const auto& row : out.rows) {
        CHECK(row.at("u").get<int>() < row.at("v").get<int>());
        CHECK(row.at("v").get<int>() < 9);
    }
    Tree round_trip = read_tree_file(out_file.string());
    CHECK(canonical_code(round_trip) == canonical_code(tree_from_input("tstar:9,2")));
}

TEST_CASE("alpha command mirrors the library table") {
    RunConfig cfg;
    cfg.command = "alpha";
    cfg.eps = 1e-8;
    CommandOutput out = run_alpha(cfg, 2, 4);
    REQUIRE(out.rows.size() == 3);
    CHECK(out.rows[0].at("d") == 2);
    CHECK(out.rows[0].at("alpha").get<double>() == alpha(2, 1e-8).value);
    CHECK(out.rows[2].at("j_max").get<int>() >= 3);
    CHECK(out.rows[1].at("tail_bound").get<double>() <= 0.5e-8);
    CHECK_THROWS_AS(run_alpha(cfg, 1, 4), ParamError);
}

TEST_CASE("conjecture scan rows carry the ratio diagnostics") {
    TempDir tmp;
    RunConfig cfg;
    cfg.command = "conjecture1";
    fs::path plot = tmp.path / "plot.dat";
    CommandOutput out = run_conjecture1(cfg, 3, plot.string());
    REQUIRE(out.rows.size() == 4);
    const long long sizes[] = {4, 10, 22, 46};
    double prev = 0.0;
    for (int k = 0; k <= 3; ++k) {
        const auto& row = out.rows[k];
        CHECK(row.at("level") == k);
        CHECK(row.at("vertex_count") == sizes[k]);
        double ratio = row.at("ratio").get<double>();
        CHECK(ratio == row.at("energy").get<double>() / sizes[k]);
        CHECK(ratio > prev);  // strictly increasing toward the limit
        prev = ratio;
        CHECK(row.at("gap").get<double>() ==
              std::fabs(ratio - alpha(2, cfg.eps).value));
    }
    CHECK(std::fabs(out.rows[0].at("energy").get<double>() - 2.0 * std::sqrt(3.0)) < 1e-9);

    std::ifstream in(plot);
    int lines = 0;
    double x, y;
    while (in >> x >> y) ++lines;
    CHECK(lines == 4);

    CHECK_THROWS_AS(run_conjecture1(cfg, -1, ""), ParamError);
    CHECK_THROWS_AS(run_conjecture1(cfg, 31, ""), CapError);
}

TEST_CASE("minimal command rows") {
    RunConfig cfg;
    cfg.command = "minimal";
    CommandOutput out = run_minimal(cfg, 2, 6, 2);
    REQUIRE(out.rows.size() == 5);
    for (const auto& row : out.rows) {
        CHECK(row.at("d") == 2);
        CHECK(row.at("tstar_match") == true);
        CHECK(row.at("argmin_unique") == true);
        CHECK(row.at("tie_indistinguishable") == false);
        CHECK(row.at("alpha_d").get<double>() > 0.0);
        CHECK(row.at("energy_per_vertex").get<double>() ==
              row.at("min_energy").get<double>() / row.at("n").get<int>());
    }
    CHECK(out.rows[0].at("runner_up_gap").is_null());  // single class at n = 2
    CHECK(out.rows[2].at("argmin_code") == canonical_code(star_tree(4)).code);
    CHECK_THROWS_AS(run_minimal(cfg, 5, 4, 2), ParamError);
    CHECK_THROWS_AS(run_minimal(cfg, 0, 4, 2), ParamError);
}

TEST_CASE("census rows pin the known hypoenergetic sizes") {
    RunConfig cfg;
    cfg.command = "hypo-census";
    cfg.workers = 4;
    CommandOutput out = run_hypo_census(cfg, 8, 3, 40, 40, 10, "");
    REQUIRE(out.rows.size() == 8);
    const long long expected_hypo[] = {1, 0, 1, 1, 0, 0, 1, 0};
    for (int n = 1; n <= 8; ++n) {
        const auto& row = out.rows[n - 1];
        CHECK(row.at("n") == n);
        CHECK(row.at("hypoenergetic") == expected_hypo[n - 1]);
        CHECK(row.at("strongly_hypoenergetic").get<long long>() <=
              row.at("hypoenergetic").get<long long>());
        std::string w = row.at("witnesses").get<std::string>();
        CHECK((expected_hypo[n - 1] == 0) == w.empty());
    }
    CHECK(out.rows[0].at("witnesses") == "()");
    CHECK(out.rows[3].at("witnesses") == canonical_code(star_tree(4)).code);

    REQUIRE(out.extra_table == "tstar_scan");
    REQUIRE(out.extra_rows.size() == 1);
    const auto& scan = out.extra_rows[0];
    CHECK(scan.at("d") == 3);
    CHECK(scan.at("final_n") == 40);
    CHECK(scan.at("first_hypoenergetic_n").get<int>() >= 1);
    CHECK(scan.at("final_energy_per_vertex").get<double>() < 1.0);

    CHECK_THROWS_AS(run_hypo_census(cfg, 0, 3, 10, 10, 5, ""), ParamError);
    CHECK_THROWS_AS(run_hypo_census(cfg, 4, 3, 10, 10, 0, ""), ParamError);
}

TEST_CASE("csv output embeds the config and quotes commas") {
    RunConfig cfg;
    cfg.command = "energy";
    cfg.params["input"] = "tstar:10,2";
    CommandOutput out = run_energy(cfg, "tstar:10,2", "cross");
    std::string text = render(cfg, out);
    CHECK(text.rfind("# config: {", 0) == 0);
    CHECK(text.find("\n# engine_version: " + std::string(kEngineVersion) + "\n") !=
          std::string::npos);
    CHECK(text.find("input,n,method,energy,error_bound\n") != std::string::npos);
    CHECK(text.find("\"tstar:10,2\"") != std::string::npos);  // comma forces quoting
}

TEST_CASE("csv output separates the census scan table") {
    RunConfig cfg;
    cfg.command = "hypo-census";
    CommandOutput out = run_hypo_census(cfg, 3, 3, 12, 12, 4, "");
    std::string text = render(cfg, out);
    CHECK(text.find("\n\n# table: tstar_scan\n") != std::string::npos);
    CHECK(text.find("first_hypoenergetic_n") != std::string::npos);
}

TEST_CASE("json output round-trips through a parser") {
    RunConfig cfg;
    cfg.command = "energy";
    cfg.format = "json";
    cfg.workers = 3;
    CommandOutput out = run_energy(cfg, "bn:0", "cross");
    auto doc = nlohmann::json::parse(render(cfg, out));
    CHECK(doc.at("engine_version") == kEngineVersion);
    CHECK(doc.at("config").at("command") == "energy");
    CHECK(doc.at("config").at("workers") == 3);
    REQUIRE(doc.at("rows").size() == 1);
    CHECK(std::fabs(doc.at("rows")[0].at("energy").get<double>() - 2.0 * std::sqrt(3.0)) < 1e-9);

    cfg.format = "yaml";
    CHECK_THROWS_AS(render(cfg, out), ParamError);
}

TEST_CASE("outputs are byte-identical across repeat runs") {
    RunConfig cfg;
    cfg.command = "minimal";
    cfg.params["n"] = "2..7";
    std::string a = render(cfg, run_minimal(cfg, 2, 7, 2));
    std::string b = render(cfg, run_minimal(cfg, 2, 7, 2));
    CHECK(a == b);
}

TEST_CASE("worker count changes nothing but the echoed config") {
    RunConfig one;
    one.command = "conjecture1";
    one.workers = 1;
    RunConfig four = one;
    four.workers = 4;
    auto rows_one = run_conjecture1(one, 4, "").rows;
    auto rows_four = run_conjecture1(four, 4, "").rows;
    REQUIRE(rows_one.size() == rows_four.size());
    for (size_t i = 0; i < rows_one.size(); ++i)
        CHECK(rows_one[i].dump() == rows_four[i].dump());
}

TEST_CASE("cache stores, hits, and survives corruption") {
    TempDir tmp;
    EnergyCache cache(tmp.path);
    REQUIRE(cache.enabled());
    CHECK_FALSE(EnergyCache().enabled());

    CanonicalCode code = canonical_code(star_tree(4));
    EnergyResult r;
    r.value = 2.0 * std::sqrt(3.0);
    r.method = EnergyMethod::Cross;
    r.error_bound = 4e-12;

    CHECK_FALSE(cache.lookup(code, EnergyMethod::Cross, 1e-12).has_value());
    cache.store(code, EnergyMethod::Cross, 1e-12, r);
    auto hit = cache.lookup(code, EnergyMethod::Cross, 1e-12);
    REQUIRE(hit.has_value());
    CHECK(hit->value == r.value);
    CHECK(hit->error_bound == r.error_bound);
    CHECK(hit->method == EnergyMethod::Cross);

    // Different method, tolerance, or tree: separate entries.
    CHECK_FALSE(cache.lookup(code, EnergyMethod::Dense, 1e-12).has_value());
    CHECK_FALSE(cache.lookup(code, EnergyMethod::Cross, 1e-10).has_value());
    CHECK_FALSE(cache.lookup(canonical_code(path_tree(4)), EnergyMethod::Cross, 1e-12).has_value());

    // A stale engine version must be ignored even if the file parses.
    fs::path entry;
    for (const auto& e : fs::directory_iterator(tmp.path)) entry = e.path();
    {
        std::ifstream in(entry);
        auto j = nlohmann::json::parse(in);
        j["engine_version"] = "0.0.0";
        std::ofstream(entry, std::ios::trunc) << j.dump();
    }
    CHECK_FALSE(cache.lookup(code, EnergyMethod::Cross, 1e-12).has_value());

    // Corrupt bytes are skipped, not fatal.
    std::ofstream(entry, std::ios::trunc) << "not json";
    CHECK_FALSE(cache.lookup(code, EnergyMethod::Cross, 1e-12).has_value());
    cache.store(code, EnergyMethod::Cross, 1e-12, r);
    CHECK(cache.lookup(code, EnergyMethod::Cross, 1e-12).has_value());
}

TEST_CASE("cache does not change command output") {
    TempDir tmp;
    RunConfig plain;
    plain.command = "energy";
    RunConfig cached = plain;
    cached.cache_dir = (tmp.path / "cache").string();

    auto bare = run_energy(plain, "tstar:30,3", "cross").rows;
    auto cold = run_energy(cached, "tstar:30,3", "cross").rows;
    auto warm = run_energy(cached, "tstar:30,3", "cross").rows;
    CHECK(bare[0].dump() == cold[0].dump());
    CHECK(cold[0].dump() == warm[0].dump());
    CHECK(fs::exists(tmp.path / "cache"));  // entries actually landed
    bool has_entry = false;
    for (const auto& e : fs::directory_iterator(tmp.path / "cache"))
        has_entry |= e.path().extension() == ".json";
    CHECK(has_entry);
}

TEST_CASE("parallel map preserves order and propagates failures") {
    auto squares = parallel_map(100, 8, [](int i) { return i * i; });
    REQUIRE(squares.size() == 100);
    for (int i = 0; i < 100; ++i) CHECK(squares[i] == i * i);

    CHECK(parallel_map(0, 4, [](int i) { return i; }).empty());

    CHECK_THROWS_AS(parallel_map(50, 4,
                                 [](int i) -> int {
                                     if (i == 37) throw ParamError("boom");
                                     return i;
                                 }),
                    ParamError);
}
