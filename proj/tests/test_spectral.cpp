#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "treenergy/construct.hpp"
#include "treenergy/energy.hpp"
#include "treenergy/enumerate.hpp"
#include "treenergy/errors.hpp"
#include "treenergy/highprec.hpp"
#include "treenergy/matching.hpp"
#include "treenergy/spectrum.hpp"
#include "treenergy/tree.hpp"

using namespace treenergy;

namespace {

Tree random_tree(int n, std::mt19937& rng) {
    if (n <= 2) return path_tree(n);
    std::uniform_int_distribution<int> pick(0, n - 1);
    std::vector<int> prufer(n - 2);
    for (int& x : prufer) x = pick(rng);
    std::vector<int> deg(n, 1);
    for (int x : prufer) ++deg[x];
    std::vector<std::pair<int, int>> edges;
    int ptr = 0;
    while (deg[ptr] != 1) ++ptr;
    int leaf = ptr;
    for (int x : prufer) {
        edges.emplace_back(leaf, x);
        if (--deg[x] == 1 && x < ptr) {
            leaf = x;
        } else {
            while (deg[++ptr] != 1) {}
            leaf = ptr;
        }
    }
    edges.emplace_back(leaf, n - 1);
    return make_tree(n, edges);
}

double path_energy_exact(int n) {
    double sum = 0.0;
    for (int k = 1; k <= n; ++k) sum += std::fabs(2.0 * std::cos(k * M_PI / (n + 1)));
    return sum;
}

}  // namespace

TEST_CASE("closed-form energies, both engines") {
    struct Fixture {
        Tree t;
        double energy;
    };
    const Fixture fixtures[] = {
        {path_tree(2), 2.0},
        {path_tree(3), 2.0 * std::sqrt(2.0)},
        {star_tree(4), 2.0 * std::sqrt(3.0)},
        {path_tree(4), 2.0 * std::sqrt(5.0)},
    };
    for (const auto& f : fixtures) {
        CHECK(std::fabs(tree_energy(f.t, EnergyMethod::Dense).value - f.energy) < 1e-12);
        CHECK(std::fabs(tree_energy(f.t, EnergyMethod::Polynomial).value - f.energy) < 1e-12);
        EnergyResult cross = tree_energy(f.t, EnergyMethod::Cross);
        CHECK(cross.method == EnergyMethod::Cross);
        CHECK(std::fabs(cross.value - f.energy) < 1e-9);
    }
}

TEST_CASE("matching numbers match subset brute force") {
    for (int n = 1; n <= 9; ++n)
        enumerate_trees({n, n - 1 > 0 ? n - 1 : 1}, [&](const Tree& t) {
            MatchingPolynomial p = matching_polynomial(t);
            auto brute = oracles::brute_matchings(t);
            REQUIRE(p.m.size() == brute.size());
            for (size_t k = 0; k < brute.size(); ++k) CHECK(p.m[k] == brute[k]);
        });
    std::mt19937 rng(11);
    for (int rep = 0; rep < 5; ++rep) {
        Tree t = random_tree(14, rng);
        MatchingPolynomial p = matching_polynomial(t);
        auto brute = oracles::brute_matchings(t);
        REQUIRE(p.m.size() == brute.size());
        for (size_t k = 0; k < brute.size(); ++k) CHECK(p.m[k] == brute[k]);
    }
}

TEST_CASE("matching polynomial basics") {
    Tree t = star_tree(6);
    MatchingPolynomial p = matching_polynomial(t);
    CHECK(p.m[0] == 1);
    CHECK(p.m[1] == 5);
    CHECK(p.matching_number() == 1);
    CHECK(matching_polynomial(path_tree(6)).matching_number() == 3);
    CHECK(matching_polynomial(path_tree(1)).matching_number() == 0);
}

TEST_CASE("dense spectrum has the bipartite invariants") {
    std::mt19937 rng(5);
    for (int n : {2, 3, 7, 20, 41}) {
        Tree t = random_tree(n, rng);
        Spectrum s = spectrum_dense(t);
        REQUIRE(static_cast<int>(s.values.size()) == n);
        CHECK(std::is_sorted(s.values.begin(), s.values.end()));
        double sum = std::accumulate(s.values.begin(), s.values.end(), 0.0);
        double sumsq = 0.0;
        for (double v : s.values) sumsq += v * v;
        CHECK(std::fabs(sum) < 1e-9 * n);
        CHECK(std::fabs(sumsq - 2.0 * (n - 1)) < 1e-9 * n);
        for (int i = 0; i < n; ++i)
            CHECK(std::fabs(s.values[i] + s.values[n - 1 - i]) < 1e-9);
    }
}

TEST_CASE("dense agrees with the Jacobi reference") {
    std::mt19937 rng(17);
    for (int n : {2, 5, 16, 33, 64}) {
        Tree t = random_tree(n, rng);
        Spectrum a = spectrum_dense(t);
        Spectrum b = spectrum_jacobi(t);
        REQUIRE(a.values.size() == b.values.size());
        for (size_t i = 0; i < a.values.size(); ++i)
            CHECK(std::fabs(a.values[i] - b.values[i]) < 1e-8);
    }
}

TEST_CASE("dense path spectrum matches the cosine formula") {
    const int n = 50;
    Spectrum s = spectrum_dense(path_tree(n));
    for (int i = 0; i < n; ++i) {
        double expected = 2.0 * std::cos((n - i) * M_PI / (n + 1));
        CHECK(std::fabs(s.values[i] - expected) < 1e-12);
    }
    double e = tree_energy(path_tree(200), EnergyMethod::Cross).value;
    CHECK(std::fabs(e - path_energy_exact(200)) < 1e-8);
}

TEST_CASE("polynomial spectrum agrees with dense for every small tree") {
    for (int n = 1; n <= 10; ++n)
        enumerate_trees({n, n > 1 ? n - 1 : 1}, [&](const Tree& t) {
            Spectrum d = spectrum_dense(t);
            Spectrum p = spectrum_from_polynomial(matching_polynomial(t));
            REQUIRE(d.values.size() == p.values.size());
            for (size_t i = 0; i < d.values.size(); ++i)
                CHECK(std::fabs(d.values[i] - p.values[i]) < 1e-9);
        });
}

TEST_CASE("polynomial route handles repeated and zero eigenvalues") {
    // K_{1,8}: eigenvalues +-sqrt(8) and seven zeros.
    Spectrum s = spectrum_from_polynomial(matching_polynomial(star_tree(9)));
    REQUIRE(s.values.size() == 9);
    CHECK(std::fabs(s.values[0] + std::sqrt(8.0)) < 1e-12);
    CHECK(std::fabs(s.values[8] - std::sqrt(8.0)) < 1e-12);
    for (int i = 1; i <= 7; ++i) CHECK(s.values[i] == 0.0);

    // Double star: two degree-4 hubs, eigenvalue multiplicities > 1.
    Tree t = make_tree(8, {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {1, 5}, {1, 6}, {0, 7}});
    Spectrum d = spectrum_dense(t);
    Spectrum p = spectrum_from_polynomial(matching_polynomial(t));
    for (size_t i = 0; i < d.values.size(); ++i)
        CHECK(std::fabs(d.values[i] - p.values[i]) < 1e-10);
}

TEST_CASE("energy accumulation clamps noise eigenvalues") {
    Spectrum s{{-2.0, -1e-11, 3e-11, 2.0}};
    CHECK(energy_from_spectrum(s) == 4.0);
}

TEST_CASE("engine caps and validation") {
    CHECK_THROWS_AS(spectrum_dense(Tree{}), ParamError);
    CHECK_THROWS_AS(spectrum_dense(path_tree(5), 4), CapError);
    try {
        spectrum_dense(path_tree(5), 4);
        FAIL("cap not enforced");
    } catch (const CapError& e) {
        CHECK(std::string(e.what()).find("--dense-cap") != std::string::npos);
    }
    CHECK_THROWS_AS(spectrum_jacobi(path_tree(65)), CapError);
    CHECK_THROWS_AS(tree_energy(path_tree(300), EnergyMethod::Polynomial), CapError);
    CHECK_THROWS_AS(tree_energy(path_tree(300), EnergyMethod::Cross), CapError);
    SpectralOptions opts;
    opts.dense_cap = 8;
    CHECK_THROWS_AS(tree_energy(path_tree(9), EnergyMethod::Dense, opts), CapError);

    MatchingPolynomial bad;
    bad.n = 2;
    bad.m = {BigInt(2), BigInt(1)};
    CHECK_THROWS_AS(spectrum_from_polynomial(bad), ParamError);

    CHECK(energy_method_from_string("dense") == EnergyMethod::Dense);
    CHECK(energy_method_from_string("polynomial") == EnergyMethod::Polynomial);
    CHECK(energy_method_from_string("cross") == EnergyMethod::Cross);
    CHECK_THROWS_AS(energy_method_from_string("fft"), ParamError);
    CHECK(to_string(EnergyMethod::Cross) == "cross");
}

TEST_CASE("cross method reports the polynomial value with a tight bound") {
    Tree t = bn_tree(2);
    EnergyResult cross = tree_energy(t, EnergyMethod::Cross);
    EnergyResult poly = tree_energy(t, EnergyMethod::Polynomial);
    CHECK(cross.value == poly.value);
    CHECK(cross.error_bound <= poly.error_bound);
    CHECK(cross.error_bound < 1e-6);
}

TEST_CASE("high-precision energy agrees with the double route") {
    std::mt19937 rng(23);
    for (int n : {2, 6, 11, 17}) {
        Tree t = random_tree(n, rng);
        MatchingPolynomial p = matching_polynomial(t);
        HpEnergy hp = energy_from_polynomial_hp(p);
        double dd = tree_energy(t, EnergyMethod::Polynomial).value;
        CHECK(std::fabs(static_cast<double>(hp.value) - dd) < 1e-9);
        CHECK(hp.error_bound < Float50("1e-15"));
    }
    HpEnergy hp = energy_from_polynomial_hp(matching_polynomial(path_tree(4)));
    Float50 exact = 2 * sqrt(Float50(5));
    CHECK(abs(hp.value - exact) < Float50("1e-18"));
}
