#include "treenergy/min_energy.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "treenergy/construct.hpp"
#include "treenergy/enumerate.hpp"
#include "treenergy/errors.hpp"
#include "treenergy/highprec.hpp"
#include "treenergy/matching.hpp"

namespace treenergy {

namespace {

struct Candidate {
    Tree tree;
    double e = 0.0;
};

// Trees with identical matching polynomials have identical spectra; such a
// tie is exact and no precision will separate it.
struct TieGroup {
    std::vector<int> members;  // candidate indices
    HpEnergy hp;
};

}  // namespace

MinEnergyReport min_energy_search(int n, int d, const SpectralOptions& opts, const EnergyFn& energy) {
    if (n < 1) throw ParamError("minimum-energy search needs n >= 1");
    if (d < 1) throw ParamError("minimum-energy search needs d >= 1");

    EnergyFn eval = energy;
    if (!eval)
        eval = [&opts](const Tree& t) { return tree_energy(t, EnergyMethod::Cross, opts).value; };

    const double inf = std::numeric_limits<double>::infinity();
    std::vector<Candidate> cands;
    double best = inf;
    double outside = inf;  // smallest energy among trees dropped from the window

    auto prune = [&] {
        size_t keep = 0;
        for (size_t i = 0; i < cands.size(); ++i) {
            if (cands[i].e <= best + kNearTieGap) {
                if (keep != i) cands[keep] = std::move(cands[i]);
                ++keep;
            } else {
                outside = std::min(outside, cands[i].e);
            }
        }
        cands.resize(keep);
    };

    long long scanned = 0;
    enumerate_trees({n, d + 1}, [&](const Tree& t) {
        ++scanned;
        double e = eval(t);
        best = std::min(best, e);
        if (e <= best + kNearTieGap)
            cands.push_back({t, e});
        else
            outside = std::min(outside, e);
        if (cands.size() > 64) prune();
    });
    prune();
    if (cands.empty()) throw InvariantError("enumeration produced no trees");

    MinEnergyReport report;
    report.n = n;
    report.d = d;
    report.scanned = scanned;

    const Tree* winner = nullptr;
    if (cands.size() == 1) {
        winner = &cands[0].tree;
        report.min_energy = cands[0].e;
        report.argmin_unique = true;
        if (outside < inf) report.runner_up_gap = outside - best;
    } else {
        // Near-tie: regroup by exact matching polynomial, then compare the
        // groups with the exact engine at tightened tolerance.
        std::map<std::vector<BigInt>, TieGroup> groups;
        for (size_t i = 0; i < cands.size(); ++i) {
            auto p = matching_polynomial(cands[i].tree);
            auto [it, fresh] = groups.try_emplace(p.m);
            if (fresh) it->second.hp = energy_from_polynomial_hp(p, kTieRootTol);
            it->second.members.push_back(static_cast<int>(i));
        }

        const TieGroup* min_group = nullptr;
        for (const auto& [key, g] : groups)
            if (!min_group || g.hp.value < min_group->hp.value) min_group = &g;

        std::vector<int> tied = min_group->members;
        double runner_up = outside;
        for (const auto& [key, g] : groups) {
            if (&g == min_group) continue;
            Float50 gap = g.hp.value - min_group->hp.value;
            if (gap <= g.hp.error_bound + min_group->hp.error_bound)
                tied.insert(tied.end(), g.members.begin(), g.members.end());
            else
                runner_up = std::min(runner_up, best + gap.convert_to<double>());
        }

        report.min_energy = min_group->hp.value.convert_to<double>();
        if (tied.size() == 1) {
            winner = &cands[tied[0]].tree;
            report.argmin_unique = true;
            if (runner_up < inf) report.runner_up_gap = runner_up - best;
        } else {
            // Exact or unresolved tie; pick the smallest code for a
            // deterministic report and say so.
            report.argmin_unique = false;
            report.tie_indistinguishable = true;
            report.runner_up_gap = 0.0;
            CanonicalCode least;
            for (int i : tied) {
                CanonicalCode c = canonical_code(cands[i].tree);
                if (!winner || c < least) {
                    winner = &cands[i].tree;
                    least = std::move(c);
                }
            }
        }
    }

    report.argmin_code = canonical_code(*winner);
    Tree reference = (d == 1) ? path_tree(n) : build_tstar(n, d);
    report.tstar_match = (report.argmin_code == canonical_code(reference));
    if (report.runner_up_gap && *report.runner_up_gap < 0) report.runner_up_gap = 0.0;
    return report;
}

}  // namespace treenergy
