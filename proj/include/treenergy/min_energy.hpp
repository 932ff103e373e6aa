#pragma once

#include <functional>
#include <optional>

#include "treenergy/canonical.hpp"
#include "treenergy/energy.hpp"
#include "treenergy/tree.hpp"

namespace treenergy {

// Candidates whose energies land within this window of the minimum are
// re-resolved with the exact polynomial engine at kTieRootTol before a
// winner is declared.
inline constexpr double kNearTieGap = 1e-7;
inline constexpr double kTieRootTol = 1e-20;

struct MinEnergyReport {
    int n = 0;
    int d = 0;  // class bound: trees with max degree <= d + 1
    long long scanned = 0;
    double min_energy = 0.0;
    CanonicalCode argmin_code;
    bool argmin_unique = true;
    bool tstar_match = false;
    std::optional<double> runner_up_gap;  // absent when the class has a single tree
    bool tie_indistinguishable = false;   // winners could not be separated, reported never guessed
};

using EnergyFn = std::function<double(const Tree&)>;

// Scans every tree on n vertices with max degree <= d + 1 and reports the
// energy minimizer. `energy` defaults to the cross-validated engine pair;
// callers may substitute a caching wrapper.
MinEnergyReport min_energy_search(int n, int d, const SpectralOptions& opts = {},
                                  const EnergyFn& energy = {});

}  // namespace treenergy
