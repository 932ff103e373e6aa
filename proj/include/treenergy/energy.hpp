#pragma once

#include <string>

#include "treenergy/spectrum.hpp"
#include "treenergy/tree.hpp"

namespace treenergy {

enum class EnergyMethod { Dense, Polynomial, Cross };

std::string to_string(EnergyMethod m);
EnergyMethod energy_method_from_string(const std::string& s);

struct SpectralOptions {
    int dense_cap = kDefaultDenseCap;
    int poly_cap = kPolynomialCap;
    double root_tol = 1e-12;
    double cross_tol = 1e-6;  // max |dense - polynomial| before Cross aborts
};

struct EnergyResult {
    double value = 0.0;
    EnergyMethod method = EnergyMethod::Dense;
    double error_bound = 0.0;
};

// Sum of |eigenvalue| over a spectrum, clamping magnitudes below 1e-10 to
// zero before accumulation.
double energy_from_spectrum(const Spectrum& s);

EnergyResult tree_energy(const Tree& t, EnergyMethod method, const SpectralOptions& opts = {});

}  // namespace treenergy
