#include "treenergy/energy.hpp"

#include <cmath>
#include <string>

#include "treenergy/errors.hpp"
#include "treenergy/matching.hpp"

namespace treenergy {

namespace {

constexpr double kZeroClamp = 1e-10;

// Eigenvalues of the dense solver carry O(n * eps * ||A||_2) rounding error;
// ||A||_2 < max degree + 1 for an adjacency matrix.
double dense_error_bound(const Tree& t) {
    double norm = max_degree(t) + 1.0;
    return t.n * (t.n + 1.0) * 1e-16 * norm;
}

}  // namespace

std::string to_string(EnergyMethod m) {
    switch (m) {
        case EnergyMethod::Dense: return "dense";
        case EnergyMethod::Polynomial: return "polynomial";
        case EnergyMethod::Cross: return "cross";
    }
    return "?";
}

EnergyMethod energy_method_from_string(const std::string& s) {
    if (s == "dense") return EnergyMethod::Dense;
    if (s == "polynomial") return EnergyMethod::Polynomial;
    if (s == "cross") return EnergyMethod::Cross;
    throw ParamError("unknown energy method '" + s + "' (expected dense, polynomial, or cross)");
}

double energy_from_spectrum(const Spectrum& s) {
    double e = 0.0;
    for (double v : s.values) {
        double a = std::fabs(v);
        if (a >= kZeroClamp) e += a;
    }
    return e;
}

EnergyResult tree_energy(const Tree& t, EnergyMethod method, const SpectralOptions& opts) {
    if (t.n < 1) throw ParamError("energy of an empty tree is undefined");

    auto dense = [&] {
        EnergyResult r;
        r.value = energy_from_spectrum(spectrum_dense(t, opts.dense_cap));
        r.method = EnergyMethod::Dense;
        r.error_bound = dense_error_bound(t);
        return r;
    };
    auto polynomial = [&] {
        if (t.n > opts.poly_cap)
            throw CapError("polynomial engine capped at " + std::to_string(opts.poly_cap) +
                           " vertices, got " + std::to_string(t.n));
        EnergyResult r;
        auto p = matching_polynomial(t);
        r.value = energy_from_spectrum(spectrum_from_polynomial(p, opts.root_tol, opts.poly_cap));
        r.method = EnergyMethod::Polynomial;
        r.error_bound = t.n * opts.root_tol;
        return r;
    };

    switch (method) {
        case EnergyMethod::Dense:
            return dense();
        case EnergyMethod::Polynomial:
            return polynomial();
        case EnergyMethod::Cross: {
            EnergyResult a = dense();
            EnergyResult b = polynomial();
            double gap = std::fabs(a.value - b.value);
            if (gap > opts.cross_tol)
                throw InvariantError("energy engines disagree by " + std::to_string(gap) +
                                     " on a tree with " + std::to_string(t.n) + " vertices");
            b.method = EnergyMethod::Cross;
            return b;
        }
    }
    throw ParamError("unknown energy method");
}

}  // namespace treenergy
