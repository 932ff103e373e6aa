#include "treenergy/alpha.hpp"

#include <cmath>
#include <string>

#include "treenergy/errors.hpp"

namespace treenergy {

namespace {

constexpr double kEpsFloor = 1e-12;

template <typename Real>
Real trig_part(int j) {
    using std::acos;
    using std::cos;
    using std::sin;
    Real pi = acos(Real(-1));
    Real x = pi / (2 * j);
    Real s = sin(x);
    if (j % 2 == 0) return cos(x) / s - 1;
    return 1 / s - 1;
}

template <typename Real>
Real prefactor(int d) {
    using std::sqrt;
    return 2 * sqrt(Real(d)) * (d - 1) * (d - 1);
}

// Both trig parts obey c_j <= 2j/pi (tan x >= x gives the cotangent case;
// csc x <= 1/x + pi x / 12 gives the cosecant case), so the tail past J is
// at most prefactor * (2/pi) * sum_{j>J} j d^-j, summed in closed form.
double tail_bound_after(int d, int J) {
    double x = 1.0 / d;
    double geo = std::pow(x, J + 1) * ((J + 1) - J * x) / ((1 - x) * (1 - x));
    return prefactor<double>(d) * (2.0 / 3.141592653589793) * geo;
}

void check_degree(int d) {
    if (d < 2) throw ParamError("alpha is defined for degree d >= 2, got " + std::to_string(d));
}

}  // namespace

double alpha_term(int d, int j) {
    check_degree(d);
    if (j < 1) throw ParamError("series index must be positive");
    if (j <= 2) return 0.0;
    return trig_part<double>(j) * std::pow(1.0 / d, j);
}

AlphaEstimate alpha(int d, double eps) {
    check_degree(d);
    if (!(eps >= kEpsFloor))
        throw ParamError("eps must be at least 1e-12, got " + std::to_string(eps));

    int j_max = 3;
    while (tail_bound_after(d, j_max) > eps / 2) {
        ++j_max;
        if (j_max > 100000) throw InvariantError("alpha truncation search failed to converge");
    }

    double inv = 1.0 / d;
    double xj = inv * inv * inv;
    double sum = 0.0;
    for (int j = 3; j <= j_max; ++j) {
        sum += trig_part<double>(j) * xj;
        xj *= inv;
    }

    AlphaEstimate out;
    out.d = d;
    out.value = prefactor<double>(d) * sum;
    out.j_max = j_max;
    out.tail_bound = tail_bound_after(d, j_max);
    out.requested_eps = eps;
    return out;
}

std::vector<AlphaEstimate> alpha_table(int d_min, int d_max, double eps) {
    if (d_min < 2 || d_max > 16 || d_min > d_max)
        throw ParamError("alpha table covers 2 <= d_min <= d_max <= 16, got [" +
                         std::to_string(d_min) + ", " + std::to_string(d_max) + "]");
    std::vector<AlphaEstimate> rows;
    for (int d = d_min; d <= d_max; ++d) rows.push_back(alpha(d, eps));
    return rows;
}

Float50 alpha_extended(int d, int j_terms) {
    check_degree(d);
    if (j_terms < 3) throw ParamError("extended evaluation needs at least 3 series terms");
    Float50 inv = Float50(1) / d;
    Float50 xj = inv * inv * inv;
    Float50 sum = 0;
    for (int j = 3; j <= j_terms; ++j) {
        sum += trig_part<Float50>(j) * xj;
        xj *= inv;
    }
    return prefactor<Float50>(d) * sum;
}

}  // namespace treenergy
