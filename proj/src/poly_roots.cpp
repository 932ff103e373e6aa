// Exact real-root extraction for the characteristic polynomial of a tree,
// working in the squared-eigenvalue variable. For a tree with matching
// numbers m_k and matching number v, the characteristic polynomial is
//   x^(n-2v) * g(x^2),   g(z) = sum_k (-1)^k m_k z^(v-k),
// a monic integer polynomial all of whose roots are real and positive.
// Roots of g are found exactly: integer roots by trial division, the rest
// by Sturm bisection on the square-free factors from Yun's decomposition.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "treenergy/errors.hpp"
#include "treenergy/highprec.hpp"
#include "treenergy/spectrum.hpp"

namespace treenergy {

namespace {

using IntPoly = std::vector<BigInt>;  // ascending coefficients, trimmed

void trim(IntPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

int degree(const IntPoly& p) { return static_cast<int>(p.size()) - 1; }

IntPoly derivative(const IntPoly& p) {
    IntPoly out;
    for (size_t i = 1; i < p.size(); ++i) out.push_back(p[i] * static_cast<int>(i));
    return out;
}

BigInt content(const IntPoly& p) {
    BigInt g = 0;
    for (const auto& c : p) g = boost::multiprecision::gcd(g, c);
    return g;
}

void make_primitive(IntPoly& p) {
    BigInt g = content(p);
    if (g > 1)
        for (auto& c : p) c /= g;
}

// Pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b, sign-adjusted so
// the implied multiplier on a is positive (required for Sturm chains).
IntPoly pseudo_rem_signed(IntPoly a, const IntPoly& b) {
    const BigInt& L = b.back();
    const int db = degree(b);
    int steps_left = degree(a) - db + 1;
    bool negative_multiplier = false;
    while (!a.empty() && degree(a) >= db) {
        BigInt coef = a.back();
        int shift = degree(a) - db;
        // a = a*L - coef * x^shift * b
        for (auto& c : a) c *= L;
        for (int i = 0; i <= db; ++i) a[shift + i] -= coef * b[i];
        trim(a);
        if (L < 0) negative_multiplier = !negative_multiplier;
        --steps_left;
    }
    // Apply the remaining powers of L (only their sign matters downstream,
    // but keep the value exact for gcd use).
    for (; steps_left > 0; --steps_left) {
        for (auto& c : a) c *= L;
        if (L < 0) negative_multiplier = !negative_multiplier;
    }
    if (negative_multiplier)
        for (auto& c : a) c = -c;
    return a;
}

// Primitive polynomial gcd (monic inputs stay monic). Result normalized
// to a positive leading coefficient.
IntPoly poly_gcd(IntPoly a, IntPoly b) {
    trim(a);
    trim(b);
    make_primitive(a);
    make_primitive(b);
    if (a.empty()) return b;
    if (b.empty()) return a;
    if (degree(a) < degree(b)) std::swap(a, b);
    while (!b.empty()) {
        IntPoly r = pseudo_rem_signed(a, b);
        make_primitive(r);
        a = std::move(b);
        b = std::move(r);
    }
    if (a.back() < 0)
        for (auto& c : a) c = -c;
    return a;
}

// Exact division; throws if b does not divide a.
IntPoly exact_div(IntPoly a, const IntPoly& b) {
    trim(a);
    if (a.empty()) return {};
    const int db = degree(b);
    if (degree(a) < db) throw InvariantError("polynomial division underflow");
    IntPoly q(degree(a) - db + 1);
    while (!a.empty() && degree(a) >= db) {
        BigInt c = a.back() / b.back();
        if (c * b.back() != a.back()) throw InvariantError("polynomial division not exact");
        int shift = degree(a) - db;
        q[shift] = c;
        for (int i = 0; i <= db; ++i) a[shift + i] -= c * b[i];
        trim(a);
    }
    if (!a.empty()) throw InvariantError("polynomial division left a remainder");
    return q;
}

// Yun's square-free decomposition: input with no repeated content, output
// pairwise-coprime square-free factors with multiplicities.
std::vector<std::pair<IntPoly, int>> yun_squarefree(const IntPoly& g) {
    std::vector<std::pair<IntPoly, int>> factors;
    if (degree(g) < 1) return factors;
    IntPoly gp = derivative(g);
    IntPoly a0 = poly_gcd(g, gp);
    if (degree(a0) == 0) {
        factors.emplace_back(g, 1);
        return factors;
    }
    IntPoly b = exact_div(g, a0);
    IntPoly c = exact_div(gp, a0);
    int i = 1;
    while (degree(b) > 0) {
        IntPoly bp = derivative(b);
        IntPoly d(std::max(c.size(), bp.size()), BigInt(0));
        for (size_t k = 0; k < c.size(); ++k) d[k] = c[k];
        for (size_t k = 0; k < bp.size(); ++k) d[k] -= bp[k];
        trim(d);
        IntPoly f = poly_gcd(b, d);
        if (degree(f) > 0) factors.emplace_back(f, i);
        b = exact_div(b, f);
        c = exact_div(d, f);
        ++i;
    }
    return factors;
}

// A dyadic rational num / 2^exp, exp >= 0.
struct Dyadic {
    BigInt num;
    int exp = 0;

    double to_double() const {
        return std::ldexp(num.convert_to<double>(), -exp);
    }
};

Dyadic midpoint(const Dyadic& a, const Dyadic& b) {
    int e = std::max(a.exp, b.exp) + 1;
    BigInt sum = (a.num << (e - 1 - a.exp)) + (b.num << (e - 1 - b.exp));
    // Normalize even numerators so exponents stay small.
    while (e > 0 && (sum & 1) == 0) {
        sum >>= 1;
        --e;
    }
    return Dyadic{std::move(sum), e};
}

// Exact sign of p at a dyadic point, with a double-precision fast path.
// The double Horner pass carries a running magnitude for the standard
// gamma-style rounding bound; only inconclusive cases pay for exact
// integer evaluation.
int sign_at(const IntPoly& p, const Dyadic& t) {
    if (p.empty()) return 0;
    const int d = degree(p);

    const double td = t.to_double();
    if (std::isfinite(td)) {
        double acc = 0.0, mag = 0.0;
        bool ok = true;
        for (int i = d; i >= 0; --i) {
            double c = p[i].convert_to<double>();
            if (!std::isfinite(c)) {
                ok = false;
                break;
            }
            acc = acc * td + c;
            mag = mag * std::fabs(td) + std::fabs(c);
        }
        if (ok && std::isfinite(acc) && std::isfinite(mag)) {
            double bound = mag * (2.0 * d + 2) * std::numeric_limits<double>::epsilon() * 4.0;
            if (std::fabs(acc) > bound) return acc > 0 ? 1 : -1;
        }
    }

    // Exact: evaluate p(t) * 2^(exp*d) by integer Horner.
    BigInt acc = p[d];
    for (int i = d - 1; i >= 0; --i) {
        acc *= t.num;
        acc += p[i] << (static_cast<long long>(t.exp) * (d - i));
    }
    return acc.sign();
}

// Negative-remainder Sturm chain of a square-free polynomial, each member
// reduced to primitive form (positive scaling preserves the sign pattern).
std::vector<IntPoly> sturm_chain(const IntPoly& f) {
    std::vector<IntPoly> chain;
    chain.push_back(f);
    IntPoly fp = derivative(f);
    trim(fp);
    if (fp.empty()) return chain;
    make_primitive(fp);
    chain.push_back(fp);
    while (degree(chain.back()) > 0) {
        IntPoly r = pseudo_rem_signed(chain[chain.size() - 2], chain.back());
        if (r.empty()) throw InvariantError("Sturm chain hit a zero remainder on square-free input");
        for (auto& c : r) c = -c;
        make_primitive(r);
        chain.push_back(std::move(r));
    }
    return chain;
}

int sign_variations(const std::vector<IntPoly>& chain, const Dyadic& t) {
    int count = 0, prev = 0;
    for (const auto& p : chain) {
        int s = sign_at(p, t);
        if (s != 0) {
            if (prev != 0 && s != prev) ++count;
            prev = s;
        }
    }
    return count;
}

// Upper bound on the positive roots of a monic integer polynomial
// (Fujiwara), rounded up to a power of two.
Dyadic root_bound(const IntPoly& p) {
    const int d = degree(p);
    double max_log2 = 0.0;
    for (int i = 0; i < d; ++i) {
        if (p[i] == 0) continue;
        double lg = static_cast<double>(boost::multiprecision::msb(boost::multiprecision::abs(p[i])) + 1);
        if (i == 0) lg -= 1.0;  // the constant term enters halved
        max_log2 = std::max(max_log2, lg / (d - i));
    }
    int e = static_cast<int>(std::ceil(max_log2)) + 2;
    e = std::max(e, 1);
    return Dyadic{BigInt(1) << e, 0};
}

// Isolating intervals (lo, hi] for every root of a square-free polynomial
// with all roots in (0, bound).
std::vector<std::pair<Dyadic, Dyadic>> isolate_roots(const IntPoly& f) {
    std::vector<std::pair<Dyadic, Dyadic>> isolated;
    if (degree(f) < 1) return isolated;
    auto chain = sturm_chain(f);
    Dyadic lo{BigInt(0), 0};
    Dyadic hi = root_bound(f);

    struct Segment {
        Dyadic lo, hi;
        int vlo, vhi;
    };
    std::vector<Segment> stack;
    stack.push_back({lo, hi, sign_variations(chain, lo), sign_variations(chain, hi)});
    while (!stack.empty()) {
        Segment seg = std::move(stack.back());
        stack.pop_back();
        int roots = seg.vlo - seg.vhi;
        if (roots <= 0) continue;
        if (roots == 1) {
            isolated.emplace_back(seg.lo, seg.hi);
            continue;
        }
        if (seg.lo.exp > 4000)
            throw InvariantError("root isolation descended past depth 4000; roots may not be real");
        Dyadic mid = midpoint(seg.lo, seg.hi);
        int vmid = sign_variations(chain, mid);
        stack.push_back({seg.lo, mid, seg.vlo, vmid});
        stack.push_back({mid, seg.hi, vmid, seg.vhi});
    }
    if (static_cast<int>(isolated.size()) != degree(f))
        throw InvariantError("isolated " + std::to_string(isolated.size()) + " roots of a degree-" +
                             std::to_string(degree(f)) + " factor; roots not all real positive");
    return isolated;
}

// Shrink an isolating interval of f until the square roots of its ends
// differ by at most x_tol.
template <typename Real>
std::pair<Dyadic, Dyadic> refine_root(const IntPoly& f, Dyadic lo, Dyadic hi, Real x_tol) {
    using std::sqrt;
    int slo = sign_at(f, lo);
    if (slo == 0) throw InvariantError("isolating interval endpoint is a root");
    while (true) {
        Real w = sqrt(Real(hi.to_double())) - sqrt(Real(lo.to_double()));
        if constexpr (std::is_same_v<Real, Float50>) {
            // Recompute the width in extended precision near convergence.
            if (w < x_tol * 1024) {
                Real zl = Real(lo.num) / boost::multiprecision::pow(Real(2), lo.exp);
                Real zh = Real(hi.num) / boost::multiprecision::pow(Real(2), hi.exp);
                w = sqrt(zh) - sqrt(zl);
            }
        }
        if (w <= x_tol) break;
        Dyadic mid = midpoint(lo, hi);
        int smid = sign_at(f, mid);
        if (smid == 0) {
            // Dyadic roots of these monic factors would be integers, which
            // were pulled out beforehand.
            throw InvariantError("bisection midpoint is an unexpected exact root");
        }
        if (smid == slo)
            lo = std::move(mid);
        else
            hi = std::move(mid);
    }
    return {std::move(lo), std::move(hi)};
}

// (root of g in z, multiplicity), exact pipeline shared by the double and
// extended-precision entry points.
struct ZRoot {
    Dyadic lo, hi;  // final isolating interval, [lo,hi] width tiny
    bool exact = false;
    BigInt exact_value;
    int multiplicity = 1;
};

// g(z) = sum_k (-1)^k m_k z^(v-k); monic of degree v.
IntPoly z_polynomial(const MatchingPolynomial& p, int v) {
    IntPoly g(v + 1);
    for (int k = 0; k <= v; ++k) g[v - k] = (k % 2 == 0) ? p.m[k] : -p.m[k];
    return g;
}

template <typename Real>
std::vector<ZRoot> z_roots(const MatchingPolynomial& p, Real x_tol) {
    const int v = p.matching_number();
    IntPoly g = z_polynomial(p, v);
    std::vector<ZRoot> roots;
    if (v == 0) return roots;

    // Integer roots first (rational roots of a monic integer polynomial
    // are integers); everything after this has irrational roots only.
    Dyadic bound = root_bound(g);
    long long bound_ll = bound.num.convert_to<long long>();
    for (long long a = 1; a <= bound_ll && degree(g) >= 1; ++a) {
        int mult = 0;
        while (degree(g) >= 1) {
            // Synthetic division by (z - a); remainder is g(a).
            IntPoly q(degree(g));
            BigInt acc = g.back();
            for (int i = degree(g) - 1; i >= 1; --i) {
                q[i] = acc;
                acc = acc * a + g[i];
            }
            BigInt rem = acc * a + g[0];
            if (rem != 0) break;
            q[0] = acc;
            g = std::move(q);
            ++mult;
        }
        if (mult > 0) {
            ZRoot r;
            r.exact = true;
            r.exact_value = a;
            r.multiplicity = mult;
            roots.push_back(std::move(r));
        }
    }

    if (degree(g) >= 1) {
        for (auto& [factor, mult] : yun_squarefree(g)) {
            for (auto& [lo, hi] : isolate_roots(factor)) {
                auto [rlo, rhi] = refine_root(factor, lo, hi, x_tol);
                ZRoot r;
                r.lo = std::move(rlo);
                r.hi = std::move(rhi);
                r.multiplicity = mult;
                roots.push_back(std::move(r));
            }
        }
    }

    int total = 0;
    for (const auto& r : roots) total += r.multiplicity;
    if (total != v)
        throw InvariantError("recovered " + std::to_string(total) + " squared-eigenvalue roots, expected " +
                             std::to_string(v) + "; input is not a tree matching polynomial");
    return roots;
}

}  // namespace

Spectrum spectrum_from_polynomial(const MatchingPolynomial& p, double root_tol, int cap) {
    if (p.n < 1) throw ParamError("empty matching polynomial");
    if (p.n > cap)
        throw CapError("polynomial engine capped at " + std::to_string(cap) + " vertices, got " +
                       std::to_string(p.n));
    if (p.m.empty() || p.m[0] != 1) throw ParamError("matching numbers must start with m_0 = 1");

    auto roots = z_roots<double>(p, root_tol);
    const int v = p.matching_number();

    std::vector<double> values;
    values.reserve(p.n);
    for (int i = 0; i < p.n - 2 * v; ++i) values.push_back(0.0);
    for (const auto& r : roots) {
        double x;
        if (r.exact)
            x = std::sqrt(r.exact_value.convert_to<double>());
        else
            x = 0.5 * (std::sqrt(r.lo.to_double()) + std::sqrt(r.hi.to_double()));
        for (int i = 0; i < r.multiplicity; ++i) {
            values.push_back(x);
            values.push_back(-x);
        }
    }
    if (static_cast<int>(values.size()) != p.n)
        throw InvariantError("polynomial spectrum size mismatch");
    std::sort(values.begin(), values.end());
    return Spectrum{std::move(values)};
}

HpEnergy energy_from_polynomial_hp(const MatchingPolynomial& p, double root_tol) {
    if (p.n < 1) throw ParamError("empty matching polynomial");
    using boost::multiprecision::sqrt;

    auto roots = z_roots<Float50>(p, Float50(root_tol));
    HpEnergy out{0, 0};
    for (const auto& r : roots) {
        Float50 x;
        if (r.exact) {
            x = sqrt(Float50(r.exact_value));
        } else {
            Float50 zl = Float50(r.lo.num) / boost::multiprecision::pow(Float50(2), r.lo.exp);
            Float50 zh = Float50(r.hi.num) / boost::multiprecision::pow(Float50(2), r.hi.exp);
            x = (sqrt(zl) + sqrt(zh)) / 2;
            out.error_bound += r.multiplicity * (sqrt(zh) - sqrt(zl));
        }
        out.value += 2 * r.multiplicity * x;
    }
    out.error_bound = 2 * out.error_bound + Float50("1e-45") * p.n;
    return out;
}

}  // namespace treenergy
