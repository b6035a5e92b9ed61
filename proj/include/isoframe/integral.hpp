#pragma once

#include <cmath>
#include <string>

#include "errors.hpp"
#include "interval.hpp"
#include "mapping.hpp"
#include "numerics.hpp"
#include "realfn.hpp"

namespace isoframe {

/**
 * Isomorphic integral type I: h^-1( integral of h(f(x)) dx over iv ).
 * The raw integral must land in h's codomain, else RangeViolation.
 */
inline double iso_integral_1(const RealFn& f, const Interval& iv, const Mapping& h,
                             const QuadConfig& cfg = {}) {
    RealFn integrand([&f, &h](double x) { return h(f(x)); }, iv,
                     "h(" + f.repr + ")");
    double raw = integrate(integrand, iv, cfg);
    return h.inverse(raw);
}

/**
 * Isomorphic integral type II: g^-1( integral of f(x) g'(x) dx over iv ).
 * Computed in x-space; a decreasing g makes the raw value negative, matching
 * the u-space integral from g(a) to g(b).
 */
inline double iso_integral_2(const RealFn& f, const Interval& iv, const Mapping& g,
                             const QuadConfig& cfg = {}) {
    RealFn integrand([&f, &g](double x) { return f(x) * g.derivative(x); }, iv,
                     f.repr + "·dg");
    double raw = integrate(integrand, iv, cfg);
    return g.inverse(raw);
}

/** Raw type-II integral without the g-pullback: integral of f dg over iv. */
inline double iso_integral_2_raw(const RealFn& f, const Interval& iv, const Mapping& g,
                                 const QuadConfig& cfg = {}) {
    RealFn integrand([&f, &g](double x) { return f(x) * g.derivative(x); }, iv,
                     f.repr + "·dg");
    return integrate(integrand, iv, cfg);
}

/** Geometric integral: exp( integral of ln f(x) dx ), the h = ln type-I case. */
inline double geometric_integral(const RealFn& f, const Interval& iv, const QuadConfig& cfg = {}) {
    return iso_integral_1(f, iv, catalog("ln"), cfg);
}

/**
 * Elastic integral: exp( integral of f(x)/x dx ), the g = ln type-II case.
 * Interval must lie in (0, inf). Feeding it an elasticity recovers the
 * multiplying factor F(b)/F(a) of the underlying function.
 */
inline double elastic_integral(const RealFn& f, const Interval& iv, const QuadConfig& cfg = {}) {
    if (iv.lo < 0.0 || (iv.lo == 0.0 && !iv.lo_open))
        throw DomainViolation("elastic integral: interval " + iv.str() + " must lie in (0, inf)");
    RealFn integrand([&f](double x) { return f(x) / x; }, iv, f.repr + "/x");
    return std::exp(integrate(integrand, iv, cfg));
}

}  // namespace isoframe
