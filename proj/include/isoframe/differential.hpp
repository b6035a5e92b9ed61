#pragma once

#include <cmath>
#include <vector>

#include "errors.hpp"
#include "mapping.hpp"
#include "numerics.hpp"
#include "realfn.hpp"

namespace isoframe {

/**
 * Density of an isomorphic number-axis (or plane) at a point: 1/g'(x), with a
 * SINGULAR marker where the mapping derivative vanishes. Singular points are
 * reported, not thrown, so plots can annotate them.
 */
struct DensityReport {
    std::vector<double> point;
    double density = 0.0;
    bool singular = false;
    double mapping_derivative = 0.0;
};

inline double fprime(const RealFn& f, double x) {
    return f.has_derivative() ? f.d(x) : fd_derivative(f, x);
}

/**
 * Dual-isomorphic derivative of f at x under the frame: (h o f)'(x) / g'(x),
 * evaluated as f'(x) * h'(f(x)) / g'(x).
 */
inline double dual_derivative(const RealFn& f, const Frame2D& fr, double x) {
    double gp = fr.g.derivative(x);
    if (gp == 0.0)
        throw SingularGenerator(fr.g.name + ": zero derivative at x=" + std::to_string(x) +
                                " (singular-density point)");
    double y = f(x);
    double hp = fr.h.derivative(y);
    return fprime(f, x) * hp / gp;
}

/** Elasticity of f at x: x*f'(x)/f(x), defined for f(x) > 0. */
inline double elasticity(const RealFn& f, double x) {
    double y = f(x);
    if (y <= 0.0)
        throw NonPositiveValue("elasticity needs f(x) > 0, got f(" + std::to_string(x) +
                               ")=" + std::to_string(y));
    return x * fprime(f, x) / y;
}

/** Metrical dual-isomorphic derivative: h^-1 of the dual derivative. */
inline double metrical_derivative(const RealFn& f, const Frame2D& fr, double x) {
    return fr.h.inverse(dual_derivative(f, fr, x));
}

/** Exponential derivative exp(f'/f): the metrical derivative under g=id, h=ln. */
inline double exponential_derivative(const RealFn& f, double x) {
    double y = f(x);
    if (y <= 0.0) throw NonPositiveValue("exponential derivative needs f(x) > 0");
    return std::exp(fprime(f, x) / y);
}

/** Bigeometric derivative exp(x*f'/f): the metrical derivative under g=h=ln. */
inline double bigeometric_derivative(const RealFn& f, double x) {
    return std::exp(elasticity(f, x));
}

/** Axis density rho_g(x) = 1/g'(x); SINGULAR marker when g'(x) = 0. */
inline DensityReport axis_density(const Mapping& g, double x) {
    DensityReport r;
    r.point = {x};
    r.mapping_derivative = g.derivative(x);
    if (r.mapping_derivative == 0.0) {
        r.singular = true;
        r.density = kInf;
    } else {
        r.density = 1.0 / r.mapping_derivative;
    }
    return r;
}

/** Plane density rho_gh(x,y) = 1/|g'(x) h'(y)|; SINGULAR if either factor is 0. */
inline DensityReport plane_density(const Frame2D& fr, double x, double y) {
    DensityReport r;
    r.point = {x, y};
    double prod = fr.g.derivative(x) * fr.h.derivative(y);
    r.mapping_derivative = std::fabs(prod);
    if (prod == 0.0) {
        r.singular = true;
        r.density = kInf;
    } else {
        r.density = 1.0 / r.mapping_derivative;
    }
    return r;
}

}  // namespace isoframe
