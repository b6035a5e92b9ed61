#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "errors.hpp"
#include "mapping.hpp"

namespace isoframe {

namespace detail {

inline double pull_back(const Mapping& g, double u, const char* op) {
    if (!g.codomain.contains(u) && !g.codomain.contains_approx(u, 1e-9))
        throw RangeViolation(std::string(op) + ": accumulated value " + std::to_string(u) +
                             " left the codomain " + g.codomain.str() + " of " + g.name);
    return g.inverse(u);
}

}  // namespace detail

/** Isomorphic sum: g^-1( sum_i g(a_i) ). Requires at least one operand. */
inline double iso_add(const std::vector<double>& values, const Mapping& g) {
    if (values.empty()) throw InvalidParam("iso_add: need at least one operand");
    double acc = 0.0;
    for (double a : values) acc += g(a);
    return detail::pull_back(g, acc, "iso_add");
}

/** Isomorphic difference: g^-1( g(a) - sum_i g(b_i) ). */
inline double iso_sub(double a, const std::vector<double>& subtrahends, const Mapping& g) {
    if (subtrahends.empty()) throw InvalidParam("iso_sub: need at least one subtrahend");
    double acc = g(a);
    for (double b : subtrahends) acc -= g(b);
    return detail::pull_back(g, acc, "iso_sub");
}

/** Isomorphic scalar multiple: g^-1( g(a) * t ). */
inline double iso_mul(double a, double t, const Mapping& g) {
    return detail::pull_back(g, g(a) * t, "iso_mul");
}

/** Isomorphic scalar quotient: g^-1( g(a) / t ), t != 0. */
inline double iso_div_scalar(double a, double t, const Mapping& g) {
    if (t == 0.0) throw DivisorZero("iso_div_scalar: scalar divisor is zero");
    return detail::pull_back(g, g(a) / t, "iso_div_scalar");
}

/** Isomorphic ratio of two numbers: the plain real g(a)/g(b). */
inline double iso_div_pair(double a, double b, const Mapping& g) {
    double gb = g(b);
    if (gb == 0.0) throw DivisorZero("iso_div_pair: g(b) is zero");
    return g(a) / gb;
}

}  // namespace isoframe
