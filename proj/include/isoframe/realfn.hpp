#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <utility>

#include "errors.hpp"
#include "interval.hpp"

namespace isoframe {

/**
 * An evaluable real function of one variable with a domain interval and an
 * optional analytic derivative. Evaluation outside the domain, or producing a
 * non-finite value, raises DomainViolation.
 */
struct RealFn {
    std::function<double(double)> fn;
    Interval domain = Interval::all();
    std::function<double(double)> derivative;  // empty when only a numeric fallback exists
    std::string repr = "<fn>";

    RealFn() = default;

    RealFn(std::function<double(double)> f, Interval dom, std::string text = "<fn>")
        : fn(std::move(f)), domain(dom), repr(std::move(text)) {}

    RealFn(std::function<double(double)> f, Interval dom, std::function<double(double)> d,
           std::string text = "<fn>")
        : fn(std::move(f)), domain(dom), derivative(std::move(d)), repr(std::move(text)) {}

    bool has_derivative() const { return static_cast<bool>(derivative); }

    double operator()(double x) const {
        if (!domain.contains(x))
            throw DomainViolation(repr + " evaluated outside its domain " + domain.str() +
                                  " at x=" + std::to_string(x));
        double y = fn(x);
        if (std::isnan(y))
            throw DomainViolation(repr + " undefined at x=" + std::to_string(x));
        return y;
    }

    /** Raw evaluation without domain guards; NaN propagates. */
    double unchecked(double x) const { return fn(x); }

    double d(double x) const {
        if (!derivative) throw Error("no analytic derivative registered for " + repr);
        return derivative(x);
    }

    static RealFn identity() {
        return RealFn([](double x) { return x; }, Interval::all(),
                      [](double) { return 1.0; }, "x");
    }
};

}  // namespace isoframe
