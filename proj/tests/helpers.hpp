#pragma once

#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <utility>

#include <catch_amalgamated.hpp>
#include <isoframe/isoframe.hpp>

namespace th {

using Catch::Approx;

/** Build a Mapping directly from closures (bypasses the catalog). */
inline isoframe::Mapping raw_mapping(std::string name, std::function<double(double)> fwd,
                                     std::function<double(double)> inv,
                                     std::function<double(double)> der, isoframe::Interval dom,
                                     isoframe::Interval cod, bool increasing) {
    isoframe::Mapping m;
    m.name = std::move(name);
    m.fwd_ = std::move(fwd);
    m.inv_ = std::move(inv);
    m.der_ = std::move(der);
    m.domain = dom;
    m.codomain = cod;
    m.increasing = increasing;
    m.analytic_inverse = static_cast<bool>(m.inv_);
    m.analytic_derivative = static_cast<bool>(m.der_);
    return m;
}

/** Swap the two sides of a mapping: the inverse as a Mapping in its own right. */
inline isoframe::Mapping inverse_of(const isoframe::Mapping& m) {
    isoframe::Mapping r = m;
    r.name = m.name + "^-1";
    std::swap(r.fwd_, r.inv_);
    std::swap(r.domain, r.codomain);
    r.der_ = nullptr;  // finite differences on the inverse
    r.analytic_derivative = false;
    if (!r.fwd_) throw std::runtime_error("inverse_of: mapping has no analytic inverse");
    return r;
}

inline double rel_err(double got, double want) {
    return std::fabs(got - want) / std::max(1e-300, std::fabs(want));
}

/** Every catalog entry, including parameterized instances. */
inline std::vector<isoframe::Mapping> full_catalog() {
    using isoframe::catalog;
    return {catalog("id"),          catalog("ln"),
            catalog("log10"),      catalog("exp"),
            catalog("exp10"),      catalog("recip"),
            catalog("pow", {2.0}), catalog("pow", {3.0}),
            catalog("pow", {0.5}), catalog("cube"),
            catalog("affine", {2.0, 1.0}), catalog("affine", {-0.5, 3.0}),
            catalog("sinh"),       catalog("cosh"),
            catalog("neg"),        catalog("db")};
}

}  // namespace th
