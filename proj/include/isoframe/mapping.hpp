#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "interval.hpp"
#include "numerics.hpp"
#include "realfn.hpp"

namespace isoframe {

/**
 * A dimensional mapping: a strictly monotone bijection from a domain interval
 * onto a codomain interval, with forward, inverse, and derivative evaluators.
 * Inverse and derivative are analytic for every catalog member; numeric
 * fallbacks fill in for hand-built mappings.
 */
struct Mapping {
    std::string name = "<mapping>";
    std::function<double(double)> fwd_;
    std::function<double(double)> inv_;   // may be empty: numeric fallback
    std::function<double(double)> der_;   // may be empty: finite-difference fallback
    Interval domain = Interval::all();
    Interval codomain = Interval::all();
    bool increasing = true;
    bool analytic_inverse = true;
    bool analytic_derivative = true;

    double operator()(double x) const {
        if (!domain.contains(x))
            throw DomainViolation(name + ": argument " + std::to_string(x) +
                                  " outside domain " + domain.str());
        double u = fwd_(x);
        if (std::isnan(u)) throw DomainViolation(name + ": undefined at x=" + std::to_string(x));
        return u;
    }

    double inverse(double u) const {
        // Round-off from arithmetic in the image space may place u a hair past
        // a codomain boundary; clamp within a 1e-9 combined tolerance.
        double v = u;
        if (!codomain.contains(v)) {
            if (codomain.contains_approx(v, 1e-9))
                v = std::min(std::max(v, codomain.lo), codomain.hi);
            else
                throw RangeViolation(name + ": value " + std::to_string(u) +
                                     " outside codomain " + codomain.str());
        }
        double x = inv_ ? inv_(v) : numeric_inverse(v);
        if (std::isnan(x)) throw RangeViolation(name + ": inverse undefined at u=" + std::to_string(u));
        return x;
    }

    double derivative(double x) const {
        if (!domain.contains(x))
            throw DomainViolation(name + ": derivative point outside domain " + domain.str());
        if (der_) return der_(x);
        return fd_derivative(RealFn(fwd_, domain, name), x);
    }

    /** Codomain-clipped expanding bracket search from the domain midpoint. */
    double numeric_inverse(double u) const {
        Interval win = sampling_window();
        double m0 = 0.5 * (win.lo + win.hi);
        double step = std::max(1.0, 0.01 * (win.hi - win.lo));
        double lo = m0, hi = m0;
        auto val = [this](double x) { return fwd_(x); };
        for (int it = 0; it < 80; ++it) {
            lo = std::max(win.lo, m0 - step);
            hi = std::min(win.hi, m0 + step);
            double a = val(lo), b = val(hi);
            if ((a - u) * (b - u) <= 0.0) {
                RealFn wrapped(fwd_, Interval::closed(lo, hi), name);
                return invert_monotone(wrapped, u, Interval::closed(lo, hi), 1e-12);
            }
            if (lo == win.lo && hi == win.hi) break;
            step *= 3.0;
        }
        throw NotBracketed(name + ": numeric inverse found no bracket for u=" + std::to_string(u));
    }

    /** A finite closed window inside the domain, for sampling-based checks. */
    Interval sampling_window(double reach = 50.0) const {
        double lo = domain.lo, hi = domain.hi;
        if (std::isinf(lo) && std::isinf(hi)) {
            lo = -reach;
            hi = reach;
        } else if (std::isinf(lo)) {
            lo = hi - 2.0 * reach;
        } else if (std::isinf(hi)) {
            hi = lo + 2.0 * reach;
        }
        double pad = (hi - lo) * 1e-6;
        if (domain.lo_open || std::isinf(domain.lo)) lo += pad;
        if (domain.hi_open || std::isinf(domain.hi)) hi -= pad;
        return Interval::closed(lo, hi);
    }
};

/** Ordered pair of dimensional mappings: g drives the horizontal axis, h the vertical. */
struct Frame2D {
    Mapping g;
    Mapping h;
};

inline Frame2D identity_frame();

namespace detail {

inline bool is_integer(double p) { return std::isfinite(p) && std::floor(p) == p && std::fabs(p) < 1e15; }

inline std::string format_param(double v) {
    char buf[32];
    if (is_integer(v))
        std::snprintf(buf, sizeof(buf), "%.0f", v);
    else
        std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

/**
 * Image of a subinterval under a monotone map described by (value, full_src,
 * full_dst, increasing): endpoints lying on the source boundary take the
 * destination boundary instead of being evaluated.
 */
inline Interval map_interval_endpoints(const std::function<double(double)>& value,
                                       const Interval& src, const Interval& full_src,
                                       const Interval& full_dst, bool increasing) {
    struct End {
        double v;
        bool open;
    };
    auto image_of = [&](double x, bool open, bool is_lo) -> End {
        if ((is_lo && (std::isinf(x) || (x == full_src.lo && full_src.lo_open))) ||
            (!is_lo && (std::isinf(x) || (x == full_src.hi && full_src.hi_open)))) {
            // boundary endpoint: use the destination boundary on the matching side
            bool take_lo = is_lo == increasing;
            return {take_lo ? full_dst.lo : full_dst.hi, take_lo ? full_dst.lo_open : full_dst.hi_open};
        }
        return {value(x), open};
    };
    End a = image_of(src.lo, src.lo_open, true);
    End b = image_of(src.hi, src.hi_open, false);
    if (!increasing) std::swap(a, b);
    return Interval(a.v, b.v, a.open, b.open);
}

}  // namespace detail

/** Image of iv (must lie within m's domain) under m, as an interval. */
inline Interval map_interval(const Mapping& m, const Interval& iv) {
    return detail::map_interval_endpoints([&m](double x) { return m(x); }, iv, m.domain, m.codomain,
                                          m.increasing);
}

/** Preimage of iv (must lie within m's codomain) under m, as an interval. */
inline Interval map_interval_inverse(const Mapping& m, const Interval& iv) {
    return detail::map_interval_endpoints([&m](double u) { return m.inverse(u); }, iv, m.codomain,
                                          m.domain, m.increasing);
}

/**
 * Sampled invariant check: strict monotonicity per the declared direction and
 * inverse-of-forward identity within 1e-9, over `pairs` ordered sample pairs.
 */
inline void validate_mapping(const Mapping& m, int pairs = 1000) {
    Interval win = m.sampling_window();
    int n = pairs + 1;
    double prev = 0.0;
    for (int i = 0; i < n; ++i) {
        double x = win.lo + (win.hi - win.lo) * i / (n - 1);
        double u = m(x);
        if (i > 0) {
            bool ok = m.increasing ? (u > prev) : (u < prev);
            if (!ok)
                throw NonMonotoneDetected(m.name + ": sampled monotonicity violation near x=" +
                                          std::to_string(x));
        }
        prev = u;
        if (i % 10 == 0) {
            double back = m.inverse(u);
            double tol = 1e-9 * std::max(1.0, std::fabs(x));
            if (std::fabs(back - x) > tol)
                throw Error(m.name + ": inverse(forward(x)) drifted at x=" + std::to_string(x));
        }
    }
}

/** Sampled equality of two mappings on the overlap of their domains. */
inline bool mappings_equal(const Mapping& a, const Mapping& b, int samples = 24) {
    bool empty = false;
    Interval common = Interval::intersect(a.domain, b.domain, empty);
    if (empty) return false;
    Mapping probe = a;
    probe.domain = common;
    Interval win = probe.sampling_window();
    for (int i = 0; i < samples; ++i) {
        double x = win.lo + (win.hi - win.lo) * i / (samples - 1);
        double ua = a(x), ub = b(x);
        if (std::fabs(ua - ub) > 1e-12 * std::max({1.0, std::fabs(ua), std::fabs(ub)})) return false;
    }
    return true;
}

inline bool is_identity(const Mapping& m) {
    if (m.name == "id") return true;
    Mapping id;
    id.name = "id";
    id.fwd_ = [](double x) { return x; };
    id.inv_ = [](double u) { return u; };
    id.der_ = [](double) { return 1.0; };
    return mappings_equal(m, id);
}

/**
 * Catalog of built-in mappings. Names: id, ln, log10, exp, exp10, recip,
 * pow(p), affine(k,C), sinh, cosh, cube, neg, db.
 */
inline Mapping catalog(const std::string& name, const std::vector<double>& params = {}) {
    auto expect_params = [&](std::size_t n) {
        if (params.size() != n)
            throw InvalidParam("mapping '" + name + "' takes " + std::to_string(n) +
                               " parameter(s), got " + std::to_string(params.size()));
    };
    Mapping m;
    m.name = name;
    if (name == "id") {
        expect_params(0);
        m.fwd_ = [](double x) { return x; };
        m.inv_ = [](double u) { return u; };
        m.der_ = [](double) { return 1.0; };
    } else if (name == "ln") {
        expect_params(0);
        m.domain = Interval::positive();
        m.fwd_ = [](double x) { return std::log(x); };
        m.inv_ = [](double u) { return std::exp(u); };
        m.der_ = [](double x) { return 1.0 / x; };
    } else if (name == "log10") {
        expect_params(0);
        m.domain = Interval::positive();
        m.fwd_ = [](double x) { return std::log10(x); };
        m.inv_ = [](double u) { return std::pow(10.0, u); };
        m.der_ = [](double x) { return 1.0 / (x * std::log(10.0)); };
    } else if (name == "exp") {
        expect_params(0);
        m.codomain = Interval::positive();
        m.fwd_ = [](double x) { return std::exp(x); };
        m.inv_ = [](double u) { return std::log(u); };
        m.der_ = [](double x) { return std::exp(x); };
    } else if (name == "exp10") {
        expect_params(0);
        m.codomain = Interval::positive();
        m.fwd_ = [](double x) { return std::pow(10.0, x); };
        m.inv_ = [](double u) { return std::log10(u); };
        m.der_ = [](double x) { return std::log(10.0) * std::pow(10.0, x); };
    } else if (name == "recip") {
        expect_params(0);
        m.domain = Interval::positive();
        m.codomain = Interval::positive();
        m.increasing = false;
        m.fwd_ = [](double x) { return 1.0 / x; };
        m.inv_ = [](double u) { return 1.0 / u; };
        m.der_ = [](double x) { return -1.0 / (x * x); };
    } else if (name == "pow" || name == "cube") {
        double p = 3.0;
        if (name == "pow") {
            expect_params(1);
            p = params[0];
        } else {
            expect_params(0);
        }
        if (p == 0.0 || !std::isfinite(p)) throw InvalidParam("pow exponent must be finite and nonzero");
        m.name = name == "cube" ? "cube" : "pow(" + detail::format_param(p) + ")";
        bool integer = detail::is_integer(p);
        bool odd = integer && std::fabs(std::fmod(p, 2.0)) == 1.0;
        if (p > 0.0 && odd) {
            // odd integer power: bijection on all of R
            m.fwd_ = [p](double x) { return x < 0.0 ? -std::pow(-x, p) : std::pow(x, p); };
            m.inv_ = [p](double u) { return u < 0.0 ? -std::pow(-u, 1.0 / p) : std::pow(u, 1.0 / p); };
            m.der_ = [p](double x) { return p * std::pow(std::fabs(x), p - 1.0); };
        } else if (p > 0.0 && integer) {
            // even integer power: the increasing branch [0, inf)
            m.domain = Interval::nonnegative();
            m.codomain = Interval::nonnegative();
            m.fwd_ = [p](double x) { return std::pow(x, p); };
            m.inv_ = [p](double u) { return std::pow(u, 1.0 / p); };
            m.der_ = [p](double x) { return p * std::pow(x, p - 1.0); };
        } else {
            // non-integer or negative exponent: restricted to (0, inf)
            m.domain = Interval::positive();
            m.codomain = Interval::positive();
            m.increasing = p > 0.0;
            m.fwd_ = [p](double x) { return std::pow(x, p); };
            m.inv_ = [p](double u) { return std::pow(u, 1.0 / p); };
            m.der_ = [p](double x) { return p * std::pow(x, p - 1.0); };
        }
    } else if (name == "affine") {
        expect_params(2);
        double k = params[0], C = params[1];
        if (k == 0.0) throw InvalidParam("affine scale k must be nonzero");
        m.name = "affine(" + detail::format_param(k) + "," + detail::format_param(C) + ")";
        m.increasing = k > 0.0;
        m.fwd_ = [k, C](double x) { return k * x + C; };
        m.inv_ = [k, C](double u) { return (u - C) / k; };
        m.der_ = [k](double) { return k; };
    } else if (name == "sinh") {
        expect_params(0);
        m.fwd_ = [](double x) { return std::sinh(x); };
        m.inv_ = [](double u) { return std::asinh(u); };
        m.der_ = [](double x) { return std::cosh(x); };
    } else if (name == "cosh") {
        expect_params(0);
        // increasing branch of cosh
        m.domain = Interval::nonnegative();
        m.codomain = Interval(1.0, kInf, false, true);
        m.fwd_ = [](double x) { return std::cosh(x); };
        m.inv_ = [](double u) { return std::acosh(u); };
        m.der_ = [](double x) { return std::sinh(x); };
    } else if (name == "neg") {
        expect_params(0);
        m.increasing = false;
        m.fwd_ = [](double x) { return -x; };
        m.inv_ = [](double u) { return -u; };
        m.der_ = [](double) { return -1.0; };
    } else if (name == "db") {
        expect_params(0);
        m.codomain = Interval::positive();
        m.fwd_ = [](double a) { return std::pow(10.0, 0.1 * a); };
        m.inv_ = [](double u) { return 10.0 * std::log10(u); };
        m.der_ = [](double a) { return 0.1 * std::log(10.0) * std::pow(10.0, 0.1 * a); };
    } else {
        throw UnknownMapping("unknown mapping '" + name + "'");
    }
    return m;
}

inline Frame2D identity_frame() { return Frame2D{catalog("id"), catalog("id")}; }

/**
 * Composition outer(inner(.)). The inner mapping's domain is clipped so its
 * image lands inside the outer domain; an empty overlap raises DomainMismatch.
 */
inline Mapping compose(const Mapping& outer, const Mapping& inner) {
    bool empty = false;
    Interval allowed = Interval::intersect(inner.codomain, outer.domain, empty);
    if (empty)
        throw DomainMismatch("compose: image of '" + inner.name + "' misses domain of '" +
                             outer.name + "'");
    Mapping m;
    m.name = inner.name + "|" + outer.name;
    m.domain = map_interval_inverse(inner, allowed);
    m.codomain = map_interval(outer, allowed);
    m.increasing = outer.increasing == inner.increasing;
    auto of = outer.fwd_, inf_ = inner.fwd_;
    m.fwd_ = [of, inf_](double x) { return of(inf_(x)); };
    auto oi = outer.inv_, ii = inner.inv_;
    m.analytic_inverse = outer.analytic_inverse && inner.analytic_inverse;
    if (oi && ii) m.inv_ = [oi, ii](double u) { return ii(oi(u)); };
    m.analytic_derivative = outer.analytic_derivative && inner.analytic_derivative;
    if (outer.der_ && inner.der_) {
        auto od = outer.der_, idr = inner.der_;
        m.der_ = [od, idr, inf_](double x) { return od(inf_(x)) * idr(x); };
    }
    return m;
}

/** V-scaleshift: x -> k*m(x) + C with k != 0 (a member of the space V(m)). */
inline Mapping v_scaleshift(const Mapping& base, double k, double C) {
    if (k == 0.0) throw InvalidParam("v_scaleshift scale k must be nonzero");
    Mapping m;
    m.name = "vss(" + detail::format_param(k) + "," + detail::format_param(C) + ")·" + base.name;
    m.domain = base.domain;
    double lo = k * base.codomain.lo + C, hi = k * base.codomain.hi + C;
    bool lo_open = base.codomain.lo_open, hi_open = base.codomain.hi_open;
    if (k < 0.0) {
        std::swap(lo, hi);
        std::swap(lo_open, hi_open);
    }
    m.codomain = Interval(lo, hi, lo_open, hi_open);
    m.increasing = (k > 0.0) == base.increasing;
    auto bf = base.fwd_;
    m.fwd_ = [bf, k, C](double x) { return k * bf(x) + C; };
    m.analytic_inverse = base.analytic_inverse;
    if (base.inv_) {
        auto bi = base.inv_;
        m.inv_ = [bi, k, C](double u) { return bi((u - C) / k); };
    }
    m.analytic_derivative = base.analytic_derivative;
    if (base.der_) {
        auto bd = base.der_;
        m.der_ = [bd, k](double x) { return k * bd(x); };
    }
    return m;
}

/** H-scaleshift: u -> f((u-C)/k) on the domain k*D + C, with k != 0. */
inline RealFn h_scaleshift(const RealFn& f, double k, double C) {
    if (k == 0.0) throw InvalidParam("h_scaleshift scale k must be nonzero");
    double lo = k * f.domain.lo + C, hi = k * f.domain.hi + C;
    bool lo_open = f.domain.lo_open, hi_open = f.domain.hi_open;
    if (k < 0.0) {
        std::swap(lo, hi);
        std::swap(lo_open, hi_open);
    }
    auto base = f.fn;
    RealFn out([base, k, C](double u) { return base((u - C) / k); }, Interval(lo, hi, lo_open, hi_open),
               "hss(" + detail::format_param(k) + "," + detail::format_param(C) + ")·" + f.repr);
    if (f.derivative) {
        auto bd = f.derivative;
        out.derivative = [bd, k, C](double u) { return bd((u - C) / k) / k; };
    }
    return out;
}

/**
 * The dual-variable-isomorphic function phi = h o f o g^-1 of f under a frame,
 * with domain E = g(D). f's values are spot-checked against h's domain.
 */
inline RealFn dvi_function(const RealFn& f, const Frame2D& fr) {
    bool empty = false;
    Interval D = Interval::intersect(f.domain, fr.g.domain, empty);
    if (empty) throw BondingViolation("function and horizontal mapping share no domain");

    Mapping probe = fr.g;
    probe.domain = D;
    Interval win = probe.sampling_window();
    for (int i = 0; i < 64; ++i) {
        double x = win.lo + (win.hi - win.lo) * i / 63.0;
        double y;
        try {
            y = f(x);
        } catch (const DomainViolation&) {
            continue;
        }
        if (!fr.h.domain.contains_approx(y, 1e-12))
            throw BondingViolation("function value " + std::to_string(y) + " at x=" +
                                   std::to_string(x) + " falls outside the vertical mapping's domain " +
                                   fr.h.domain.str());
    }

    Interval E = map_interval(fr.g, D);
    Mapping g = fr.g, h = fr.h;
    RealFn base = f;
    RealFn phi([g, h, base](double u) { return h(base(g.inverse(u))); }, E,
               "dvi(" + f.repr + ";" + g.name + "," + h.name + ")");
    if (f.has_derivative() && g.analytic_derivative && h.analytic_derivative) {
        phi.derivative = [g, h, base](double u) {
            double x = g.inverse(u);
            double gp = g.derivative(x);
            if (gp == 0.0) throw SingularGenerator(g.name + ": zero derivative inside dvi chain");
            double y = base(x);
            return h.derivative(y) * base.d(x) / gp;
        };
    }
    return phi;
}

}  // namespace isoframe
