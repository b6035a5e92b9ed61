#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "differential.hpp"
#include "errors.hpp"
#include "interval.hpp"
#include "mapping.hpp"
#include "numerics.hpp"
#include "realfn.hpp"

namespace isoframe {

enum class Monotonicity { Increasing, Decreasing, Constant, NonMonotone };

inline const char* to_string(Monotonicity m) {
    switch (m) {
        case Monotonicity::Increasing: return "increasing";
        case Monotonicity::Decreasing: return "decreasing";
        case Monotonicity::Constant: return "constant";
        default: return "non-monotone";
    }
}

/** Ordering verdict between two means (or two sides of an inequality). */
enum class Relation { LessEqual, GreaterEqual, Equal, Indeterminate, None };

inline const char* to_string(Relation r) {
    switch (r) {
        case Relation::LessEqual: return "<=";
        case Relation::GreaterEqual: return ">=";
        case Relation::Equal: return "=";
        case Relation::Indeterminate: return "indeterminate";
        default: return "none";
    }
}

/** Which mappings of the frame are identities (or tied to f) for a mean. */
enum class MeanClass { Numbers, I, II, III, IV, V, VI, VII, CompositeV };

inline const char* to_string(MeanClass c) {
    switch (c) {
        case MeanClass::Numbers: return "numbers";
        case MeanClass::I: return "I";
        case MeanClass::II: return "II";
        case MeanClass::III: return "III";
        case MeanClass::IV: return "IV";
        case MeanClass::V: return "V";
        case MeanClass::VI: return "VI";
        case MeanClass::VII: return "VII";
        default: return "composite-V";
    }
}

/** Positive weights, normalized to sum 1 on construction. */
struct Weights {
    std::vector<double> p;

    explicit Weights(const std::vector<double>& raw) {
        if (raw.empty()) throw InvalidParam("weights must be non-empty");
        double sum = 0.0;
        for (double w : raw) {
            if (!(w > 0.0)) throw InvalidParam("weights must be strictly positive");
            sum += w;
        }
        p.reserve(raw.size());
        for (double w : raw) p.push_back(w / sum);
    }

    static Weights equal(std::size_t n) {
        if (n == 0) throw InvalidParam("weights must be non-empty");
        return Weights(std::vector<double>(n, 1.0));
    }

    static Weights pair(double lambda1) {
        if (!(lambda1 > 0.0 && lambda1 < 1.0)) throw InvalidParam("pair weight must be in (0,1)");
        return Weights({lambda1, 1.0 - lambda1});
    }
};

/** Isomorphic weighted mean of numbers: g^-1( sum p_i g(x_i) ). */
inline double mean_numbers(const std::vector<double>& xs, const Weights& w, const Mapping& g) {
    if (xs.size() < 2) throw InvalidParam("mean_numbers needs at least two values");
    if (xs.size() != w.p.size()) throw InvalidParam("weights and values differ in length");
    double acc = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) acc += w.p[i] * g(xs[i]);
    return g.inverse(acc);
}

namespace detail {

/** A finite closed window inside iv, inset away from open/infinite ends. */
inline Interval finite_window(const Interval& iv, double reach = 50.0) {
    double lo = iv.lo, hi = iv.hi;
    if (std::isinf(lo) && std::isinf(hi)) {
        lo = -reach;
        hi = reach;
    } else if (std::isinf(lo)) {
        lo = hi - 2.0 * reach;
    } else if (std::isinf(hi)) {
        hi = lo + 2.0 * reach;
    }
    double pad = (hi - lo) * 1e-6;
    if (iv.lo_open || std::isinf(iv.lo)) lo += pad;
    if (iv.hi_open || std::isinf(iv.hi)) hi -= pad;
    return Interval::closed(lo, hi);
}

inline Monotonicity classify_monotonicity(const std::vector<double>& v) {
    double scale = 0.0;
    for (double x : v) scale = std::max(scale, std::fabs(x));
    double band = 1e-12 * std::max(1.0, scale);
    bool up = false, down = false;
    for (std::size_t i = 1; i < v.size(); ++i) {
        double d = v[i] - v[i - 1];
        if (d > band)
            up = true;
        else if (d < -band)
            down = true;
    }
    if (up && down) return Monotonicity::NonMonotone;
    if (up) return Monotonicity::Increasing;
    if (down) return Monotonicity::Decreasing;
    return Monotonicity::Constant;
}

struct MeanCore {
    double value;
    double mphi;
    double span;
};

inline MeanCore mean_core(const RealFn& f, double a, double b, const Frame2D& fr,
                          const QuadConfig& cfg) {
    double span = fr.g(b) - fr.g(a);
    if (span == 0.0)
        throw DegenerateFrame("g(" + std::to_string(a) + ") equals g(" + std::to_string(b) +
                              "): the horizontal mapping collapsed the interval");
    auto integrand = [&f, &fr](double x) { return fr.h(f(x)) * fr.g.derivative(x); };
    double raw = integrate_oriented(integrand, a, b, cfg);
    double mphi = raw / span;
    return {fr.h.inverse(mphi), mphi, span};
}

/** Polynomial extrapolation of the tail of (t_i, M_i) to t = 0. */
inline double neville_at_zero(const std::vector<std::pair<double, double>>& pts, int max_points) {
    int n = std::min<int>(max_points, static_cast<int>(pts.size()));
    std::vector<double> t(n), v(n);
    for (int i = 0; i < n; ++i) {
        const auto& p = pts[pts.size() - n + i];
        t[i] = p.first;
        v[i] = p.second;
    }
    for (int j = 1; j < n; ++j)
        for (int i = n - 1; i >= j; --i)
            v[i] = (-t[i - j] * v[i] + t[i] * v[i - 1]) / (t[i] - t[i - j]);
    return v[n - 1];
}

}  // namespace detail

/**
 * Mean of a function on closed endpoints given in order; exchanging a and b
 * leaves the value unchanged since both the span and the oriented integral
 * flip sign together.
 */
inline double mean_function_closed(const RealFn& f, double a, double b, const Frame2D& fr,
                                   const QuadConfig& cfg = {}) {
    if (a == b) return f(a);
    return detail::mean_core(f, a, b, fr, cfg).value;
}

/** Which class tag the supplied (f, g, h) combination falls into. */
inline MeanClass detect_mean_class(const RealFn& f, const Frame2D& fr, const Interval& iv) {
    bool gid = is_identity(fr.g), hid = is_identity(fr.h);
    if (gid && hid) return MeanClass::VI;
    if (gid) return MeanClass::I;
    if (hid) return MeanClass::II;

    bool empty = false;
    Interval dom = Interval::intersect(f.domain, fr.g.domain, empty);
    if (!empty) dom = Interval::intersect(dom, iv, empty);
    Interval win = detail::finite_window(empty ? iv : dom);

    const int n = 17;
    bool fid = true, g_is_f = true, h_undoes_f = true;
    int support = 0, g_support = 0, h_support = 0;
    for (int i = 0; i < n; ++i) {
        double x = win.lo + (win.hi - win.lo) * i / (n - 1);
        double y;
        try {
            y = f(x);
        } catch (const DomainError&) {
            continue;
        }
        ++support;
        double tol = 1e-9 * std::max({1.0, std::fabs(x), std::fabs(y)});
        if (std::fabs(y - x) > tol) fid = false;
        try {
            if (std::fabs(fr.g(x) - y) > tol) g_is_f = false;
            ++g_support;
        } catch (const DomainError&) {
        }
        try {
            if (std::fabs(fr.h(y) - x) > tol) h_undoes_f = false;
            ++h_support;
        } catch (const DomainError&) {
        }
    }
    if (support == 0) return MeanClass::IV;
    if (g_is_f && h_undoes_f && g_support * 2 >= support && h_support * 2 >= support)
        return MeanClass::VII;
    if (mappings_equal(fr.g, fr.h)) return MeanClass::III;
    if (fid) return MeanClass::V;
    return MeanClass::IV;
}

/** Mean of a function with classification and diagnostic flags. */
struct MeanResult {
    double value = 0.0;
    MeanClass tag = MeanClass::IV;
    bool generalized = false;    // evaluated as a limit of an unbounded f
    bool outside_range = false;  // value does not sit inside the sampled range of f
    bool extrapolated = false;   // limit form required extrapolation in 1/(g-span)
    double window_lo = 0.0, window_hi = 0.0;  // last closed window actually integrated
};

namespace detail {

struct LimitOutcome {
    double value;
    bool extrapolated;
    double lo, hi;
    bool generalized;
};

/**
 * Limit form of the function mean over an open or infinite interval: evaluate
 * on the shrinking closed windows, accept two successive agreeing estimates;
 * when the g-span diverges, extrapolate M linearly in t = 1/span to t -> 0
 * and accept two agreeing extrapolants instead.  At the shrink floor the
 * best-converged extrapolant wins: the smallest windows carry the largest
 * quadrature noise, so the freshest pair is not necessarily the most accurate.
 */
inline LimitOutcome mean_limit(const RealFn& f, const Interval& iv, const Frame2D& fr,
                               const QuadConfig& cfg) {
    double eps = cfg.improper_start;
    bool have_prev = false, have_extrap = false, have_diff = false, diverging = false;
    bool have_best = false;
    double prev_value = 0.0, prev_extrap = 0.0, prev_diff = 0.0, prev_span = 0.0;
    double best_diff = 0.0, best_extrap = 0.0;
    std::vector<std::pair<double, double>> pts;  // (1/span, M)

    // Probe f at the outermost and innermost windows up front: whether the
    // mean is of the generalized (unbounded f) kind must not depend on how
    // early the limit sequence happens to stabilize.
    auto end_magnitude = [&](double e) {
        double m = 0.0;
        try {
            m = std::fabs(f(shrink_lo(iv, e)));
        } catch (const DomainError&) {
        }
        try {
            m = std::max(m, std::fabs(f(shrink_hi(iv, e))));
        } catch (const DomainError&) {
        }
        return m;
    };
    double first_end = end_magnitude(cfg.improper_start);
    double floor_end = end_magnitude(cfg.improper_floor);
    bool generalized = floor_end > 1e4 && floor_end > 1e3 * std::max(first_end, 1e-300);

    while (true) {
        double a = shrink_lo(iv, eps);
        double b = shrink_hi(iv, eps);
        if (a >= b) {
            eps *= cfg.improper_ratio;
            if (eps < cfg.improper_floor)
                throw DivergentImproper("interval collapsed before the mean stabilized");
            continue;
        }
        MeanCore core = mean_core(f, a, b, fr, cfg);
        pts.emplace_back(1.0 / core.span, core.value);

        if (have_prev && std::fabs(core.span) - std::fabs(prev_span) >= 1.0) diverging = true;
        bool at_floor = eps * cfg.improper_ratio < cfg.improper_floor;

        if (!diverging) {
            if (have_prev) {
                double diff = core.value - prev_value;
                double tol = std::max(10.0 * cfg.abs_tol, 10.0 * cfg.rel_tol * std::fabs(core.value));
                if (std::fabs(diff) <= tol) return {core.value, false, a, b, generalized};
                if (at_floor) {
                    if (have_diff && prev_diff != 0.0) {
                        double r = std::fabs(diff) / std::fabs(prev_diff);
                        if (r <= 0.7)
                            return {core.value + diff * r / (1.0 - r), true, a, b, generalized};
                    }
                    throw DivergentImproper("function mean failed to stabilize within tolerance");
                }
                prev_diff = diff;
                have_diff = true;
            }
        } else if (pts.size() >= 2) {
            double ex = neville_at_zero(pts, 2);
            double tol = std::max(100.0 * cfg.abs_tol, 100.0 * cfg.rel_tol * std::fabs(ex));
            if (have_extrap) {
                double d = std::fabs(ex - prev_extrap);
                if (d <= tol) return {ex, true, a, b, generalized};
                if (!have_best || d < best_diff) {
                    best_diff = d;
                    best_extrap = ex;
                    have_best = true;
                }
            }
            if (at_floor) return {have_best ? best_extrap : ex, true, a, b, generalized};
            prev_extrap = ex;
            have_extrap = true;
        } else if (at_floor) {
            throw DivergentImproper("function mean ran out of shrink steps");
        }

        prev_value = core.value;
        prev_span = core.span;
        have_prev = true;
        eps *= cfg.improper_ratio;
    }
}

/** Heuristic: does the mean value sit inside the sampled range of f? */
inline void apply_range_flag(MeanResult& res, const RealFn& f) {
    const int n = 129;
    double fmin = kInf, fmax = -kInf, dnear = kInf;
    int count = 0;
    for (int i = 0; i < n; ++i) {
        double x = res.window_lo + (res.window_hi - res.window_lo) * i / (n - 1);
        double v;
        try {
            v = f(x);
        } catch (const DomainError&) {
            continue;
        }
        ++count;
        fmin = std::min(fmin, v);
        fmax = std::max(fmax, v);
        dnear = std::min(dnear, std::fabs(v - res.value));
    }
    if (count < 8) return;
    double slack = 1e-6 * std::max({1.0, std::fabs(fmin), std::fabs(fmax)});
    if (res.value < fmin - slack || res.value > fmax + slack)
        res.outside_range = true;
    else if (fmax > fmin && dnear > 0.08 * (fmax - fmin))
        res.outside_range = true;
}

}  // namespace detail

/**
 * Isomorphic mean of a function on an interval under a frame:
 * h^-1( integral of h(f) dg over iv / (g-span of iv) ), with the limit form on
 * open or infinite intervals and f(a) on a degenerate point interval.
 */
inline MeanResult mean_function(const RealFn& f, const Interval& iv, const Frame2D& fr,
                                const QuadConfig& cfg = {}) {
    cfg.validate();
    MeanResult res;
    res.tag = detect_mean_class(f, fr, iv);
    if (iv.degenerate()) {
        res.value = f(iv.lo);
        res.window_lo = res.window_hi = iv.lo;
        return res;
    }
    const bool improper = iv.lo_open || iv.hi_open || !iv.finite();
    if (!improper) {
        res.value = detail::mean_core(f, iv.lo, iv.hi, fr, cfg).value;
        res.window_lo = iv.lo;
        res.window_hi = iv.hi;
    } else {
        detail::LimitOutcome out = detail::mean_limit(f, iv, fr, cfg);
        res.value = out.value;
        res.extrapolated = out.extrapolated;
        res.generalized = out.generalized;
        res.window_lo = out.lo;
        res.window_hi = out.hi;
    }
    detail::apply_range_flag(res, f);
    return res;
}

/**
 * Riemann-partition oracle for the function mean: equal partition of
 * E = [g(a), g(b)] into n cells with midpoint tags,
 * h^-1( (1/n) sum h(f(g^-1(u_i))) ).
 */
inline double mean_function_oracle(const RealFn& f, const Interval& iv, const Frame2D& fr, long n) {
    if (!iv.finite() || !iv.is_closed())
        throw InvalidParam("the partition oracle needs a finite closed interval");
    if (n < 1) throw InvalidParam("the partition oracle needs n >= 1");
    if (iv.degenerate()) return f(iv.lo);
    double u0 = fr.g(iv.lo);
    double du = (fr.g(iv.hi) - u0) / static_cast<double>(n);
    double acc = 0.0;
    for (long i = 0; i < n; ++i) {
        double u = u0 + (static_cast<double>(i) + 0.5) * du;
        acc += fr.h(f(fr.g.inverse(u)));
    }
    return fr.h.inverse(acc / static_cast<double>(n));
}

/**
 * Composite class-V mean: the mean of the identity under the frame {g, h o f},
 * computed as f^-1( mean of f under {g, h} ) for strictly monotone f.
 */
inline MeanResult composite_v_mean(const RealFn& f, const Interval& iv, const Frame2D& fr,
                                   const QuadConfig& cfg = {}) {
    if (!iv.finite()) throw InvalidParam("composite class V needs a finite interval");
    MeanResult inner = mean_function(f, iv, fr, cfg);
    MeanResult res = inner;
    res.tag = MeanClass::CompositeV;
    if (iv.degenerate()) {
        res.value = iv.lo;
        return res;
    }
    try {
        res.value = invert_monotone(f, inner.value, Interval::closed(res.window_lo, res.window_hi));
    } catch (const NonMonotoneDetected&) {
        throw NotInvertible("composite class V needs a strictly monotone f on the interval");
    }
    return res;
}

/**
 * Quasi-Stolarsky mean Q_{p,q}(a,b) of positive a, b: the class-V bivariate
 * mean of the power mappings x^p, y^q, with its limit branches at p = 0,
 * q = 0, p = q, and p + q = 0 (selected within 1e-12) and Q(a,a) = a.
 */
inline double quasi_stolarsky(double p, double q, double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw DomainViolation("quasi-Stolarsky mean needs a, b > 0");
    if (a == b) return a;
    const double tol = 1e-12;
    const bool p0 = std::fabs(p) < tol, q0 = std::fabs(q) < tol;
    const double lr = std::log(b) - std::log(a);
    if (p0 && q0) return std::sqrt(a * b);
    if (!p0 && !q0 && std::fabs(p - q) < tol)
        return std::pow(0.5 * (std::pow(a, p) + std::pow(b, p)), 1.0 / p);
    if (!p0 && !q0 && std::fabs(p + q) < tol)
        return std::pow((std::pow(b, p) - std::pow(a, p)) / (p * lr), 1.0 / p);
    if (p0) return std::pow((std::pow(b, q) - std::pow(a, q)) / (q * lr), 1.0 / q);
    if (q0) {
        double bp = std::pow(b, p), ap = std::pow(a, p);
        return std::exp((bp * std::log(b) - ap * std::log(a)) / (bp - ap) - 1.0 / p);
    }
    double num = p * (std::pow(b, p + q) - std::pow(a, p + q));
    double den = (p + q) * (std::pow(b, p) - std::pow(a, p));
    return std::pow(num / den, 1.0 / q);
}

/**
 * Cauchy mean value of x1, x2: the unique t in (x1,x2) with
 * f'(t)/g'(t) = (f(x2)-f(x1))/(g(x2)-g(x1)), requiring a strictly monotone
 * derivative ratio.
 */
inline double cauchy_mean(const RealFn& f, const RealFn& g, double x1, double x2) {
    if (x1 == x2) return x1;
    double lo = std::min(x1, x2), hi = std::max(x1, x2);
    double dg = g(x2) - g(x1);
    if (dg == 0.0) throw DivisorZero("cauchy mean: g(x2) = g(x1)");
    double target = (f(x2) - f(x1)) / dg;

    double inset = 1e-9 * (hi - lo);
    Interval br = Interval::closed(lo + inset, hi - inset);
    RealFn ratio(
        [f, g](double t) {
            double gp = fprime(g, t);
            if (gp == 0.0) throw SingularGenerator("cauchy mean: g'(t) = 0 inside the interval");
            return fprime(f, t) / gp;
        },
        br, "f'/g'");

    const int n = 33;
    std::vector<double> rs;
    rs.reserve(n);
    for (int i = 0; i < n; ++i) rs.push_back(ratio(br.lo + (br.hi - br.lo) * i / (n - 1)));
    Monotonicity mono = detail::classify_monotonicity(rs);
    if (mono != Monotonicity::Increasing && mono != Monotonicity::Decreasing)
        throw NotInvertible("cauchy mean: the derivative ratio f'/g' is not strictly monotone");

    double rlo = std::min(rs.front(), rs.back()), rhi = std::max(rs.front(), rs.back());
    double slack = 1e-9 * std::max({1.0, std::fabs(rlo), std::fabs(rhi)});
    if (target < rlo - slack || target > rhi + slack)
        throw NoRoot("cauchy mean: the difference quotient lies outside the ratio's range");
    target = std::min(std::max(target, rlo), rhi);
    try {
        return invert_monotone(ratio, target, br, 1e-11);
    } catch (const NonMonotoneDetected&) {
        throw NotInvertible("cauchy mean: the derivative ratio f'/g' is not strictly monotone");
    } catch (const NotBracketed&) {
        throw NoRoot("cauchy mean: no root of the derivative-ratio equation in the interval");
    }
}

/** Monotonicity of h'/g' on a sample grid over iv (within both domains). */
inline Monotonicity ratio_monotonicity(const Mapping& g, const Mapping& h, const Interval& iv,
                                       int samples = 512) {
    bool empty = false;
    Interval common = Interval::intersect(g.domain, h.domain, empty);
    if (!empty) common = Interval::intersect(common, iv, empty);
    if (empty) throw DomainViolation("mappings share no domain over the interval");
    Interval win = detail::finite_window(common);
    std::vector<double> rs;
    rs.reserve(samples);
    for (int i = 0; i < samples; ++i) {
        double x = win.lo + (win.hi - win.lo) * i / (samples - 1);
        double gp = g.derivative(x);
        if (gp == 0.0)
            throw SingularGenerator(g.name + ": zero derivative at x=" + std::to_string(x));
        rs.push_back(h.derivative(x) / gp);
    }
    return detail::classify_monotonicity(rs);
}

/**
 * Ordering of the weighted means generated by g and h over iv, from the
 * odd-count rule on the monotonicity triple (h'/g', h, g): an odd number of
 * increasing members gives mean_g <= mean_h, an odd number of decreasing
 * members gives mean_g >= mean_h; a constant ratio means the two coincide.
 */
inline Relation compare_means(const Mapping& g, const Mapping& h, const Interval& iv) {
    Monotonicity mr = ratio_monotonicity(g, h, iv);
    if (mr == Monotonicity::Constant) return Relation::Equal;
    if (mr == Monotonicity::NonMonotone) return Relation::Indeterminate;
    int increasing = (mr == Monotonicity::Increasing ? 1 : 0) + (g.increasing ? 1 : 0) +
                     (h.increasing ? 1 : 0);
    return (increasing % 2 == 1) ? Relation::LessEqual : Relation::GreaterEqual;
}

}  // namespace isoframe
