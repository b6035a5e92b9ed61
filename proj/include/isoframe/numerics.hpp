#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "errors.hpp"
#include "interval.hpp"
#include "realfn.hpp"

namespace isoframe {

/**
 * Quadrature configuration. Open or infinite endpoints are handled by
 * evaluating on a geometrically shrinking sequence of closed subintervals
 * (start, ratio, floor) and taking the stabilized limit.
 */
struct QuadConfig {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_depth = 60;
    double improper_start = 1e-2;
    double improper_ratio = 1e-1;
    double improper_floor = 1e-12;

    QuadConfig() = default;
    QuadConfig(double at, double rt, int depth = 60) : abs_tol(at), rel_tol(rt), max_depth(depth) {
        validate();
    }
    void validate() const {
        if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) throw InvalidParam("quadrature tolerances must be > 0");
        if (max_depth < 1) throw InvalidParam("quadrature max_depth must be >= 1");
    }
};

namespace detail {

// 15-point Kronrod abscissae on [-1,1] (symmetric; odd indices are the embedded 7-point Gauss nodes).
inline constexpr std::array<double, 8> kGK15X = {
    0.99145537112081263920685469752632851664204433837033,
    0.94910791234275852452618968404785126240077093767062,
    0.86486442335976907278971278864092620121097230707409,
    0.74153118559939443986386477328078840707414764714139,
    0.58608723546769113029414483825872959843678075060436,
    0.40584515137739716690660641207696146334738201409937,
    0.20778495500789846760068940377324491347978440714517,
    0.0};

inline constexpr std::array<double, 8> kGK15W = {
    0.02293532201052922496373200805896959199356081127575,
    0.06309209262997855329070066318920428666507115721155,
    0.10479001032225018383987632254151801744375665421383,
    0.14065325971552591874518959051023792039988975724800,
    0.16900472663926790282658342659855028410624490030294,
    0.19035057806478540991325640242101368282607807545536,
    0.20443294007529889241416199923464908471651760418072,
    0.20948214108472782801299917489171426369776208022370};

inline constexpr std::array<double, 4> kG7W = {
    0.12948496616886969327061143267908201832858740225995,
    0.27970539148927666790146777142377958955665747795521,
    0.38183005050511894495036977548897513387836508353386,
    0.41795918367346938775510204081632653061224489795918};

struct Panel {
    double integral;
    double error;
};

template <typename F>
Panel gauss_kronrod(const F& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double fc = f(c);
    double kronrod = kGK15W[7] * fc;
    double gauss = kG7W[3] * fc;
    for (int i = 0; i < 7; ++i) {
        double dx = half * kGK15X[i];
        double fsum = f(c - dx) + f(c + dx);
        kronrod += kGK15W[i] * fsum;
        if (i % 2 == 1) gauss += kG7W[i / 2] * fsum;
    }
    kronrod *= half;
    gauss *= half;
    return {kronrod, std::fabs(kronrod - gauss)};
}

template <typename F>
double adaptive(const F& f, double a, double b, double abs_tol, double rel_tol, int depth) {
    Panel p = gauss_kronrod(f, a, b);
    if (std::isnan(p.integral)) throw DomainViolation("integrand undefined inside [" +
                                                      std::to_string(a) + "," + std::to_string(b) + "]");
    double tol = std::max(abs_tol, rel_tol * std::fabs(p.integral));
    double width = b - a;
    if (p.error <= tol || width <= 1e-15 * std::max({1.0, std::fabs(a), std::fabs(b)}))
        return p.integral;
    if (depth <= 0)
        throw NonConvergent("adaptive quadrature depth exhausted on [" + std::to_string(a) + "," +
                            std::to_string(b) + "]");
    double m = 0.5 * (a + b);
    // Halve the absolute budget per side; the relative test re-applies locally.
    return adaptive(f, a, m, 0.5 * abs_tol, rel_tol, depth - 1) +
           adaptive(f, m, b, 0.5 * abs_tol, rel_tol, depth - 1);
}

/** The closed endpoints after shrinking an improper side by eps. */
inline double shrink_lo(const Interval& iv, double eps) {
    if (std::isinf(iv.lo)) return -1.0 / eps;
    return iv.lo_open ? iv.lo + eps : iv.lo;
}
inline double shrink_hi(const Interval& iv, double eps) {
    if (std::isinf(iv.hi)) return 1.0 / eps;
    return iv.hi_open ? iv.hi - eps : iv.hi;
}

}  // namespace detail

/**
 * Definite integral with oriented endpoints: exchanging a and b negates the
 * result exactly. Both endpoints are treated as closed.
 */
template <typename F>
double integrate_oriented(const F& f, double a, double b, const QuadConfig& cfg = {}) {
    cfg.validate();
    if (a == b) return 0.0;
    if (a < b) return detail::adaptive(f, a, b, cfg.abs_tol, cfg.rel_tol, cfg.max_depth);
    return -detail::adaptive(f, b, a, cfg.abs_tol, cfg.rel_tol, cfg.max_depth);
}

/**
 * Adaptive Gauss-Kronrod (7-15) integral of f over iv, oriented lo -> hi.
 * Open or infinite endpoints are integrated on the shrinking closed
 * subintervals [lo+eps, hi-eps] (infinities become +-1/eps) and accepted once
 * two successive estimates agree within max(abs_tol, rel_tol*|I|); a
 * geometrically decaying tail is extrapolated when the sequence is still
 * drifting at the floor. A sequence that fails to stabilize raises
 * DivergentImproper.
 */
inline double integrate(const RealFn& f, const Interval& iv, const QuadConfig& cfg = {}) {
    cfg.validate();
    if (iv.degenerate()) return 0.0;
    auto eval = [&f](double x) { return f(x); };
    const bool improper = iv.lo_open || iv.hi_open || !iv.finite();
    if (!improper) return detail::adaptive(eval, iv.lo, iv.hi, cfg.abs_tol, cfg.rel_tol, cfg.max_depth);

    double prev = 0.0, prev_diff = 0.0;
    bool have_prev = false, have_diff = false;
    double eps = cfg.improper_start;
    while (true) {
        double a = detail::shrink_lo(iv, eps);
        double b = detail::shrink_hi(iv, eps);
        if (a >= b) {  // interval too narrow for this eps; tighten and retry
            eps *= cfg.improper_ratio;
            if (eps < cfg.improper_floor)
                throw DivergentImproper("improper interval collapsed before stabilizing");
            continue;
        }
        double cur = detail::adaptive(eval, a, b, cfg.abs_tol, cfg.rel_tol, cfg.max_depth);
        if (have_prev) {
            double diff = cur - prev;
            double tol = std::max(cfg.abs_tol, cfg.rel_tol * std::fabs(cur));
            if (std::fabs(diff) <= tol) return cur;
            bool at_floor = eps * cfg.improper_ratio < cfg.improper_floor;
            if (at_floor) {
                if (have_diff && std::fabs(prev_diff) > 0.0) {
                    double r = std::fabs(diff) / std::fabs(prev_diff);
                    if (r <= 0.7)  // geometric tail: extrapolate the limit
                        return cur + diff * r / (1.0 - r);
                }
                throw DivergentImproper("improper integral failed to stabilize within tolerance");
            }
            prev_diff = diff;
            have_diff = true;
        }
        prev = cur;
        have_prev = true;
        eps *= cfg.improper_ratio;
    }
}

inline double integrate(const RealFn& f, const QuadConfig& cfg = {}) {
    return integrate(f, f.domain, cfg);
}

/**
 * Solve f(x) = target for strictly monotone f on the bracket, by bisection
 * followed by secant refinement, to |f(x) - target| <= tol. Strict
 * monotonicity is spot-checked on a sample grid.
 */
inline double invert_monotone(const RealFn& f, double target, const Interval& bracket,
                              double tol = 1e-12) {
    if (!bracket.finite()) throw InvalidParam("invert_monotone requires a finite bracket");
    double lo = bracket.lo, hi = bracket.hi;
    if (lo >= hi) throw InvalidParam("invert_monotone bracket is degenerate");

    // sampled strict-monotonicity check
    constexpr int kSamples = 17;
    double prev = 0.0;
    int dir = 0;
    for (int i = 0; i < kSamples; ++i) {
        double x = lo + (hi - lo) * i / (kSamples - 1);
        double y = f(x);
        if (i > 0) {
            int step = (y > prev) ? 1 : (y < prev ? -1 : 0);
            if (step == 0 || (dir != 0 && step != dir))
                throw NonMonotoneDetected("function is not strictly monotone on the bracket");
            dir = step;
        }
        prev = y;
    }

    double flo = f(lo) - target, fhi = f(hi) - target;
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (flo * fhi > 0.0) throw NotBracketed("target value is not bracketed");

    double a = lo, b = hi, fa = flo, fb = fhi;
    for (int it = 0; it < 200; ++it) {
        double m = 0.5 * (a + b);
        double fm = f(m) - target;
        if (std::fabs(fm) <= tol) return m;
        if (fa * fm <= 0.0) {
            b = m;
            fb = fm;
        } else {
            a = m;
            fa = fm;
        }
        if (b - a <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::fabs(m)))
            break;
    }
    // secant polish inside the final bisection bracket
    double x0 = a, x1 = b, f0 = fa, f1 = fb;
    for (int it = 0; it < 8; ++it) {
        if (f1 == f0) break;
        double x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
        if (!(x2 >= lo && x2 <= hi)) x2 = 0.5 * (x0 + x1);
        double f2 = f(x2) - target;
        if (std::fabs(f2) <= tol) return x2;
        x0 = x1;
        f0 = f1;
        x1 = x2;
        f1 = f2;
    }
    // The bracket is at machine width here; its midpoint is the best available
    // root even when steep slopes keep the residual above tol.
    return 0.5 * (a + b);
}

namespace detail {

template <typename F>
double central_diff(const F& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

template <typename F>
double onesided_diff(const F& f, double x, double h, int side) {
    // second-order three-point rule on the available side
    double s = static_cast<double>(side);
    return s * (-3.0 * f(x) + 4.0 * f(x + s * h) - f(x + 2.0 * s * h)) / (2.0 * h);
}

template <typename D>
double richardson(const D& diff, double h0) {
    // diff(h) is an O(h^2) estimate; extrapolate until successive diagonal
    // entries agree to 1e-8 relative.
    constexpr int kMax = 10;
    double table[kMax][kMax];
    double h = h0;
    double prev_diag = 0.0;
    for (int i = 0; i < kMax; ++i) {
        table[i][0] = diff(h);
        double p4 = 4.0;
        for (int j = 1; j <= i; ++j) {
            table[i][j] = (p4 * table[i][j - 1] - table[i - 1][j - 1]) / (p4 - 1.0);
            p4 *= 4.0;
        }
        if (i > 0) {
            double diag = table[i][i];
            double scale = std::max(1.0, std::fabs(diag));
            if (std::fabs(diag - prev_diag) <= 1e-8 * scale) return diag;
        }
        prev_diag = table[i][i];
        h *= 0.5;
    }
    throw NonConvergent("finite-difference derivative did not converge");
}

}  // namespace detail

/**
 * Central finite difference with Richardson extrapolation; falls back to a
 * one-sided rule at closed domain endpoints. The step starts at h0 (default
 * 1e-4 * max(1, |x|)) and shrinks until successive estimates agree within
 * 1e-8 relative.
 */
inline double fd_derivative(const RealFn& f, double x, double h0 = 0.0) {
    if (!f.domain.contains(x)) throw DomainViolation("derivative point outside the domain");
    if (h0 <= 0.0) h0 = 1e-4 * std::max(1.0, std::fabs(x));

    double room_lo = x - f.domain.lo;
    double room_hi = f.domain.hi - x;
    double need = 2.0 * h0;  // Richardson shrinks the step, never grows it
    bool can_left = room_lo >= need || std::isinf(f.domain.lo);
    bool can_right = room_hi >= need || std::isinf(f.domain.hi);
    if (!can_left && !can_right) {
        double room = std::max(room_lo, room_hi);
        if (room <= 0.0) throw DomainViolation("no room to difference around x");
        h0 = room / 4.0;
        can_left = room_lo > room_hi ? true : false;
        can_right = !can_left;
    }

    if (can_left && can_right)
        return detail::richardson([&](double h) { return detail::central_diff(f, x, h); }, h0);
    int side = can_right ? 1 : -1;
    if ((side > 0 ? room_hi : room_lo) < 2.0 * h0) h0 = (side > 0 ? room_hi : room_lo) / 2.5;
    return detail::richardson([&](double h) { return detail::onesided_diff(f, x, h, side); }, h0);
}

}  // namespace isoframe
