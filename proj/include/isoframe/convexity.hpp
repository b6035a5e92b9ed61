#pragma once

#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "differential.hpp"
#include "errors.hpp"
#include "interval.hpp"
#include "mapping.hpp"
#include "means.hpp"
#include "numerics.hpp"
#include "realfn.hpp"

namespace isoframe {

inline constexpr unsigned long long kDefaultSeed = 0xC0FFEEull;

enum class ConvexityKind { DVIConvex, DVIConcave, Affine, Indeterminate };

inline const char* to_string(ConvexityKind k) {
    switch (k) {
        case ConvexityKind::DVIConvex: return "dvi-convex";
        case ConvexityKind::DVIConcave: return "dvi-concave";
        case ConvexityKind::Affine: return "affine";
        default: return "indeterminate";
    }
}

enum class GeometricDirection { ToLower, ToUpper, Straight, None };

inline const char* to_string(GeometricDirection d) {
    switch (d) {
        case GeometricDirection::ToLower: return "to_lower";
        case GeometricDirection::ToUpper: return "to_upper";
        case GeometricDirection::Straight: return "straight";
        default: return "none";
    }
}

/**
 * Classification of a function's convexity on the dual-isomorphic system.
 * `geometric_direction` says which way f's graph bends relative to the
 * system's own y-axis (to_lower iff the means inequality is <=);
 * `phi_aux_direction` is the Cartesian bending of the transported function phi
 * on the auxiliary plane (to_lower iff r and g share monotonicity direction).
 */
struct ConvexityVerdict {
    ConvexityKind kind = ConvexityKind::Indeterminate;
    Relation inequality = Relation::None;
    GeometricDirection geometric_direction = GeometricDirection::None;
    GeometricDirection phi_aux_direction = GeometricDirection::None;
    Monotonicity ratio_mono = Monotonicity::NonMonotone;  // of r = (h o f)'/g'
    Monotonicity g_mono = Monotonicity::Increasing;
    Monotonicity h_mono = Monotonicity::Increasing;
};

/**
 * Differential criterion: sample r(x) = (h o f)'(x)/g'(x) over iv and apply
 * the odd-count rule to the monotonicity triple (r, g, h). An odd number of
 * increasing members gives DVI convexity (f(mean_g) <= mean_h of f); a
 * constant r gives an affine graph; a non-monotone r is indeterminate.
 */
inline ConvexityVerdict classify_dvi_convexity(const RealFn& f, const Frame2D& fr,
                                               const Interval& iv) {
    bool empty = false;
    Interval dom = Interval::intersect(f.domain, fr.g.domain, empty);
    if (!empty) dom = Interval::intersect(dom, iv, empty);
    if (empty) throw DomainViolation("convexity: empty working interval");
    Interval win = detail::finite_window(dom);

    const int n = 257;
    std::vector<double> rs;
    rs.reserve(n);
    for (int i = 0; i < n; ++i) {
        double x = win.lo + (win.hi - win.lo) * i / (n - 1);
        double gp = fr.g.derivative(x);
        if (gp == 0.0)
            throw SingularGenerator(fr.g.name + ": zero derivative at x=" + std::to_string(x));
        rs.push_back(fprime(f, x) * fr.h.derivative(f(x)) / gp);
    }

    ConvexityVerdict v;
    v.ratio_mono = detail::classify_monotonicity(rs);
    v.g_mono = fr.g.increasing ? Monotonicity::Increasing : Monotonicity::Decreasing;
    v.h_mono = fr.h.increasing ? Monotonicity::Increasing : Monotonicity::Decreasing;

    if (v.ratio_mono == Monotonicity::Constant) {
        v.kind = ConvexityKind::Affine;
        v.inequality = Relation::Equal;
        v.geometric_direction = GeometricDirection::Straight;
        v.phi_aux_direction = GeometricDirection::Straight;
        return v;
    }
    if (v.ratio_mono == Monotonicity::NonMonotone) {
        v.kind = ConvexityKind::Indeterminate;
        v.inequality = Relation::None;
        return v;
    }
    int increasing = (v.ratio_mono == Monotonicity::Increasing ? 1 : 0) +
                     (fr.g.increasing ? 1 : 0) + (fr.h.increasing ? 1 : 0);
    bool convex = increasing % 2 == 1;
    v.kind = convex ? ConvexityKind::DVIConvex : ConvexityKind::DVIConcave;
    v.inequality = convex ? Relation::LessEqual : Relation::GreaterEqual;
    v.geometric_direction = convex ? GeometricDirection::ToLower : GeometricDirection::ToUpper;
    bool same_r_g = (v.ratio_mono == Monotonicity::Increasing) == fr.g.increasing;
    v.phi_aux_direction = same_r_g ? GeometricDirection::ToLower : GeometricDirection::ToUpper;
    return v;
}

/** One sampled trial of the defining inequality, kept for reporting. */
struct PairTrial {
    double x1 = 0.0, x2 = 0.0, lambda = 0.0, lhs = 0.0, rhs = 0.0;
};

struct VerifyReport {
    bool passed = true;
    long trials = 0;
    bool found = false;
    PairTrial counterexample;
};

/**
 * Randomized check of the defining inequality
 * f(mean_g(x1,x2; lambda)) <=/>=/= mean_h(f(x1),f(x2); lambda) over iv, using
 * the supplied relation. Near-equal sides within a 1e-10 dead-band never count
 * as violations (the means coincide when x1 = x2).
 */
inline VerifyReport verify_dvi_inequality(const RealFn& f, const Frame2D& fr, const Interval& iv,
                                          Relation claim, long trials = 10000,
                                          unsigned long long seed = kDefaultSeed) {
    if (claim == Relation::Indeterminate || claim == Relation::None)
        throw InvalidParam("verify_dvi_inequality needs a definite relation to check");
    bool empty = false;
    Interval dom = Interval::intersect(f.domain, fr.g.domain, empty);
    if (!empty) dom = Interval::intersect(dom, iv, empty);
    if (empty) throw DomainViolation("verify: empty working interval");
    Interval win = detail::finite_window(dom);

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ux(win.lo, win.hi);
    std::uniform_real_distribution<double> ul(0.0, 1.0);

    VerifyReport rep;
    for (long t = 0; t < trials; ++t) {
        double x1 = ux(rng), x2 = ux(rng);
        double lambda = ul(rng);
        if (lambda <= 0.0 || lambda >= 1.0) lambda = 0.5;
        Weights w = Weights::pair(lambda);
        double lhs = f(mean_numbers({x1, x2}, w, fr.g));
        double rhs = mean_numbers({f(x1), f(x2)}, w, fr.h);
        ++rep.trials;
        double band = 1e-10 * std::max({1.0, std::fabs(lhs), std::fabs(rhs)});
        bool ok = true;
        switch (claim) {
            case Relation::LessEqual: ok = lhs <= rhs + band; break;
            case Relation::GreaterEqual: ok = lhs >= rhs - band; break;
            default: ok = std::fabs(lhs - rhs) <= band; break;
        }
        if (!ok) {
            rep.passed = false;
            rep.found = true;
            rep.counterexample = {x1, x2, lambda, lhs, rhs};
            return rep;
        }
    }
    return rep;
}

/** Convenience overload: classify first, then verify the claimed inequality. */
inline VerifyReport verify_dvi_inequality(const RealFn& f, const Frame2D& fr, const Interval& iv,
                                          long trials = 10000,
                                          unsigned long long seed = kDefaultSeed) {
    ConvexityVerdict v = classify_dvi_convexity(f, fr, iv);
    if (v.inequality == Relation::None)
        throw IndeterminateMonotonicity("convexity is indeterminate; nothing to verify");
    return verify_dvi_inequality(f, fr, iv, v.inequality, trials, seed);
}

/** Outcome of a randomized convex-set membership check. */
struct SetCheck {
    bool passed = true;
    long trials = 0;
    bool found = false;
    // 1-D: {x1, x2, lambda, mean}; 2-D: {x1, y1, x2, y2, lambda, mean_x, mean_y}
    std::vector<double> witness;
};

namespace detail {

inline double draw_member(const std::function<bool(double)>& member, const Interval& win,
                          std::mt19937_64& rng, const char* what) {
    std::uniform_real_distribution<double> u(win.lo, win.hi);
    for (int attempt = 0; attempt < 200000; ++attempt) {
        double x = u(rng);
        if (member(x)) return x;
    }
    throw DomainViolation(std::string(what) + ": could not sample a member of the set");
}

}  // namespace detail

/**
 * Randomized closure check of a 1-D set under weighted g-means: draws member
 * pairs and a weight, and verifies the isomorphic mean stays in the set. The
 * sampling window defaults to a finite slice of g's domain (reach 5).
 */
inline SetCheck is_convex_set_1d(const std::function<bool(double)>& member, const Mapping& g,
                                 long trials = 10000, unsigned long long seed = kDefaultSeed,
                                 double reach = 5.0) {
    Interval win = detail::finite_window(g.domain, reach);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ul(0.0, 1.0);
    SetCheck chk;
    for (long t = 0; t < trials; ++t) {
        double x1 = detail::draw_member(member, win, rng, "convex-set 1d");
        double x2 = detail::draw_member(member, win, rng, "convex-set 1d");
        double lambda = ul(rng);
        if (lambda <= 0.0 || lambda >= 1.0) lambda = 0.5;
        double m = mean_numbers({x1, x2}, Weights::pair(lambda), g);
        ++chk.trials;
        if (!member(m)) {
            chk.passed = false;
            chk.found = true;
            chk.witness = {x1, x2, lambda, m};
            return chk;
        }
    }
    return chk;
}

/**
 * Randomized closure check of a 2-D set under the coordinatewise means
 * (mean_g1 of the x's, mean_g2 of the y's).
 */
inline SetCheck is_convex_set_2d(const std::function<bool(double, double)>& member,
                                 const Mapping& g1, const Mapping& g2, long trials = 10000,
                                 unsigned long long seed = kDefaultSeed, double reach = 5.0) {
    Interval win1 = detail::finite_window(g1.domain, reach);
    Interval win2 = detail::finite_window(g2.domain, reach);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u1(win1.lo, win1.hi);
    std::uniform_real_distribution<double> u2(win2.lo, win2.hi);
    std::uniform_real_distribution<double> ul(0.0, 1.0);
    auto draw_pair = [&](double& x, double& y) {
        for (int attempt = 0; attempt < 200000; ++attempt) {
            x = u1(rng);
            y = u2(rng);
            if (member(x, y)) return;
        }
        throw DomainViolation("convex-set 2d: could not sample a member of the set");
    };
    SetCheck chk;
    for (long t = 0; t < trials; ++t) {
        double x1, y1, x2, y2;
        draw_pair(x1, y1);
        draw_pair(x2, y2);
        double lambda = ul(rng);
        if (lambda <= 0.0 || lambda >= 1.0) lambda = 0.5;
        Weights w = Weights::pair(lambda);
        double mx = mean_numbers({x1, x2}, w, g1);
        double my = mean_numbers({y1, y2}, w, g2);
        ++chk.trials;
        if (!member(mx, my)) {
            chk.passed = false;
            chk.found = true;
            chk.witness = {x1, y1, x2, y2, lambda, mx, my};
            return chk;
        }
    }
    return chk;
}

/** Verdict of the product-vs-power-sum inequality built from x*f'(x). */
struct BuiltInequality {
    Relation relation = Relation::Indeterminate;
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;
};

/**
 * If x*f'(x) is increasing on iv then n*f(prod x_i) <= sum f(x_i^n); a
 * decreasing x*f'(x) flips the inequality, a constant one gives equality.
 * The tuple must satisfy prod x_i in iv and every x_i^n in iv.
 */
inline BuiltInequality build_inequality_check(const RealFn& f, const Interval& iv,
                                              const std::vector<double>& xs) {
    if (xs.empty()) throw InvalidParam("build_inequality_check needs at least one value");
    bool empty = false;
    Interval dom = Interval::intersect(f.domain, iv, empty);
    if (empty) throw DomainViolation("build_inequality_check: empty working interval");
    Interval win = detail::finite_window(dom);

    const int n_samples = 129;
    std::vector<double> s;
    s.reserve(n_samples);
    for (int i = 0; i < n_samples; ++i) {
        double x = win.lo + (win.hi - win.lo) * i / (n_samples - 1);
        s.push_back(x * fprime(f, x));
    }
    Monotonicity mono = detail::classify_monotonicity(s);
    if (mono == Monotonicity::NonMonotone)
        throw IndeterminateMonotonicity("x*f'(x) changes monotonicity direction on the interval");

    const double n = static_cast<double>(xs.size());
    double prod = 1.0;
    for (double x : xs) prod *= x;
    if (!iv.contains(prod) && !iv.contains_approx(prod, 1e-12))
        throw DomainViolation("product of the tuple falls outside the interval");

    BuiltInequality out;
    out.lhs = n * f(prod);
    out.rhs = 0.0;
    for (double x : xs) {
        double xn = std::pow(x, n);
        if (!iv.contains(xn) && !iv.contains_approx(xn, 1e-12))
            throw DomainViolation("a tuple power falls outside the interval");
        out.rhs += f(xn);
    }
    out.relation = mono == Monotonicity::Increasing   ? Relation::LessEqual
                   : mono == Monotonicity::Decreasing ? Relation::GreaterEqual
                                                      : Relation::Equal;
    double band = 1e-10 * std::max({1.0, std::fabs(out.lhs), std::fabs(out.rhs)});
    switch (out.relation) {
        case Relation::LessEqual: out.holds = out.lhs <= out.rhs + band; break;
        case Relation::GreaterEqual: out.holds = out.lhs >= out.rhs - band; break;
        default: out.holds = std::fabs(out.lhs - out.rhs) <= band; break;
    }
    return out;
}

}  // namespace isoframe
