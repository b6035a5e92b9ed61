#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "errors.hpp"

namespace isoframe {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/**
 * A real interval with extended-real endpoints and per-endpoint open/closed
 * flags. Invariants: lo <= hi; a degenerate interval (lo == hi) is closed on
 * both sides; infinite endpoints are always open.
 */
struct Interval {
    double lo = -kInf;
    double hi = kInf;
    bool lo_open = true;
    bool hi_open = true;

    Interval() = default;

    Interval(double lo_, double hi_, bool lo_open_, bool hi_open_)
        : lo(lo_), hi(hi_), lo_open(lo_open_), hi_open(hi_open_) {
        if (std::isnan(lo) || std::isnan(hi) || lo > hi)
            throw InvalidParam("interval endpoints must satisfy lo <= hi");
        if (std::isinf(lo)) lo_open = true;
        if (std::isinf(hi)) hi_open = true;
        if (lo == hi) {
            if (std::isinf(lo)) throw InvalidParam("degenerate interval at infinity");
            lo_open = hi_open = false;
        }
    }

    static Interval closed(double a, double b) { return Interval(a, b, false, false); }
    static Interval open(double a, double b) { return Interval(a, b, true, true); }
    static Interval open_closed(double a, double b) { return Interval(a, b, true, false); }
    static Interval closed_open(double a, double b) { return Interval(a, b, false, true); }
    static Interval point(double a) { return Interval(a, a, false, false); }
    static Interval all() { return Interval(); }
    static Interval positive() { return Interval(0.0, kInf, true, true); }
    static Interval nonnegative() { return Interval(0.0, kInf, false, true); }

    bool contains(double x) const {
        if (std::isnan(x)) return false;
        if (x < lo || x > hi) return false;
        if (x == lo && lo_open) return false;
        if (x == hi && hi_open) return false;
        return true;
    }

    /** Containment with an absolute/relative slack at the endpoints. */
    bool contains_approx(double x, double tol) const {
        if (contains(x)) return true;
        if (std::isnan(x)) return false;
        double slack_lo = tol * std::max(1.0, std::fabs(lo));
        double slack_hi = tol * std::max(1.0, std::fabs(hi));
        return x >= lo - slack_lo && x <= hi + slack_hi;
    }

    bool degenerate() const { return lo == hi; }
    bool finite() const { return std::isfinite(lo) && std::isfinite(hi); }
    bool is_closed() const { return !lo_open && !hi_open; }
    double length() const { return hi - lo; }
    double midpoint() const {
        if (finite()) return 0.5 * (lo + hi);
        if (std::isfinite(lo)) return lo + 1.0;
        if (std::isfinite(hi)) return hi - 1.0;
        return 0.0;
    }

    bool subset_of(const Interval& other) const {
        bool lo_ok = lo > other.lo || (lo == other.lo && (!other.lo_open || lo_open));
        bool hi_ok = hi < other.hi || (hi == other.hi && (!other.hi_open || hi_open));
        return lo_ok && hi_ok;
    }

    /** Intersection; empty results are reported through the `empty` flag. */
    static Interval intersect(const Interval& a, const Interval& b, bool& empty) {
        double lo = std::max(a.lo, b.lo);
        double hi = std::min(a.hi, b.hi);
        bool lo_open = (lo == a.lo && a.lo_open) || (lo == b.lo && b.lo_open);
        bool hi_open = (hi == a.hi && a.hi_open) || (hi == b.hi && b.hi_open);
        if (lo > hi || (lo == hi && (lo_open || hi_open))) {
            empty = true;
            return Interval::point(0.0);
        }
        empty = false;
        return Interval(lo, hi, lo_open, hi_open);
    }

    std::string str() const {
        std::ostringstream os;
        os << (lo_open ? '(' : '[') << lo << ',' << hi << (hi_open ? ')' : ']');
        return os.str();
    }
};

}  // namespace isoframe
