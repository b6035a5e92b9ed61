#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "interval.hpp"
#include "mapping.hpp"
#include "means.hpp"
#include "realfn.hpp"

namespace isoframe {

/** One sampled graph point: native coordinates (x,y) and their auxiliary image (u,v). */
struct PlotPoint {
    double x = 0.0;
    double y = 0.0;
    double u = 0.0;
    double v = 0.0;
};

struct PlotAnnotation {
    std::size_t index = 0;
    double u = 0.0;
    double v = 0.0;
    std::string text;
};

struct PlotSeries {
    std::string label;
    std::vector<PlotPoint> points;      // ordered by u
    std::vector<PlotAnnotation> annotations;  // singular-density markers
};

struct AxisTick {
    double mark = 0.0;      // native-axis label
    double position = 0.0;  // where it sits on the linear auxiliary axis
};

struct TickSet {
    std::vector<AxisTick> ticks;
    bool reversed = false;  // decreasing generator: axis arrow points the other way
};

enum class PlotFormat { Csv, Svg };

/** Transport a native point into the auxiliary plane: (x,y) -> (g(x), h(y)). */
inline std::pair<double, double> to_aux(const Frame2D& fr, double x, double y) {
    return {fr.g(x), fr.h(y)};
}

/** Dividing point of [p1,p2] at image-space proportion lambda1 : (1-lambda1). */
inline double fixed_proportion(double p1, double p2, double lambda1, const Mapping& g) {
    Weights w = Weights::pair(lambda1);
    return g.inverse(w.p[0] * g(p1) + w.p[1] * g(p2));
}

/** Auxiliary-axis positions for a list of native marks. */
inline TickSet axis_ticks(const Mapping& g, const std::vector<double>& marks) {
    TickSet out;
    out.reversed = !g.increasing;
    out.ticks.reserve(marks.size());
    for (double m : marks) out.ticks.push_back({m, g(m)});
    return out;
}

namespace plot_detail {

inline std::string fmt12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

inline std::string fmt_px(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

inline void resolve_window(const Interval& e, double& lo, double& hi) {
    lo = e.lo;
    hi = e.hi;
    if (!std::isfinite(lo) && !std::isfinite(hi)) {
        lo = -50.0;
        hi = 50.0;
    } else if (!std::isfinite(lo)) {
        lo = hi - 100.0;
    } else if (!std::isfinite(hi)) {
        hi = lo + 100.0;
    }
    double pad = 1e-6 * std::max(1.0, hi - lo);
    if (e.lo_open || !std::isfinite(e.lo)) lo += pad;
    if (e.hi_open || !std::isfinite(e.hi)) hi -= pad;
}

}  // namespace plot_detail

/**
 * Sample the graph of f over iv, uniformly in the auxiliary abscissa so the
 * rendered curve stays smooth where the axis density piles points up.
 * Every point satisfies u = g(x), v = h(f(x)) by construction.
 */
inline PlotSeries graph_series(const RealFn& f, const Frame2D& fr, const Interval& iv,
                               std::size_t n, const std::string& label) {
    if (n < 2) throw InvalidParam("graph sampling needs at least 2 points");
    bool empty = false;
    Interval d0 = Interval::intersect(f.domain, fr.g.domain, empty);
    if (!empty) d0 = Interval::intersect(d0, iv, empty);
    if (empty) throw DomainMismatch("requested interval does not meet the function's domain");
    RealFn restricted(f.fn, d0, f.repr);
    dvi_function(restricted, fr);  // validates bonding over the sampling range

    Interval e = map_interval(fr.g, d0);
    double ulo, uhi;
    plot_detail::resolve_window(e, ulo, uhi);

    PlotSeries out;
    out.label = label;
    out.points.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        double ut = ulo + (uhi - ulo) * static_cast<double>(i) / static_cast<double>(n - 1);
        double x = fr.g.inverse(ut);
        if (!d0.contains(x)) {
            if (d0.contains_approx(x, 1e-9))
                x = std::min(std::max(x, d0.lo), d0.hi);
            else
                throw BondingViolation("sample point escaped the bonded domain");
        }
        double y;
        try {
            y = f(x);
        } catch (const DomainViolation&) {
            throw BondingViolation("function undefined at a bonded sample point");
        }
        if (!fr.h.domain.contains(y)) {
            if (!fr.h.domain.contains_approx(y, 1e-9))
                throw BondingViolation("function value left the ordinate generator's domain");
            y = std::min(std::max(y, fr.h.domain.lo), fr.h.domain.hi);
        }
        PlotPoint p;
        p.x = x;
        p.y = y;
        p.u = fr.g(x);
        p.v = fr.h(y);
        out.points.push_back(p);

        bool singular = false;
        try {
            if (fr.g.derivative(x) == 0.0 || fr.h.derivative(y) == 0.0) singular = true;
        } catch (const Error&) {
        }
        if (singular)
            out.annotations.push_back({i, p.u, p.v, "singular density"});
    }
    return out;
}

namespace plot_detail {

inline void validate_series(const std::vector<PlotSeries>& series) {
    if (series.empty()) throw InvalidParam("nothing to emit: series list is empty");
    for (const auto& s : series) {
        if (s.label.empty()) throw InvalidParam("series label must not be empty");
        if (s.label.find(',') != std::string::npos || s.label.find('\n') != std::string::npos)
            throw InvalidParam("series label must not contain ',' or newline");
    }
}

}  // namespace plot_detail

/** CSV: header `label,x,y,u,v`, 12 significant digits, LF line endings. */
inline void emit_csv(const std::vector<PlotSeries>& series, std::ostream& os) {
    plot_detail::validate_series(series);
    os << "label,x,y,u,v\n";
    for (const auto& s : series)
        for (const auto& p : s.points)
            os << s.label << ',' << plot_detail::fmt12(p.x) << ',' << plot_detail::fmt12(p.y)
               << ',' << plot_detail::fmt12(p.u) << ',' << plot_detail::fmt12(p.v) << '\n';
}

/**
 * Static 800x600 SVG of the auxiliary plane: linear scales, the alpha origin
 * marked, one polyline per series, singular-density annotations flagged.
 * An optional TickSet relabels the horizontal axis with native marks.
 */
inline void emit_svg(const std::vector<PlotSeries>& series, std::ostream& os,
                     const TickSet* uticks = nullptr) {
    plot_detail::validate_series(series);
    constexpr double W = 800.0, H = 600.0, ML = 70.0, MR = 30.0, MT = 30.0, MB = 50.0;

    double umin = 0, umax = 0, vmin = 0, vmax = 0;
    bool first = true;
    for (const auto& s : series)
        for (const auto& p : s.points) {
            if (!std::isfinite(p.u) || !std::isfinite(p.v)) continue;
            if (first) {
                umin = umax = p.u;
                vmin = vmax = p.v;
                first = false;
            } else {
                umin = std::min(umin, p.u);
                umax = std::max(umax, p.u);
                vmin = std::min(vmin, p.v);
                vmax = std::max(vmax, p.v);
            }
        }
    if (first) throw InvalidParam("nothing to emit: all series are empty");
    double du = umax - umin, dv = vmax - vmin;
    if (du == 0.0) du = 1.0;
    if (dv == 0.0) dv = 1.0;
    umin -= 0.05 * du;
    umax += 0.05 * du;
    vmin -= 0.05 * dv;
    vmax += 0.05 * dv;

    auto sx = [&](double u) { return ML + (u - umin) / (umax - umin) * (W - ML - MR); };
    auto sy = [&](double v) { return (H - MB) - (v - vmin) / (vmax - vmin) * (H - MT - MB); };
    using plot_detail::fmt_px;

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" "
          "viewBox=\"0 0 800 600\">\n";
    os << "<rect width=\"800\" height=\"600\" fill=\"white\"/>\n";

    // frame
    os << "<rect x=\"" << fmt_px(ML) << "\" y=\"" << fmt_px(MT) << "\" width=\""
       << fmt_px(W - ML - MR) << "\" height=\"" << fmt_px(H - MT - MB)
       << "\" fill=\"none\" stroke=\"#888\"/>\n";

    // zero axes of the auxiliary plane, when in view
    if (umin < 0.0 && umax > 0.0)
        os << "<line x1=\"" << fmt_px(sx(0)) << "\" y1=\"" << fmt_px(MT) << "\" x2=\""
           << fmt_px(sx(0)) << "\" y2=\"" << fmt_px(H - MB)
           << "\" stroke=\"#bbb\" stroke-dasharray=\"4 3\"/>\n";
    if (vmin < 0.0 && vmax > 0.0)
        os << "<line x1=\"" << fmt_px(ML) << "\" y1=\"" << fmt_px(sy(0)) << "\" x2=\""
           << fmt_px(W - MR) << "\" y2=\"" << fmt_px(sy(0))
           << "\" stroke=\"#bbb\" stroke-dasharray=\"4 3\"/>\n";

    // horizontal ticks: native marks when provided, plain aux values otherwise
    if (uticks != nullptr && !uticks->ticks.empty()) {
        for (const auto& t : uticks->ticks) {
            if (t.position < umin || t.position > umax) continue;
            double px = sx(t.position);
            os << "<line x1=\"" << fmt_px(px) << "\" y1=\"" << fmt_px(H - MB) << "\" x2=\""
               << fmt_px(px) << "\" y2=\"" << fmt_px(H - MB + 6) << "\" stroke=\"#333\"/>\n";
            os << "<text x=\"" << fmt_px(px) << "\" y=\"" << fmt_px(H - MB + 20)
               << "\" font-size=\"12\" text-anchor=\"middle\">" << plot_detail::fmt12(t.mark)
               << "</text>\n";
        }
        if (uticks->reversed)
            os << "<text x=\"" << fmt_px(W - MR) << "\" y=\"" << fmt_px(H - MB + 36)
               << "\" font-size=\"11\" text-anchor=\"end\">&#8592; axis direction reversed"
                  "</text>\n";
    } else {
        for (int i = 0; i <= 5; ++i) {
            double u = umin + (umax - umin) * i / 5.0;
            double px = sx(u);
            os << "<line x1=\"" << fmt_px(px) << "\" y1=\"" << fmt_px(H - MB) << "\" x2=\""
               << fmt_px(px) << "\" y2=\"" << fmt_px(H - MB + 6) << "\" stroke=\"#333\"/>\n";
            char lab[40];
            std::snprintf(lab, sizeof(lab), "%.4g", u);
            os << "<text x=\"" << fmt_px(px) << "\" y=\"" << fmt_px(H - MB + 20)
               << "\" font-size=\"12\" text-anchor=\"middle\">" << lab << "</text>\n";
        }
    }
    for (int i = 0; i <= 5; ++i) {
        double v = vmin + (vmax - vmin) * i / 5.0;
        double py = sy(v);
        os << "<line x1=\"" << fmt_px(ML - 6) << "\" y1=\"" << fmt_px(py) << "\" x2=\""
           << fmt_px(ML) << "\" y2=\"" << fmt_px(py) << "\" stroke=\"#333\"/>\n";
        char lab[40];
        std::snprintf(lab, sizeof(lab), "%.4g", v);
        os << "<text x=\"" << fmt_px(ML - 10) << "\" y=\"" << fmt_px(py + 4)
           << "\" font-size=\"12\" text-anchor=\"end\">" << lab << "</text>\n";
    }

    // alpha: the auxiliary-plane origin, meaningful even when no native point maps there
    if (umin <= 0.0 && 0.0 <= umax && vmin <= 0.0 && 0.0 <= vmax) {
        os << "<circle cx=\"" << fmt_px(sx(0)) << "\" cy=\"" << fmt_px(sy(0))
           << "\" r=\"4\" fill=\"#333\"/>\n";
        os << "<text x=\"" << fmt_px(sx(0) + 7) << "\" y=\"" << fmt_px(sy(0) - 7)
           << "\" font-size=\"14\" font-style=\"italic\">&#945;</text>\n";
    } else {
        os << "<text x=\"" << fmt_px(ML + 4) << "\" y=\"" << fmt_px(MT - 8)
           << "\" font-size=\"11\">&#945; (aux origin) outside view</text>\n";
    }

    static const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                     "#ff7f0e", "#8c564b"};
    std::size_t ci = 0;
    double legend_y = MT + 16.0;
    for (const auto& s : series) {
        const char* color = kPalette[ci % 6];
        ++ci;
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (const auto& p : s.points) {
            if (!std::isfinite(p.u) || !std::isfinite(p.v)) continue;
            os << fmt_px(sx(p.u)) << ',' << fmt_px(sy(p.v)) << ' ';
        }
        os << "\"/>\n";
        os << "<text x=\"" << fmt_px(W - MR - 8) << "\" y=\"" << fmt_px(legend_y)
           << "\" font-size=\"12\" text-anchor=\"end\" fill=\"" << color << "\">" << s.label
           << "</text>\n";
        legend_y += 16.0;

        for (const auto& a : s.annotations) {
            os << "<circle cx=\"" << fmt_px(sx(a.u)) << "\" cy=\"" << fmt_px(sy(a.v))
               << "\" r=\"5\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"2\"/>\n";
            os << "<text x=\"" << fmt_px(sx(a.u) + 8) << "\" y=\"" << fmt_px(sy(a.v) - 8)
               << "\" font-size=\"10\" fill=\"#d62728\">" << a.text << "</text>\n";
        }
    }
    os << "</svg>\n";
}

/** Write series to a file in the requested format. Throws IOError on failure. */
inline void emit(const std::vector<PlotSeries>& series, PlotFormat format,
                 const std::string& dest, const TickSet* uticks = nullptr) {
    plot_detail::validate_series(series);
    std::ofstream out(dest, std::ios::binary);
    if (!out) throw IOError("cannot open '" + dest + "' for writing");
    if (format == PlotFormat::Csv)
        emit_csv(series, out);
    else
        emit_svg(series, out, uticks);
    out.flush();
    if (!out) throw IOError("error while writing '" + dest + "'");
}

}  // namespace isoframe
