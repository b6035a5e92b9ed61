// Renders the straight-line function y = x into two bent frames and writes
// CSV + SVG artifacts showing how the auxiliary plane sees it.

#include <iostream>

#include <isoframe/isoframe.hpp>

int main() {
    using namespace isoframe;

    RealFn f = RealFn::identity();

    // ln abscissa against a reciprocal ordinate: the identity stops being straight.
    Frame2D bent{catalog("ln"), catalog("recip")};
    PlotSeries s1 = graph_series(f, bent, Interval::closed(0.5, 4.0), 128, "x under ln-recip");

    // Exponential abscissa against a quadratic ordinate.
    Frame2D expo{catalog("exp"), catalog("pow", {2.0})};
    PlotSeries s2 = graph_series(f, expo, Interval::closed(0.5, 2.5), 128, "x under exp-square");

    emit({s1}, PlotFormat::Csv, "bent_frame.csv");
    emit({s2}, PlotFormat::Svg, "expo_frame.svg");
    std::cout << "wrote bent_frame.csv and expo_frame.svg\n";

    ConvexityVerdict v = classify_dvi_convexity(parse_expr("x^2"), identity_frame(),
                                                Interval::closed(0.0, 3.0));
    std::cout << "x^2 in the identity frame: " << to_string(v.kind) << "\n";
    return 0;
}
