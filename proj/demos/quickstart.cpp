// A tour of the core calls: arithmetic, derivatives, integrals, and means
// under a pair of axis generators.

#include <iostream>

#include <isoframe/isoframe.hpp>

int main() {
    using namespace isoframe;

    // Squares frame: numbers combine through g(x) = x^2.
    Mapping sq = catalog("pow", {2.0});
    std::cout << "1 (+) 2 under x^2      = " << iso_add({1.0, 2.0}, sq) << "\n";

    // Geometric world: both axes read through ln.
    Frame2D geo{catalog("ln"), catalog("ln")};
    RealFn f = parse_expr("x^3");
    std::cout << "elasticity of x^3 at 5 = " << elasticity(f, 5.0) << "\n";
    std::cout << "dual slope (ln,ln)     = " << dual_derivative(f, geo, 5.0) << "\n";

    // Mean of a function: the value \"in the middle\" once both axes are bent.
    Frame2D frame{catalog("id"), catalog("pow", {2.0})};
    MeanResult m = mean_function(RealFn::identity(), Interval::closed(1.0, 2.0), frame);
    std::cout << "quadratic mean of x on [1,2] = " << m.value
              << "  (class " << to_string(m.tag) << ")\n";

    // Geometric integral: multiplicative accumulation.
    std::cout << "geometric integral of x over (0,1) = "
              << geometric_integral(RealFn::identity(), Interval::open(0.0, 1.0)) << "\n";
    return 0;
}
