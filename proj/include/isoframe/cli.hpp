#pragma once

#include <cstdio>
#include <cstdlib>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "arith.hpp"
#include "convexity.hpp"
#include "differential.hpp"
#include "errors.hpp"
#include "expr.hpp"
#include "integral.hpp"
#include "interval.hpp"
#include "mapping.hpp"
#include "means.hpp"
#include "numerics.hpp"
#include "plot.hpp"
#include "realfn.hpp"

namespace isoframe {

namespace cli_detail {

using ojson = nlohmann::ordered_json;

inline std::string fmt_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline void print_result(std::ostream& out, bool plain, const ojson& j,
                         const std::string& plain_text) {
    if (plain)
        out << plain_text << "\n";
    else
        out << j.dump(2) << "\n";
}

inline ojson make_json(ojson value, ojson cls, ojson flags, ojson diagnostics) {
    ojson j;
    j["value"] = std::move(value);
    j["class"] = std::move(cls);
    j["flags"] = std::move(flags);
    j["diagnostics"] = std::move(diagnostics);
    return j;
}

inline std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

inline double parse_const_endpoint(const std::string& text,
                                   const std::map<std::string, double>& lets) {
    std::string t = trim(text);
    if (t.empty()) throw UsageError("empty interval endpoint");
    if (t == "inf" || t == "+inf") return kInf;
    if (t == "-inf") return -kInf;
    RealFn f = parse_expr(t, lets);
    double v0 = f.unchecked(0.0), v1 = f.unchecked(1.0);
    if (!(v0 == v1))
        throw UsageError("interval endpoint must be a constant expression, got '" + t + "'");
    return v0;
}

inline Interval parse_interval(const std::string& s, bool open_lo, bool open_hi,
                               const std::map<std::string, double>& lets) {
    std::size_t comma = s.find(',');
    if (comma == std::string::npos)
        throw UsageError("interval must be given as 'a,b' (literals inf, -inf, pi, e allowed)");
    double lo = parse_const_endpoint(s.substr(0, comma), lets);
    double hi = parse_const_endpoint(s.substr(comma + 1), lets);
    return Interval(lo, hi, open_lo, open_hi);
}

inline std::vector<double> parse_number_list(const std::string& s, const char* what) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        std::size_t comma = s.find(',', start);
        std::string piece = trim(comma == std::string::npos ? s.substr(start)
                                                            : s.substr(start, comma - start));
        if (piece.empty()) throw UsageError(std::string(what) + ": empty entry in list");
        char* end = nullptr;
        double v = std::strtod(piece.c_str(), &end);
        if (end != piece.c_str() + piece.size())
            throw UsageError(std::string(what) + ": '" + piece + "' is not a number");
        out.push_back(v);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

inline std::map<std::string, double> parse_lets(const std::vector<std::string>& defs) {
    std::map<std::string, double> lets;
    for (const auto& d : defs) {
        std::size_t eq = d.find('=');
        if (eq == std::string::npos)
            throw UsageError("--let expects name=value, got '" + d + "'");
        std::string name = trim(d.substr(0, eq));
        std::string val = trim(d.substr(eq + 1));
        if (name.empty()) throw UsageError("--let: empty name in '" + d + "'");
        char* end = nullptr;
        double v = std::strtod(val.c_str(), &end);
        if (val.empty() || end != val.c_str() + val.size())
            throw UsageError("--let: '" + val + "' is not a number");
        lets[name] = v;
    }
    return lets;
}

}  // namespace cli_detail

/**
 * Full command-line entry point; parses argv, runs the requested computation,
 * and writes JSON (or --plain bare output) to `out`. Returns the process exit
 * code: 0 success, 2 usage error, 3 domain/range error, 4 numeric failure.
 */
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    using cli_detail::ojson;

    CLI::App app{"isoframe: generalized arithmetic, calculus, and means over axis frames"};
    app.require_subcommand(1);
    app.fallthrough();
    // --h is a real option here, so keep only the long form of the help flag
    app.set_help_flag("--help", "print this help and exit");
    auto mksub = [](CLI::App* parent, const char* name, const char* desc) {
        CLI::App* s = parent->add_subcommand(name, desc);
        s->fallthrough();
        s->set_help_flag("--help", "print this help and exit");
        return s;
    };

    bool plain = false;
    app.add_flag("--plain", plain, "print the bare result instead of JSON");
    std::vector<std::string> let_defs;
    app.add_option("--let", let_defs, "bind a constant: --let k=2.5 (repeatable)");

    // ---- arith ----
    auto* arith = mksub(&app, "arith", "image-space arithmetic under a generator");
    arith->require_subcommand(1);
    struct ArithLeaf {
        CLI::App* sub = nullptr;
        std::string name;
        std::string g_spec;
        std::vector<double> operands;
    };
    std::vector<ArithLeaf> arith_leaves(5);
    {
        const char* names[5] = {"add", "sub", "mul", "div1", "div2"};
        const char* descs[5] = {"isomorphic sum of the operands",
                                "first operand minus the remaining ones",
                                "isomorphic product: value then plain factor",
                                "isomorphic quotient: value then plain divisor",
                                "quotient of images: two values"};
        for (int i = 0; i < 5; ++i) {
            auto& leaf = arith_leaves[static_cast<std::size_t>(i)];
            leaf.name = names[i];
            leaf.sub = mksub(arith, names[i], descs[i]);
            leaf.sub->add_option("--g", leaf.g_spec, "generator mapping")->required();
            auto* pos = leaf.sub->add_option("operands", leaf.operands, "numeric operands");
            if (i >= 2)
                pos->expected(2);
            else
                pos->expected(-2);
        }
    }

    // ---- mean-numbers ----
    auto* meannum = mksub(&app, "mean-numbers", "weighted isomorphic mean of numbers");
    std::string mn_g, mn_weights;
    std::vector<double> mn_xs;
    meannum->add_option("--g", mn_g, "generator mapping")->required();
    meannum->add_option("--weights", mn_weights, "comma-separated weights (default equal)");
    meannum->add_option("xs", mn_xs, "values to average")->expected(-2);

    // ---- mean-function ----
    auto* meanfun = mksub(&app, "mean-function", "isomorphic mean of a function");
    std::string mf_f, mf_g, mf_h, mf_iv;
    bool mf_open_lo = false, mf_open_hi = false;
    meanfun->add_option("--f", mf_f, "function expression in x")->required();
    meanfun->add_option("--g", mf_g, "abscissa generator")->required();
    meanfun->add_option("--h", mf_h, "ordinate generator")->required();
    meanfun->add_option("--interval", mf_iv, "interval a,b")->required();
    meanfun->add_flag("--open-lo", mf_open_lo, "treat the lower endpoint as open");
    meanfun->add_flag("--open-hi", mf_open_hi, "treat the upper endpoint as open");

    // ---- derive ----
    auto* derive = mksub(&app, "derive", "dual-frame derivative at a point");
    std::string dv_f, dv_g, dv_h;
    double dv_at = 0.0;
    bool dv_metrical = false;
    derive->add_option("--f", dv_f, "function expression in x")->required();
    derive->add_option("--g", dv_g, "abscissa generator")->required();
    derive->add_option("--h", dv_h, "ordinate generator")->required();
    derive->add_option("--at", dv_at, "evaluation point")->required();
    derive->add_flag("--metrical", dv_metrical, "report h^{-1} of the dual derivative");

    // ---- integrate ----
    auto* integ = mksub(&app, "integrate", "frame integrals of a function");
    std::string in_type, in_f, in_iv, in_g, in_h;
    bool in_open_lo = false, in_open_hi = false;
    integ->add_option("--type", in_type, "1, 2, geometric, or elastic")
        ->required()
        ->check(CLI::IsMember({"1", "2", "geometric", "elastic"}));
    integ->add_option("--f", in_f, "function expression in x")->required();
    integ->add_option("--interval", in_iv, "interval a,b")->required();
    integ->add_option("--g", in_g, "abscissa generator (type 2)");
    integ->add_option("--h", in_h, "ordinate generator (type 1)");
    integ->add_flag("--open-lo", in_open_lo, "treat the lower endpoint as open");
    integ->add_flag("--open-hi", in_open_hi, "treat the upper endpoint as open");

    // ---- convexity ----
    auto* convex = mksub(&app, "convexity", "frame-convexity classification");
    std::string cv_f, cv_g, cv_h, cv_iv;
    long cv_verify = 0;
    unsigned long long cv_seed = kDefaultSeed;
    convex->add_option("--f", cv_f, "function expression in x")->required();
    convex->add_option("--g", cv_g, "abscissa generator")->required();
    convex->add_option("--h", cv_h, "ordinate generator")->required();
    convex->add_option("--interval", cv_iv, "interval a,b")->required();
    auto* cv_verify_opt =
        convex->add_option("--verify", cv_verify, "randomized trials of the defining inequality");
    convex->add_option("--seed", cv_seed, "random seed for --verify");

    // ---- convex-set ----
    auto* cset = mksub(&app, "convex-set", "closure of a set under frame means");
    int cs_dim = 1;
    std::string cs_pred, cs_g, cs_g2;
    long cs_trials = 10000;
    unsigned long long cs_seed = kDefaultSeed;
    double cs_reach = 5.0;
    cset->add_option("--dim", cs_dim, "1 or 2")->required()->check(CLI::IsMember({1, 2}));
    cset->add_option("--predicate", cs_pred, "membership inequality, e.g. \"x+y<2\"")->required();
    cset->add_option("--g", cs_g, "generator (first axis)")->required();
    cset->add_option("--g2", cs_g2, "second-axis generator (default: same as --g)");
    cset->add_option("--trials", cs_trials, "number of random trials");
    cset->add_option("--seed", cs_seed, "random seed");
    cset->add_option("--reach", cs_reach, "half-width of the sampling window");

    // ---- compare-means ----
    auto* cmp = mksub(&app, "compare-means", "order two generator means on an interval");
    std::string cm_g, cm_h, cm_iv;
    cmp->add_option("--g", cm_g, "first generator")->required();
    cmp->add_option("--h", cm_h, "second generator")->required();
    cmp->add_option("--interval", cm_iv, "interval a,b")->required();

    // ---- stolarsky ----
    auto* stol = mksub(&app, "stolarsky", "two-parameter quasi-Stolarsky mean");
    double st_p = 0.0, st_q = 0.0;
    std::vector<double> st_ab;
    stol->add_option("--p", st_p, "first exponent")->required();
    stol->add_option("--q", st_q, "second exponent")->required();
    stol->add_option("ab", st_ab, "the two positive arguments")->expected(2);

    // ---- cauchy-mean ----
    auto* cauchy = mksub(&app, "cauchy-mean", "mean-value point of f against g");
    std::string ca_f, ca_g;
    std::vector<double> ca_xs;
    cauchy->add_option("--f", ca_f, "numerator expression in x")->required();
    cauchy->add_option("--g", ca_g, "denominator expression in x")->required();
    cauchy->add_option("xs", ca_xs, "the two endpoints")->expected(2);

    // ---- plot ----
    auto* plot = mksub(&app, "plot", "sample a graph into the auxiliary plane");
    std::string pl_f, pl_g, pl_h, pl_iv, pl_fmt = "csv", pl_out, pl_label;
    std::size_t pl_samples = 256;
    bool pl_open_lo = false, pl_open_hi = false;
    plot->add_option("--f", pl_f, "function expression in x")->required();
    plot->add_option("--g", pl_g, "abscissa generator")->required();
    plot->add_option("--h", pl_h, "ordinate generator")->required();
    plot->add_option("--interval", pl_iv, "interval a,b")->required();
    plot->add_option("--samples", pl_samples, "number of sample points (>= 2)");
    plot->add_option("--format", pl_fmt, "csv or svg")->check(CLI::IsMember({"csv", "svg"}));
    plot->add_option("--out", pl_out, "output path")->required();
    plot->add_option("--label", pl_label, "series label (default: the expression)");
    plot->add_flag("--open-lo", pl_open_lo, "treat the lower endpoint as open");
    plot->add_flag("--open-hi", pl_open_hi, "treat the upper endpoint as open");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        QuadConfig qc;
        if (const char* env = std::getenv("ISOFRAME_QUAD_TOL")) {
            char* end = nullptr;
            double tol = std::strtod(env, &end);
            if (end == env || *end != '\0' || !(tol > 0.0))
                throw UsageError("ISOFRAME_QUAD_TOL must be a positive number");
            qc = QuadConfig(tol, tol);
        }
        std::map<std::string, double> lets = cli_detail::parse_lets(let_defs);
        using cli_detail::fmt_value;
        using cli_detail::make_json;
        using cli_detail::print_result;

        for (auto& leaf : arith_leaves) {
            if (!leaf.sub->parsed()) continue;
            Mapping g = parse_mapping(leaf.g_spec);
            double value = 0.0;
            if (leaf.name == "add") {
                value = iso_add(leaf.operands, g);
            } else if (leaf.name == "sub") {
                std::vector<double> rest(leaf.operands.begin() + 1, leaf.operands.end());
                value = iso_sub(leaf.operands[0], rest, g);
            } else if (leaf.name == "mul") {
                value = iso_mul(leaf.operands[0], leaf.operands[1], g);
            } else if (leaf.name == "div1") {
                value = iso_div_scalar(leaf.operands[0], leaf.operands[1], g);
            } else {
                value = iso_div_pair(leaf.operands[0], leaf.operands[1], g);
            }
            ojson diags{{"op", leaf.name}, {"mapping", g.name}};
            print_result(out, plain,
                         make_json(value, nullptr, ojson::object(), std::move(diags)),
                         fmt_value(value));
            return 0;
        }

        if (meannum->parsed()) {
            Mapping g = parse_mapping(mn_g);
            Weights w = mn_weights.empty()
                            ? Weights::equal(mn_xs.size())
                            : Weights(cli_detail::parse_number_list(mn_weights, "--weights"));
            double value = mean_numbers(mn_xs, w, g);
            print_result(out, plain,
                         make_json(value, to_string(MeanClass::Numbers), ojson::object(),
                                   ojson{{"mapping", g.name}}),
                         fmt_value(value));
            return 0;
        }

        if (meanfun->parsed()) {
            RealFn f = parse_expr(mf_f, lets);
            Frame2D fr{parse_mapping(mf_g), parse_mapping(mf_h)};
            Interval iv = cli_detail::parse_interval(mf_iv, mf_open_lo, mf_open_hi, lets);
            MeanResult r = mean_function(f, iv, fr, qc);
            ojson flags{{"generalized", r.generalized},
                        {"outside_range", r.outside_range},
                        {"extrapolated", r.extrapolated}};
            ojson diags{{"f", f.repr},
                        {"window_lo", r.window_lo},
                        {"window_hi", r.window_hi}};
            print_result(out, plain,
                         make_json(r.value, to_string(r.tag), std::move(flags), std::move(diags)),
                         fmt_value(r.value));
            return 0;
        }

        if (derive->parsed()) {
            RealFn f = parse_expr(dv_f, lets);
            Frame2D fr{parse_mapping(dv_g), parse_mapping(dv_h)};
            double value = dv_metrical ? metrical_derivative(f, fr, dv_at)
                                       : dual_derivative(f, fr, dv_at);
            ojson diags{{"f", f.repr}, {"at", dv_at}, {"mode", dv_metrical ? "metrical" : "dual"}};
            print_result(out, plain,
                         make_json(value, nullptr, ojson{{"metrical", dv_metrical}},
                                   std::move(diags)),
                         fmt_value(value));
            return 0;
        }

        if (integ->parsed()) {
            RealFn f = parse_expr(in_f, lets);
            Interval iv = cli_detail::parse_interval(in_iv, in_open_lo, in_open_hi, lets);
            double value = 0.0;
            if (in_type == "1") {
                if (in_h.empty()) throw UsageError("integrate --type 1 needs --h");
                if (!in_g.empty()) throw UsageError("integrate --type 1 does not take --g");
                value = iso_integral_1(f, iv, parse_mapping(in_h), qc);
            } else if (in_type == "2") {
                if (in_g.empty()) throw UsageError("integrate --type 2 needs --g");
                if (!in_h.empty()) throw UsageError("integrate --type 2 does not take --h");
                value = iso_integral_2(f, iv, parse_mapping(in_g), qc);
            } else {
                if (!in_g.empty() || !in_h.empty())
                    throw UsageError("integrate --type " + in_type + " takes neither --g nor --h");
                value = in_type == "geometric" ? geometric_integral(f, iv, qc)
                                               : elastic_integral(f, iv, qc);
            }
            ojson diags{{"f", f.repr}, {"type", in_type}};
            print_result(out, plain,
                         make_json(value, nullptr, ojson::object(), std::move(diags)),
                         fmt_value(value));
            return 0;
        }

        if (convex->parsed()) {
            RealFn f = parse_expr(cv_f, lets);
            Frame2D fr{parse_mapping(cv_g), parse_mapping(cv_h)};
            Interval iv = cli_detail::parse_interval(cv_iv, false, false, lets);
            ConvexityVerdict v = classify_dvi_convexity(f, fr, iv);
            ojson diags{{"f", f.repr},
                        {"inequality", to_string(v.inequality)},
                        {"geometric_direction", to_string(v.geometric_direction)},
                        {"phi_aux_direction", to_string(v.phi_aux_direction)},
                        {"ratio_monotonicity", to_string(v.ratio_mono)}};
            ojson flags{{"verified", false}, {"passed", nullptr}};
            if (cv_verify_opt->count() > 0) {
                if (cv_verify < 1) throw UsageError("--verify needs a positive trial count");
                VerifyReport rep = verify_dvi_inequality(f, fr, iv, v.inequality, cv_verify,
                                                         cv_seed);
                flags["verified"] = true;
                flags["passed"] = rep.passed;
                diags["trials"] = rep.trials;
                if (rep.found) {
                    diags["counterexample"] = ojson{{"x1", rep.counterexample.x1},
                                                    {"x2", rep.counterexample.x2},
                                                    {"lambda", rep.counterexample.lambda},
                                                    {"lhs", rep.counterexample.lhs},
                                                    {"rhs", rep.counterexample.rhs}};
                }
            }
            print_result(out, plain,
                         make_json(nullptr, to_string(v.kind), std::move(flags), std::move(diags)),
                         to_string(v.kind));
            return 0;
        }

        if (cset->parsed()) {
            Predicate pred = parse_predicate(cs_pred, cs_dim, lets);
            Mapping g = parse_mapping(cs_g);
            SetCheck check;
            if (cs_dim == 1) {
                if (!cs_g2.empty()) throw UsageError("--g2 applies only with --dim 2");
                check = is_convex_set_1d([&pred](double x) { return pred(x); }, g, cs_trials,
                                         cs_seed, cs_reach);
            } else {
                Mapping g2 = cs_g2.empty() ? g : parse_mapping(cs_g2);
                check = is_convex_set_2d(
                    [&pred](double x, double y) { return pred(x, y); }, g, g2, cs_trials, cs_seed,
                    cs_reach);
            }
            ojson diags{{"predicate", pred.repr}, {"trials", check.trials}};
            if (check.found) diags["witness"] = check.witness;
            ojson flags{{"passed", check.passed}, {"found_counterexample", check.found}};
            print_result(out, plain,
                         make_json(check.passed ? 1 : 0, nullptr, std::move(flags),
                                   std::move(diags)),
                         check.passed ? "1" : "0");
            return 0;
        }

        if (cmp->parsed()) {
            Mapping g = parse_mapping(cm_g);
            Mapping h = parse_mapping(cm_h);
            Interval iv = cli_detail::parse_interval(cm_iv, false, false, lets);
            Relation rel = compare_means(g, h, iv);
            ojson diags{{"order", std::string("mean under ") + g.name + " " + to_string(rel) +
                                      " mean under " + h.name}};
            print_result(out, plain,
                         make_json(nullptr, to_string(rel), ojson::object(), std::move(diags)),
                         to_string(rel));
            return 0;
        }

        if (stol->parsed()) {
            double value = quasi_stolarsky(st_p, st_q, st_ab[0], st_ab[1]);
            ojson diags{{"p", st_p}, {"q", st_q}};
            print_result(out, plain,
                         make_json(value, nullptr, ojson::object(), std::move(diags)),
                         fmt_value(value));
            return 0;
        }

        if (cauchy->parsed()) {
            RealFn f = parse_expr(ca_f, lets);
            RealFn g = parse_expr(ca_g, lets);
            double value = cauchy_mean(f, g, ca_xs[0], ca_xs[1]);
            ojson diags{{"f", f.repr}, {"g", g.repr}};
            print_result(out, plain,
                         make_json(value, nullptr, ojson::object(), std::move(diags)),
                         fmt_value(value));
            return 0;
        }

        if (plot->parsed()) {
            RealFn f = parse_expr(pl_f, lets);
            Frame2D fr{parse_mapping(pl_g), parse_mapping(pl_h)};
            Interval iv = cli_detail::parse_interval(pl_iv, pl_open_lo, pl_open_hi, lets);
            std::string label = pl_label.empty() ? f.repr : pl_label;
            PlotSeries series = graph_series(f, fr, iv, pl_samples, label);
            std::vector<PlotSeries> all{series};
            if (pl_fmt == "csv") {
                emit(all, PlotFormat::Csv, pl_out);
            } else {
                std::vector<double> marks;
                std::size_t n = series.points.size();
                for (std::size_t i = 0; i < 6; ++i)
                    marks.push_back(series.points[i * (n - 1) / 5].x);
                TickSet ticks = axis_ticks(fr.g, marks);
                emit(all, PlotFormat::Svg, pl_out, &ticks);
            }
            ojson diags{{"path", pl_out},
                        {"format", pl_fmt},
                        {"points", series.points.size()},
                        {"annotations", series.annotations.size()}};
            print_result(out, plain,
                         make_json(nullptr, nullptr, ojson{{"written", true}}, std::move(diags)),
                         pl_out);
            return 0;
        }

        err << "usage error: no subcommand selected\n";
        return 2;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << "\n";
        return 3;
    } catch (const NumericError& e) {
        err << "numeric error: " << e.what() << "\n";
        return 4;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace isoframe
