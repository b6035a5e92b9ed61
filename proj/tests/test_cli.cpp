#include <catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include <isoframe/cli.hpp>

#include "helpers.hpp"

namespace {

const double kE = 2.71828182845904523536;
const double kPi = 3.14159265358979323846;

struct CliResult {
    int code = -1;
    std::string out;
    std::string err;
};

CliResult run(const std::vector<std::string>& args) {
    std::vector<std::string> full;
    full.reserve(args.size() + 1);
    full.push_back("isoframe");
    for (const auto& a : args) full.push_back(a);
    std::vector<const char*> argv;
    argv.reserve(full.size());
    for (const auto& s : full) argv.push_back(s.c_str());
    std::ostringstream out, err;
    int code = isoframe::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

double plain_value(const CliResult& r) {
    REQUIRE(r.code == 0);
    return std::stod(r.out);
}

nlohmann::json json_out(const CliResult& r) {
    REQUIRE(r.code == 0);
    return nlohmann::json::parse(r.out);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("worked command lines", "[cli]") {
    // mean of y = x against (id, y^2) on [1,2]: sqrt(7/3)
    auto mf = run({"mean-function", "--f", "x", "--h", "pow(2)", "--g", "id",
                   "--interval", "1,2", "--plain"});
    CHECK(plain_value(mf) == Catch::Approx(1.5275252316519467).epsilon(1e-9));
    CHECK(mf.out.substr(0, 6) == "1.5275");

    // [1+2] under y^2 = sqrt(5)
    auto add = run({"arith", "add", "--g", "pow(2)", "1", "2", "--plain"});
    CHECK(plain_value(add) == Catch::Approx(2.2360679774997897).margin(1e-10));
    CHECK(add.out.substr(0, 7) == "2.23606");

    // geometric-mean branch of the two-parameter mean
    auto st = run({"stolarsky", "--p", "0", "--q", "0", "4", "9", "--plain"});
    CHECK(plain_value(st) == Catch::Approx(6.0).margin(1e-12));
}

TEST_CASE("json output schema", "[cli]") {
    SECTION("mean-function carries class tag and flags") {
        auto r = run({"mean-function", "--f", "x", "--h", "pow(2)", "--g", "id",
                      "--interval", "1,2"});
        auto j = json_out(r);
        REQUIRE(j.contains("value"));
        REQUIRE(j.contains("class"));
        REQUIRE(j.contains("flags"));
        REQUIRE(j.contains("diagnostics"));
        CHECK(j["value"].get<double>() == Catch::Approx(1.5275252316519467).epsilon(1e-9));
        CHECK(j["class"].get<std::string>() == "I");
        CHECK(j["flags"]["generalized"].get<bool>() == false);
        CHECK(j["flags"]["outside_range"].get<bool>() == false);
        CHECK(j["flags"]["extrapolated"].get<bool>() == false);
        CHECK(j["diagnostics"]["f"].get<std::string>() == "x");
        CHECK(j["diagnostics"]["window_lo"].get<double>() == 1.0);
        CHECK(j["diagnostics"]["window_hi"].get<double>() == 2.0);
    }

    SECTION("mean-numbers is tagged numbers") {
        auto j = json_out(run({"mean-numbers", "--g", "exp", "1", "2"}));
        CHECK(j["value"].get<double>() ==
              Catch::Approx(1.6201145069582775).margin(1e-12));
        CHECK(j["class"].get<std::string>() == "numbers");
        CHECK(j["diagnostics"]["mapping"].get<std::string>() == "exp");
    }

    SECTION("golden bytes for a fixed command") {
        auto r = run({"stolarsky", "--p", "0", "--q", "0", "4", "9"});
        REQUIRE(r.code == 0);
        const std::string expected =
            "{\n"
            "  \"value\": 6.0,\n"
            "  \"class\": null,\n"
            "  \"flags\": {},\n"
            "  \"diagnostics\": {\n"
            "    \"p\": 0.0,\n"
            "    \"q\": 0.0\n"
            "  }\n"
            "}\n";
        CHECK(r.out == expected);
    }
}

TEST_CASE("arithmetic leaves", "[cli]") {
    CHECK(plain_value(run({"arith", "sub", "--g", "pow(2)", "5", "4", "--plain"})) ==
          Catch::Approx(3.0).margin(1e-10));
    CHECK(plain_value(run({"arith", "mul", "--g", "ln", "2", "3", "--plain"})) ==
          Catch::Approx(8.0).epsilon(1e-12));
    CHECK(plain_value(run({"arith", "div1", "--g", "ln", "8", "3", "--plain"})) ==
          Catch::Approx(2.0).epsilon(1e-12));
    CHECK(plain_value(run({"arith", "div2", "--g", "ln", "8", "2", "--plain"})) ==
          Catch::Approx(3.0).epsilon(1e-12));

    auto j = json_out(run({"arith", "add", "--g", "pow(2)", "1", "2"}));
    CHECK(j["diagnostics"]["op"].get<std::string>() == "add");
    CHECK(j["diagnostics"]["mapping"].get<std::string>() == "pow(2)");

    // mul takes exactly a value and a factor
    CHECK(run({"arith", "mul", "--g", "ln", "2", "3", "4"}).code == 2);
}

TEST_CASE("derivative and integral subcommands", "[cli]") {
    auto dual = run({"derive", "--f", "x", "--g", "exp", "--h", "pow(2)", "--at", "1",
                     "--plain"});
    CHECK(plain_value(dual) == Catch::Approx(2.0 / kE).margin(1e-8));

    auto met = run({"derive", "--f", "x", "--g", "exp", "--h", "pow(2)", "--at", "1",
                    "--metrical"});
    auto jm = json_out(met);
    CHECK(jm["value"].get<double>() == Catch::Approx(std::sqrt(2.0 / kE)).margin(1e-10));
    CHECK(jm["flags"]["metrical"].get<bool>() == true);
    CHECK(jm["diagnostics"]["mode"].get<std::string>() == "metrical");

    auto el = run({"integrate", "--type", "elastic", "--f", "x/(x-1)", "--interval",
                   "2,3", "--plain"});
    CHECK(plain_value(el) == Catch::Approx(2.0).epsilon(1e-9));

    auto geo = run({"integrate", "--type", "geometric", "--f", "sin(x)", "--interval",
                    "0,pi", "--open-lo", "--open-hi", "--plain"});
    CHECK(plain_value(geo) == Catch::Approx(0.11331473229676087).margin(1e-6));

    auto t1 = run({"integrate", "--type", "1", "--h", "ln", "--f", "x", "--interval",
                   "1,e", "--plain"});
    CHECK(plain_value(t1) == Catch::Approx(kE).epsilon(1e-9));

    SECTION("generator flags must match the type") {
        CHECK(run({"integrate", "--type", "1", "--f", "x", "--interval", "0,1"}).code == 2);
        CHECK(run({"integrate", "--type", "1", "--h", "id", "--g", "id", "--f", "x",
                   "--interval", "0,1"}).code == 2);
        CHECK(run({"integrate", "--type", "2", "--f", "x", "--interval", "0,1"}).code == 2);
        CHECK(run({"integrate", "--type", "geometric", "--g", "ln", "--f", "x",
                   "--interval", "1,2"}).code == 2);
        CHECK(run({"integrate", "--type", "3", "--f", "x", "--interval", "0,1"}).code == 2);
    }
}

TEST_CASE("interval literals and open endpoints", "[cli]") {
    CHECK(plain_value(run({"mean-function", "--f", "x", "--g", "id", "--h", "id",
                           "--interval", "0,pi", "--plain"})) ==
          Catch::Approx(kPi / 2.0).epsilon(1e-12));
    CHECK(plain_value(run({"mean-function", "--f", "x", "--g", "id", "--h", "id",
                           "--interval", "1,e", "--plain"})) ==
          Catch::Approx((1.0 + kE) / 2.0).epsilon(1e-12));
    CHECK(plain_value(run({"mean-function", "--f", "x", "--g", "id", "--h", "id",
                           "--interval", "0,2*pi", "--plain"})) ==
          Catch::Approx(kPi).epsilon(1e-12));

    auto inf = run({"integrate", "--type", "1", "--h", "id", "--f", "exp(-x)",
                    "--interval", "0,inf", "--open-hi", "--plain"});
    CHECK(plain_value(inf) == Catch::Approx(1.0).margin(1e-6));

    // the chord-arc mean lives on the open interval; closed endpoints hit ln(0)
    std::vector<std::string> chord = {"mean-function", "--f", "2*sqrt(1-x^2)",
                                      "--g", "id", "--h", "ln",
                                      "--interval", "-1,1", "--plain"};
    CHECK(run(chord).code == 3);
    chord.insert(chord.end() - 1, "--open-lo");
    chord.insert(chord.end() - 1, "--open-hi");
    auto open = run(chord);
    CHECK(plain_value(open) == Catch::Approx(1.4715177646857693).epsilon(1e-6));

    CHECK(run({"mean-function", "--f", "x", "--g", "id", "--h", "id", "--interval",
               "1", "--plain"}).code == 2);
    CHECK(run({"mean-function", "--f", "x", "--g", "id", "--h", "id", "--interval",
               "1,x", "--plain"}).code == 2);
}

TEST_CASE("constant bindings", "[cli]") {
    auto r = run({"mean-function", "--f", "k*(x-c)", "--let", "k=2", "--let", "c=1",
                  "--g", "id", "--h", "id", "--interval", "1,3", "--plain"});
    CHECK(plain_value(r) == Catch::Approx(2.0).epsilon(1e-12));

    // bindings reach interval endpoints too
    auto s = run({"mean-function", "--f", "k*(x-c)", "--let", "k=2", "--let", "c=1",
                  "--g", "id", "--h", "id", "--interval", "c,3", "--plain"});
    CHECK(plain_value(s) == Catch::Approx(2.0).epsilon(1e-12));

    CHECK(run({"mean-function", "--f", "x", "--let", "k", "--g", "id", "--h", "id",
               "--interval", "0,1"}).code == 2);
    CHECK(run({"mean-function", "--f", "x", "--let", "k=abc", "--g", "id", "--h", "id",
               "--interval", "0,1"}).code == 2);
}

TEST_CASE("classification subcommands", "[cli]") {
    auto cv = run({"convexity", "--f", "x^2", "--g", "id", "--h", "id", "--interval",
                   "0.5,2", "--plain"});
    REQUIRE(cv.code == 0);
    CHECK(cv.out == "dvi-convex\n");

    auto jv = json_out(run({"convexity", "--f", "x^2", "--g", "id", "--h", "id",
                            "--interval", "0.5,2", "--verify", "500", "--seed", "7"}));
    CHECK(jv["class"].get<std::string>() == "dvi-convex");
    CHECK(jv["flags"]["verified"].get<bool>() == true);
    CHECK(jv["flags"]["passed"].get<bool>() == true);
    CHECK(jv["diagnostics"]["trials"].get<long>() == 500);
    CHECK(jv["diagnostics"]["inequality"].get<std::string>() == "<=");

    CHECK(run({"convexity", "--f", "x^2", "--g", "id", "--h", "id", "--interval",
               "0.5,2", "--verify", "0"}).code == 2);

    auto cm = run({"compare-means", "--g", "ln", "--h", "id", "--interval", "0.5,2",
                   "--plain"});
    REQUIRE(cm.code == 0);
    CHECK(cm.out == "<=\n");
    auto jc = json_out(run({"compare-means", "--g", "ln", "--h", "id", "--interval",
                            "0.5,2"}));
    CHECK(jc["class"].get<std::string>() == "<=");
    CHECK(jc["diagnostics"]["order"].get<std::string>() ==
          "mean under ln <= mean under id");

    auto ca = run({"cauchy-mean", "--f", "x^2", "--g", "x", "1", "3", "--plain"});
    CHECK(plain_value(ca) == Catch::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("convex set subcommand", "[cli]") {
    auto pass = run({"convex-set", "--dim", "2", "--predicate", "x+y<2", "--g", "recip",
                     "--trials", "2000", "--seed", "11", "--plain"});
    REQUIRE(pass.code == 0);
    CHECK(pass.out == "1\n");

    auto fail = run({"convex-set", "--dim", "2", "--predicate", "x+y>2", "--g", "recip",
                     "--trials", "2000", "--seed", "11"});
    auto jf = json_out(fail);
    CHECK(jf["value"].get<int>() == 0);
    CHECK(jf["flags"]["passed"].get<bool>() == false);
    CHECK(jf["flags"]["found_counterexample"].get<bool>() == true);
    REQUIRE(jf["diagnostics"].contains("witness"));
    CHECK(jf["diagnostics"]["witness"].size() == 7);

    auto one = run({"convex-set", "--dim", "1", "--predicate", "x>1", "--g", "ln",
                    "--trials", "500", "--seed", "3", "--plain"});
    CHECK(one.out == "1\n");

    CHECK(run({"convex-set", "--dim", "1", "--predicate", "y<1", "--g", "id",
               "--trials", "100", "--seed", "1"}).code == 2);
    CHECK(run({"convex-set", "--dim", "1", "--predicate", "x<1", "--g", "id", "--g2",
               "ln", "--trials", "100", "--seed", "1"}).code == 2);
    CHECK(run({"convex-set", "--dim", "3", "--predicate", "x<1", "--g", "id",
               "--trials", "100", "--seed", "1"}).code == 2);
}

TEST_CASE("seeds pin randomized output", "[cli]") {
    const std::vector<std::string> cmd = {"convex-set", "--dim", "2", "--predicate",
                                          "x+y>2",      "--g",   "recip", "--trials",
                                          "2000",       "--seed", "99"};
    auto a = run(cmd);
    auto b = run(cmd);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);

    const std::vector<std::string> vcmd = {"convexity", "--f", "x^2", "--g", "id",
                                           "--h", "id", "--interval", "0.5,2",
                                           "--verify", "1000", "--seed", "42"};
    auto c = run(vcmd);
    auto d = run(vcmd);
    REQUIRE(c.code == 0);
    CHECK(c.out == d.out);
}

TEST_CASE("exit codes", "[cli]") {
    SECTION("usage errors") {
        auto r = run({"no-such-command"});
        CHECK(r.code == 2);
        CHECK(r.err.rfind("usage error:", 0) == 0);
        CHECK(run({}).code == 2);
        CHECK(run({"arith", "add", "1", "2"}).code == 2);  // missing --g
        CHECK(run({"mean-function", "--f", "x", "--g", "id", "--h", "id", "--interval",
                   "1,2", "--f", "x"}).code == 2);  // repeated option rejected
        auto bad = run({"arith", "add", "--g", "nosuch", "1", "2"});
        CHECK(bad.code == 2);
        CHECK(bad.err.find("nosuch") != std::string::npos);
    }

    SECTION("domain errors") {
        auto r = run({"arith", "add", "--g", "ln", "-1", "2"});
        CHECK(r.code == 3);
        CHECK(r.err.rfind("domain error:", 0) == 0);
        CHECK(run({"stolarsky", "--p", "1", "--q", "1", "-1", "2"}).code == 3);
        // ratio of derivatives is not monotone on [0,6]
        CHECK(run({"cauchy-mean", "--f", "sin(x)", "--g", "x", "0", "6"}).code == 3);
    }

    SECTION("numeric errors") {
        auto r = run({"integrate", "--type", "1", "--h", "id", "--f", "1/x",
                      "--interval", "0,1", "--open-lo"});
        CHECK(r.code == 4);
        CHECK(r.err.rfind("numeric error:", 0) == 0);
    }

    SECTION("help exits cleanly") {
        auto r = run({"--help"});
        CHECK(r.code == 0);
        CHECK(r.out.find("arith") != std::string::npos);
        CHECK(r.out.find("mean-function") != std::string::npos);
    }
}

TEST_CASE("quadrature tolerance override", "[cli]") {
    REQUIRE(setenv("ISOFRAME_QUAD_TOL", "1e-6", 1) == 0);
    auto ok = run({"integrate", "--type", "1", "--h", "id", "--f", "x^2",
                   "--interval", "0,1", "--plain"});
    CHECK(plain_value(ok) == Catch::Approx(1.0 / 3.0).margin(1e-5));

    REQUIRE(setenv("ISOFRAME_QUAD_TOL", "abc", 1) == 0);
    auto bad = run({"integrate", "--type", "1", "--h", "id", "--f", "x^2",
                    "--interval", "0,1", "--plain"});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("ISOFRAME_QUAD_TOL") != std::string::npos);

    REQUIRE(setenv("ISOFRAME_QUAD_TOL", "-1", 1) == 0);
    CHECK(run({"integrate", "--type", "1", "--h", "id", "--f", "x^2", "--interval",
               "0,1"}).code == 2);
    REQUIRE(unsetenv("ISOFRAME_QUAD_TOL") == 0);
}

TEST_CASE("plot subcommand", "[cli]") {
    const std::string csv_path = "cli_plot_test.csv";
    const std::string svg_path = "cli_plot_test.svg";

    auto r = run({"plot", "--f", "x", "--g", "ln", "--h", "recip", "--interval",
                  "0.5,4", "--samples", "64", "--format", "csv", "--out", csv_path});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["flags"]["written"].get<bool>() == true);
    CHECK(j["diagnostics"]["points"].get<int>() == 64);
    CHECK(j["diagnostics"]["format"].get<std::string>() == "csv");

    std::string csv = read_file(csv_path);
    CHECK(csv.rfind("label,x,y,u,v\n", 0) == 0);
    auto rerun = run({"plot", "--f", "x", "--g", "ln", "--h", "recip", "--interval",
                      "0.5,4", "--samples", "64", "--format", "csv", "--out", csv_path});
    REQUIRE(rerun.code == 0);
    CHECK(read_file(csv_path) == csv);  // byte-stable across runs
    std::remove(csv_path.c_str());

    auto plain = run({"plot", "--f", "x", "--g", "exp", "--h", "pow(2)", "--interval",
                      "0.5,2", "--samples", "32", "--format", "svg", "--out", svg_path,
                      "--plain"});
    REQUIRE(plain.code == 0);
    CHECK(plain.out == svg_path + "\n");
    std::string svg = read_file(svg_path);
    CHECK(svg.rfind("<svg ", 0) == 0);
    CHECK(svg.find("&#945;") != std::string::npos);
    std::remove(svg_path.c_str());

    CHECK(run({"plot", "--f", "x", "--g", "id", "--h", "id", "--interval", "0,1",
               "--samples", "8", "--format", "csv", "--out",
               "/nonexistent_dir_xyz/a.csv"}).code == 3);
    CHECK(run({"plot", "--f", "x", "--g", "id", "--h", "id", "--interval", "0,1",
               "--samples", "8", "--format", "gif", "--out", "x.gif"}).code == 2);
}
