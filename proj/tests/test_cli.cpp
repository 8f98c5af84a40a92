#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "expr.hpp"
#include "lgate/catalog.hpp"
#include "support.hpp"

using namespace lgate;
using namespace lgate::cli;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome call(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

std::filesystem::path scratch_dir() {
    auto dir = std::filesystem::temp_directory_path() / "lgate_cli_tests";
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("parser examples") {
    CHECK(evaluate(*parse_expr("1/(p+1)^2", "p"), {1.0, 0.0}).real() == doctest::Approx(0.25));
    CHECK(evaluate(*parse_expr("1/(1+p^0.25)", "p"), {1.0, 0.0}).real() == doctest::Approx(0.5));
    try {
        parse_expr("1/(p", "p");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 4);
        REQUIRE(e.expected().size() == 1);
        CHECK(e.expected()[0] == "')'");
    }
}

TEST_CASE("parser precedence and associativity") {
    const Complex p{2.0, 0.0};
    CHECK(evaluate(*parse_expr("8/p/2", "p"), p).real() == 2.0);
    CHECK(evaluate(*parse_expr("8-p-2", "p"), p).real() == 4.0);
    CHECK(evaluate(*parse_expr("-p^2", "p"), p).real() == -4.0);
    CHECK(evaluate(*parse_expr("2*p^3", "p"), p).real() == 16.0);
    CHECK(evaluate(*parse_expr("p^-1", "p"), p).real() == 0.5);
    CHECK(evaluate(*parse_expr("2*-p", "p"), p).real() == -4.0);
    CHECK(evaluate(*parse_expr(" exp( 0 ) + 1e1 ", "p"), p).real() == 11.0);
    CHECK(evaluate(*parse_expr(".5*p", "p"), p).real() == 1.0);
}

TEST_CASE("parser errors") {
    auto offset = [](const char* text) {
        try {
            parse_expr(text, "p");
        } catch (const ParseError& e) {
            return static_cast<long>(e.offset());
        }
        return -1L;
    };
    CHECK(offset("") == 0);
    CHECK(offset("p+") == 2);
    CHECK(offset("p^q") == 2);
    CHECK(offset("p^(2)") == 2);
    CHECK(offset("t+1") == 0);
    CHECK(offset("p 1") == 2);
    CHECK(offset("exp p") == 4);
    CHECK(offset("(p+1))") == 5);
    CHECK(offset("1e999") == 0);
}

TEST_CASE("evaluation branches") {
    // integer powers are exact products, real ones use the principal branch
    CHECK(evaluate(*parse_expr("p^2", "p"), {-2.0, 0.0}) == Complex{4.0, 0.0});
    CHECK(std::abs(evaluate(*parse_expr("p^0.5", "p"), {-4.0, 0.0}) - Complex{0.0, 2.0}) < 1e-15);
    CHECK_THROWS_AS(evaluate(*parse_expr("p^0.5", "p"), {0.0, 0.0}), DomainError);
    CHECK(std::isinf(std::abs(evaluate(*parse_expr("1/(p-1)", "p"), {1.0, 0.0}))));
}

TEST_CASE("pretty printer round trip") {
    const char* corpus[] = {
        "p", "1", "2.5", "1e-3", "p+1", "p-1", "p*2", "p/2", "-p", "--p",
        "1/(p+1)^2", "1/(p+1)^3", "((p+1)^2-1)/((p+1)^2+1)^2", "1/((p+1)^2+1)", "1/(p+1)",
        "1/(p-1)", "1/((1+p^0.25)*(1+p))", "1/(1+p^0.25)", "p^-0.5", "p^+2",
        "exp(-p)", "exp(-2*p)/(p+1)", "exp(p^2)", "2^3", "(p^2)^3",
        "-(p+1)^2", "p*p*p", "p/p/p", "p-p-p", "1-(2-(3-p))",
        "3*(p+2)/(p^2+5*p+6)", "0.1*p^1.5", "1/(p^2+2*p+5)", "p/(p^2+1)^2", "(p-1)/(p+1)^3",
        "exp(-0.5*p)*(1/(p+1)^2)", "1/(1+p^-0.25)", "(1+p)^-2", "4/(p+2)^2-1/(p+1)", "12.75e2*p",
        "exp(exp(-p))", "-exp(-p)", "p^0", "1/(p^3+p^2+p+1)", "(p+1)^-2.5",
        "p*(p+1)*(p+2)", "1/(p+0.001)^2", "((((p))))", "-1/-p", "1/(2*p+3)^2"};
    CHECK(std::size(corpus) == 50);
    for (const char* text : corpus) {
        CAPTURE(text);
        const auto tree = parse_expr(text, "p");
        const std::string printed = to_string(*tree, "p");
        const auto again = parse_expr(printed, "p");
        CHECK(*tree == *again);
        CHECK(to_string(*again, "p") == printed);
    }
}

TEST_CASE("exp-polynomial recognition") {
    auto terms = as_exp_polynomial(*parse_expr("t*exp(-t)", "t"));
    REQUIRE(terms);
    REQUIRE(terms->size() == 1);
    CHECK((*terms)[0].coeff == 1.0);
    CHECK((*terms)[0].power == 1.0);
    CHECK((*terms)[0].rate == 1.0);

    terms = as_exp_polynomial(*parse_expr("(1+t)^2*exp(-2*t)/2 - t*exp(-t)*exp(-t)", "t"));
    REQUIRE(terms);
    CHECK(terms->size() == 2);  // the t e^{-2t} terms cancel

    CHECK_FALSE(as_exp_polynomial(*parse_expr("exp(-t^2)", "t")));
    CHECK_FALSE(as_exp_polynomial(*parse_expr("1/(1+t)", "t")));
    CHECK(as_exp_polynomial(*parse_expr("0*t", "t"))->empty());
}

TEST_CASE("closed-form transform of exp-polynomials") {
    const std::pair<const char*, const char*> cases[] = {
        {"t*exp(-t)", "t_exp"}, {"t^2*exp(-t)/2", "t2_exp"}};
    for (const auto& [f_text, name] : cases) {
        const auto in = laplace_of_exp_polynomial(*as_exp_polynomial(*parse_expr(f_text, "t")), f_text);
        const auto& pair = catalog_lookup(name);
        for (Complex p : {Complex{0.5, 0.0}, Complex{0.0, 7.0}, Complex{3.0, -2.0}}) {
            CHECK(std::abs(in.F(p) - pair.F_closed(p)) < 1e-14);
        }
        for (double t : {0.0, 0.5, 3.0, 20.0}) {
            CHECK(std::abs(in.f(t) - pair.f_closed(t)) < 1e-15);
            if (t >= 1.0) CHECK(std::abs(in.f(t)) <= (*in.f.tail)(t));
        }
    }
    // fractional power: L[t^{-1/2} e^{-t}] = sqrt(pi) (p+1)^{-1/2}
    const auto half = laplace_of_exp_polynomial({{1.0, -0.5, 1.0}}, "t^-0.5*exp(-t)");
    CHECK(std::abs(half.F({3.0, 0.0}) - std::sqrt(std::numbers::pi) / 2.0) < 1e-14);

    CHECK_THROWS_AS(laplace_of_exp_polynomial({{1.0, 1.0, 0.0}}, "t"), std::invalid_argument);
    CHECK_THROWS_AS(laplace_of_exp_polynomial({{1.0, -1.0, 1.0}}, "exp(-t)/t"), std::invalid_argument);
}

TEST_CASE("tail declarations") {
    const auto e = tail_from_expr(*parse_expr("2*exp(-0.5*t)", "t"));
    CHECK(e.kind == TailEnvelope::Kind::exponential);
    CHECK(e.M == 2.0);
    CHECK(e.rate == 0.5);
    const auto a = tail_from_expr(*parse_expr("3*t^-2", "t"));
    CHECK(a.kind == TailEnvelope::Kind::algebraic);
    CHECK(a.rate == 2.0);
    CHECK_THROWS_AS(tail_from_expr(*parse_expr("exp(t)", "t")), std::invalid_argument);
    CHECK_THROWS_AS(tail_from_expr(*parse_expr("exp(-t)+t^-2", "t")), std::invalid_argument);
}

TEST_CASE("time ranges") {
    const auto g = parse_t_range("0:5:0.1");
    CHECK(g.size() == 51);
    CHECK(g[10] == 1.0);
    CHECK(parse_t_range("-2:0:0.5") == std::vector<double>{-2.0, -1.5, -1.0, -0.5, 0.0});
    CHECK(parse_t_range("1:1:0.5").size() == 1);
    CHECK_THROWS_AS(parse_t_range("0:5"), std::invalid_argument);
    CHECK_THROWS_AS(parse_t_range("0:5:0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_t_range("5:0:1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_t_range("a:1:1"), std::invalid_argument);
}

TEST_CASE("csv format") {
    TimeSignal s;
    s.t_grid = {0.0, 0.1};
    s.values = {{0.1, -0.0}, {1.0 / 3.0, 2.0}};
    s.err_bound = {5e-6, 1e-300};
    const std::string csv = format_csv(s);
    CHECK(csv == "t,re,im,err_bound\n0,0.1,-0,5e-06\n0.1,0.3333333333333333,2,1e-300\n");

    std::istringstream in(csv);
    const TimeSignal back = read_signal_csv(in);
    CHECK(back.t_grid == s.t_grid);
    CHECK(back.values[1] == s.values[1]);

    std::istringstream bad("t,re\n0,1\nx,2\n");
    CHECK_THROWS_AS(read_signal_csv(bad), std::invalid_argument);
    std::istringstream unsorted("1,0\n0,0\n");
    CHECK_THROWS_AS(read_signal_csv(unsorted), std::invalid_argument);
}

TEST_CASE("check exit codes") {
    const auto good = call({"check", "1/(p+1)^2"});
    CHECK(good.code == exit_ok);
    CHECK(good.out.find("\"verdict\": \"admissible\"") != std::string::npos);
    for (const char* key : {"tool_version", "command", "settings", "report", "signals", "residuals", "verdict"}) {
        CHECK(good.out.find(std::string("\"") + key + "\"") != std::string::npos);
    }
    CHECK(call({"check", "1/(p+1)"}).code == exit_inadmissible);
    CHECK(call({"check", "1/(p-1)"}).code == exit_inadmissible);
    CHECK(call({"check", "1/(p+1)^1.05"}).code == exit_inconclusive);
    const auto broken = call({"check", "1/(p"});
    CHECK(broken.code == exit_error);
    CHECK(broken.err.find("offset 4") != std::string::npos);
}

TEST_CASE("usage errors never crash") {
    CHECK(call({}).code == exit_error);
    CHECK(call({"frobnicate"}).code == exit_error);
    CHECK(call({"invert", "1/(p+1)^2"}).code == exit_error);
    CHECK(call({"invert", "1/(p+1)^2", "--t", "0:1"}).code == exit_error);
    CHECK(call({"check", "1/(p+1)^2", "--tol", "abc"}).code == exit_error);
    CHECK(call({"check", "1/(p+1)^2", "--eta-max", "1"}).code == exit_error);
    CHECK(call({"solve", "--lambda", "0.5"}).code == exit_error);
    CHECK(call({"solve", "--lambda", "0.5", "--f-csv", "/nonexistent.csv", "--tail", "exp(-t)"}).code == exit_error);
    CHECK(call({"--help"}).code == exit_ok);
    const auto zero = call({"solve", "--lambda", "0", "--f", "t*exp(-t)"});
    CHECK(zero.code == exit_error);
    CHECK(zero.err.find("lambda must be nonzero, |lambda| < 2") != std::string::npos);
}

TEST_CASE("invert through the command line") {
    const auto r = call({"invert", "1/(p+1)^2", "--t", "0:2:0.5"});
    REQUIRE(r.code == exit_ok);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    CHECK(line == "t,re,im,err_bound");
    bool seen = false;
    while (std::getline(in, line)) {
        if (line.rfind("1,", 0) == 0) {
            seen = true;
            CHECK(std::stod(line.substr(2)) == doctest::Approx(std::exp(-1.0)).epsilon(1e-5));
        }
    }
    CHECK(seen);

    const auto neg = call({"invert", "1/(p+1)^2", "--t", "-2:0:0.5"});
    REQUIRE(neg.code == exit_ok);
    std::istringstream nin(neg.out);
    std::getline(nin, line);
    while (std::getline(nin, line)) {
        std::istringstream row(line);
        std::string t, re, im;
        std::getline(row, t, ',');
        std::getline(row, re, ',');
        std::getline(row, im, ',');
        CHECK(std::abs(std::stod(re)) <= 5e-6);
        CHECK(std::abs(std::stod(im)) <= 5e-6);
    }

    const auto refused = call({"invert", "1/(p+1)", "--t", "0:1:0.5"});
    CHECK(refused.code == exit_inadmissible);
    CHECK(refused.out.empty());
}

TEST_CASE("invert writes a sidecar next to the csv") {
    const auto dir = scratch_dir();
    const auto csv = dir / "f.csv";
    std::filesystem::remove(csv);
    std::filesystem::remove(dir / "f.csv.json");
    const auto r = call({"invert", "1/(p+1)^2", "--t", "0:1:0.5", "--out", csv.string()});
    REQUIRE(r.code == exit_ok);
    CHECK(r.out.empty());
    const std::string sidecar = slurp(dir / "f.csv.json");
    for (const char* key : {"\"b_hat\"", "\"c_hat\"", "\"H\"", "\"achieved_tol\"", "\"I_N\"", "\"negative_max\""}) {
        CHECK(sidecar.find(key) != std::string::npos);
    }
    CHECK(slurp(csv).rfind("t,re,im,err_bound\n", 0) == 0);
}

TEST_CASE("pairs command") {
    const auto list = call({"pairs"});
    CHECK(list.code == exit_ok);
    int rows = 0, bad = 0;
    std::istringstream in(list.out);
    for (std::string line; std::getline(in, line);) {
        ++rows;
        if (line.find("inadmissible") != std::string::npos) ++bad;
    }
    CHECK(rows >= 5);
    CHECK(bad >= 2);

    const auto tight = call({"pairs", "--roundtrip", "--tol", "1e-12"});
    CHECK(tight.code == exit_tolerance);
    CHECK(tight.err.find("h-max") != std::string::npos);
}

TEST_CASE("solve through the command line") {
    const auto dir = scratch_dir();
    const auto csv = dir / "q.csv";
    const auto r = call({"solve", "--lambda", "-0.25", "--f", "t*exp(-t)", "--t", "0:4:0.5", "--out", csv.string()});
    CHECK(r.code == exit_ok);
    const std::string sidecar = slurp(dir / "q.csv.json");
    CHECK(sidecar.find("\"verdict\": \"verified\"") != std::string::npos);
    CHECK(sidecar.find("\"residuals\": [") != std::string::npos);

    const auto bad = call({"solve", "--lambda", "0.5", "--f", "exp(-t^2)"});
    CHECK(bad.code == exit_error);
}

TEST_CASE("outputs are byte-stable") {
    CHECK(call({"check", "1/((1+p^0.25)*(1+p))", "--seed", "9"}).out ==
          call({"check", "1/((1+p^0.25)*(1+p))", "--seed", "9"}).out);
    CHECK(call({"invert", "1/((p+1)^2+1)", "--t", "0:3:0.25"}).out ==
          call({"invert", "1/((p+1)^2+1)", "--t", "0:3:0.25"}).out);
}

}  // TEST_SUITE
