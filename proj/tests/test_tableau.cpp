#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>
#include <vector>

#include "fixtures.hpp"
#include "rktree/errors.hpp"
#include "rktree/rational.hpp"
#include "rktree/tableau.hpp"

using namespace rktree;

TEST_CASE("parse_rational forms") {
    CHECK(parse_rational("3") == 3);
    CHECK(parse_rational("-3/4") == Rational(-3, 4));
    CHECK(parse_rational("  7/14 ") == Rational(1, 2));
    CHECK(parse_rational("0.25") == Rational(1, 4));
    CHECK(parse_rational("-1.5") == Rational(-3, 2));
    CHECK(parse_rational("0") == 0);
    // Leading zeros are plain decimal, never octal.
    CHECK(parse_rational("010") == 10);
    CHECK(parse_rational("1/010") == Rational(1, 10));
    CHECK(parse_rational("0.0625") == Rational(1, 16));
    CHECK(parse_rational("-0.050") == Rational(-1, 20));
    CHECK_THROWS_AS(parse_rational("1e3"), ValidationError);
    CHECK_THROWS_AS(parse_rational("1/0"), ValidationError);
    CHECK_THROWS_AS(parse_rational("1/-2"), ValidationError);
    CHECK_THROWS_AS(parse_rational(""), ValidationError);
    CHECK_THROWS_AS(parse_rational("a/b"), ValidationError);
    CHECK_THROWS_WITH_AS(parse_rational("1/-2"), doctest::Contains("denominator"),
                         ValidationError);
}

TEST_CASE("rational to_string") {
    CHECK(to_string(Rational(1, 2)) == "1/2");
    CHECK(to_string(Rational(-9, 4)) == "-9/4");
    CHECK(to_string(Rational(8, 4)) == "2");
    CHECK(to_string(RatVec{Rational(1, 2), Rational(3)}) == "(1/2, 3)");
}

TEST_CASE("fixture tableaus load and validate") {
    std::vector<std::string> warnings;
    Tableau euler = load_tableau_file(fixture("euler.json"), &warnings);
    CHECK(euler.s == 1);
    CHECK(euler.b[0] == 1);
    CHECK(is_explicit(euler));
    CHECK(warnings.empty());

    Tableau rk4 = load_tableau_file(fixture("rk4.json"), &warnings);
    CHECK(rk4.s == 4);
    CHECK(rk4.A[1][0] == Rational(1, 2));
    CHECK(rk4.c[3] == 1);
    CHECK(is_explicit(rk4));
    CHECK(warnings.empty());

    Tableau s6 = load_tableau_file(fixture("butcher_s6.json"), &warnings);
    CHECK(s6.s == 6);
    CHECK(s6.A[2][0] == Rational(-9, 4));
    CHECK(s6.b[3] == Rational(32, 81));
    CHECK(s6.c[4] == Rational(7, 10));
    CHECK(is_explicit(s6));
    CHECK(warnings.empty());

    // Row sums of A reproduce c on every fixture.
    for (const Tableau& tab : {euler, rk4, s6})
        for (int i = 0; i < tab.s; ++i) {
            Rational sum = 0;
            for (const auto& a : tab.A[static_cast<std::size_t>(i)]) sum += a;
            CHECK(sum == tab.c[static_cast<std::size_t>(i)]);
        }
}

TEST_CASE("c defaults to row sums and mismatches warn") {
    Tableau no_c = parse_tableau(R"({"s":2,"A":[["0","0"],["1/2","0"]],"b":["0","1"]})");
    CHECK(no_c.c == RatVec{Rational(0), Rational(1, 2)});

    std::vector<std::string> warnings;
    Tableau off = parse_tableau(
        R"({"s":2,"A":[["0","0"],["1/2","0"]],"b":["0","1"],"c":["0","1/3"]})", &warnings);
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("row sums") != std::string::npos);
    CHECK(off.c[1] == Rational(1, 3));  // the given c wins
}

TEST_CASE("tableau validation errors") {
    CHECK_THROWS_AS(parse_tableau(R"({"s":2,"A":[["0"]],"b":["1","0"]})"), ValidationError);
    CHECK_THROWS_AS(parse_tableau(R"({"s":2,"A":[["0","0"],["0","0"]],"b":["1"]})"),
                    ValidationError);
    CHECK_THROWS_AS(
        parse_tableau(R"({"s":1,"A":[["0"]],"b":["1"],"c":["0","1"]})"), ValidationError);
    CHECK_THROWS_AS(parse_tableau(R"({"s":0,"A":[],"b":[]})"), ValidationError);
    CHECK_THROWS_AS(parse_tableau(R"({"s":1,"A":[["0"]],"b":["1"],"extra":1})"), ValidationError);
    CHECK_THROWS_AS(parse_tableau(R"({"A":[["0"]],"b":["1"]})"), ValidationError);
    CHECK_THROWS_WITH_AS(parse_tableau(R"({"s":1,"A":[[0.5]],"b":["1"]})"),
                         doctest::Contains("quote it"), ValidationError);
    CHECK_THROWS_AS(parse_tableau("{"), ParseError);
    CHECK_THROWS_AS(parse_tableau("[]"), ValidationError);
    // Integer JSON literals stay exact and are accepted.
    Tableau ints = parse_tableau(R"({"s":1,"A":[[0]],"b":[1]})");
    CHECK(ints.b[0] == 1);
}

TEST_CASE("malformed JSON errors carry position info") {
    try {
        parse_tableau("{\n  \"s\": 1,\n  \"A\" [[\"0\"]]\n}");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("line") != std::string::npos);
    }
}

TEST_CASE("tableau round trip") {
    for (const char* name : {"euler.json", "rk4.json", "butcher_s6.json"}) {
        Tableau tab = load_tableau_file(fixture(name));
        Tableau again = parse_tableau(serialize_tableau(tab));
        CHECK(tab == again);
    }
}

TEST_CASE("fixture problems load") {
    PolynomialMap riccati = load_problem_file(fixture("riccati.json"));
    CHECK(riccati.d == 1);
    CHECK(riccati.degree == 2);
    CHECK(riccati.y0 == RatVec{Rational(1, 2)});
    REQUIRE(riccati.t_end.has_value());
    CHECK(*riccati.t_end == 1);
    CHECK(riccati.exact == "riccati");

    PolynomialMap lin = load_problem_file(fixture("linear.json"));
    CHECK(lin.d == 2);
    CHECK(lin.degree == 1);
    REQUIRE(lin.params.count("lambda") == 1);
    CHECK(lin.params.at("lambda") == RatVec{Rational(-1), Rational(1, 2)});

    PolynomialMap aut = load_problem_file(fixture("scalar_riccati_autonomized.json"));
    CHECK(aut.d == 2);
    CHECK(aut.degree == 4);
    CHECK(aut.params.at("q_coeffs") == RatVec{Rational(0), Rational(0), Rational(1)});

    PolynomialMap quad = load_problem_file(fixture("quadratic2d.json"));
    CHECK(quad.d == 2);
    CHECK(quad.degree == 3);
    CHECK(quad.exact == "cross_cubic");
}

TEST_CASE("problem monomials merge and drop zeros") {
    PolynomialMap f = parse_problem(R"({
      "d": 1,
      "components": [[
        {"coeff": "1/2", "exponents": [2]},
        {"coeff": "1/2", "exponents": [2]},
        {"coeff": "3", "exponents": [1]},
        {"coeff": "-3", "exponents": [1]}
      ]],
      "y0": ["1"]
    })");
    REQUIRE(f.components[0].size() == 1);
    CHECK(f.components[0][0].coeff == 1);
    CHECK(f.components[0][0].exponents == std::vector<int>{2});
    CHECK(f.degree == 2);
}

TEST_CASE("problem validation errors") {
    CHECK_THROWS_AS(parse_problem(R"({"d":1,"components":[[]],"y0":["1"]})"), ValidationError);
    CHECK_THROWS_AS(parse_problem(R"({"d":2,"components":[[{"coeff":"1","exponents":[1,0]}]],"y0":["1","2"]})"),
                    ValidationError);
    CHECK_THROWS_AS(parse_problem(R"({"d":1,"components":[[{"coeff":"1","exponents":[1,2]}]],"y0":["1"]})"),
                    ValidationError);
    CHECK_THROWS_AS(parse_problem(R"({"d":1,"components":[[{"coeff":"1","exponents":[-1]}]],"y0":["1"]})"),
                    ValidationError);
    CHECK_THROWS_AS(parse_problem(R"({"d":1,"components":[[{"coeff":"1","exponents":[1]}]],"y0":["1","2"]})"),
                    ValidationError);
    CHECK_THROWS_AS(parse_problem(R"({"d":1,"components":[[{"coeff":"1","exponents":[1]}]],"y0":["1"],"junk":0})"),
                    ValidationError);
    CHECK_THROWS_AS(parse_problem(R"({"d":0,"components":[],"y0":[]})"), ValidationError);
}

TEST_CASE("problem round trip") {
    for (const char* name : {"riccati.json", "linear.json", "scalar_riccati_autonomized.json",
                             "quadratic2d.json"}) {
        PolynomialMap f = load_problem_file(fixture(name));
        PolynomialMap again = parse_problem(serialize_problem(f));
        CHECK(f == again);
    }
}

TEST_CASE("polynomial evaluation") {
    PolynomialMap riccati = load_problem_file(fixture("riccati.json"));
    CHECK(riccati.eval(RatVec{Rational(1, 2)}) == RatVec{Rational(1, 4)});
    CHECK(riccati.eval(std::vector<double>{0.5}) == std::vector<double>{0.25});

    PolynomialMap quad = load_problem_file(fixture("quadratic2d.json"));
    RatVec v = quad.eval(RatVec{Rational(2), Rational(3)});
    CHECK(v == RatVec{Rational(18), Rational(12)});
}

TEST_CASE("missing files raise with the path in the message") {
    CHECK_THROWS_WITH_AS(load_tableau_file(fixture("nope.json")), doctest::Contains("nope.json"),
                         ValidationError);
}

TEST_CASE("butcher table rendering") {
    Tableau euler = load_tableau_file(fixture("euler.json"));
    CHECK(format_butcher(euler) == "0 | 0\n--+--\n  | 1\n");
}
