#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "fixtures.hpp"
#include "rktree/elemdiff.hpp"
#include "rktree/rational_linalg.hpp"
#include "rktree/superconv.hpp"
#include "rktree/tableau.hpp"
#include "rktree/tree.hpp"
#include "rktree/weights.hpp"

using namespace rktree;

namespace {

std::size_t tree_index(const std::vector<RootedTree>& trees, const char* enc) {
    for (std::size_t i = 0; i < trees.size(); ++i)
        if (trees[i].encoding() == enc) return i;
    REQUIRE(false);
    return 0;
}

// The per-tree residual weights alpha(T)(gamma(T)phi(T) - 1) in the same
// column order dependency_kernel uses.
RatVec residual_weights(const std::vector<RootedTree>& trees, const Tableau& tab) {
    ElementaryWeights ew(tab);
    RatVec w;
    w.reserve(trees.size());
    for (const auto& t : trees) {
        TreeCoefficients c = coefficients(t);
        w.push_back(Rational(c.alpha) * (Rational(c.gamma) * ew.phi(t) - 1));
    }
    return w;
}

}  // namespace

TEST_CASE("sample draws are deterministic, bounded and distinct") {
    auto a = draw_samples(2, 30, 4242);
    auto b = draw_samples(2, 30, 4242);
    CHECK(a == b);
    CHECK(a.size() == 30);
    auto c = draw_samples(2, 30, 4243);
    CHECK(a != c);

    std::set<RatVec> seen;
    for (const auto& v : a) {
        REQUIRE(v.size() == 2);
        for (const auto& x : v) {
            CHECK(x >= Rational(-9));
            CHECK(x <= Rational(9));
            CHECK(boost::multiprecision::denominator(x) <= 3);
        }
        CHECK(seen.insert(v).second);
    }

    // Prefixes of a longer draw are exactly the shorter draw.
    auto five = draw_samples(2, 5, 4242);
    CHECK(std::vector<RatVec>(a.begin(), a.begin() + 5) == five);

    CHECK_THROWS_AS(draw_samples(0, 5, 1), std::invalid_argument);
    CHECK_THROWS_AS(draw_samples(1, 0, 1), std::invalid_argument);
}

TEST_CASE("kernel of a linear right-hand side contains the bushy indicator") {
    PolynomialMap f = parse_problem(R"({
      "d": 1,
      "components": [[{"coeff": "2", "exponents": [1]}]],
      "y0": ["1"]
    })");
    auto samples = draw_samples(1, 6, 7);
    DependencyReport dep = dependency_kernel(3, f, samples);
    CHECK(dep.order == 3);
    CHECK(dep.n_trees == 2);
    CHECK(dep.rank == 1);
    REQUIRE(dep.kernel_basis.size() == 1);
    const std::size_t bushy = tree_index(dep.trees, "[[][]]");
    RatVec indicator(2, Rational(0));
    indicator[bushy] = 1;
    CHECK(in_span(dep.kernel_basis, indicator));
}

TEST_CASE("kernel of the autonomized problem pairs the two failing trees") {
    PolynomialMap f = load_problem_file(fixture("scalar_riccati_autonomized.json"));
    auto samples = draw_samples(2, 20, 42);
    DependencyReport dep = dependency_kernel(5, f, samples);
    CHECK(dep.n_trees == 9);
    RatVec v(9, Rational(0));
    v[tree_index(dep.trees, "[[][[[]]]]")] = 1;
    v[tree_index(dep.trees, "[[[][[]]]]")] = -1;
    CHECK(in_span(dep.kernel_basis, v));
    // Every reported basis vector annihilates fresh samples too.
    ElementaryDifferentials ed(f);
    for (const auto& y : draw_samples(2, 10, 314)) {
        for (const auto& basis : dep.kernel_basis) {
            RatVec acc(2, Rational(0));
            for (std::size_t i = 0; i < basis.size(); ++i) {
                if (basis[i] == 0) continue;
                RatVec val = ed.eval(dep.trees[i], y);
                for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += basis[i] * val[k];
            }
            CHECK(acc == RatVec(2, Rational(0)));
        }
    }
}

TEST_CASE("generic 2d problem has independent differentials through order 4") {
    PolynomialMap f = load_problem_file(fixture("quadratic2d.json"));
    auto samples = draw_samples(2, 20, 42);
    for (int j = 1; j <= 4; ++j) {
        DependencyReport dep = dependency_kernel(j, f, samples);
        CHECK(dep.kernel_basis.empty());
        CHECK(dep.rank == dep.n_trees);
    }
}

TEST_CASE("kernel never grows when samples are added") {
    for (const char* name : {"scalar_riccati_autonomized.json", "quadratic2d.json"}) {
        PolynomialMap f = load_problem_file(fixture(name));
        auto all = draw_samples(2, 20, 1234);
        for (int j = 3; j <= 6; ++j) {
            std::size_t prev = SIZE_MAX;
            for (int k : {5, 10, 20}) {
                std::vector<RatVec> part(all.begin(), all.begin() + k);
                DependencyReport dep = dependency_kernel(j, f, part);
                CHECK(dep.kernel_basis.size() <= prev);
                prev = dep.kernel_basis.size();
            }
        }
    }
}

TEST_CASE("refined statuses of the six-stage tableau") {
    Tableau s6 = load_tableau_file(fixture("butcher_s6.json"));
    PolynomialMap aut = load_problem_file(fixture("scalar_riccati_autonomized.json"));
    auto samples = draw_samples(2, 20, 42);
    CHECK(refined_condition(1, s6, aut, samples).status == ResidualStatus::exact_zero);
    CHECK(refined_condition(4, s6, aut, samples).status == ResidualStatus::exact_zero);
    CHECK(refined_condition(5, s6, aut, samples).status ==
          ResidualStatus::certified_probabilistic);
    CHECK(refined_condition(6, s6, aut, samples).status == ResidualStatus::nonzero);

    RefinedConditionResult r5 = refined_condition(5, s6, aut, samples);
    CHECK(r5.order == 5);
    CHECK(r5.sample_count == 20);
    CHECK(r5.degree_bound == 20);  // 5 * degree 4

    PolynomialMap quad = load_problem_file(fixture("quadratic2d.json"));
    CHECK(refined_condition(5, s6, quad, samples).status == ResidualStatus::nonzero);
}

TEST_CASE("the two verdict routes agree everywhere") {
    std::vector<Tableau> tabs{load_tableau_file(fixture("rk4.json")),
                              load_tableau_file(fixture("butcher_s6.json"))};
    std::vector<PolynomialMap> problems{
        load_problem_file(fixture("riccati.json")),
        load_problem_file(fixture("scalar_riccati_autonomized.json")),
        load_problem_file(fixture("quadratic2d.json"))};
    for (const auto& f : problems) {
        auto samples = draw_samples(f.d, 12, 2024);
        for (int j = 1; j <= 6; ++j) {
            DependencyReport dep = dependency_kernel(j, f, samples);
            for (const auto& tab : tabs) {
                RatVec w = residual_weights(dep.trees, tab);
                const bool vanished =
                    refined_condition(j, tab, f, samples).status != ResidualStatus::nonzero;
                CHECK(vanished == in_span(dep.kernel_basis, w));
            }
        }
    }
}

TEST_CASE("verdict is invariant under invertible row mixing") {
    PolynomialMap f = load_problem_file(fixture("scalar_riccati_autonomized.json"));
    Tableau s6 = load_tableau_file(fixture("butcher_s6.json"));
    auto samples = draw_samples(2, 4, 5);
    const int j = 5;

    // Rebuild the sample matrix exactly as dependency_kernel defines it.
    const auto trees = enumerate_trees(j)[static_cast<std::size_t>(j)];
    ElementaryDifferentials ed(f);
    const std::size_t rows = samples.size() * 2;
    RatMat m(rows, RatVec(trees.size(), Rational(0)));
    for (std::size_t col = 0; col < trees.size(); ++col)
        for (std::size_t k = 0; k < samples.size(); ++k) {
            RatVec v = ed.eval(trees[col], samples[k]);
            for (std::size_t i = 0; i < 2; ++i) m[k * 2 + i][col] = v[i];
        }

    std::mt19937 rng(31);
    RatMat mix;
    while (true) {
        mix.assign(rows, RatVec(rows, Rational(0)));
        for (auto& row : mix)
            for (auto& x : row) x = Rational(static_cast<int>(rng() % 11) - 5);
        RatMat probe = mix;
        if (rref(probe).size() == rows) break;  // invertible
    }
    RatMat mixed(rows, RatVec(trees.size(), Rational(0)));
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < trees.size(); ++c)
            for (std::size_t k = 0; k < rows; ++k) mixed[r][c] += mix[r][k] * m[k][c];

    auto kernel_plain = nullspace(m, static_cast<int>(trees.size()));
    auto kernel_mixed = nullspace(mixed, static_cast<int>(trees.size()));
    CHECK(kernel_plain.size() == kernel_mixed.size());
    for (const auto& v : kernel_plain) CHECK(in_span(kernel_mixed, v));
    for (const auto& v : kernel_mixed) CHECK(in_span(kernel_plain, v));

    RatVec w = residual_weights(trees, s6);
    CHECK(in_span(kernel_plain, w) == in_span(kernel_mixed, w));
    CHECK(in_span(kernel_plain, w) ==
          (refined_condition(j, s6, f, samples).status != ResidualStatus::nonzero));
}

TEST_CASE("effective order of the autonomized scalar problem") {
    Tableau s6 = load_tableau_file(fixture("butcher_s6.json"));
    PolynomialMap f = load_problem_file(fixture("scalar_riccati_autonomized.json"));
    OrderReport rep = effective_order(s6, f, 6, 20, 42);
    CHECK(rep.classical_order == 4);
    CHECK_FALSE(rep.classical_capped);
    CHECK(rep.effective_order == 5);
    CHECK_FALSE(rep.effective_capped);
    REQUIRE(rep.status.size() == 7);
    CHECK(rep.status[1] == ResidualStatus::exact_zero);
    CHECK(rep.status[4] == ResidualStatus::exact_zero);
    CHECK(rep.status[5] == ResidualStatus::certified_probabilistic);
    CHECK(rep.status[6] == ResidualStatus::nonzero);
    CHECK(rep.seed == 42);
    CHECK(rep.sample_count == 20);
    // All twenty order-6 trees miss their condition for this tableau.
    CHECK(rep.failing.size() == 20);
    for (const auto& [t, gp] : rep.failing) {
        CHECK(t.order() == 6);
        CHECK(gp != 1);
    }

    // Determinism in the seed, stability of the verdict across seeds.
    OrderReport again = effective_order(s6, f, 6, 20, 42);
    CHECK(again.effective_order == rep.effective_order);
    CHECK(again.failing.size() == rep.failing.size());
    OrderReport other = effective_order(s6, f, 6, 20, 777);
    CHECK(other.effective_order == 5);
    CHECK(other.classical_order == 4);
}

TEST_CASE("effective order of the generic 2d problem") {
    Tableau s6 = load_tableau_file(fixture("butcher_s6.json"));
    PolynomialMap f = load_problem_file(fixture("quadratic2d.json"));
    OrderReport rep = effective_order(s6, f, 6, 20, 42);
    CHECK(rep.classical_order == 4);
    CHECK(rep.effective_order == 4);
    CHECK(rep.status[5] == ResidualStatus::nonzero);
    CHECK(rep.effective_order >= rep.classical_order);
}

TEST_CASE("capped effective order") {
    Tableau s6 = load_tableau_file(fixture("butcher_s6.json"));
    PolynomialMap f = load_problem_file(fixture("scalar_riccati_autonomized.json"));
    OrderReport rep = effective_order(s6, f, 5, 20, 42);
    CHECK(rep.effective_order == 5);
    CHECK(rep.effective_capped);
    CHECK(rep.failing.empty());
}

TEST_CASE("explicit four-stage methods cannot reach order 5 on linear problems") {
    Tableau rk4 = load_tableau_file(fixture("rk4.json"));
    PolynomialMap f = parse_problem(R"({
      "d": 2,
      "components": [
        [{"coeff": "-1", "exponents": [1, 0]}],
        [{"coeff": "1/2", "exponents": [0, 1]}]
      ],
      "y0": ["1", "2"]
    })");
    OrderReport rep = effective_order(rk4, f, 6, 20, 42);
    CHECK(rep.classical_order == 4);
    // The five-chain weight is zero for four explicit stages while the chain
    // differential is not, so order 5 fails even on this degenerate f.
    CHECK(rep.effective_order == 4);
}

TEST_CASE("argument validation") {
    Tableau rk4 = load_tableau_file(fixture("rk4.json"));
    PolynomialMap f = load_problem_file(fixture("riccati.json"));
    CHECK_THROWS_AS(dependency_kernel(0, f, draw_samples(1, 3, 1)), std::invalid_argument);
    CHECK_THROWS_AS(dependency_kernel(3, f, {}), std::invalid_argument);
    std::vector<RatVec> dup{{Rational(1)}, {Rational(1)}};
    CHECK_THROWS_AS(dependency_kernel(3, f, dup), std::invalid_argument);
    std::vector<RatVec> wrong_dim{{Rational(1), Rational(2)}};
    CHECK_THROWS_AS(refined_condition(3, rk4, f, wrong_dim), std::invalid_argument);
    CHECK_THROWS_AS(effective_order(rk4, f, 0, 20, 1), std::invalid_argument);
    CHECK_THROWS_AS(effective_order(rk4, f, 4, 0, 1), std::invalid_argument);
}
