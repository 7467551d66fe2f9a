// End-to-end acceptance run: one pass/fail line per criterion, nonzero exit
// when anything fails. Each criterion exercises the library through public
// headers only and checks against values derivable by hand or by the
// independent oracles in this directory.
#include <cstdio>
#include <exception>
#include <functional>
#include <random>
#include <set>
#include <vector>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "rktree/elemdiff.hpp"
#include "rktree/integrate.hpp"
#include "rktree/labelling.hpp"
#include "rktree/series.hpp"
#include "rktree/superconv.hpp"
#include "rktree/tableau.hpp"
#include "rktree/tree.hpp"
#include "rktree/weights.hpp"

using namespace rktree;

namespace {

int failures = 0;

void criterion(int num, const char* label, const std::function<bool()>& body) {
    bool ok = false;
    try {
        ok = body();
    } catch (const std::exception& e) {
        std::printf("[FAIL] criterion %d: %s (exception: %s)\n", num, label, e.what());
        ++failures;
        return;
    }
    std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", num, label);
    if (!ok) ++failures;
}

BigInt factorial(int n) {
    BigInt acc = 1;
    for (int i = 2; i <= n; ++i) acc *= i;
    return acc;
}

Tableau random_full_tableau(std::mt19937& rng, int s) {
    Tableau tab;
    tab.s = s;
    tab.A.assign(static_cast<size_t>(s), RatVec(static_cast<size_t>(s)));
    tab.b.resize(static_cast<size_t>(s));
    tab.c.resize(static_cast<size_t>(s));
    auto draw = [&rng] {
        return Rational(static_cast<int>(rng() % 7) - 3, static_cast<int>(rng() % 2) + 1);
    };
    for (auto& row : tab.A)
        for (auto& x : row) x = draw();
    for (auto& x : tab.b) x = draw();
    for (int i = 0; i < s; ++i) {
        tab.c[static_cast<size_t>(i)] = 0;
        for (const auto& x : tab.A[static_cast<size_t>(i)]) tab.c[static_cast<size_t>(i)] += x;
    }
    return tab;
}

}  // namespace

int main() {
    criterion(1, "tree census and count identities through order 8", [] {
        const auto levels = enumerate_trees(8);
        const auto counts = oracles::shape_counts_by_parent_arrays(8);
        const std::vector<long long> expected{1, 1, 2, 4, 9, 20, 48, 115};
        for (int p = 1; p <= 8; ++p) {
            const auto& level = levels[static_cast<size_t>(p)];
            if (static_cast<long long>(level.size()) != expected[static_cast<size_t>(p - 1)])
                return false;
            if (counts[static_cast<size_t>(p - 1)] != expected[static_cast<size_t>(p - 1)])
                return false;
            BigInt alpha_sum = 0;
            for (const auto& t : level) {
                TreeCoefficients c = coefficients(t);
                if (c.alpha * c.sigma * c.gamma != factorial(p)) return false;
                alpha_sum += c.alpha;
            }
            if (alpha_sum != factorial(p - 1)) return false;
        }
        return true;
    });

    criterion(2, "differentiation paths biject onto labelled trees with shape counts alpha", [] {
        for (int k = 1; k <= 6; ++k) {
            const auto paths = enumerate_paths(k);
            size_t fact = 1;
            for (int i = 2; i <= k; ++i) fact *= static_cast<size_t>(i);
            if (paths.size() != fact) return false;
            std::set<std::vector<int>> seen;
            TreeMap<BigInt> counted;
            for (const auto& p : paths) {
                LabelledTree lt = path_to_tree(p);
                for (size_t i = 0; i < lt.parent.size(); ++i)
                    if (lt.parent[i] < 1 || lt.parent[i] > static_cast<int>(i) + 1) return false;
                if (!seen.insert(lt.parent).second) return false;
                counted[shape_of(lt)] += 1;
            }
            TreeMap<BigInt> hist = multiplicity_histogram(k);
            if (counted != hist) return false;
            for (const auto& [t, n] : hist)
                if (n != coefficients(t).alpha) return false;
        }
        return true;
    });

    criterion(3, "derivative-pattern weights sum to Stirling partition numbers", [] {
        for (int k = 1; k <= 8; ++k)
            for (int l = 1; l <= k; ++l) {
                Rational sum = 0;
                for (const auto& m : enumerate_multiindices(k, l)) {
                    Rational e = eta(m);
                    if (e <= 0 || boost::multiprecision::denominator(e) != 1) return false;
                    sum += e;
                }
                if (sum != Rational(oracles::stirling2(k, l))) return false;
            }
        return true;
    });

    criterion(4, "six-stage tableau: documented weights, order 4, weighted-sum identity", [] {
        Tableau s6 = load_tableau_file(fixture("butcher_s6.json"));
        ElementaryWeights ew(s6);
        RootedTree t1 = RootedTree::parse("[[][[[]]]]");
        RootedTree t2 = RootedTree::parse("[[[][[]]]]");
        if (ew.phi(t1) != Rational(41, 960)) return false;
        if (ew.phi(t1) != Rational(1, 30) + Rational(3, 320)) return false;
        if (ew.phi(t2) != Rational(1, 64)) return false;
        if (ew.phi(t2) != Rational(1, 40) - Rational(3, 320)) return false;
        ClassicalOrderReport rep = classical_order(s6, 6);
        if (rep.order != 4 || rep.capped) return false;
        if (rep.failing.size() != 2) return false;
        if (rep.failing[0].first != t1 || rep.failing[1].first != t2) return false;
        // alpha * gamma * phi summed over the two failing trees.
        Rational identity = Rational(4) * 30 * ew.phi(t1) + Rational(3) * 40 * ew.phi(t2);
        return identity == 7 && coefficients(t1).alpha + coefficients(t2).alpha == 7;
    });

    criterion(5, "effective order exceeds classical order exactly when f is special", [] {
        Tableau s6 = load_tableau_file(fixture("butcher_s6.json"));
        PolynomialMap aut = load_problem_file(fixture("scalar_riccati_autonomized.json"));
        PolynomialMap quad = load_problem_file(fixture("quadratic2d.json"));
        OrderReport special = effective_order(s6, aut, 6, 20, 42);
        OrderReport generic = effective_order(s6, quad, 6, 20, 42);
        if (special.classical_order != 4 || special.effective_order != 5) return false;
        if (special.status[5] != ResidualStatus::certified_probabilistic) return false;
        if (special.status[6] != ResidualStatus::nonzero) return false;
        if (generic.classical_order != 4 || generic.effective_order != 4) return false;
        return generic.status[5] == ResidualStatus::nonzero;
    });

    criterion(6, "stacked-stage decomposition identity on random tableaus", [] {
        std::mt19937 rng(616);
        std::vector<PolynomialMap> problems{load_problem_file(fixture("riccati.json")),
                                            load_problem_file(fixture("quadratic2d.json"))};
        const auto levels = enumerate_trees(4);
        int cases = 0;
        for (int rep = 0; rep < 4; ++rep)
            for (int s = 1; s <= 3; ++s) {
                Tableau tab = random_full_tableau(rng, s);
                for (const auto& f : problems)
                    for (int p = 1; p <= 4; ++p)
                        for (const auto& t : levels[static_cast<size_t>(p)]) {
                            if (!kronecker_decomposition_check(t, tab, f, f.y0)) return false;
                            ++cases;
                        }
            }
        return cases >= 50;
    });

    criterion(7, "tree-sum Taylor derivatives match closed-form derivatives", [] {
        PolynomialMap ric = load_problem_file(fixture("riccati.json"));
        for (Rational y0 : {Rational(1, 2), Rational(1), Rational(-2, 3)}) {
            Rational pow = y0 * y0;
            for (int k = 1; k <= 6; ++k) {
                // y' = y^2 has y^(k) = k! y0^(k+1).
                if (exact_taylor_coeff(k, ric, {y0}) != RatVec{Rational(factorial(k)) * pow})
                    return false;
                pow *= y0;
            }
        }
        PolynomialMap lin = parse_problem(R"({
          "d": 2,
          "components": [
            [{"coeff": "-1", "exponents": [1, 0]}],
            [{"coeff": "1/2", "exponents": [0, 1]}]
          ],
          "y0": ["1", "4"]
        })");
        RatVec expect{Rational(1), Rational(4)};
        for (int k = 1; k <= 6; ++k) {
            expect[0] *= -1;
            expect[1] *= Rational(1, 2);
            if (exact_taylor_coeff(k, lin, lin.y0) != expect) return false;
        }
        return true;
    });

    criterion(8, "measured convergence slopes sit in the predicted bands", [] {
        Tableau rk4 = load_tableau_file(fixture("rk4.json"));
        Tableau s6 = load_tableau_file(fixture("butcher_s6.json"));
        PolynomialMap ric = load_problem_file(fixture("riccati.json"));
        PolynomialMap aut = load_problem_file(fixture("scalar_riccati_autonomized.json"));
        PolynomialMap quad = load_problem_file(fixture("quadratic2d.json"));
        const std::vector<double> hs{1.0 / 8, 1.0 / 16, 1.0 / 32, 1.0 / 64, 1.0 / 128};
        auto in_band = [&](const Tableau& tab, const PolynomialMap& f, const FloatVec& y0,
                           double lo, double hi) {
            ConvergenceEstimate est = empirical_order(tab, f, y0, 1.0, hs);
            return !est.degenerate && est.median_slope > lo && est.median_slope < hi;
        };
        if (!in_band(rk4, ric, {0.5}, 3.7, 4.3)) return false;
        if (!in_band(s6, aut, {0.5, 0.0}, 4.7, 5.3)) return false;
        return in_band(s6, quad, {0.5, 1.0 / 3.0}, 3.7, 4.3);
    });

    if (failures > 0) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
