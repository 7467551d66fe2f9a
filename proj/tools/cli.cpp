#include "cli.hpp"

#include <unistd.h>

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rktree/elemdiff.hpp"
#include "rktree/errors.hpp"
#include "rktree/integrate.hpp"
#include "rktree/labelling.hpp"
#include "rktree/rational.hpp"
#include "rktree/series.hpp"
#include "rktree/superconv.hpp"
#include "rktree/tableau.hpp"
#include "rktree/tree.hpp"
#include "rktree/weights.hpp"

namespace rktree::cli {

namespace {

using nlohmann::json;

// Shared number rendering so the text table and the JSON payload cannot
// disagree: both go through nlohmann's shortest round-trip double printer.
std::string double_str(double x) { return json(x).dump(); }

std::string bigint_str(const BigInt& v) { return v.str(); }

json rat_json(const Rational& r) { return json(to_string(r)); }

json vec_json(const RatVec& v) {
    json arr = json::array();
    for (const auto& x : v) arr.push_back(to_string(x));
    return arr;
}

std::string pad_right(const std::string& s, std::size_t w) {
    return s + std::string(w > s.size() ? w - s.size() : 0, ' ');
}

std::string pad_left(const std::string& s, std::size_t w) {
    return std::string(w > s.size() ? w - s.size() : 0, ' ') + s;
}

RatVec parse_point(const std::string& text, int d) {
    RatVec out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) out.push_back(parse_rational(item));
    if (static_cast<int>(out.size()) != d)
        throw ValidationError("--at: expected " + std::to_string(d) + " comma-separated values, got " +
                              std::to_string(out.size()));
    return out;
}

std::vector<double> parse_steps(const std::string& text) {
    std::vector<double> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) out.push_back(to_double(parse_rational(item)));
    return out;
}

Tableau load_tableau_with_warnings(const std::string& path) {
    std::vector<std::string> warnings;
    Tableau tab = load_tableau_file(path, &warnings);
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
    return tab;
}

json tableau_json(const Tableau& tab) {
    json jt;
    jt["s"] = tab.s;
    json a = json::array();
    for (const auto& row : tab.A) a.push_back(vec_json(row));
    jt["A"] = a;
    jt["b"] = vec_json(tab.b);
    jt["c"] = vec_json(tab.c);
    return jt;
}

struct Render {
    std::ostringstream text;
    json payload;
    bool styled = false;

    std::string bold(const std::string& s) const {
        return styled ? "\033[1m" + s + "\033[0m" : s;
    }
};

void render_failing(Render& r, int at_order,
                    const std::vector<std::pair<RootedTree, Rational>>& failing) {
    r.text << r.bold("failing at order " + std::to_string(at_order) + ":") << "\n";
    json arr = json::array();
    for (const auto& [t, gp] : failing) {
        r.text << "  " << t.encoding() << "  gamma*phi = " << to_string(gp) << "\n";
        arr.push_back({{"encoding", t.encoding()}, {"gamma_phi", to_string(gp)}});
    }
    r.payload["failing"] = arr;
}

void cmd_trees(Render& r, int max_order) {
    const auto levels = enumerate_trees(max_order);
    struct Row {
        std::string enc, order, sigma, gamma, alpha;
    };
    std::vector<Row> rows;
    json arr = json::array();
    for (int p = 1; p <= max_order; ++p)
        for (const auto& t : levels[static_cast<std::size_t>(p)]) {
            TreeCoefficients c = coefficients(t);
            rows.push_back({t.encoding(), std::to_string(c.order), bigint_str(c.sigma),
                            bigint_str(c.gamma), bigint_str(c.alpha)});
            arr.push_back({{"encoding", t.encoding()},
                           {"order", c.order},
                           {"sigma", bigint_str(c.sigma)},
                           {"gamma", bigint_str(c.gamma)},
                           {"alpha", bigint_str(c.alpha)}});
        }
    std::size_t we = 0, wo = 0, ws = 0, wg = 0, wa = 0;
    for (const auto& row : rows) {
        we = std::max(we, row.enc.size());
        wo = std::max(wo, row.order.size());
        ws = std::max(ws, row.sigma.size());
        wg = std::max(wg, row.gamma.size());
        wa = std::max(wa, row.alpha.size());
    }
    for (const auto& row : rows)
        r.text << pad_right(row.enc, we) << "  " << pad_left(row.order, wo) << "  "
               << pad_left(row.sigma, ws) << "  " << pad_left(row.gamma, wg) << "  "
               << pad_left(row.alpha, wa) << "\n";
    r.payload["command"] = "trees";
    r.payload["max_order"] = max_order;
    r.payload["trees"] = arr;
}

void cmd_paths(Render& r, int k) {
    const TreeMap<BigInt> hist = multiplicity_histogram(k);
    std::size_t we = 0, wc = 0;
    for (const auto& [t, n] : hist) {
        we = std::max(we, t.encoding().size());
        wc = std::max(wc, bigint_str(n).size());
    }
    json arr = json::array();
    for (const auto& [t, n] : hist) {
        r.text << pad_right(t.encoding(), we) << "  " << pad_left(bigint_str(n), wc) << "\n";
        arr.push_back({{"encoding", t.encoding()}, {"count", bigint_str(n)}});
    }
    r.payload["command"] = "paths";
    r.payload["k"] = k;
    r.payload["histogram"] = arr;
}

void cmd_weights(Render& r, const std::string& tableau_path, const std::string& tree_text,
                 bool butcher) {
    const Tableau tab = load_tableau_with_warnings(tableau_path);
    const RootedTree t = RootedTree::parse(tree_text);
    const TreeCoefficients c = coefficients(t);
    const Rational p = phi(t, tab);
    const Rational gp = Rational(c.gamma) * p;
    r.text << r.bold("tree:") << " " << t.encoding() << "\n";
    r.text << "phi: " << to_string(p) << "\n";
    r.text << "gamma: " << bigint_str(c.gamma) << "\n";
    r.text << "gamma*phi: " << to_string(gp) << "\n";
    r.payload["command"] = "weights";
    r.payload["tree"] = t.encoding();
    r.payload["order"] = c.order;
    r.payload["phi"] = rat_json(p);
    r.payload["gamma"] = bigint_str(c.gamma);
    r.payload["gamma_phi"] = rat_json(gp);
    if (butcher) {
        r.text << "\n" << format_butcher(tab);
        r.payload["tableau"] = tableau_json(tab);
    }
}

void cmd_check_order(Render& r, const std::string& tableau_path, int max_order, bool butcher) {
    const Tableau tab = load_tableau_with_warnings(tableau_path);
    const ClassicalOrderReport rep = classical_order(tab, max_order);
    if (rep.capped)
        r.text << r.bold("order:") << " >= " << rep.order << "\n";
    else
        r.text << r.bold("order:") << " " << rep.order << "\n";
    r.payload["command"] = "check-order";
    r.payload["order"] = rep.order;
    r.payload["capped"] = rep.capped;
    r.payload["failing"] = json::array();
    if (!rep.failing.empty()) render_failing(r, rep.order + 1, rep.failing);
    if (butcher) {
        r.text << "\n" << format_butcher(tab);
        r.payload["tableau"] = tableau_json(tab);
    }
}

void cmd_elemdiff(Render& r, const std::string& problem_path, const std::string& tree_text,
                  const std::string& at_text) {
    const PolynomialMap f = load_problem_file(problem_path);
    const RootedTree t = RootedTree::parse(tree_text);
    const RatVec y0 = at_text.empty() ? f.y0 : parse_point(at_text, f.d);
    const RatVec value = elementary_differential(t, f, y0);
    r.text << r.bold("tree:") << " " << t.encoding() << "\n";
    r.text << "at: " << to_string(y0) << "\n";
    r.text << "value: " << to_string(value) << "\n";
    r.payload["command"] = "elemdiff";
    r.payload["tree"] = t.encoding();
    r.payload["at"] = vec_json(y0);
    r.payload["value"] = vec_json(value);
}

void cmd_expand(Render& r, const std::string& problem_path, const std::string& tableau_path,
                int order) {
    const PolynomialMap f = load_problem_file(problem_path);
    const bool with_tableau = !tableau_path.empty();
    Tableau tab;
    if (with_tableau) tab = load_tableau_with_warnings(tableau_path);

    const auto terms = with_tableau ? numerical_series_terms(order, tab, f, f.y0)
                                    : exact_series_terms(order, f, f.y0);
    // For the per-tree listing always show alpha, gamma and (with a tableau)
    // phi separately; the SeriesTerm weight is their product.
    json arr = json::array();
    for (const auto& term : terms) {
        const TreeCoefficients c = coefficients(term.tree);
        r.text << term.tree.encoding() << "  alpha " << bigint_str(c.alpha) << "  gamma "
               << bigint_str(c.gamma);
        json jt = {{"encoding", term.tree.encoding()},
                   {"alpha", bigint_str(c.alpha)},
                   {"gamma", bigint_str(c.gamma)},
                   {"value", vec_json(term.value)}};
        if (with_tableau) {
            const Rational p = phi(term.tree, tab);
            r.text << "  phi " << to_string(p);
            jt["phi"] = to_string(p);
        }
        r.text << "  value " << to_string(term.value) << "\n";
        arr.push_back(std::move(jt));
    }

    const Rational kfact(factorial(static_cast<unsigned>(order)));
    auto scaled = [&](const RatVec& v) {
        RatVec out = v;
        for (auto& x : out) x /= kfact;
        return out;
    };
    const RatVec exact = exact_taylor_coeff(order, f, f.y0);
    const std::string k = std::to_string(order);
    r.text << r.bold("derivative y^(" + k + "):") << " " << to_string(exact) << "\n";
    r.text << "taylor coeff y^(" + k + ")/" + k + "!: " << to_string(scaled(exact)) << "\n";
    r.payload["command"] = "expand";
    r.payload["order"] = order;
    r.payload["terms"] = arr;
    r.payload["derivative"] = vec_json(exact);
    r.payload["taylor_coeff"] = vec_json(scaled(exact));
    if (with_tableau) {
        const RatVec num = numerical_taylor_coeff(order, tab, f, f.y0);
        const RatVec res = order_residual(order, tab, f, f.y0);
        r.text << "rk derivative: " << to_string(num) << "\n";
        r.text << "rk taylor coeff: " << to_string(scaled(num)) << "\n";
        r.text << "residual: " << to_string(res) << "\n";
        r.payload["rk_derivative"] = vec_json(num);
        r.payload["rk_taylor_coeff"] = vec_json(scaled(num));
        r.payload["residual"] = vec_json(res);
    }
}

void cmd_superconv(Render& r, const std::string& tableau_path, const std::string& problem_path,
                   int max_order, int samples, std::uint64_t seed, bool kernel) {
    const Tableau tab = load_tableau_with_warnings(tableau_path);
    const PolynomialMap f = load_problem_file(problem_path);
    const OrderReport rep = effective_order(tab, f, max_order, samples, seed);

    r.text << r.bold("classical: " + std::to_string(rep.classical_order) +
                     ", effective: " + (rep.effective_capped ? ">= " : "") +
                     std::to_string(rep.effective_order))
           << "\n";
    json statuses = json::array();
    for (int j = 1; j <= max_order; ++j) {
        const char* s = to_string(rep.status[static_cast<std::size_t>(j)]);
        r.text << "j=" << j << ": " << s << "\n";
        statuses.push_back({{"order", j}, {"status", s}});
    }
    r.payload["command"] = "superconv";
    r.payload["classical_order"] = rep.classical_order;
    r.payload["classical_capped"] = rep.classical_capped;
    r.payload["effective_order"] = rep.effective_order;
    r.payload["effective_capped"] = rep.effective_capped;
    r.payload["status"] = statuses;
    r.payload["seed"] = rep.seed;
    r.payload["samples"] = rep.sample_count;
    r.payload["degree_bound"] = rep.degree_bound;
    r.payload["failing"] = json::array();
    if (!rep.failing.empty()) render_failing(r, rep.effective_order + 1, rep.failing);
    r.text << "seed: " << rep.seed << ", samples: " << rep.sample_count
           << ", degree bound: " << rep.degree_bound << "\n";

    if (kernel) {
        const auto pts = draw_samples(f.d, samples, seed);
        json jk = json::array();
        for (int j = 1; j <= max_order; ++j) {
            const DependencyReport dep = dependency_kernel(j, f, pts);
            const int dim = static_cast<int>(dep.kernel_basis.size());
            r.text << r.bold("kernel at order " + std::to_string(j)) << " (rank " << dep.rank
                   << " of " << dep.n_trees << ", dim " << dim << ")\n";
            json basis = json::array();
            for (std::size_t v = 0; v < dep.kernel_basis.size(); ++v) {
                r.text << "  basis " << v + 1 << ":";
                json entries = json::array();
                bool first = true;
                for (std::size_t i = 0; i < dep.trees.size(); ++i) {
                    const Rational& cf = dep.kernel_basis[v][i];
                    if (cf == 0) continue;
                    r.text << (first ? " " : ", ") << dep.trees[i].encoding() << " = "
                           << to_string(cf);
                    first = false;
                    entries.push_back(
                        {{"encoding", dep.trees[i].encoding()}, {"coeff", to_string(cf)}});
                }
                r.text << "\n";
                basis.push_back(std::move(entries));
            }
            jk.push_back({{"order", j},
                          {"n_trees", dep.n_trees},
                          {"rank", dep.rank},
                          {"basis", std::move(basis)}});
        }
        r.payload["kernel"] = std::move(jk);
    }
}

void cmd_converge(Render& r, const std::string& tableau_path, const std::string& problem_path,
                  const std::string& h_text, const std::string& reference) {
    const Tableau tab = load_tableau_with_warnings(tableau_path);
    const PolynomialMap f = load_problem_file(problem_path);
    if (!f.t_end)
        throw ValidationError("problem file has no t_end; convergence studies need a horizon");
    const std::vector<double> hs = parse_steps(h_text);
    const FloatVec y0 = to_double(f.y0);
    const ConvergenceEstimate est =
        empirical_order(tab, f, y0, to_double(*f.t_end), hs, reference);

    struct Row {
        std::string h, error, slope;
    };
    std::vector<Row> rows;
    json jrows = json::array();
    for (std::size_t i = 0; i < est.h.size(); ++i) {
        json jr = {{"h", est.h[i]}, {"error", est.errors[i]}};
        Row row{double_str(est.h[i]), double_str(est.errors[i]), "-"};
        if (i > 0) {
            const double s = est.slopes[i - 1];
            if (std::isnan(s))
                jr["slope"] = nullptr;
            else {
                jr["slope"] = s;
                row.slope = double_str(s);
            }
        } else {
            jr["slope"] = nullptr;
        }
        rows.push_back(std::move(row));
        jrows.push_back(std::move(jr));
    }
    std::size_t wh = 1, we = 5, ws = 5;
    for (const auto& row : rows) {
        wh = std::max(wh, row.h.size());
        we = std::max(we, row.error.size());
        ws = std::max(ws, row.slope.size());
    }
    r.text << r.bold("reference:") << " " << est.reference << "\n";
    r.text << pad_right("h", wh) << "  " << pad_right("error", we) << "  " << "slope" << "\n";
    for (const auto& row : rows)
        r.text << pad_right(row.h, wh) << "  " << pad_right(row.error, we) << "  " << row.slope
               << "\n";
    if (est.degenerate) r.text << "degenerate: all errors sit at the noise floor\n";
    r.text << r.bold("median slope:") << " "
           << (std::isnan(est.median_slope) ? std::string("-") : double_str(est.median_slope))
           << "\n";
    r.payload["command"] = "converge";
    r.payload["reference"] = est.reference;
    r.payload["degenerate"] = est.degenerate;
    r.payload["rows"] = jrows;
    if (std::isnan(est.median_slope))
        r.payload["median_slope"] = nullptr;
    else
        r.payload["median_slope"] = est.median_slope;
}

}  // namespace

CommandResult run(const std::vector<std::string>& args) {
    CLI::App app{"Rooted-tree order analysis for Runge-Kutta methods"};
    app.name("rktree");
    app.require_subcommand(1);
    // `converge --h` needs the "h" name, so help is long-form only.
    app.set_help_flag("--help", "print help");

    bool json_mode = false;
    app.add_flag("--json", json_mode, "structured output instead of text");

    auto add_subcommand = [&app](const std::string& name, const std::string& desc) {
        CLI::App* sub = app.add_subcommand(name, desc);
        sub->fallthrough();
        sub->set_help_flag("--help", "print help");
        return sub;
    };

    int trees_max_order = 4;
    auto* sc_trees = add_subcommand("trees", "list trees with order, sigma, gamma, alpha");
    sc_trees->add_option("--max-order", trees_max_order, "largest order to list")
        ->check(CLI::Range(1, 12))
        ->capture_default_str();

    int paths_k = 0;
    auto* sc_paths = add_subcommand("paths", "histogram of differentiation paths by shape");
    sc_paths->add_option("--k", paths_k, "path length (k! paths, trees of order k+1)")
        ->check(CLI::Range(1, 8))
        ->required();

    std::string w_tableau, w_tree, w_format = "plain";
    auto* sc_weights = add_subcommand("weights", "elementary weight of one tree");
    sc_weights->add_option("--tableau", w_tableau, "tableau JSON file")->required();
    sc_weights->add_option("--tree", w_tree, "bracket encoding")->required();
    sc_weights->add_option("--format", w_format, "plain or butcher (adds the tableau table)")
        ->check(CLI::IsMember({"plain", "butcher"}));

    std::string co_tableau, co_format = "plain";
    int co_max_order = 6;
    auto* sc_check = add_subcommand("check-order", "classical order of a tableau");
    sc_check->add_option("--tableau", co_tableau, "tableau JSON file")->required();
    sc_check->add_option("--max-order", co_max_order, "orders to verify before capping")
        ->check(CLI::Range(1, 12))
        ->capture_default_str();
    sc_check->add_option("--format", co_format, "plain or butcher (adds the tableau table)")
        ->check(CLI::IsMember({"plain", "butcher"}));

    std::string ed_problem, ed_tree, ed_at;
    auto* sc_elemdiff = add_subcommand("elemdiff", "elementary differential of one tree");
    sc_elemdiff->add_option("--problem", ed_problem, "problem JSON file")->required();
    sc_elemdiff->add_option("--tree", ed_tree, "bracket encoding")->required();
    sc_elemdiff->add_option("--at", ed_at, "evaluation point, comma-separated rationals");

    std::string ex_problem, ex_tableau;
    int ex_order = 0;
    auto* sc_expand = add_subcommand("expand", "Taylor terms of one order, tree by tree");
    sc_expand->add_option("--problem", ex_problem, "problem JSON file")->required();
    sc_expand->add_option("--tableau", ex_tableau, "tableau JSON file (adds the RK side)");
    sc_expand->add_option("--order", ex_order, "derivative order")
        ->check(CLI::Range(1, 9))
        ->required();

    std::string su_tableau, su_problem;
    int su_max_order = 6, su_samples = 20;
    std::uint64_t su_seed = 0;
    bool su_kernel = false;
    auto* sc_super = add_subcommand("superconv", "effective order for one right-hand side");
    sc_super->add_option("--tableau", su_tableau, "tableau JSON file")->required();
    sc_super->add_option("--problem", su_problem, "problem JSON file")->required();
    sc_super->add_option("--max-order", su_max_order, "largest order to test")
        ->check(CLI::Range(1, 8))
        ->capture_default_str();
    sc_super->add_option("--samples", su_samples, "sample points per residual check")
        ->check(CLI::Range(1, 1000000))
        ->capture_default_str();
    sc_super->add_option("--seed", su_seed, "sample RNG seed (results are a function of it)")
        ->required();
    sc_super->add_flag("--kernel", su_kernel, "also print dependency kernels per order");

    std::string cv_tableau, cv_problem, cv_h = "1/8,1/16,1/32,1/64,1/128", cv_reference = "auto";
    auto* sc_converge = add_subcommand("converge", "empirical convergence order");
    sc_converge->add_option("--tableau", cv_tableau, "tableau JSON file")->required();
    sc_converge->add_option("--problem", cv_problem, "problem JSON file")->required();
    sc_converge->add_option("--h", cv_h, "comma-separated rational step sizes, decreasing")
        ->capture_default_str();
    sc_converge
        ->add_option("--reference", cv_reference,
                     "auto, tiny-step, or a closed-form registry name")
        ->capture_default_str();

    CommandResult result;
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        std::ostringstream out, err;
        const int code = app.exit(e, out, err);
        result.exit_code = code == 0 ? 0 : 2;
        result.text = code == 0 ? out.str() : err.str();
        return result;
    }

    Render r;
    r.styled = !json_mode && std::getenv("NO_COLOR") == nullptr && isatty(STDOUT_FILENO) == 1;
    try {
        if (app.got_subcommand(sc_trees)) cmd_trees(r, trees_max_order);
        else if (app.got_subcommand(sc_paths)) cmd_paths(r, paths_k);
        else if (app.got_subcommand(sc_weights)) cmd_weights(r, w_tableau, w_tree, w_format == "butcher");
        else if (app.got_subcommand(sc_check)) cmd_check_order(r, co_tableau, co_max_order, co_format == "butcher");
        else if (app.got_subcommand(sc_elemdiff)) cmd_elemdiff(r, ed_problem, ed_tree, ed_at);
        else if (app.got_subcommand(sc_expand)) cmd_expand(r, ex_problem, ex_tableau, ex_order);
        else if (app.got_subcommand(sc_super)) cmd_superconv(r, su_tableau, su_problem, su_max_order, su_samples, su_seed, su_kernel);
        else if (app.got_subcommand(sc_converge)) cmd_converge(r, cv_tableau, cv_problem, cv_h, cv_reference);
    } catch (const std::exception& e) {
        result.exit_code = 1;
        result.text = std::string("error: ") + e.what() + "\n";
        return result;
    }

    result.exit_code = 0;
    result.payload = std::move(r.payload);
    result.text = json_mode ? result.payload.dump(2) + "\n" : r.text.str();
    return result;
}

}  // namespace rktree::cli
