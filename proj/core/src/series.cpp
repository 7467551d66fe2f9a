#include "rktree/series.hpp"

#include <functional>
#include <stdexcept>

namespace rktree {

namespace {

void check_order_arg(int k) {
  if (k < 1 || k > 9)
    throw std::invalid_argument("series: order must lie in [1, 9] (286 trees at order 9)");
}

RatVec weighted_sum(int k, const ElementaryDifferentials& ed, const RatVec& y0,
                    const std::function<Rational(const RootedTree&)>& weight) {
  auto levels = enumerate_trees(k);
  RatVec out(y0.size(), Rational(0));
  for (const auto& t : levels[static_cast<size_t>(k)]) {
    Rational w = weight(t);
    if (w == 0) continue;
    RatVec v = ed.eval(t, y0);
    for (size_t i = 0; i < out.size(); ++i) out[i] += w * v[i];
  }
  return out;
}

}  // namespace

RatVec exact_taylor_coeff(int k, const ElementaryDifferentials& ed, const RatVec& y0) {
  check_order_arg(k);
  return weighted_sum(k, ed, y0,
                      [](const RootedTree& t) { return Rational(coefficients(t).alpha); });
}

RatVec numerical_taylor_coeff(int k, const ElementaryWeights& ew, const ElementaryDifferentials& ed,
                              const RatVec& y0) {
  check_order_arg(k);
  return weighted_sum(k, ed, y0, [&](const RootedTree& t) {
    auto c = coefficients(t);
    return Rational(c.alpha) * Rational(c.gamma) * ew.phi(t);
  });
}

RatVec order_residual(int j, const ElementaryWeights& ew, const ElementaryDifferentials& ed,
                      const RatVec& y0) {
  check_order_arg(j);
  return weighted_sum(j, ed, y0, [&](const RootedTree& t) {
    auto c = coefficients(t);
    return Rational(c.alpha) * (Rational(c.gamma) * ew.phi(t) - 1);
  });
}

RatVec exact_taylor_coeff(int k, const PolynomialMap& f, const RatVec& y0) {
  return exact_taylor_coeff(k, ElementaryDifferentials(f), y0);
}

RatVec numerical_taylor_coeff(int k, const Tableau& tab, const PolynomialMap& f, const RatVec& y0) {
  return numerical_taylor_coeff(k, ElementaryWeights(tab), ElementaryDifferentials(f), y0);
}

RatVec order_residual(int j, const Tableau& tab, const PolynomialMap& f, const RatVec& y0) {
  return order_residual(j, ElementaryWeights(tab), ElementaryDifferentials(f), y0);
}

std::vector<SeriesTerm> exact_series_terms(int k, const PolynomialMap& f, const RatVec& y0) {
  check_order_arg(k);
  ElementaryDifferentials ed(f);
  auto levels = enumerate_trees(k);
  std::vector<SeriesTerm> out;
  for (const auto& t : levels[static_cast<size_t>(k)])
    out.push_back({t, Rational(coefficients(t).alpha), ed.eval(t, y0)});
  return out;
}

std::vector<SeriesTerm> numerical_series_terms(int k, const Tableau& tab, const PolynomialMap& f,
                                               const RatVec& y0) {
  check_order_arg(k);
  ElementaryWeights ew(tab);
  ElementaryDifferentials ed(f);
  auto levels = enumerate_trees(k);
  std::vector<SeriesTerm> out;
  for (const auto& t : levels[static_cast<size_t>(k)]) {
    auto c = coefficients(t);
    out.push_back({t, Rational(c.alpha) * Rational(c.gamma) * ew.phi(t), ed.eval(t, y0)});
  }
  return out;
}

}  // namespace rktree
