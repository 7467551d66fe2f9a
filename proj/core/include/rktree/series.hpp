#pragma once

#include <vector>

#include "rktree/elemdiff.hpp"
#include "rktree/rational.hpp"
#include "rktree/tableau.hpp"
#include "rktree/tree.hpp"
#include "rktree/weights.hpp"

namespace rktree {

// One tree's contribution to an order-k Taylor coefficient. Weight is
// alpha(T) on the exact side and alpha(T)*gamma(T)*phi(T) on the RK side;
// the coefficient is the weighted sum of values.
struct SeriesTerm {
  RootedTree tree;
  Rational weight;
  RatVec value;  // T(f)(y0), length d
};

// Derivative-value convention throughout: these are y^(k), not y^(k)/k!.
//
// Exact flow:    y^(k)      = sum over |T| = k of alpha(T) T(f)(y0).
// RK map at h=0: y1^(k)     = sum of alpha(T) gamma(T) phi(T) T(f)(y0).
// Order residual: r_j(y0)   = sum over |T| = j of alpha(T)(gamma(T)phi(T) - 1) T(f)(y0),
// so numerical - exact == residual identically.
//
// k is capped at 9 (286 trees at order 9 stay sub-second with memoization);
// beyond that or below 1 throws std::invalid_argument.
RatVec exact_taylor_coeff(int k, const PolynomialMap& f, const RatVec& y0);
RatVec numerical_taylor_coeff(int k, const Tableau& tab, const PolynomialMap& f, const RatVec& y0);
RatVec order_residual(int j, const Tableau& tab, const PolynomialMap& f, const RatVec& y0);

std::vector<SeriesTerm> exact_series_terms(int k, const PolynomialMap& f, const RatVec& y0);
std::vector<SeriesTerm> numerical_series_terms(int k, const Tableau& tab, const PolynomialMap& f,
                                               const RatVec& y0);

// Evaluator-reusing variants for callers that sweep many orders or points.
RatVec exact_taylor_coeff(int k, const ElementaryDifferentials& ed, const RatVec& y0);
RatVec numerical_taylor_coeff(int k, const ElementaryWeights& ew, const ElementaryDifferentials& ed,
                              const RatVec& y0);
RatVec order_residual(int j, const ElementaryWeights& ew, const ElementaryDifferentials& ed,
                      const RatVec& y0);

}  // namespace rktree
