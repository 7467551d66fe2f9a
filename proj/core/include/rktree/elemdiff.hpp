#pragma once

#include <map>
#include <shared_mutex>
#include <string>
#include <utility>
#include <vector>

#include "rktree/rational.hpp"
#include "rktree/tableau.hpp"
#include "rktree/tree.hpp"

namespace rktree {

// Dense derivative tensor of order l: entries (i, i1, ..., il) with each
// index in [0, d), flattened row-major into a d^(l+1) array. Symmetric in the
// last l indices. Dense beats symmetric-compressed here: target sizes are
// d <= 6 and small l, and exactness plus simplicity win.
struct DerivativeTensor {
  int l = 0;
  int d = 0;
  std::vector<Rational> entries;

  const Rational& at(int i, const std::vector<int>& idx) const;
};

// Exact partial-derivative tensor of f at y0 by formal monomial
// differentiation; l = 0 gives f(y0). Identically zero for l > degree(f).
// Throws std::invalid_argument on dimension mismatch or l < 0.
DerivativeTensor derivative_tensor(const PolynomialMap& f, int l, const RatVec& y0);

// Contracts the last l modes of the tensor with the given vectors (one per
// mode, in order). Result has length d. The tensor's partial symmetry makes
// the outcome independent of the vector order; tests exercise that.
RatVec contract_last_modes(const DerivativeTensor& tensor, const std::vector<RatVec>& vectors);

// Elementary differentials of one right-hand side:
//   leaf(f) = f(y0),   [T1...Tl](f) = f^(l)(y0) contracted with the Ti values.
// Values and derivative tensors are memoized per (tree encoding, y0) — the
// refined-condition machinery revisits every tree of an order at many sample
// points. Cache is thread-safe; duplicated computation is acceptable.
class ElementaryDifferentials {
 public:
  explicit ElementaryDifferentials(PolynomialMap f);

  const PolynomialMap& problem() const { return f_; }

  RatVec eval(const RootedTree& t, const RatVec& y0) const;

 private:
  const DerivativeTensor& tensor(int l, const RatVec& y0, const std::string& y0_key) const;

  PolynomialMap f_;
  mutable std::shared_mutex mu_;
  mutable std::map<std::pair<std::string, std::string>, RatVec> cache_;
  mutable std::map<std::pair<int, std::string>, DerivativeTensor> tensors_;
};

// One-shot convenience.
RatVec elementary_differential(const RootedTree& t, const PolynomialMap& f, const RatVec& y0);

// Decomposition cross-check: stacks the stage system F~ = (A ⊗ I) F in
// dimension s*d, evaluates T(F~) at the replicated point 1_s ⊗ y0 by direct
// recursion, and compares entrywise with Phi(T) ⊗ T(f)(y0), exactly.
// Throws std::invalid_argument beyond the oracle scale (s*d <= 64, |T| <= 5).
bool kronecker_decomposition_check(const RootedTree& t, const Tableau& tab,
                                   const PolynomialMap& f, const RatVec& y0);

}  // namespace rktree
