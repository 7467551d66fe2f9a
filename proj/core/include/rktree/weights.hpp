#pragma once

#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rktree/rational.hpp"
#include "rktree/tableau.hpp"
#include "rktree/tree.hpp"

namespace rktree {

// Elementary weights of one tableau. The diagonal core contracted with l
// stage vectors is exactly their elementwise product, so the recursion is
//   Phi(leaf) = A*1,   Phi([T1...Tl]) = A*(Phi(T1) ⊙ ... ⊙ Phi(Tl)),
//   phi(T)    = the same contraction with b replacing the root's A.
// Stage vectors are memoized per tree; order-p checks reuse subtrees heavily.
// The cache is thread-safe (duplicated computation possible, results equal).
class ElementaryWeights {
 public:
  explicit ElementaryWeights(Tableau tab);

  const Tableau& tableau() const { return tab_; }

  RatVec phi_vector(const RootedTree& t) const;
  Rational phi(const RootedTree& t) const;

 private:
  RatVec hadamard_of_children(const RootedTree& t) const;

  Tableau tab_;
  mutable std::shared_mutex mu_;
  mutable std::unordered_map<std::string, RatVec> cache_;
};

// One-shot conveniences; build a transient evaluator.
RatVec phi_vector(const RootedTree& t, const Tableau& tab);
Rational phi(const RootedTree& t, const Tableau& tab);

struct ClassicalOrderReport {
  int order = 0;  // largest verified order; equals max_order when capped
  bool capped = false;  // every order up to max_order passed
  // Order order+1 trees with gamma*phi != 1, with their gamma*phi values.
  // Empty when capped.
  std::vector<std::pair<RootedTree, Rational>> failing;
};

// Largest p <= max_order with gamma(T)*phi(T) == 1 for all |T| <= p, by exact
// comparison. Throws std::invalid_argument when max_order < 1.
ClassicalOrderReport classical_order(const Tableau& tab, int max_order);

}  // namespace rktree
