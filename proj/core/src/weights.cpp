#include "rktree/weights.hpp"

#include <mutex>
#include <stdexcept>

namespace rktree {

ElementaryWeights::ElementaryWeights(Tableau tab) : tab_(std::move(tab)) {}

// Elementwise product of the children's stage vectors; the empty product is
// the all-ones vector, which makes the leaf case fall out of the recursion.
RatVec ElementaryWeights::hadamard_of_children(const RootedTree& t) const {
  RatVec prod(static_cast<size_t>(tab_.s), Rational(1));
  for (const auto& child : t.children()) {
    RatVec pc = phi_vector(child);
    for (size_t i = 0; i < prod.size(); ++i) prod[i] *= pc[i];
  }
  return prod;
}

RatVec ElementaryWeights::phi_vector(const RootedTree& t) const {
  {
    std::shared_lock lock(mu_);
    if (auto it = cache_.find(t.encoding()); it != cache_.end()) return it->second;
  }
  RatVec prod = hadamard_of_children(t);
  RatVec out(static_cast<size_t>(tab_.s), Rational(0));
  for (size_t i = 0; i < out.size(); ++i)
    for (size_t j = 0; j < prod.size(); ++j) out[i] += tab_.A[i][j] * prod[j];
  {
    std::unique_lock lock(mu_);
    cache_.emplace(t.encoding(), out);
  }
  return out;
}

Rational ElementaryWeights::phi(const RootedTree& t) const {
  RatVec prod = hadamard_of_children(t);
  Rational out = 0;
  for (size_t j = 0; j < prod.size(); ++j) out += tab_.b[j] * prod[j];
  return out;
}

RatVec phi_vector(const RootedTree& t, const Tableau& tab) {
  return ElementaryWeights(tab).phi_vector(t);
}

Rational phi(const RootedTree& t, const Tableau& tab) { return ElementaryWeights(tab).phi(t); }

ClassicalOrderReport classical_order(const Tableau& tab, int max_order) {
  if (max_order < 1) throw std::invalid_argument("classical_order: max_order must be >= 1");
  ElementaryWeights ew(tab);
  auto levels = enumerate_trees(max_order);
  ClassicalOrderReport report;
  for (int p = 1; p <= max_order; ++p) {
    std::vector<std::pair<RootedTree, Rational>> failing;
    for (const auto& t : levels[static_cast<size_t>(p)]) {
      Rational gp = Rational(coefficients(t).gamma) * ew.phi(t);
      if (gp != 1) failing.emplace_back(t, gp);
    }
    if (!failing.empty()) {
      report.order = p - 1;
      report.capped = false;
      report.failing = std::move(failing);
      return report;
    }
  }
  report.order = max_order;
  report.capped = true;
  return report;
}

}  // namespace rktree
