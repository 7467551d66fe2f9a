#pragma once

#include <vector>

#include "rktree/rational.hpp"
#include "rktree/tree.hpp"

namespace rktree {

// A differentiation step sequence (alpha_1, ..., alpha_k) with alpha_i <= i.
// Step i attaches a new leaf labelled i+1 to the vertex labelled alpha_i.
struct DifferentiationPath {
  std::vector<int> steps;
};

// Labelled rooted tree on vertices 1..k+1 (1 = root) stored as a parent
// array: parent[i] is the parent of vertex i+2. Parents precede children
// (every edge (i, j) has i < j), so the array is the whole structure, and
// sibling label order never needs storing.
struct LabelledTree {
  std::vector<int> parent;

  int order() const { return static_cast<int>(parent.size()) + 1; }
};

// All k! paths in ascending lexicographic order of steps.
// Throws std::invalid_argument when k < 1. Factorial growth; the CLI caps k at 8.
std::vector<DifferentiationPath> enumerate_paths(int k);

// The bijection: builds the labelled tree of order k+1 by successive leaf
// attachment. Throws std::invalid_argument when some alpha_i > i or < 1.
LabelledTree path_to_tree(const DifferentiationPath& path);

// Strips labels, producing the canonical unlabelled shape.
// Throws std::invalid_argument when some parent entry is out of range.
RootedTree shape_of(const LabelledTree& lt);

// Groups all k! paths by shape. The value at each shape equals alpha(T);
// values sum to k!.
TreeMap<BigInt> multiplicity_histogram(int k);

// Derivative-pattern multi-index m = (m_1, ..., m_k): m_i factors of the i-th
// derivative. Member of S_{k,l} iff sum m_i = l and sum i*m_i = k.
struct MultiIndex {
  std::vector<int> m;
};

// All of S_{k,l} in descending lexicographic order.
// Throws std::invalid_argument unless 1 <= l <= k.
std::vector<MultiIndex> enumerate_multiindices(int k, int l);

// eta(m) = k! / (prod (i!)^{m_i} * prod m_i!), exact. Always a positive
// integer for valid m. Throws std::invalid_argument when m lies in no S_{k,l}.
Rational eta(const MultiIndex& m);

}  // namespace rktree
