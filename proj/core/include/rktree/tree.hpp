#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "rktree/rational.hpp"

namespace rktree {

// Canonical unlabelled rooted tree. Children are kept sorted in descending
// bytewise order of their bracket encodings, so equal trees are structurally
// identical and repeated subtrees sit adjacently (which is what makes the
// symmetry count a run-length computation).
//
// Bracket encoding: leaf = "[]", node = "[" + child encodings + "]" with the
// children in the canonical order above.
class RootedTree {
 public:
  RootedTree();  // single vertex
  explicit RootedTree(std::vector<RootedTree> children);

  static RootedTree leaf();

  // Parses a bracket string. Any child order is accepted; the result is
  // canonical. ASCII whitespace between tokens is ignored.
  // Throws ParseError on malformed input.
  static RootedTree parse(std::string_view text);

  int order() const { return order_; }
  bool is_leaf() const { return children_.empty(); }
  const std::vector<RootedTree>& children() const { return children_; }
  const std::string& encoding() const { return encoding_; }

  friend bool operator==(const RootedTree& a, const RootedTree& b) {
    return a.encoding_ == b.encoding_;
  }
  friend bool operator!=(const RootedTree& a, const RootedTree& b) {
    return !(a == b);
  }

 private:
  std::vector<RootedTree> children_;
  std::string encoding_;
  int order_ = 1;
};

// Listing order used wherever trees are enumerated or printed: ascending
// order first, then descending bytewise encoding (the same comparison that
// orders children within a node). Strict weak ordering, usable with std::map.
struct TreeOrder {
  bool operator()(const RootedTree& a, const RootedTree& b) const;
};

template <class V>
using TreeMap = std::map<RootedTree, V, TreeOrder>;

struct TreeCoefficients {
  int order = 0;   // |T|, vertex count
  BigInt sigma;    // symmetry group size
  BigInt gamma;    // density T!
  BigInt alpha;    // valid labellings: |T|! / (sigma * gamma)
};

// Exact coefficients via the multiset recursions: for T = [T1^m1 ... Tk^mk]
// with distinct Ti, sigma = prod mi! sigma(Ti)^mi and gamma = |T| prod
// gamma(Ti)^mi; alpha falls out by exact division.
TreeCoefficients coefficients(const RootedTree& t);

// Rebuilds the canonical form from scratch. Idempotent; the class constructor
// already canonicalizes, so this is the identity on well-formed values.
RootedTree canonical(const RootedTree& t);

// Attaches u as an additional child of t's root: [t1 ... tl] o u = [t1 ... tl u].
RootedTree butcher_product(const RootedTree& t, const RootedTree& u);

// All canonical trees grouped by order: result[p] holds the order-p trees in
// listing order; result[0] is empty. Counts grow like 3^p; orders beyond 12
// work but are undocumented-runtime territory.
// Throws std::invalid_argument when max_order < 1.
std::vector<std::vector<RootedTree>> enumerate_trees(int max_order);

}  // namespace rktree
