#include "rktree/tree.hpp"

#include <algorithm>
#include <stdexcept>

#include "rktree/errors.hpp"

namespace rktree {

namespace {

// Canonical within-node child order: descending bytewise encoding. Balanced
// bracket strings are never prefixes of one another, so comparisons always
// resolve at a differing byte.
bool child_before(const RootedTree& a, const RootedTree& b) {
  return a.encoding() > b.encoding();
}

}  // namespace

RootedTree::RootedTree() : encoding_("[]") {}

RootedTree::RootedTree(std::vector<RootedTree> children) : children_(std::move(children)) {
  std::sort(children_.begin(), children_.end(), child_before);
  encoding_.reserve(2 + children_.size() * 2);
  encoding_ = "[";
  for (const auto& c : children_) {
    encoding_ += c.encoding_;
    order_ += c.order_;
  }
  encoding_ += "]";
}

RootedTree RootedTree::leaf() { return RootedTree(); }

namespace {

RootedTree parse_node(std::string_view s, size_t& pos) {
  auto skip_ws = [&] {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t' || s[pos] == '\n' || s[pos] == '\r'))
      ++pos;
  };
  skip_ws();
  if (pos >= s.size() || s[pos] != '[')
    throw ParseError("tree: expected '[' at position " + std::to_string(pos));
  ++pos;
  std::vector<RootedTree> children;
  while (true) {
    skip_ws();
    if (pos >= s.size()) throw ParseError("tree: unbalanced brackets, missing ']'");
    if (s[pos] == ']') {
      ++pos;
      return RootedTree(std::move(children));
    }
    children.push_back(parse_node(s, pos));
  }
}

}  // namespace

RootedTree RootedTree::parse(std::string_view text) {
  size_t pos = 0;
  RootedTree t = parse_node(text, pos);
  while (pos < text.size()) {
    char ch = text[pos];
    if (ch != ' ' && ch != '\t' && ch != '\n' && ch != '\r')
      throw ParseError("tree: trailing input at position " + std::to_string(pos));
    ++pos;
  }
  return t;
}

bool TreeOrder::operator()(const RootedTree& a, const RootedTree& b) const {
  if (a.order() != b.order()) return a.order() < b.order();
  return a.encoding() > b.encoding();
}

TreeCoefficients coefficients(const RootedTree& t) {
  TreeCoefficients r;
  r.order = t.order();
  r.sigma = 1;
  r.gamma = t.order();
  // Children are canonically sorted, so identical subtrees are adjacent.
  const auto& kids = t.children();
  for (size_t i = 0; i < kids.size();) {
    size_t j = i;
    while (j < kids.size() && kids[j] == kids[i]) ++j;
    TreeCoefficients ck = coefficients(kids[i]);
    r.sigma *= factorial(static_cast<unsigned>(j - i));
    for (size_t rep = i; rep < j; ++rep) {
      r.sigma *= ck.sigma;
      r.gamma *= ck.gamma;
    }
    i = j;
  }
  BigInt total = factorial(static_cast<unsigned>(r.order));
  r.alpha = total / (r.sigma * r.gamma);  // always divides exactly
  return r;
}

RootedTree canonical(const RootedTree& t) {
  std::vector<RootedTree> kids;
  kids.reserve(t.children().size());
  for (const auto& c : t.children()) kids.push_back(canonical(c));
  return RootedTree(std::move(kids));
}

RootedTree butcher_product(const RootedTree& t, const RootedTree& u) {
  std::vector<RootedTree> kids = t.children();
  kids.push_back(u);
  return RootedTree(std::move(kids));
}

namespace {

// Chooses children from pool with non-decreasing index, so each multiset of
// subtrees appears exactly once, already in canonical child order (the pool
// is sorted descending by encoding).
void forests(const std::vector<RootedTree>& pool, size_t start, int remaining,
             std::vector<RootedTree>& acc, std::vector<RootedTree>& out) {
  if (remaining == 0) {
    out.push_back(RootedTree(acc));
    return;
  }
  for (size_t i = start; i < pool.size(); ++i) {
    if (pool[i].order() > remaining) continue;
    acc.push_back(pool[i]);
    forests(pool, i, remaining - pool[i].order(), acc, out);
    acc.pop_back();
  }
}

}  // namespace

std::vector<std::vector<RootedTree>> enumerate_trees(int max_order) {
  if (max_order < 1) throw std::invalid_argument("enumerate_trees: max_order must be >= 1");
  std::vector<std::vector<RootedTree>> levels(static_cast<size_t>(max_order) + 1);
  levels[1] = {RootedTree::leaf()};
  for (int p = 2; p <= max_order; ++p) {
    std::vector<RootedTree> pool;
    for (int q = 1; q < p; ++q) pool.insert(pool.end(), levels[q].begin(), levels[q].end());
    std::sort(pool.begin(), pool.end(), child_before);
    std::vector<RootedTree> acc;
    forests(pool, 0, p - 1, acc, levels[p]);
    std::sort(levels[p].begin(), levels[p].end(), child_before);
  }
  return levels;
}

}  // namespace rktree
