#include "rktree/labelling.hpp"

#include <stdexcept>
#include <string>

namespace rktree {

std::vector<DifferentiationPath> enumerate_paths(int k) {
  if (k < 1) throw std::invalid_argument("enumerate_paths: k must be >= 1");
  std::vector<DifferentiationPath> out;
  std::vector<int> steps(static_cast<size_t>(k), 1);
  // Odometer over mixed radix (1..i per digit), ascending lexicographic.
  while (true) {
    out.push_back({steps});
    int i = k - 1;
    while (i >= 0 && steps[static_cast<size_t>(i)] == i + 1) {
      steps[static_cast<size_t>(i)] = 1;
      --i;
    }
    if (i < 0) break;
    ++steps[static_cast<size_t>(i)];
  }
  return out;
}

LabelledTree path_to_tree(const DifferentiationPath& path) {
  const int k = static_cast<int>(path.steps.size());
  if (k < 1) throw std::invalid_argument("path_to_tree: empty path");
  LabelledTree lt;
  lt.parent.reserve(path.steps.size());
  for (int i = 1; i <= k; ++i) {
    int a = path.steps[static_cast<size_t>(i - 1)];
    if (a < 1 || a > i)
      throw std::invalid_argument("path_to_tree: alpha_" + std::to_string(i) + " = " +
                                  std::to_string(a) + " out of range [1, " + std::to_string(i) +
                                  "]");
    // Step i attaches the vertex labelled i+1 below vertex a.
    lt.parent.push_back(a);
  }
  return lt;
}

namespace {

RootedTree build_shape(const std::vector<std::vector<int>>& kids, int v) {
  std::vector<RootedTree> children;
  children.reserve(kids[static_cast<size_t>(v)].size());
  for (int c : kids[static_cast<size_t>(v)]) children.push_back(build_shape(kids, c));
  return RootedTree(std::move(children));
}

}  // namespace

RootedTree shape_of(const LabelledTree& lt) {
  const int n = lt.order();
  std::vector<std::vector<int>> kids(static_cast<size_t>(n) + 1);
  for (int i = 0; i < n - 1; ++i) {
    int v = i + 2;
    int p = lt.parent[static_cast<size_t>(i)];
    if (p < 1 || p >= v)
      throw std::invalid_argument("shape_of: parent of vertex " + std::to_string(v) + " is " +
                                  std::to_string(p) + ", must lie in [1, " + std::to_string(v - 1) +
                                  "]");
    kids[static_cast<size_t>(p)].push_back(v);
  }
  return build_shape(kids, 1);
}

TreeMap<BigInt> multiplicity_histogram(int k) {
  TreeMap<BigInt> hist;
  for (const auto& p : enumerate_paths(k)) ++hist[shape_of(path_to_tree(p))];
  return hist;
}

namespace {

// Descending lexicographic: the first position takes its largest feasible
// value first.
void gen_multiindices(int k, int pos, int rem_l, int rem_k, std::vector<int>& acc,
                      std::vector<MultiIndex>& out) {
  if (pos > k) {
    if (rem_l == 0 && rem_k == 0) out.push_back({acc});
    return;
  }
  int vmax = std::min(rem_l, rem_k / pos);
  for (int v = vmax; v >= 0; --v) {
    acc[static_cast<size_t>(pos - 1)] = v;
    gen_multiindices(k, pos + 1, rem_l - v, rem_k - pos * v, acc, out);
  }
  acc[static_cast<size_t>(pos - 1)] = 0;
}

}  // namespace

std::vector<MultiIndex> enumerate_multiindices(int k, int l) {
  if (k < 1 || l < 1 || l > k)
    throw std::invalid_argument("enumerate_multiindices: need 1 <= l <= k");
  std::vector<MultiIndex> out;
  std::vector<int> acc(static_cast<size_t>(k), 0);
  gen_multiindices(k, 1, l, k, acc, out);
  return out;
}

Rational eta(const MultiIndex& m) {
  const int k = static_cast<int>(m.m.size());
  if (k < 1) throw std::invalid_argument("eta: empty multi-index");
  long long weighted = 0, total = 0;
  for (int i = 1; i <= k; ++i) {
    int mi = m.m[static_cast<size_t>(i - 1)];
    if (mi < 0) throw std::invalid_argument("eta: negative entry");
    weighted += static_cast<long long>(i) * mi;
    total += mi;
  }
  if (weighted != k || total < 1)
    throw std::invalid_argument("eta: not a member of any S_{k,l}");
  BigInt den = 1;
  for (int i = 1; i <= k; ++i) {
    int mi = m.m[static_cast<size_t>(i - 1)];
    BigInt fi = factorial(static_cast<unsigned>(i));
    for (int rep = 0; rep < mi; ++rep) den *= fi;
    den *= factorial(static_cast<unsigned>(mi));
  }
  return Rational(factorial(static_cast<unsigned>(k)), den);
}

}  // namespace rktree
