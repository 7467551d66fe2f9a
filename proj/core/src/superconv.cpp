#include "rktree/superconv.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

#include "rktree/elemdiff.hpp"
#include "rktree/rational_linalg.hpp"
#include "rktree/weights.hpp"

namespace rktree {

const char* to_string(ResidualStatus s) {
  switch (s) {
    case ResidualStatus::exact_zero:
      return "exact-zero";
    case ResidualStatus::certified_probabilistic:
      return "certified-probabilistic";
    case ResidualStatus::nonzero:
      return "nonzero";
  }
  return "?";
}

namespace {

void check_samples(const std::vector<RatVec>& samples, int d) {
  if (samples.empty()) throw std::invalid_argument("samples must be nonempty");
  std::set<RatVec> seen;
  for (const auto& s : samples) {
    if (static_cast<int>(s.size()) != d)
      throw std::invalid_argument("sample has wrong dimension");
    if (!seen.insert(s).second)
      throw std::invalid_argument("samples must be pairwise distinct");
  }
}

int degree_bound_for(int j, const PolynomialMap& f) { return j * std::max(f.degree, 1); }

}  // namespace

DependencyReport dependency_kernel(int j, const PolynomialMap& f,
                                   const std::vector<RatVec>& samples) {
  if (j < 1) throw std::invalid_argument("dependency_kernel: order must be >= 1");
  check_samples(samples, f.d);

  DependencyReport report;
  report.order = j;
  report.sample_count = static_cast<int>(samples.size());
  report.trees = enumerate_trees(j)[static_cast<size_t>(j)];
  report.n_trees = static_cast<int>(report.trees.size());

  // Rows: (sample, component); columns: trees in listing order.
  ElementaryDifferentials ed(f);
  RatMat m(samples.size() * static_cast<size_t>(f.d),
           RatVec(static_cast<size_t>(report.n_trees), Rational(0)));
  for (size_t col = 0; col < report.trees.size(); ++col)
    for (size_t k = 0; k < samples.size(); ++k) {
      RatVec v = ed.eval(report.trees[col], samples[k]);
      for (int i = 0; i < f.d; ++i) m[k * static_cast<size_t>(f.d) + static_cast<size_t>(i)][col] = v[static_cast<size_t>(i)];
    }

  report.kernel_basis = nullspace(std::move(m), report.n_trees);
  report.rank = report.n_trees - static_cast<int>(report.kernel_basis.size());
  return report;
}

RefinedConditionResult refined_condition(int j, const Tableau& tab, const PolynomialMap& f,
                                         const std::vector<RatVec>& samples) {
  if (j < 1) throw std::invalid_argument("refined_condition: order must be >= 1");
  check_samples(samples, f.d);

  RefinedConditionResult result;
  result.order = j;
  result.sample_count = static_cast<int>(samples.size());
  result.degree_bound = degree_bound_for(j, f);

  ElementaryWeights ew(tab);
  const auto trees = enumerate_trees(j)[static_cast<size_t>(j)];
  std::vector<Rational> weights;
  weights.reserve(trees.size());
  bool any_weight = false;
  for (const auto& t : trees) {
    auto c = coefficients(t);
    Rational w = Rational(c.alpha) * (Rational(c.gamma) * ew.phi(t) - 1);
    any_weight = any_weight || w != 0;
    weights.push_back(std::move(w));
  }
  if (!any_weight) {
    result.status = ResidualStatus::exact_zero;
    return result;
  }

  ElementaryDifferentials ed(f);
  for (const auto& y0 : samples) {
    RatVec r(static_cast<size_t>(f.d), Rational(0));
    for (size_t ti = 0; ti < trees.size(); ++ti) {
      if (weights[ti] == 0) continue;
      RatVec v = ed.eval(trees[ti], y0);
      for (int i = 0; i < f.d; ++i) r[static_cast<size_t>(i)] += weights[ti] * v[static_cast<size_t>(i)];
    }
    for (const auto& x : r)
      if (x != 0) {
        result.status = ResidualStatus::nonzero;
        return result;
      }
  }
  result.status = ResidualStatus::certified_probabilistic;
  return result;
}

std::vector<RatVec> draw_samples(int d, int count, std::uint64_t seed) {
  if (d < 1 || count < 1) throw std::invalid_argument("draw_samples: d and count must be >= 1");
  std::mt19937_64 rng(seed);
  // Bounded draws via modulo keep the stream identical across standard
  // libraries; bias over 19 and 3 buckets is irrelevant here.
  auto draw = [&rng](int span) { return static_cast<int>(rng() % static_cast<std::uint64_t>(span)); };
  std::set<RatVec> seen;
  std::vector<RatVec> out;
  int attempts = 0;
  while (static_cast<int>(out.size()) < count) {
    if (++attempts > 1000 * count)
      throw std::invalid_argument("draw_samples: sample space too small for distinct draws");
    RatVec v(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) {
      int num = draw(19) - 9;          // [-9, 9]
      int den = draw(3) + 1;           // {1, 2, 3}
      v[static_cast<size_t>(i)] = Rational(num, den);
    }
    if (seen.insert(v).second) out.push_back(std::move(v));
  }
  return out;
}

OrderReport effective_order(const Tableau& tab, const PolynomialMap& f, int max_order,
                            int sample_count, std::uint64_t seed) {
  if (max_order < 1) throw std::invalid_argument("effective_order: max_order must be >= 1");
  if (sample_count < 1) throw std::invalid_argument("effective_order: sample_count must be >= 1");

  OrderReport report;
  report.seed = seed;
  report.sample_count = sample_count;
  report.status.assign(static_cast<size_t>(max_order) + 1, ResidualStatus::exact_zero);

  auto samples = draw_samples(f.d, sample_count, seed);

  ClassicalOrderReport classical = classical_order(tab, max_order);
  report.classical_order = classical.order;
  report.classical_capped = classical.capped;

  for (int j = 1; j <= max_order; ++j) {
    auto rc = refined_condition(j, tab, f, samples);
    report.status[static_cast<size_t>(j)] = rc.status;
    report.degree_bound = std::max(report.degree_bound, rc.degree_bound);
  }

  int effective = 0;
  while (effective < max_order &&
         report.status[static_cast<size_t>(effective) + 1] != ResidualStatus::nonzero)
    ++effective;
  report.effective_order = effective;
  report.effective_capped = effective == max_order;

  if (!report.effective_capped) {
    ElementaryWeights ew(tab);
    const auto levels = enumerate_trees(effective + 1);
    for (const auto& t : levels[static_cast<size_t>(effective) + 1]) {
      Rational gp = Rational(coefficients(t).gamma) * ew.phi(t);
      if (gp != 1) report.failing.emplace_back(t, gp);
    }
  }
  return report;
}

}  // namespace rktree
