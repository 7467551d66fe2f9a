#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rktree/rational.hpp"
#include "rktree/tableau.hpp"
#include "rktree/tree.hpp"

namespace rktree {

// Verdict for one order's residual r_j.
//   exact_zero: every per-tree weight alpha(gamma*phi - 1) vanishes, so the
//     residual is zero identically (no sampling involved).
//   certified_probabilistic: some weights are nonzero but the residual
//     vanished at every sample point — an identity certificate in the
//     Schwartz–Zippel sense, not a symbolic proof.
//   nonzero: some sample produced a nonzero residual.
enum class ResidualStatus { exact_zero, certified_probabilistic, nonzero };

const char* to_string(ResidualStatus s);

// Linear dependencies among the order-j elementary differentials of one
// right-hand side, measured on a set of sample points.
struct DependencyReport {
  int order = 0;                       // j
  int n_trees = 0;                     // N_j, number of order-j trees
  int sample_count = 0;                // K
  std::vector<RootedTree> trees;       // column order (listing order)
  std::vector<RatVec> kernel_basis;    // each length N_j; annihilate the sample matrix
  int rank = 0;                        // N_j - kernel dimension
};

// Builds the exact (d*K) x N_j matrix with column T holding the stacked
// values T(f)(y0_k) and extracts its kernel by rational elimination.
// Throws std::invalid_argument when samples are empty or not pairwise
// distinct, or j < 1.
DependencyReport dependency_kernel(int j, const PolynomialMap& f,
                                   const std::vector<RatVec>& samples);

struct RefinedConditionResult {
  ResidualStatus status = ResidualStatus::exact_zero;
  int order = 0;
  int sample_count = 0;
  // Schwartz–Zippel degree bound of the sampled polynomial identity:
  // j * max(degree(f), 1). Lets callers size the sample count.
  int degree_bound = 0;
};

// Evaluates r_j(y0_k) = sum alpha(T)(gamma(T)phi(T) - 1) T(f)(y0_k) at every
// sample, exactly. Same argument validation as dependency_kernel.
RefinedConditionResult refined_condition(int j, const Tableau& tab, const PolynomialMap& f,
                                         const std::vector<RatVec>& samples);

struct OrderReport {
  int classical_order = 0;
  bool classical_capped = false;
  int effective_order = 0;
  bool effective_capped = false;
  // status[j] for j = 1..max_order; index 0 unused.
  std::vector<ResidualStatus> status;
  // Order effective_order+1 trees with gamma*phi != 1 and those values.
  // Empty when effective_capped.
  std::vector<std::pair<RootedTree, Rational>> failing;
  std::uint64_t seed = 0;
  int sample_count = 0;
  int degree_bound = 0;  // max over the checked orders
};

// Largest p <= max_order whose residuals are all (certified) zero, for
// samples drawn deterministically from the seed. effective >= classical
// always, since classical orders have identically zero residuals.
// Throws std::invalid_argument when max_order < 1 or sample_count < 1.
OrderReport effective_order(const Tableau& tab, const PolynomialMap& f, int max_order,
                            int sample_count, std::uint64_t seed);

// Sample vectors with numerators uniform in [-9, 9] and denominators in
// {1, 2, 3} per component, whole vector redrawn on duplicates. Deterministic
// for a given seed across platforms (no distribution objects involved).
std::vector<RatVec> draw_samples(int d, int count, std::uint64_t seed);

}  // namespace rktree
