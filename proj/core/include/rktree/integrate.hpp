#pragma once

#include <string>
#include <vector>

#include "rktree/rational.hpp"
#include "rktree/tableau.hpp"

namespace rktree {

using FloatVec = std::vector<double>;

// One RK step. Explicit tableaus run a forward stage sweep; implicit ones a
// damped fixed-point iteration on the stacked stage system (relative
// tolerance 1e-14, at most 100 iterations) — adequate for smooth desk-scale
// problems with small h, which is all this harness targets.
// Throws ConvergenceFailure (with the iteration trace) or NumericalOverflow.
FloatVec rk_step(const Tableau& tab, const PolynomialMap& f, const FloatVec& y, double h);

// n_steps equal steps of size t_end / n_steps from t = 0.
FloatVec integrate(const Tableau& tab, const PolynomialMap& f, FloatVec y, double t_end,
                   int n_steps);

struct ConvergenceEstimate {
  std::vector<double> h;       // actual step sizes used (t_end / n rounding)
  std::vector<double> errors;  // max-norm at t_end vs the reference
  // slopes[i] = log(e_i/e_{i+1}) / log(h_i/h_{i+1}); NaN where either error
  // sits at or below the noise floor (100x machine epsilon, relative).
  std::vector<double> slopes;
  double median_slope = 0.0;  // over the valid slopes; NaN when degenerate
  bool degenerate = false;    // no valid slope pairs survived the floor
  std::string reference;      // "closed-form:<name>" or "tiny-step"
};

// Convergence study over strictly decreasing step sizes (at least 3).
// reference = "auto" uses the problem's closed-form registry entry when it
// names one, else integrates at h_min/64; "tiny-step" forces the latter; any
// other value names a registry entry explicitly.
ConvergenceEstimate empirical_order(const Tableau& tab, const PolynomialMap& f, const FloatVec& y0,
                                    double t_end, const std::vector<double>& h_list,
                                    const std::string& reference = "auto");

// Closed-form registry. Known entries: "riccati" (y' = y^2),
// "linear" (y' = diag(lambda) y, params: lambda),
// "riccati_autonomized" (Y = (y, t), y' = q(t) y^2, params: q_coeffs),
// "cross_cubic" (y1' = y1 y2^2, y2' = y1^2 y2).
bool has_closed_form(const PolynomialMap& f);
// Solution at elapsed time t from the problem's initial point.
// Throws ValidationError for unknown names or missing/ill-shaped params.
FloatVec closed_form_solution(const PolynomialMap& f, const FloatVec& y0, double t);

}  // namespace rktree
