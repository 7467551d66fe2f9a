#include "rktree/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "rktree/errors.hpp"

namespace rktree {

namespace {

void check_finite(const FloatVec& y, const char* where) {
  for (double v : y)
    if (!std::isfinite(v)) throw NumericalOverflow(std::string(where) + ": non-finite state");
}

double max_norm(const FloatVec& y) {
  double m = 0.0;
  for (double v : y) m = std::max(m, std::fabs(v));
  return m;
}

FloatVec explicit_step(const Tableau& tab, const PolynomialMap& f, const FloatVec& y, double h) {
  const int s = tab.s;
  const int d = f.d;
  std::vector<FloatVec> fy(static_cast<size_t>(s));
  FloatVec stage(static_cast<size_t>(d));
  for (int i = 0; i < s; ++i) {
    stage = y;
    for (int j = 0; j < i; ++j) {
      double a = to_double(tab.A[static_cast<size_t>(i)][static_cast<size_t>(j)]);
      if (a == 0.0) continue;
      for (int v = 0; v < d; ++v) stage[static_cast<size_t>(v)] += h * a * fy[static_cast<size_t>(j)][static_cast<size_t>(v)];
    }
    fy[static_cast<size_t>(i)] = f.eval(stage);
  }
  FloatVec out = y;
  for (int i = 0; i < s; ++i) {
    double bi = to_double(tab.b[static_cast<size_t>(i)]);
    if (bi == 0.0) continue;
    for (int v = 0; v < d; ++v) out[static_cast<size_t>(v)] += h * bi * fy[static_cast<size_t>(i)][static_cast<size_t>(v)];
  }
  check_finite(out, "rk_step");
  return out;
}

FloatVec implicit_step(const Tableau& tab, const PolynomialMap& f, const FloatVec& y, double h) {
  const int s = tab.s;
  const int d = f.d;
  // Damped fixed point on the stacked stage vector. Plain iteration suffices
  // for smooth desk problems at small h; damping halves when the update norm
  // grows, which rescues mildly stiff cases without pretending to be Newton.
  std::vector<FloatVec> stages(static_cast<size_t>(s), y);
  std::vector<FloatVec> fy(static_cast<size_t>(s));
  std::vector<double> trace;
  double damping = 1.0;
  double previous_update = std::numeric_limits<double>::infinity();
  const double tol = 1e-14;
  for (int iter = 0; iter < 100; ++iter) {
    for (int j = 0; j < s; ++j) fy[static_cast<size_t>(j)] = f.eval(stages[static_cast<size_t>(j)]);
    double update = 0.0;
    double scale = 1.0;
    for (int i = 0; i < s; ++i) {
      for (int v = 0; v < d; ++v) {
        double target = y[static_cast<size_t>(v)];
        for (int j = 0; j < s; ++j) {
          double a = to_double(tab.A[static_cast<size_t>(i)][static_cast<size_t>(j)]);
          if (a != 0.0) target += h * a * fy[static_cast<size_t>(j)][static_cast<size_t>(v)];
        }
        double& cur = stages[static_cast<size_t>(i)][static_cast<size_t>(v)];
        double next = cur + damping * (target - cur);
        update = std::max(update, std::fabs(next - cur));
        scale = std::max(scale, std::fabs(next));
        cur = next;
      }
      check_finite(stages[static_cast<size_t>(i)], "rk_step (implicit)");
    }
    trace.push_back(update);
    if (update <= tol * scale) {
      for (int j = 0; j < s; ++j) fy[static_cast<size_t>(j)] = f.eval(stages[static_cast<size_t>(j)]);
      FloatVec out = y;
      for (int i = 0; i < s; ++i) {
        double bi = to_double(tab.b[static_cast<size_t>(i)]);
        if (bi == 0.0) continue;
        for (int v = 0; v < d; ++v) out[static_cast<size_t>(v)] += h * bi * fy[static_cast<size_t>(i)][static_cast<size_t>(v)];
      }
      check_finite(out, "rk_step");
      return out;
    }
    if (update > previous_update && damping > 1.0 / 64.0) damping *= 0.5;
    previous_update = update;
  }
  throw ConvergenceFailure(
      "implicit stage iteration did not reach tolerance 1e-14 within 100 iterations "
      "(reduce h, or use an explicit tableau; Newton iteration is out of scope)",
      trace);
}

}  // namespace

FloatVec rk_step(const Tableau& tab, const PolynomialMap& f, const FloatVec& y, double h) {
  if (!(h > 0)) throw std::invalid_argument("rk_step: h must be positive");
  if (static_cast<int>(y.size()) != f.d) throw std::invalid_argument("rk_step: y has wrong dimension");
  check_finite(y, "rk_step input");
  return is_explicit(tab) ? explicit_step(tab, f, y, h) : implicit_step(tab, f, y, h);
}

FloatVec integrate(const Tableau& tab, const PolynomialMap& f, FloatVec y, double t_end,
                   int n_steps) {
  if (n_steps < 1) throw std::invalid_argument("integrate: n_steps must be >= 1");
  const double h = t_end / n_steps;
  for (int i = 0; i < n_steps; ++i) y = rk_step(tab, f, y, h);
  return y;
}

namespace {

const RatVec& require_param(const PolynomialMap& f, const char* name, size_t len) {
  auto it = f.params.find(name);
  if (it == f.params.end())
    throw ValidationError(std::string("closed form '") + f.exact + "' needs params." + name);
  if (len != 0 && it->second.size() != len)
    throw ValidationError(std::string("params.") + name + ": wrong length");
  return it->second;
}

double poly_eval(const std::vector<double>& coeffs, double x) {
  double acc = 0.0;
  for (size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
  return acc;
}

// Antiderivative with zero constant term: sum c_i x^(i+1) / (i+1).
std::vector<double> poly_antiderivative(const std::vector<double>& coeffs) {
  std::vector<double> out(coeffs.size() + 1, 0.0);
  for (size_t i = 0; i < coeffs.size(); ++i) out[i + 1] = coeffs[i] / static_cast<double>(i + 1);
  return out;
}

}  // namespace

bool has_closed_form(const PolynomialMap& f) { return !f.exact.empty(); }

FloatVec closed_form_solution(const PolynomialMap& f, const FloatVec& y0, double t) {
  if (static_cast<int>(y0.size()) != f.d)
    throw std::invalid_argument("closed_form_solution: y0 has wrong dimension");

  if (f.exact == "riccati") {
    // y' = y^2: y(t) = y0 / (1 - y0 t).
    if (f.d != 1) throw ValidationError("closed form 'riccati' needs d = 1");
    return {y0[0] / (1.0 - y0[0] * t)};
  }

  if (f.exact == "linear") {
    // y' = diag(lambda) y.
    const RatVec& lambda = require_param(f, "lambda", static_cast<size_t>(f.d));
    FloatVec out(y0.size());
    for (size_t i = 0; i < y0.size(); ++i) out[i] = y0[i] * std::exp(to_double(lambda[i]) * t);
    return out;
  }

  if (f.exact == "riccati_autonomized") {
    // Y = (y, tau), y' = q(tau) y^2, tau' = 1, with polynomial q given low
    // order first: 1/y(tau) = 1/y(tau0) - (Q(tau) - Q(tau0)), Q' = q.
    if (f.d != 2) throw ValidationError("closed form 'riccati_autonomized' needs d = 2");
    const RatVec& q = require_param(f, "q_coeffs", 0);
    std::vector<double> qd(q.size());
    for (size_t i = 0; i < q.size(); ++i) qd[i] = to_double(q[i]);
    std::vector<double> big_q = poly_antiderivative(qd);
    double tau0 = y0[1];
    double tau = tau0 + t;
    double denom = 1.0 / y0[0] - (poly_eval(big_q, tau) - poly_eval(big_q, tau0));
    return {1.0 / denom, tau};
  }

  if (f.exact == "cross_cubic") {
    // y1' = y1 y2^2, y2' = y1^2 y2. Conserved C = y1^2 - y2^2; g = y2^2 obeys
    // g' = 2 g (g + C), so g/(g+C) grows like exp(2Ct).
    if (f.d != 2) throw ValidationError("closed form 'cross_cubic' needs d = 2");
    double g0 = y0[1] * y0[1];
    double c = y0[0] * y0[0] - g0;
    double g;
    if (c == 0.0) {
      g = g0 / (1.0 - 2.0 * g0 * t);
    } else {
      double r = (g0 / (g0 + c)) * std::exp(2.0 * c * t);
      g = c * r / (1.0 - r);
    }
    double sign1 = y0[0] < 0 ? -1.0 : 1.0;
    double sign2 = y0[1] < 0 ? -1.0 : 1.0;
    return {sign1 * std::sqrt(g + c), sign2 * std::sqrt(g)};
  }

  throw ValidationError("unknown closed-form registry entry '" + f.exact + "'");
}

ConvergenceEstimate empirical_order(const Tableau& tab, const PolynomialMap& f, const FloatVec& y0,
                                    double t_end, const std::vector<double>& h_list,
                                    const std::string& reference) {
  if (h_list.size() < 3)
    throw std::invalid_argument("empirical_order: need at least 3 step sizes");
  for (size_t i = 1; i < h_list.size(); ++i)
    if (!(h_list[i] < h_list[i - 1]))
      throw std::invalid_argument("empirical_order: step sizes must be strictly decreasing");
  if (!(t_end > 0)) throw std::invalid_argument("empirical_order: t_end must be positive");

  ConvergenceEstimate est;
  std::vector<int> steps;
  for (double h : h_list) {
    int n = std::max(1, static_cast<int>(std::llround(t_end / h)));
    steps.push_back(n);
    est.h.push_back(t_end / n);
  }

  std::string registry_name;
  bool tiny_step = false;
  if (reference == "tiny-step") {
    tiny_step = true;
  } else if (reference == "auto") {
    if (has_closed_form(f))
      registry_name = f.exact;
    else
      tiny_step = true;
  } else {
    registry_name = reference;
  }

  FloatVec ref;
  if (tiny_step) {
    est.reference = "tiny-step";
    ref = integrate(tab, f, y0, t_end, steps.back() * 64);
  } else {
    est.reference = "closed-form:" + registry_name;
    PolynomialMap named = f;
    named.exact = registry_name;
    ref = closed_form_solution(named, y0, t_end);
    check_finite(ref, "closed-form reference");
  }

  for (size_t i = 0; i < h_list.size(); ++i) {
    FloatVec yn = integrate(tab, f, y0, t_end, steps[i]);
    double err = 0.0;
    for (size_t v = 0; v < yn.size(); ++v) err = std::max(err, std::fabs(yn[v] - ref[v]));
    est.errors.push_back(err);
  }

  const double floor = 100.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, max_norm(ref));
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> valid;
  for (size_t i = 0; i + 1 < est.errors.size(); ++i) {
    double e0 = est.errors[i], e1 = est.errors[i + 1];
    if (e0 > floor && e1 > floor) {
      double slope = std::log(e0 / e1) / std::log(est.h[i] / est.h[i + 1]);
      est.slopes.push_back(slope);
      valid.push_back(slope);
    } else {
      est.slopes.push_back(nan);
    }
  }

  if (valid.empty()) {
    est.degenerate = true;
    est.median_slope = nan;
  } else {
    std::sort(valid.begin(), valid.end());
    size_t mid = valid.size() / 2;
    est.median_slope =
        valid.size() % 2 ? valid[mid] : 0.5 * (valid[mid - 1] + valid[mid]);
  }
  return est;
}

}  // namespace rktree
