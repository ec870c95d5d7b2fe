#include "baskafuzz/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "baskafuzz/error.hpp"

namespace baskafuzz {

namespace {

double composite_simpson(const std::function<double(double)>& f, double lo, double hi, int panels) {
  const double h = (hi - lo) / panels;
  double odd = 0.0;
  double even = 0.0;
  for (int i = 1; i < panels; ++i) {
    const double x = lo + h * i;
    (i % 2 == 1 ? odd : even) += f(x);
  }
  return h / 3.0 * (f(lo) + 4.0 * odd + 2.0 * even + f(hi));
}

struct AdaptiveState {
  const std::function<double(double)>& f;
  long evaluations = 0;
  long budget = 0;
};

double adaptive_step(AdaptiveState& st, double lo, double hi, double f_lo, double f_mid, double f_hi,
                     double whole, double tol, int depth) {
  const double mid = 0.5 * (lo + hi);
  const double lm = 0.5 * (lo + mid);
  const double rm = 0.5 * (mid + hi);
  const double f_lm = st.f(lm);
  const double f_rm = st.f(rm);
  st.evaluations += 2;
  if (st.evaluations > st.budget) {
    throw Error(ErrorKind::QuadratureFailure, "adaptive Simpson exceeded its evaluation budget");
  }
  const double left = (mid - lo) / 6.0 * (f_lo + 4.0 * f_lm + f_mid);
  const double right = (hi - mid) / 6.0 * (f_mid + 4.0 * f_rm + f_hi);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adaptive_step(st, lo, mid, f_lo, f_lm, f_mid, left, 0.5 * tol, depth - 1) +
         adaptive_step(st, mid, hi, f_mid, f_rm, f_hi, right, 0.5 * tol, depth - 1);
}

double adaptive_simpson(const std::function<double(double)>& f, double lo, double hi, double tol,
                        long& evaluations, long budget) {
  AdaptiveState st{f, evaluations, budget};
  const double mid = 0.5 * (lo + hi);
  const double f_lo = f(lo);
  const double f_mid = f(mid);
  const double f_hi = f(hi);
  st.evaluations += 3;
  const double whole = (hi - lo) / 6.0 * (f_lo + 4.0 * f_mid + f_hi);
  const double result = adaptive_step(st, lo, hi, f_lo, f_mid, f_hi, whole, tol, 48);
  evaluations = st.evaluations;
  return result;
}

}  // namespace

QuadratureConfig QuadratureConfig::simpson(int panels) {
  QuadratureConfig q;
  q.rule = Rule::CompositeSimpson;
  q.panels = panels;
  q.validate();
  return q;
}

QuadratureConfig QuadratureConfig::adaptive(double tolerance, long max_evaluations) {
  QuadratureConfig q;
  q.rule = Rule::Adaptive;
  q.tolerance = tolerance;
  q.max_evaluations = max_evaluations;
  q.validate();
  return q;
}

void QuadratureConfig::validate() const {
  if (rule == Rule::CompositeSimpson && (panels < 2 || panels % 2 != 0)) {
    throw Error(ErrorKind::InvalidArgument, "Simpson panel count must be even and >= 2");
  }
  if (rule == Rule::Adaptive && !(tolerance > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "adaptive quadrature tolerance must be positive");
  }
  if (rule == Rule::Adaptive && max_evaluations < 3) {
    throw Error(ErrorKind::InvalidArgument, "adaptive quadrature budget too small");
  }
}

double integrate(const std::function<double(double)>& f, double lo, double hi,
                 const QuadratureConfig& config, std::span<const double> breakpoints) {
  config.validate();
  if (hi == lo) return 0.0;
  if (hi < lo) return -integrate(f, hi, lo, config, breakpoints);

  std::vector<double> edges{lo};
  for (double p : breakpoints) {
    if (p > lo && p < hi) edges.push_back(p);
  }
  edges.push_back(hi);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  const double span = hi - lo;
  double total = 0.0;
  long evaluations = 0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double a = edges[i];
    const double b = edges[i + 1];
    if (config.rule == QuadratureConfig::Rule::CompositeSimpson) {
      int panels = static_cast<int>(std::lround(config.panels * (b - a) / span));
      panels = std::max(2, panels + (panels % 2));
      total += composite_simpson(f, a, b, panels);
    } else {
      total += adaptive_simpson(f, a, b, config.tolerance * (b - a) / span, evaluations,
                                config.max_evaluations);
    }
  }
  return total;
}

}  // namespace baskafuzz
